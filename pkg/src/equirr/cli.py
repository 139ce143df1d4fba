"""Batch front end: analyze / euler / check / suite over scenario files.

Each command emits a plain-text summary on stdout and, with --json, one
JSON document with sections {scenario, ramification, classes, formulas,
verdicts, audit}.  Reports are byte-deterministic for a fixed (config,
seed); the canonical hash recorded inside excludes only the timestamp.

Exit codes: 0 all verdicts pass, 1 a verdict failed (a theorem would have
to be false), 2 input error, 3 internal cap or inconsistency.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .engine import (congruence_condition, divided_cover_class,
                     euler_class_integral, euler_class_rational,
                     euler_class_scaled, euler_class_tame_mod_regular,
                     oracle_euler_class, projectivity_report,
                     ramification_class_routes, regular_multiple,
                     tame_structure_checks)
from .errors import CapExceeded, Inconsistency, InputError
from .fields import field_make
from .k0 import cartan_data, cartesian_check
from .reps import SimpleRegistry, chop, rep_trivial
from .scenarios import Scenario, parse_scenario, realize


def canonical_hash(report: dict) -> str:
    trimmed = {k: v for k, v in report.items()
               if k not in ("timestamp", "canonical_hash")}
    blob = json.dumps(trimmed, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _finish(report: dict) -> dict:
    report["canonical_hash"] = canonical_hash(report)
    report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    return report


def _verdict(verdicts: list, name: str, ok: bool, detail: str = ""):
    verdicts.append({"name": name, "pass": bool(ok), "detail": detail})


def _class_json(v):
    return v.to_json()


def _ramification_rows(scn: Scenario):
    rows = []
    for datum in scn.cover.orbit_data:
        rows.append(datum.to_json())
    return rows


def _registry_log(scn: Scenario):
    return [dict(entry) for entry in scn.cover.registry.log]


def run_analyze(scn: Scenario) -> dict:
    verdicts: list = []
    report = {
        "command": "analyze",
        "scenario": scn.config.raw,
        "seed": scn.config.seed,
        "group_order": scn.group.order,
        "ramification": _ramification_rows(scn),
        "verdicts": verdicts,
    }
    if scn.cover.geometry is not None:
        audit = scn.cover.geometry.riemann_hurwitz()
        report["audit"] = {"riemann_hurwitz": audit,
                           "ambient_degree":
                               scn.cover.geometry.ambient_degree}
        _verdict(verdicts, "riemann_hurwitz", audit["pass"],
                 f"{audit['lhs']} = {audit['rhs']}")
    report["weakly_ramified"] = scn.cover.is_weakly_ramified()
    report["tamely_ramified"] = scn.cover.is_tame()
    return _finish(report)


def _euler_one_divisor(scn: Scenario, D, tag: str, verdicts, routes):
    cover = scn.cover
    entry = {"divisor": D.to_json() if D is not None else None,
             "degree": (D.degree() if D is not None
                        else cover.divisor_degree(cover.orbit_table(None)))}
    oracle = None
    if cover.geometry is not None:
        oracle = oracle_euler_class(cover, D)
        entry["oracle"] = _class_json(oracle)
    cong = congruence_condition(cover, D)
    entry["congruence"] = cong
    if cong and cover.is_weakly_ramified():
        integral, terms = euler_class_integral(cover, D)
        rational = euler_class_rational(cover, D)
        entry["integral_formula"] = _class_json(integral)
        entry["integral_terms"] = _jsonable_terms(terms)
        entry["rational_formula"] = _class_json(rational)
        _verdict(verdicts, f"{tag}:rational_equals_integral",
                 rational == integral)
        if oracle is not None:
            _verdict(verdicts, f"{tag}:oracle_equals_integral",
                     oracle == integral)
    else:
        entry["integral_formula"] = "refused: congruence or weakness fails"
    scaled, C, _terms = euler_class_scaled(cover, D)
    entry["scaled_constant"] = C
    entry["scaled_formula"] = _class_json(scaled)
    if oracle is not None:
        _verdict(verdicts, f"{tag}:scaled_identity",
                 scaled == oracle.scale(cover.G.order),
                 f"C = {C}")
    if cover.geometry is not None and cover.is_tame():
        rhs = euler_class_tame_mod_regular(cover, D)
        if cong:
            reference, _ = euler_class_integral(cover, D)
            ok, mult = regular_multiple(cover, reference - rhs)
            _verdict(verdicts, f"{tag}:tame_mod_regular", ok,
                     f"multiple = {mult}")
            entry["tame_mod_regular_multiple"] = mult
    return entry


def _jsonable_terms(terms: dict) -> dict:
    out = dict(terms)
    out["orbits"] = [
        {**t, "place": (t["place"].to_json()
                        if hasattr(t["place"], "to_json")
                        else str(t["place"]))}
        for t in terms["orbits"]]
    return out


def run_euler(scn: Scenario) -> dict:
    verdicts: list = []
    cover = scn.cover
    routes = ramification_class_routes(cover) \
        if cover.is_weakly_ramified() else None
    report = {
        "command": "euler",
        "scenario": scn.config.raw,
        "seed": scn.config.seed,
        "ramification": _ramification_rows(scn),
        "verdicts": verdicts,
    }
    if routes is not None:
        report["ramification_module"] = {
            "inertia_route": _class_json(routes["inertia"]),
            "euler_route": (_class_json(routes["euler"])
                            if routes["euler"] is not None else None),
        }
        if routes["consistent"] is not None:
            _verdict(verdicts, "ramification_module_routes",
                     routes["consistent"])
    entries = []
    if scn.cover.geometry is not None:
        for i, D in enumerate(scn.divisors):
            entries.append(_euler_one_divisor(scn, D, f"D{i}", verdicts,
                                              routes))
    else:
        entries.append(_euler_one_divisor(scn, None, "abstract", verdicts,
                                          routes))
    report["divisors"] = entries
    report["registry"] = _registry_log(scn)
    return _finish(report)


def run_check(scn: Scenario) -> dict:
    verdicts: list = []
    cover = scn.cover
    report = {
        "command": "check",
        "scenario": scn.config.raw,
        "seed": scn.config.seed,
        "verdicts": verdicts,
    }
    if cover.geometry is not None:
        audit = cover.geometry.riemann_hurwitz()
        report["audit"] = {"riemann_hurwitz": audit}
        _verdict(verdicts, "riemann_hurwitz", audit["pass"])
    # divisibility certificates and structure checks per ramified orbit
    w_reports = []
    for datum in cover.orbit_data:
        if not datum.is_ramified or not datum.is_weak_here:
            continue
        for d in range(1, datum.e_t):
            cert = divided_cover_class(cover, datum, d)
            w_reports.append({
                "place": (datum.place.to_json()
                          if hasattr(datum.place, "to_json")
                          else str(datum.place)),
                "twist": d, "f": datum.f,
                "head_multiplicities": cert["head_multiplicities"],
            })
            _verdict(verdicts,
                     f"divisibility:{w_reports[-1]['place']}:d{d}", True,
                     f"f = {datum.f}")
            if datum.is_tame_here and cover.geometry is not None:
                out = tame_structure_checks(cover, datum, d)
                _verdict(verdicts,
                         f"structure_line:{w_reports[-1]['place']}:d{d}",
                         out["cover_equals_line"])
                _verdict(verdicts,
                         f"structure_ind_res:{w_reports[-1]['place']}:d{d}",
                         out["ind_res_multiplies"])
    report["divided_covers"] = w_reports
    # projectivity predicates and the Cartesian diagram need the oracle
    if cover.geometry is not None:
        proj_entries = []
        for i, D in enumerate(scn.divisors):
            pr = projectivity_report(cover, D)
            proj_entries.append({"divisor": D.to_json(), **pr})
            for name in ("sufficient_direction", "tame_membership",
                         "necessary_direction"):
                _verdict(verdicts, f"D{i}:{name}", pr[name])
        report["projectivity"] = proj_entries
        report["cartesian"] = _cartesian_section(scn, verdicts)
    report["registry"] = _registry_log(scn)
    return _finish(report)


def _cartesian_section(scn: Scenario, verdicts):
    cover = scn.cover
    k = cover.k
    k2 = field_make(k.p, 2 * k.n)
    registry2 = SimpleRegistry(cover.G, k2)
    cd_base = cover.main_cartan()
    cd_ext = cartan_data(cover.G, k2, registry2, cover.rng)
    rows = []
    classes = [("trivial", chop(rep_trivial(cover.G, k), cover.registry,
                                cover.rng, note="trivial"))]
    for i, D in enumerate(scn.divisors):
        classes.append((f"chi_D{i}", oracle_euler_class(cover, D)))
    for label, v in classes:
        agree, base, ext = cartesian_check(v, cd_base, cd_ext, cover.rng)
        rows.append({"class": label, "base_member": base,
                     "extension_member": ext, "agree": agree})
        _verdict(verdicts, f"cartesian:{label}", agree,
                 f"{base} <-> {ext}")
    return {"extension_field": f"GF({k.p}^{2 * k.n})", "rows": rows}


# -- command plumbing --------------------------------------------------------------


def _summary(report: dict) -> str:
    lines = [f"== {report['command']} =="]
    for row in report.get("ramification", []):
        lines.append(
            f"  place {row['place']}: e={row['e']} e_t={row['e_tame']} "
            f"e_w={row['e_wild']} f={row['f']} deg={row['degree']} "
            f"orbit={row['orbit_size']}")
    for v in report["verdicts"]:
        mark = "PASS" if v["pass"] else "FAIL"
        detail = f"  ({v['detail']})" if v.get("detail") else ""
        lines.append(f"  [{mark}] {v['name']}{detail}")
    lines.append(f"  hash {report['canonical_hash'][:16]}")
    return "\n".join(lines)


RUNNERS = {"analyze": run_analyze, "euler": run_euler, "check": run_check}


def _run_one(command: str, path: str, seed_override, mode_override) -> dict:
    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    cfg = parse_scenario(text)
    if seed_override is not None:
        cfg.seed = seed_override
        cfg.raw["seed"] = seed_override
    if mode_override is not None and mode_override != cfg.mode:
        raise InputError("mode override disagrees with the scenario file")
    scn = realize(cfg)
    return RUNNERS[command](scn)


def _exit_code(report: dict) -> int:
    return 0 if all(v["pass"] for v in report["verdicts"]) else 1


def _scenario_paths(paths, skip):
    resolved_skip = {Path(s).resolve() for s in skip if s}
    return [p for p in paths if Path(p).resolve() not in resolved_skip]


def run_suite(paths, golden_path, seed_override) -> int:
    manifest = {}
    if golden_path and Path(golden_path).exists():
        manifest = json.loads(Path(golden_path).read_text())
    worst = 0
    for path in _scenario_paths(paths, [golden_path]):
        name = Path(path).name
        for command in ("analyze", "euler", "check"):
            try:
                report = _run_one(command, path, seed_override, None)
            except InputError as e:
                print(f"{name} {command}: INPUT ERROR ({e})")
                worst = max(worst, 2)
                continue
            code = _exit_code(report)
            expected = manifest.get(name, {}).get(command)
            match = ""
            if expected is not None:
                if expected == report["canonical_hash"]:
                    match = " hash ok"
                else:
                    match = " HASH MISMATCH"
                    code = max(code, 1)
            status = "pass" if code == 0 else "FAIL"
            print(f"{name} {command}: {status}{match}")
            worst = max(worst, code)
    return worst


def make_golden(paths, out_path) -> None:
    manifest = {}
    for path in _scenario_paths(paths, [out_path]):
        name = Path(path).name
        manifest[name] = {}
        for command in ("analyze", "euler", "check"):
            report = _run_one(command, path, None, None)
            manifest[name][command] = report["canonical_hash"]
    Path(out_path).write_text(json.dumps(manifest, indent=1, sort_keys=True))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="equirr",
        description="equivariant Riemann-Roch engine over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "euler", "check"):
        p = sub.add_parser(name)
        p.add_argument("scenario", help="scenario file path, or - for stdin")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--json", dest="json_out", default=None,
                       help="write the full JSON report here")
        p.add_argument("--mode", choices=["oracle", "abstract"],
                       default=None)
    p = sub.add_parser("suite")
    p.add_argument("scenarios", nargs="+")
    p.add_argument("--golden", default=None,
                   help="manifest of expected canonical hashes")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--write-golden", default=None,
                   help="write a fresh manifest and exit")
    args = parser.parse_args(argv)

    try:
        if args.command == "suite":
            if args.write_golden:
                make_golden(args.scenarios, args.write_golden)
                print(f"wrote {args.write_golden}")
                return 0
            return run_suite(args.scenarios, args.golden, args.seed)
        report = _run_one(args.command, args.scenario, args.seed, args.mode)
        print(_summary(report))
        if args.json_out:
            Path(args.json_out).write_text(
                json.dumps(report, indent=1, sort_keys=True))
        return _exit_code(report)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except (CapExceeded, Inconsistency) as e:
        print(f"internal: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
