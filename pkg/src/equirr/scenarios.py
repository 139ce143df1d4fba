"""Scenario files: parsing, validation and realization into CoverData.

A scenario is a JSON document; the schema is documented in
docs/scenario-format.md.  Parsing is strict: unknown modes, malformed
matrices, reducible place polynomials and non-equivariant divisors are
rejected with diagnostics naming the offending field or orbit.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field

from .engine import CoverData
from .errors import InputError
from .fields import Field, Poly, field_make, poly_roots
from .geometry import Divisor, P1Geometry, Place, abstract_datum
from .groups import (DEFAULT_ORDER_CAP, FiniteGroup, pgl2_inv, pgl2_mul,
                     pgl2_normalize)


@dataclass
class ScenarioConfig:
    p: int
    n: int
    mode: str  # "oracle" | "abstract"
    group_spec: dict
    divisors: list  # raw JSON divisors (oracle mode)
    orbits: list  # raw JSON orbit payloads (abstract mode)
    genus_quotient: int
    seed: int
    options: dict = dc_field(default_factory=dict)
    raw: dict = dc_field(default_factory=dict)


def parse_scenario(source) -> ScenarioConfig:
    """Parse and validate a scenario from JSON text, a path-like read
    string, or an already-decoded dict."""
    if isinstance(source, dict):
        doc = source
    else:
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as e:
            raise InputError(f"scenario is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InputError("scenario document must be a JSON object")

    field_spec = doc.get("field")
    if not isinstance(field_spec, dict) or "p" not in field_spec:
        raise InputError("field: expected an object with 'p' and 'n'")
    p = int(field_spec["p"])
    n = int(field_spec.get("n", 1))

    mode = doc.get("mode", "oracle")
    if mode not in ("oracle", "abstract"):
        raise InputError(f"mode: unknown mode {mode!r}")

    group_spec = doc.get("group")
    if not isinstance(group_spec, dict) or "kind" not in group_spec:
        raise InputError("group: expected an object with a 'kind'")
    kind = group_spec["kind"]
    if kind not in ("pgl2", "table", "pgl2_s3_search"):
        raise InputError(f"group.kind: unknown kind {kind!r}")
    if kind == "pgl2" and "generators" not in group_spec:
        raise InputError("group: pgl2 groups need a 'generators' list")
    if kind == "table" and "table" not in group_spec:
        raise InputError("group: table groups need a 'table'")
    for key in ("p", "n"):
        if key in group_spec and int(group_spec[key]) != {"p": p, "n": n}[key]:
            raise InputError(f"group.{key} disagrees with the field spec")

    divisors = doc.get("divisors", [])
    orbits = doc.get("orbits", [])
    if mode == "oracle":
        if kind == "table":
            raise InputError("oracle mode needs a pgl2 group")
        if orbits:
            raise InputError("oracle mode does not take an 'orbits' payload")
        if not isinstance(divisors, list):
            raise InputError("divisors: expected a list of divisors")
    else:
        if divisors:
            raise InputError("abstract mode carries coefficients per orbit,"
                             " not a divisor list")
        if not isinstance(orbits, list) or not orbits:
            raise InputError("abstract mode needs a nonempty 'orbits' list")

    seed = int(doc.get("seed", 0))
    genus = int(doc.get("genus_quotient", 0))
    if genus < 0:
        raise InputError("genus_quotient must be nonnegative")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise InputError("options must be an object")
    return ScenarioConfig(p=p, n=n, mode=mode, group_spec=group_spec,
                          divisors=divisors, orbits=orbits,
                          genus_quotient=genus, seed=seed, options=options,
                          raw=doc)


# -- group construction ------------------------------------------------------------


def _pgl2_order(k: Field, m) -> int:
    ident = pgl2_normalize(k, (1, 0, 0, 1))
    cur = m
    o = 1
    while cur != ident:
        cur = pgl2_mul(k, cur, m)
        o += 1
        if o > k.q**3:
            raise InputError("element order runaway")
    return o


def find_s3_pgl2(k: Field):
    """Deterministic search for an order-3 element with irreducible
    characteristic polynomial plus a normalizing involution."""
    for enc in range(k.q**4):
        raw = []
        v = enc
        for _ in range(4):
            raw.append(v % k.q)
            v //= k.q
        try:
            m = pgl2_normalize(k, tuple(raw))
        except InputError:
            continue
        if _pgl2_order(k, m) != 3:
            continue
        trace = k.add(m[0], m[3])
        det = k.sub(k.mul(m[0], m[3]), k.mul(m[1], m[2]))
        charpoly = Poly(k, [det, k.neg(trace), 1])
        if poly_roots(charpoly):
            continue  # split characteristic polynomial: keep searching
        for enc2 in range(k.q**4):
            raw2 = []
            v2 = enc2
            for _ in range(4):
                raw2.append(v2 % k.q)
                v2 //= k.q
            try:
                t = pgl2_normalize(k, tuple(raw2))
            except InputError:
                continue
            if _pgl2_order(k, t) != 2:
                continue
            conj = pgl2_mul(k, pgl2_mul(k, t, m), pgl2_inv(k, t))
            if conj == pgl2_inv(k, m):
                return [m, t]
    raise InputError("no S3 with the requested shape exists in PGL2 here")


def build_group(cfg: ScenarioConfig, k: Field) -> FiniteGroup:
    spec = cfg.group_spec
    cap = int(cfg.options.get("group_order_cap", DEFAULT_ORDER_CAP))
    if spec["kind"] == "table":
        return FiniteGroup.from_table(spec["table"])
    if spec["kind"] == "pgl2_s3_search":
        gens = find_s3_pgl2(k)
    else:
        gens = []
        for mat in spec["generators"]:
            if (not isinstance(mat, list) or len(mat) != 2
                    or any(len(row) != 2 for row in mat)):
                raise InputError(f"group.generators: bad matrix {mat!r}")
            a, b = mat[0]
            c, d = mat[1]
            gens.append((int(a) % k.q, int(b) % k.q,
                         int(c) % k.q, int(d) % k.q))
    return FiniteGroup.close_generators(k, gens, cap=cap)


# -- divisor construction ------------------------------------------------------------


def parse_place(k: Field, raw) -> Place:
    if raw == "inf":
        return Place.infinity()
    if not isinstance(raw, list) or not raw:
        raise InputError(f"place: expected 'inf' or a coefficient list, "
                         f"got {raw!r}")
    coeffs = [int(c) for c in raw]
    poly = Poly(k, coeffs)
    if poly.degree < 1:
        raise InputError(f"place polynomial must be nonconstant: {raw!r}")
    return Place(poly)  # irreducibility checked by the constructor


def parse_divisor(k: Field, raw) -> Divisor:
    if not isinstance(raw, list):
        raise InputError(f"divisor: expected a list of [place, coeff] "
                         f"pairs, got {raw!r}")
    data: dict[Place, int] = {}
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 2:
            raise InputError(f"divisor entry: expected [place, coeff], "
                             f"got {entry!r}")
        place = parse_place(k, entry[0])
        if place in data:
            raise InputError(f"divisor repeats the place {place!r}")
        data[place] = int(entry[1])
    return Divisor(data)


# -- realization -----------------------------------------------------------------------


@dataclass
class Scenario:
    config: ScenarioConfig
    k: Field
    group: FiniteGroup
    cover: CoverData
    divisors: list[Divisor]
    rng: random.Random


def realize(cfg: ScenarioConfig) -> Scenario:
    k = field_make(cfg.p, cfg.n)
    G = build_group(cfg, k)
    rng = random.Random(cfg.seed)
    if cfg.mode == "oracle":
        divisors = [parse_divisor(k, raw) for raw in cfg.divisors]
        degrees = {p.degree for D in divisors for p in D.support()}
        geometry = P1Geometry(k, G, extra_degrees=sorted(degrees))
        cover = CoverData.from_geometry(geometry, rng)
        for D in divisors:
            ok, orbit = geometry.divisor_is_equivariant(D)
            if not ok:
                raise InputError(
                    "divisor is not constant on the orbit "
                    + ", ".join(repr(p) for p in orbit))
        return Scenario(cfg, k, G, cover, divisors, rng)
    data = []
    coefficients = []
    for i, raw in enumerate(cfg.orbits):
        if not isinstance(raw, dict):
            raise InputError(f"orbits[{i}]: expected an object")
        try:
            cot = raw.get("cotangent") or {}
            datum = abstract_datum(
                G, k,
                label=str(raw.get("label", f"orbit{i}")),
                decomposition=raw["decomposition"],
                inertia=raw["inertia"],
                wild=raw.get("wild", [G.identity]),
                residue_degree=int(raw.get("residue_degree", 1)),
                cot_generator=cot.get("generator"),
                cot_value=cot.get("value"),
            )
        except KeyError as e:
            raise InputError(f"orbits[{i}]: missing key {e}") from None
        data.append(datum)
        coefficients.append(int(raw.get("coefficient", 0)))
    cover = CoverData.from_abstract(G, k, cfg.genus_quotient, data,
                                    coefficients, rng)
    return Scenario(cfg, k, G, cover, [], rng)
