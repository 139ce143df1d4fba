"""The equivariant Riemann-Roch formulas as executable operations.

Every operation works over a CoverData value: the group, base field, genus
of the quotient curve, one ramification datum per ramified orbit, and (in
oracle mode) the P^1 geometry that supplies the explicit cohomology
classes.  The two sides being cross-checked are

  * the oracle: composition factors of the group action on an explicit
    Riemann-Roch space basis, and
  * the closed formulas: the ramification-module class, the divided
    induced-cover classes with their divisibility certificates, the
    integral and rational Euler-characteristic formulas, the tame
    mod-regular variant and the scaled identity that needs no weakness
    assumption.

All class arithmetic is exact (Fractions over composition-factor
coordinates); integrality failures raise instead of rounding, because each
integrality IS a theorem statement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import Inconsistency, InputError
from .fields import Field
from .geometry import Divisor, P1Geometry, Place, RamificationDatum
from .groups import FiniteGroup
from .k0 import CartanData, cartan_data, in_cartan_image, is_projective_class
from .reps import (ClassVector, SimpleRegistry, chop, head_multiplicity,
                   is_projective, projective_cover_over_inertia,
                   rep_induce, rep_regular, rep_restrict)


@dataclass
class CoverData:
    """Everything the formula side needs about one weakly ramified cover."""

    G: FiniteGroup
    k: Field
    g_Y: int
    registry: SimpleRegistry
    rng: random.Random
    orbit_data: list[RamificationDatum]
    geometry: P1Geometry | None = None
    abstract_coefficients: dict[int, int] | None = None  # index -> n
    _caches: dict = dc_field(default_factory=dict)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_geometry(cls, geometry: P1Geometry, rng: random.Random,
                      registry: SimpleRegistry | None = None) -> "CoverData":
        reg = registry or SimpleRegistry(geometry.G, geometry.k)
        data = [geometry.ramification(orb[0])
                for orb in geometry.ramified_orbits()]
        return cls(G=geometry.G, k=geometry.k, g_Y=0, registry=reg, rng=rng,
                   orbit_data=data, geometry=geometry)

    @classmethod
    def from_abstract(cls, G: FiniteGroup, k: Field, g_Y: int,
                      data: list[RamificationDatum], coefficients,
                      rng: random.Random) -> "CoverData":
        reg = SimpleRegistry(G, k)
        return cls(G=G, k=k, g_Y=g_Y, registry=reg, rng=rng,
                   orbit_data=list(data), geometry=None,
                   abstract_coefficients=dict(enumerate(coefficients)))

    # -- shared classes ------------------------------------------------------

    def regular_class(self) -> ClassVector:
        if "regular" not in self._caches:
            self._caches["regular"] = chop(rep_regular(self.G, self.k),
                                           self.registry, self.rng,
                                           note="regular module")
        return self._caches["regular"]

    def main_cartan(self) -> CartanData:
        if "cartan" not in self._caches:
            self._caches["cartan"] = cartan_data(self.G, self.k,
                                                 self.registry, self.rng)
        return self._caches["cartan"]

    def registry_for(self, group: FiniteGroup):
        """(registry, cartan) for a materialized subgroup, cached."""
        if group is self.G:
            return self.registry, self.main_cartan()
        subs = self._caches.setdefault("sub_registries", {})
        if id(group) not in subs:
            reg = SimpleRegistry(group, self.k)
            cd = cartan_data(group, self.k, reg, self.rng)
            subs[id(group)] = (reg, cd)
        return subs[id(group)]

    def cover_module(self, datum: RamificationDatum, d: int):
        """Ind-ready projective cover of the d-th cotangent power over the
        inertia group."""
        key = ("cov", id(datum), d)
        if key not in self._caches:
            Ig = datum.I_P.as_group()
            wild_in_i = datum.wild.in_subgroup_of(Ig)
            self._caches[key] = projective_cover_over_inertia(
                Ig, wild_in_i, datum.cotangent_power(d))
        return self._caches[key]

    def induced_cover_class(self, datum: RamificationDatum,
                            d: int) -> ClassVector:
        """chop of Ind_{I_P}^G Cov((m/m^2)^{tensor d})."""
        key = ("indcov", id(datum), d)
        if key not in self._caches:
            ind = rep_induce(self.cover_module(datum, d), self.G, datum.I_P)
            self._caches[key] = chop(ind, self.registry, self.rng,
                                     note=f"Ind Cov d={d}")
        return self._caches[key]

    def induced_fiber_class(self, datum: RamificationDatum,
                            d: int) -> ClassVector:
        """chop of Ind_{I_P}^G of the bare d-th cotangent power (no cover);
        used by the scaled identity, which has no weakness assumption."""
        key = ("indcot", id(datum), d)
        if key not in self._caches:
            ind = rep_induce(datum.cotangent_power(d), self.G, datum.I_P)
            self._caches[key] = chop(ind, self.registry, self.rng,
                                     note=f"Ind cot d={d}")
        return self._caches[key]

    # -- divisor bookkeeping ----------------------------------------------------

    def orbit_table(self, D: Divisor | None, last_representative=False):
        """List of (datum, coefficient): every ramified orbit plus every
        orbit meeting the divisor support."""
        if self.geometry is None:
            if D is not None:
                raise InputError("abstract covers carry their coefficients "
                                 "in the scenario payload")
            return [(datum, self.abstract_coefficients.get(i, 0))
                    for i, datum in enumerate(self.orbit_data)]
        D = D or Divisor({})
        geo = self.geometry
        ok, orbit = geo.divisor_is_equivariant(D)
        if not ok:
            raise InputError("divisor is not equivariant; offending orbit: "
                             + ", ".join(repr(p) for p in orbit))
        out = []
        seen: set = set()
        for orb in geo.ramified_orbits():
            rep = orb[-1] if last_representative else orb[0]
            out.append((geo.ramification(rep), D.coeff(rep)))
            seen.update(orb)
        for P in D.support():
            if P in seen:
                continue
            orb = geo.orbit_of_place(P)
            seen.update(orb)
            rep = orb[-1] if last_representative else orb[0]
            out.append((geo.ramification(rep), D.coeff(rep)))
        return out

    def divisor_degree(self, table) -> int:
        return sum(n * datum.deg * datum.orbit_size for datum, n in table)

    def is_weakly_ramified(self) -> bool:
        return all(d.is_weak_here for d in self.orbit_data)

    def is_tame(self) -> bool:
        return all(d.is_tame_here for d in self.orbit_data)

    def genus_upstairs(self) -> int:
        """g_X via Riemann-Hurwitz from the ramification data."""
        if self.geometry is not None:
            return 0
        total = 2 * self.G.order * (self.g_Y - 1)
        for datum in self.orbit_data:
            local = sum(size - 1 for size in datum.filtration)
            total += datum.orbit_size * datum.deg * local
        if total % 2:
            raise Inconsistency("Riemann-Hurwitz total is odd")
        g_x = total // 2 + 1
        if g_x < 0:
            raise Inconsistency("negative genus upstairs")
        return g_x


# -- coefficient decomposition ---------------------------------------------------


def split_coefficient(n: int, e_t: int, e_w: int):
    """Unique (l, m) with n = (e_w - 1) + (l + m e_t) e_w and
    0 <= l < e_t; requires n = -1 mod e_w."""
    if (n - (e_w - 1)) % e_w:
        raise InputError(f"coefficient {n} is not -1 mod {e_w}")
    u = (n - (e_w - 1)) // e_w
    l = u % e_t
    m = (u - l) // e_t
    return l, m


def congruence_condition(cover: CoverData, D: Divisor | None) -> bool:
    """n_P = -1 mod e_P^w at every place (trivially true at tame places)."""
    return all((n + 1) % datum.e_w == 0
               for datum, n in cover.orbit_table(D))


# -- the ramification module -------------------------------------------------------


def ramification_class_via_inertia(cover: CoverData) -> ClassVector:
    """Local route: |G| copies of the ramification module equal the sum over
    ramified places and twists d of e_w * d copies of the induced covers of
    the d-th cotangent powers; the division by |G| must land in integers."""
    if not cover.is_weakly_ramified():
        raise InputError("the ramification module needs a weakly ramified "
                         "cover")
    total = cover.registry.zero()
    for datum in cover.orbit_data:
        if not datum.is_ramified:
            continue
        for d in range(1, datum.e_t):
            v = cover.induced_cover_class(datum, d)
            total = total + v.scale(datum.orbit_size * datum.e_w * d)
    total = total.scale(Fraction(1, cover.G.order))
    if not total.is_integral():
        raise Inconsistency("ramification-module class is not integral; "
                            "this falsifies the local route")
    return total


def ramification_class_via_euler(cover: CoverData) -> ClassVector:
    """Global route: (1 - g_Y)[k[G]] minus the Euler characteristic of the
    equivariant divisor that puts e_w - 1 on every ramified place."""
    if cover.geometry is None:
        raise InputError("the Euler route needs the oracle geometry")
    if not cover.is_weakly_ramified():
        raise InputError("the ramification module needs a weakly ramified "
                         "cover")
    geo = cover.geometry
    data: dict[Place, int] = {}
    for orb in geo.ramified_orbits():
        datum = geo.ramification(orb[0])
        if datum.e_w > 1:
            for P in orb:
                data[P] = datum.e_w - 1
    E = Divisor(data)
    chi = oracle_euler_class(cover, E)
    return cover.regular_class().scale(1 - cover.g_Y) - chi


def ramification_class_routes(cover: CoverData):
    """Both routes plus their agreement verdict (the route-consistency
    theorem); the Euler route is None for abstract covers."""
    local = ramification_class_via_inertia(cover)
    if cover.geometry is None:
        return {"inertia": local, "euler": None, "consistent": None}
    via_euler = ramification_class_via_euler(cover)
    return {"inertia": local, "euler": via_euler,
            "consistent": local == via_euler}


# -- the oracle -----------------------------------------------------------------


def oracle_euler_class(cover: CoverData, D: Divisor) -> ClassVector:
    """Composition factors of the explicit Riemann-Roch representation;
    valid while H^1 vanishes (deg D >= -1 on the line)."""
    if cover.geometry is None:
        raise InputError("oracle classes need the geometry substrate")
    key = ("oracle", tuple((p.sort_key(), c) for p, c in D.items()))
    if key not in cover._caches:
        rep = cover.geometry.rr_action_rep(D)
        cover._caches[key] = chop(rep, cover.registry, cover.rng,
                                  note=f"oracle deg {D.degree()}")
    return cover._caches[key]


# -- divided cover classes (the divisibility theorem) ------------------------------


def divided_cover_class(cover: CoverData, datum: RamificationDatum,
                        d: int) -> dict:
    """The projective k[G_P]-module whose f_P-fold multiple is the induced
    cover of the (-d)-th cotangent power: certify the divisibility of every
    head multiplicity by f_P and return the divided coordinates.

    A divisibility failure falsifies the theorem and raises with a dump."""
    if not datum.is_weak_here:
        raise InputError("divided covers are defined for weakly ramified "
                         "places")
    gp_group = datum.G_P.as_group()
    i_in_gp = datum.I_P.in_subgroup_of(gp_group)
    cov = cover.cover_module(datum, -d)
    induced = rep_induce(cov, gp_group, i_in_gp)
    reg_p, cartan_p = cover.registry_for(gp_group)
    if not is_projective(induced):
        raise Inconsistency("induced cover is not projective over the "
                            "decomposition group")
    head = {}
    for i, S in enumerate(reg_p.simples):
        head[i] = head_multiplicity(induced, S)
    bad = {i: m for i, m in head.items() if m % datum.f}
    if bad:
        raise Inconsistency(
            "divisibility certificate failed: head multiplicities "
            f"{bad} are not divisible by f={datum.f} at place "
            f"{datum.place!r}, twist {d}; full head data {head}")
    total = chop(induced, reg_p, cover.rng, note=f"W certificate d={d}")
    divided = total.scale(Fraction(1, datum.f))
    if not divided.is_integral():
        raise Inconsistency("divided cover class is not integral")
    if not is_projective_class(divided, cartan_p):
        raise Inconsistency("divided cover class is not a projective class")
    return {
        "place": datum.place,
        "twist": d,
        "f": datum.f,
        "head_multiplicities": head,
        "pim_multiplicities": {i: m // datum.f for i, m in head.items()},
        "class": divided,
    }


# -- the Riemann-Roch formulas ----------------------------------------------------


def euler_class_integral(cover: CoverData, D: Divisor | None = None,
                         n_route: str = "inertia", certify: bool = True,
                         last_representative: bool = False):
    """Integral formula: -[ram module] + sum over quotient points and
    twists of the divided induced-cover classes + (1 - g_Y +
    sum [k(R):k] m) [k[G]].  Returns (class, term report)."""
    if not cover.is_weakly_ramified():
        raise InputError("the integral formula needs a weakly ramified "
                         "cover")
    table = cover.orbit_table(D, last_representative=last_representative)
    if not congruence_condition(cover, D):
        raise InputError("divisor violates the -1 mod e_w congruence")
    if n_route == "euler":
        n_class = ramification_class_via_euler(cover)
    else:
        n_class = ramification_class_via_inertia(cover)
    w_sum = cover.registry.zero()
    reg_coeff = Fraction(1 - cover.g_Y)
    terms = []
    for datum, n in table:
        l, m = split_coefficient(n, datum.e_t, datum.e_w)
        reg_coeff += Fraction(datum.residue_deg * m)
        for d in range(1, l + 1):
            if certify:
                divided_cover_class(cover, datum, d)
            w = cover.induced_cover_class(datum, -d) \
                .scale(Fraction(1, datum.f))
            if not w.is_integral():
                raise Inconsistency("induced divided class is not integral")
            w_sum = w_sum + w
        terms.append({"place": datum.place, "n": n, "l": l, "m": m,
                      "f": datum.f, "residue_deg": datum.residue_deg})
    if reg_coeff.denominator != 1:
        raise Inconsistency("regular coefficient is not integral")
    total = (-n_class) + w_sum + cover.regular_class().scale(reg_coeff)
    if not total.is_integral():
        raise Inconsistency("integral formula produced a fractional class")
    report = {"n_route": n_route, "regular_coefficient": int(reg_coeff),
              "orbits": terms}
    return total, report


def euler_class_rational(cover: CoverData, D: Divisor | None = None):
    """Rational prototype: identical shape with the 1/f fractional cover
    terms, assembled without any divisibility certificates."""
    if not cover.is_weakly_ramified():
        raise InputError("the rational formula needs a weakly ramified "
                         "cover")
    table = cover.orbit_table(D)
    if not congruence_condition(cover, D):
        raise InputError("divisor violates the -1 mod e_w congruence")
    n_class = ramification_class_via_inertia(cover)
    total = -n_class
    reg_coeff = Fraction(1 - cover.g_Y)
    for datum, n in table:
        l, m = split_coefficient(n, datum.e_t, datum.e_w)
        reg_coeff += Fraction(datum.residue_deg * m)
        for d in range(1, l + 1):
            total = total + cover.induced_cover_class(datum, -d) \
                .scale(Fraction(1, datum.f))
    return total + cover.regular_class().scale(reg_coeff)


def euler_class_tame_mod_regular(cover: CoverData, D: Divisor | None = None,
                                 exponents=None, r: int = 1):
    """Tame higher-rank variant: -r[ram module] + the cover-class sums for
    the fiber exponents, valid modulo integer multiples of [k[G]].

    For r = 1 with a line bundle the fiber exponent at P is n_P mod e_P
    (in the conventions of this engine; see the ledger note on the sign of
    the printed fiber decomposition)."""
    if not cover.is_tame():
        raise InputError("the mod-regular variant needs a tame cover")
    table = cover.orbit_table(D)
    if exponents is None:
        exponents = [[n % datum.e] for datum, n in table]
    total = ramification_class_via_inertia(cover).scale(-r)
    for (datum, _n), exps in zip(table, exponents):
        for l_i in exps:
            if not 0 <= l_i < max(datum.e, 1):
                raise InputError("fiber exponent out of range")
            for d in range(1, l_i + 1):
                total = total + cover.induced_cover_class(datum, -d) \
                    .scale(Fraction(1, datum.f))
    return total


def regular_multiple(cover: CoverData, diff: ClassVector):
    """(True, t) when diff = t * [k[G]] for an integer t."""
    reg = cover.regular_class()
    reg_c = reg.padded()
    diff_c = diff.padded()
    pivot = next((i for i, c in enumerate(reg_c) if c), None)
    if pivot is None:
        raise Inconsistency("regular class is zero")
    t = diff_c[pivot] / reg_c[pivot]
    if t.denominator != 1:
        return False, None
    if diff == reg.scale(t):
        return True, int(t)
    return False, None


def euler_class_scaled(cover: CoverData, D: Divisor | None = None):
    """|G| times the Euler characteristic as C [k[G]] minus the weighted
    induced fiber twists; no weakness assumption.  Returns
    (class, C, term report); C is computed exactly and must be integral."""
    table = cover.orbit_table(D)
    g_x = cover.genus_upstairs()
    deg_e = cover.divisor_degree(table) if cover.geometry is None else \
        (D or Divisor({})).degree()
    C = Fraction(1 - g_x) + deg_e
    for datum in cover.orbit_data:
        C += Fraction(datum.orbit_size * datum.deg * (datum.e_t - 1), 2)
    if C.denominator != 1:
        raise Inconsistency("scaled-formula constant is not integral")
    total = cover.regular_class().scale(C)
    terms = []
    coeff_of = {id(datum): n for datum, n in table}
    for datum in cover.orbit_data:
        n_p = coeff_of.get(id(datum), 0)
        for d in range(1, datum.e_t):
            v = cover.induced_fiber_class(datum, d - n_p)
            total = total - v.scale(datum.orbit_size * datum.e_w * d)
        terms.append({"place": datum.place, "n": n_p})
    return total, int(C), terms


# -- predicates of the projectivity theorems ----------------------------------------


def projectivity_report(cover: CoverData, D: Divisor) -> dict:
    """Verdicts for the Cartan-membership and projectivity statements on
    one divisor, including the implication checks."""
    if cover.geometry is None:
        raise InputError("projectivity predicates need the oracle")
    geo = cover.geometry
    h0 = geo.rr_action_rep(D)
    chi = chop(h0, cover.registry, cover.rng, note="projectivity oracle")
    weak = cover.is_weakly_ramified()
    tame = cover.is_tame()
    cong = congruence_condition(cover, D)
    member = in_cartan_image(chi, cover.main_cartan())
    proj = is_projective(h0)
    report = {
        "weakly_ramified": weak,
        "tamely_ramified": tame,
        "congruence": cong,
        "in_cartan_image": member,
        "h0_projective": proj,
        "deg": D.degree(),
        # sufficient direction: weak + congruence puts chi in the image,
        # and with H^1 = 0 makes H^0 projective
        "sufficient_direction": (not (weak and cong)) or (member and proj),
        # tame covers always land in the image
        "tame_membership": (not tame) or member,
        # necessary direction: deg D > 2g_X - 2 and projective H^0 forces
        # weak ramification and the congruence
        "necessary_direction": (not (D.degree() > -2 and proj))
                               or (weak and cong),
    }
    return report


def tame_structure_checks(cover: CoverData, datum: RamificationDatum,
                          d: int) -> dict:
    """Class identities available at tame places: the divided cover class
    equals the (-d)-th cotangent line as a decomposition-group class, and
    inducing the restriction multiplies the class by the residue degree."""
    if not datum.is_tame_here:
        raise InputError("structure checks apply at tame places")
    gp_group = datum.G_P.as_group()
    reg_p, _ = cover.registry_for(gp_group)
    w = divided_cover_class(cover, datum, d)
    line = datum.decomposition_line_rep(-d)
    line_class = chop(line, reg_p, cover.rng, note=f"line -{d}")
    identity_a = w["class"] == line_class
    i_in_gp = datum.I_P.in_subgroup_of(gp_group)
    back = rep_induce(rep_restrict(line, i_in_gp), gp_group, i_in_gp)
    back_class = chop(back, reg_p, cover.rng, note="Ind Res line")
    identity_b = back_class == line_class.scale(datum.f)
    return {"cover_equals_line": identity_a,
            "ind_res_multiplies": identity_b,
            "f": datum.f}
