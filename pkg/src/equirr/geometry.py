"""Geometry substrate for the projective line over GF(q): places and
divisors, the Mobius action on closed points, ramification filtrations of a
PGL2 group action with their cotangent characters, and Riemann-Roch spaces
carrying the group action.

Conventions.  The group acts on points by Mobius transformations and on
functions by sigma . f = f o sigma^{-1}; all local data (filtrations,
cotangent scalars, residue actions) are computed in that same convention,
which is what makes the oracle and the closed formulas land in the same
classes.  Geometric computations run in one ambient field GF(q^L) fixed per
geometry; L is the lcm of the degrees that can occur (fixed points of
Mobius maps satisfy quadratics, so ramified places have degree at most 2;
divisor support degrees are supplied by the caller).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import Inconsistency, InputError
from .fields import Field, Poly, RatFunc, field_make, poly_roots
from .groups import FiniteGroup, Subgroup
from .matrices import Mat
from .reps import Rep, subgroup_to_parent

INF_POINT = "inf"  # geometric point at infinity (encodings are ints)


class Place:
    """A closed point of P^1 over GF(q): the symbol at infinity or a monic
    irreducible polynomial; infinity sorts before every finite place."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: Poly | None, check: bool = True):
        if poly is None:
            self.poly = None
            self.degree = 1
            return
        if check:
            from .fields import poly_is_irreducible
            if poly.leading() != 1 or not poly_is_irreducible(poly):
                raise InputError(
                    f"place polynomial must be monic irreducible: {poly!r}")
        self.poly = poly
        self.degree = poly.degree

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    def sort_key(self):
        if self.is_infinity:
            return (0, 0, ())
        return (1, self.degree, self.poly.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.poly == other.poly

    def __hash__(self):
        return hash(("place", None if self.is_infinity else self.poly))

    def to_json(self):
        return "inf" if self.is_infinity else list(self.poly.coeffs)

    def __repr__(self):
        return "Place(inf)" if self.is_infinity else f"Place({self.poly!r})"


def places_up_to(k: Field, bound: int) -> list[Place]:
    """Infinity plus all monic irreducibles of degree <= bound over k,
    in deterministic (degree, encoding) order."""
    if bound < 1:
        raise InputError("place degree bound must be at least 1")
    from .fields import poly_is_irreducible
    out = [Place.infinity()]
    for d in range(1, bound + 1):
        for low in range(k.q**d):
            coeffs = []
            v = low
            for _ in range(d):
                coeffs.append(v % k.q)
                v //= k.q
            cand = Poly(k, coeffs + [1])
            if poly_is_irreducible(cand):
                out.append(Place(cand, check=False))
    return out


class Divisor:
    """Integer-weighted formal sum of places; zero coefficients absent."""

    __slots__ = ("data",)

    def __init__(self, data: dict[Place, int]):
        self.data = {p: int(c) for p, c in data.items() if c}

    def coeff(self, p: Place) -> int:
        return self.data.get(p, 0)

    def degree(self) -> int:
        return sum(c * p.degree for p, c in self.data.items())

    def support(self) -> list[Place]:
        return sorted(self.data, key=Place.sort_key)

    def items(self):
        return [(p, self.data[p]) for p in self.support()]

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.data == other.data

    def to_json(self):
        return [[p.to_json(), c] for p, c in self.items()]

    def __repr__(self):
        return "Divisor(" + " + ".join(
            f"{c}*{p!r}" for p, c in self.items()) + ")" if self.data \
            else "Divisor(0)"


# ---------------------------------------------------------------------------


class PowerBasisCoords:
    """k-linear coordinates of a subfield k(beta) of an ambient field,
    relative to the power basis {beta^i : i < deg}."""

    def __init__(self, k: Field, ambient: Field, beta: int, deg: int):
        self.k = k
        self.ambient = ambient
        self.deg = deg
        fp = field_make(k.p, 1)
        self.fp = fp
        emb = k.embedding_into(ambient)
        self.beta_powers = [1]
        for _ in range(deg - 1):
            self.beta_powers.append(ambient.mul(self.beta_powers[-1], beta))
        cols = []
        for i in range(deg):
            for t in range(k.n):
                val = ambient.mul(int(emb[k.p**t]), self.beta_powers[i])
                cols.append(ambient.digits(val))
        arr = np.array(cols, dtype=np.int64).T  # (ambient.n, deg*k.n)
        self.mat = Mat(fp, arr[:, :, None])
        self._solved_rref = None

    def coords(self, z: int):
        """k-coordinates of z, or None if z is outside k(beta)."""
        rhs = Mat(self.fp,
                  np.array(self.ambient.digits(z),
                           dtype=np.int64)[:, None, None])
        sol = self.mat.solve(rhs)
        if sol is None:
            return None
        out = []
        for i in range(self.deg):
            digits = [sol.get(i * self.k.n + t, 0) for t in range(self.k.n)]
            out.append(self.k.encode(digits))
        return out

    def from_coords(self, cs, target: Field, gen: int) -> int:
        """Rebuild sum(c_i * gen^i) inside another field containing k."""
        emb = self.k.embedding_into(target)
        acc = 0
        power = 1
        for c in cs:
            acc = target.add(acc, target.mul(int(emb[c]), power))
            power = target.mul(power, gen)
        return acc


# ---------------------------------------------------------------------------


class RamificationDatum:
    """Per-place package: decomposition and inertia groups, filtration
    sizes, ramification indices, residue data and the cotangent character
    realized over the canonical residue field."""

    def __init__(self, *, group: FiniteGroup, k: Field, place,
                 G_P: Subgroup, I_P: Subgroup, wild: Subgroup,
                 filtration: list[int], deg: int, orbit_size: int,
                 kP: Field, rho: int, char: dict[int, int],
                 cocycle: dict[int, tuple[int, int]] | None):
        self.group = group
        self.k = k
        self.place = place
        self.G_P = G_P
        self.I_P = I_P
        self.wild = wild
        self.filtration = filtration
        self.deg = deg
        self.orbit_size = orbit_size
        self.kP = kP
        self.rho = rho
        self.char = char
        self.cocycle = cocycle
        self.e = filtration[0]
        self.e_w = filtration[1] if len(filtration) > 1 else 1
        self.e_t = self.e // self.e_w
        self.f = G_P.order // I_P.order
        if deg % self.f:
            raise Inconsistency("residual degree does not divide the place "
                                "degree")
        self.residue_deg = deg // self.f
        self._coords = PowerBasisCoords(k, kP, rho, deg)
        self._cot_cache: dict[int, Rep] = {}
        self._line_cache: dict[int, Rep] = {}
        self._validate()

    # -- validation of the spec invariants --------------------------------

    def _validate(self):
        G = self.group
        if self.e != self.I_P.order:
            raise Inconsistency("e differs from the inertia order")
        if self.wild.order != self.e_w:
            raise Inconsistency("wild subgroup order differs from e_w")
        if any(a < b for a, b in zip(self.filtration, self.filtration[1:])):
            raise Inconsistency("ramification filtration must decrease")
        o = self.e_w
        while o % self.k.p == 0:
            o //= self.k.p
        if o != 1:
            raise Inconsistency("wild inertia is not a p-group")
        # character: homomorphism on I_P, kernel exactly wild, order e_t
        wild_set = set(self.wild.indices)
        orders = set()
        for s in self.I_P.indices:
            a = self.char[s]
            if a == 0:
                raise Inconsistency("cotangent scalar is zero")
            if (a == 1) != (s in wild_set):
                raise Inconsistency("cotangent kernel is not the wild group")
            if a != 1:
                orders.add(self.kP.element_order(a))
        image_order = math.lcm(*orders) if orders else 1
        if image_order != self.e_t:
            raise Inconsistency("cotangent character order differs from e_t")
        for s in self.I_P.indices:
            for t in self.I_P.indices:
                st = G.table[s][t]
                if self.kP.mul(self.char[s], self.char[t]) != self.char[st]:
                    raise Inconsistency("cotangent character is not a "
                                        "homomorphism")
        if self.cocycle is not None and self.G_P.order <= 30:
            for s in self.G_P.indices:
                js, bs = self.cocycle[s]
                for t in self.G_P.indices:
                    jt, bt = self.cocycle[t]
                    st = G.table[s][t]
                    jst, bst = self.cocycle[st]
                    twisted = self.kP.mul(
                        self.kP.frobenius(bt, self.k.n * js), bs)
                    if bst != twisted:
                        raise Inconsistency("cocycle identity fails")
                    if jst != (js + jt) % self.deg:
                        raise Inconsistency("residue actions do not compose")

    # -- derived data -------------------------------------------------------

    @property
    def is_ramified(self) -> bool:
        return self.e > 1

    @property
    def is_tame_here(self) -> bool:
        return self.e_w == 1

    @property
    def is_weak_here(self) -> bool:
        return len(self.filtration) <= 2 or self.filtration[2] == 1

    def wild_in_inertia(self) -> Subgroup:
        return self.wild.in_subgroup_of(self.I_P.as_group())

    def inertia_in_decomposition(self) -> Subgroup:
        return self.I_P.in_subgroup_of(self.G_P.as_group())

    def _mult_matrix(self, scalar: int, frob_steps: int = 0) -> Mat:
        """Matrix over k of z -> frobenius^steps(z) * scalar on kP in the
        power basis of rho."""
        cols = []
        for i in range(self.deg):
            z = self._coords.beta_powers[i]
            if frob_steps:
                z = self.kP.frobenius(z, self.k.n * frob_steps)
            z = self.kP.mul(z, scalar)
            cs = self._coords.coords(z)
            if cs is None:
                raise Inconsistency("residue image left the power basis")
            cols.append(cs)
        rows = [[cols[j][i] for j in range(self.deg)]
                for i in range(self.deg)]
        return Mat.from_rows(self.k, rows)

    def cotangent_power(self, d: int) -> Rep:
        """(m_P/m_P^2)^{tensor d} as a k-representation of the inertia
        group; tensor powers are over the residue field, so the dimension
        stays [k(P):k] for every d."""
        if d not in self._cot_cache:
            Ig = self.I_P.as_group()
            to_parent = subgroup_to_parent(self.I_P)
            images = {}
            for t, g in enumerate(Ig.generators):
                a = self.char[to_parent[g]]
                images[t] = self._mult_matrix(self.kP.pow_(a, d))
            rep = Rep(Ig, self.k, self.deg, images)
            rep.check_homomorphism()
            self._cot_cache[d] = rep
        return self._cot_cache[d]

    def decomposition_line_rep(self, d: int) -> Rep:
        """(m_P/m_P^2)^{tensor d} as a k-representation of the full
        decomposition group (semilinear residue action plus cocycle);
        available only for geometric data."""
        if self.cocycle is None:
            raise InputError("decomposition-line data needs a geometric "
                             "ramification datum")
        if d not in self._line_cache:
            Gg = self.G_P.as_group()
            to_parent = subgroup_to_parent(self.G_P)
            images = {}
            for t, g in enumerate(Gg.generators):
                j, b = self.cocycle[to_parent[g]]
                images[t] = self._mult_matrix(self.kP.pow_(b, d),
                                              frob_steps=j)
            rep = Rep(Gg, self.k, self.deg, images)
            rep.check_homomorphism()
            self._line_cache[d] = rep
        return self._line_cache[d]

    def to_json(self):
        # field elements serialize as the GF(p) coefficient lists of their
        # representative polynomials
        values = [[s, list(self.kP.digits(a))]
                  for s, a in sorted(self.char.items())]
        return {
            "place": (self.place.to_json()
                      if isinstance(self.place, Place) else str(self.place)),
            "degree": self.deg,
            "orbit_size": self.orbit_size,
            "e": self.e, "e_tame": self.e_t, "e_wild": self.e_w,
            "f": self.f,
            "filtration": list(self.filtration),
            "cotangent_order": self.e_t,
            "cotangent_values": values,
            "weakly_ramified": self.is_weak_here,
        }


def fiber_character(datum: RamificationDatum, n: int) -> Rep:
    """Fiber of L(D) at the place as an inertia representation: the
    (-n)-th cotangent power."""
    return datum.cotangent_power(-n)


# ---------------------------------------------------------------------------


class P1Geometry:
    """The projective line over k with a PGL2 action: orbits, ramification
    data, Riemann-Hurwitz audit, Riemann-Roch spaces and their action."""

    def __init__(self, k: Field, G: FiniteGroup, extra_degrees=()):
        if G.kind != "pgl2":
            raise InputError("geometry needs a PGL2 matrix group")
        if G.field is not k:
            raise InputError("group matrices are over a different field")
        self.k = k
        self.G = G
        L = 1
        degs = set(extra_degrees)
        if G.order > 1:
            degs.add(2)
        for d in degs:
            L = math.lcm(L, d)
        self.ambient_degree = L
        self.K = field_make(k.p, k.n * L)
        self._emb = k.embedding_into(self.K)
        self._emb_inv = {int(v): i for i, v in enumerate(self._emb)}
        self._emb_mats: dict[int, tuple] = {}
        self._root_cache: dict[Place, int] = {}
        self._datum_cache: dict[Place, RamificationDatum] = {}
        self._mobius_cache: dict[tuple[int, Place], Place] = {}
        self._ramified: list[Place] | None = None

    # -- points -------------------------------------------------------------

    def _matrix_in_ambient(self, sigma: int):
        if sigma not in self._emb_mats:
            self._emb_mats[sigma] = tuple(int(self._emb[x])
                                          for x in self.G.labels[sigma])
        return self._emb_mats[sigma]

    def mobius_point(self, sigma: int, x):
        """Image of an ambient point (encoding or INF_POINT) under sigma."""
        a, b, c, d = self._matrix_in_ambient(sigma)
        K = self.K
        if x == INF_POINT:
            if c == 0:
                return INF_POINT
            return K.mul(a, K.inv(c))
        den = K.add(K.mul(c, x), d)
        if den == 0:
            return INF_POINT
        num = K.add(K.mul(a, x), b)
        return K.mul(num, K.inv(den))

    def place_root(self, P: Place):
        """Deterministic geometric point over P in the ambient field."""
        if P.is_infinity:
            return INF_POINT
        if P not in self._root_cache:
            if self.K.n % (self.k.n * P.degree):
                raise InputError(
                    f"ambient field is too small for a degree-{P.degree} "
                    "place; declare the degree when building the geometry")
            roots = poly_roots(P.poly.map_field(self.K))
            if not roots:
                raise Inconsistency("place polynomial has no ambient root")
            self._root_cache[P] = roots[0]
        return self._root_cache[P]

    def place_of_point(self, x) -> Place:
        """Closed point containing an ambient geometric point."""
        if x == INF_POINT:
            return Place.infinity()
        K, k = self.K, self.k
        orbit = [x]
        cur = K.frobenius(x, k.n)
        while cur != x:
            orbit.append(cur)
            cur = K.frobenius(cur, k.n)
        poly = Poly.one(K)
        for r in orbit:
            poly = poly * Poly(K, [K.neg(r), 1])
        coeffs = []
        for cK in poly.coeffs:
            if cK not in self._emb_inv:
                raise Inconsistency("minimal polynomial has a coefficient "
                                    "outside the base field")
            coeffs.append(self._emb_inv[cK])
        return Place(Poly(k, coeffs), check=False)

    def mobius_on_place(self, sigma: int, P: Place) -> Place:
        key = (sigma, P)
        if key not in self._mobius_cache:
            if P.is_infinity:
                a, b, c, d = self.G.labels[sigma]
                if c == 0:
                    img = Place.infinity()
                else:
                    root = self.k.mul(a, self.k.inv(c))
                    img = Place(Poly(self.k, [self.k.neg(root), 1]),
                                check=False)
            else:
                beta = self.mobius_point(sigma, self.place_root(P))
                img = self.place_of_point(beta)
            if img.degree != P.degree:
                raise Inconsistency("Mobius action changed a place degree")
            self._mobius_cache[key] = img
        return self._mobius_cache[key]

    def orbit_of_place(self, P: Place) -> list[Place]:
        out = {self.mobius_on_place(s, P) for s in range(self.G.order)}
        return sorted(out, key=Place.sort_key)

    def divisor_is_equivariant(self, D: Divisor):
        """(True, None) or (False, offending orbit)."""
        seen = set()
        for P in D.support():
            if P in seen:
                continue
            orbit = self.orbit_of_place(P)
            seen.update(orbit)
            coeffs = {D.coeff(Q) for Q in orbit}
            if len(coeffs) > 1:
                return False, orbit
        return True, None

    # -- ramification -----------------------------------------------------------

    def ramified_places(self) -> list[Place]:
        """All closed points with nontrivial inertia, via geometric fixed
        points of the nonidentity elements."""
        if self._ramified is None:
            pts = set()
            for s in range(self.G.order):
                if s == self.G.identity:
                    continue
                a, b, c, d = self._matrix_in_ambient(s)
                K = self.K
                if c == 0:
                    pts.add(INF_POINT)
                fix = Poly(K, [K.neg(b), K.sub(d, a), c])
                for r in poly_roots(fix):
                    pts.add(r)
            places = {self.place_of_point(x) for x in pts}
            self._ramified = sorted(places, key=Place.sort_key)
        return self._ramified

    def ramified_orbits(self) -> list[list[Place]]:
        seen = set()
        orbits = []
        for P in self.ramified_places():
            if P in seen:
                continue
            orb = self.orbit_of_place(P)
            seen.update(orb)
            orbits.append(orb)
        return orbits

    def _contact_order(self, sigma: int, alpha) -> int:
        """i(sigma) = v_Q(sigma.t - t) at the fixed geometric point."""
        K = self.K
        inv = self.G.inverse[sigma]
        A, B, C, D = self._matrix_in_ambient(inv)
        if alpha == INF_POINT:
            if C != 0:
                raise Inconsistency("inertia element moved infinity")
            num = Poly(K, [K.neg(B), K.sub(D, A)])
            if num.is_zero():
                raise Inconsistency("identity reached the contact loop")
            return 2 - num.degree
        h = Poly(K, [B, K.sub(A, D), K.neg(C)])
        if h.is_zero():
            raise Inconsistency("identity reached the contact loop")
        lin = Poly(K, [K.neg(alpha), 1])
        mult = 0
        while True:
            quo, rem = h.divmod(lin)
            if not rem.is_zero():
                break
            h = quo
            mult += 1
        return mult

    def _cotangent_scalar(self, sigma: int, alpha) -> int:
        """a_sigma with sigma.t = a_sigma t mod m^2, in the ambient."""
        K = self.K
        inv = self.G.inverse[sigma]
        A, B, C, D = self._matrix_in_ambient(inv)
        if alpha == INF_POINT:
            return K.mul(D, K.inv(A))
        det = K.sub(K.mul(A, D), K.mul(B, C))
        den = K.add(K.mul(C, alpha), D)
        return K.mul(det, K.inv(K.mul(den, den)))

    def _cocycle_value(self, tau: int, P: Place, alpha) -> int:
        """b_tau with tau.(pi_P) = b_tau pi_P mod m^2, in the ambient;
        pi_P is the closed-point uniformizer (the place polynomial, or 1/x
        at infinity)."""
        K = self.K
        inv = self.G.inverse[tau]
        A, B, C, D = self._matrix_in_ambient(inv)
        if alpha == INF_POINT:
            if C != 0:
                raise Inconsistency("decomposition element moved infinity")
            return K.mul(D, K.inv(A))
        deg = P.degree
        pi_K = P.poly.map_field(K)
        lin_a = Poly(K, [B, A])
        lin_c = Poly(K, [D, C])
        pow_a = [Poly.one(K)]
        pow_c = [Poly.one(K)]
        for _ in range(deg):
            pow_a.append(pow_a[-1] * lin_a)
            pow_c.append(pow_c[-1] * lin_c)
        N = Poly.zero(K)
        for i, ci in enumerate(pi_K.coeffs):
            if ci:
                N = N + (pow_a[i] * pow_c[deg - i]).scale(ci)
        lin = Poly(K, [K.neg(alpha), 1])
        q1, r1 = N.divmod(lin)
        if not r1.is_zero():
            raise Inconsistency("decomposition element does not fix the "
                                "place")
        q2, r2 = pi_K.divmod(lin)
        if not r2.is_zero():
            raise Inconsistency("chosen root is not a root of the place")
        den = K.add(K.mul(C, alpha), D)
        scale = K.pow_(den, deg)
        val = K.mul(q1.evaluate(alpha),
                    K.inv(K.mul(q2.evaluate(alpha), scale)))
        return val

    def ramification(self, P: Place) -> RamificationDatum:
        """Ramification filtration, residue data and cotangent character at
        P, computed at a fixed geometric point over P."""
        if P in self._datum_cache:
            return self._datum_cache[P]
        G, k, K = self.G, self.k, self.K
        gp_idx = [s for s in range(G.order)
                  if self.mobius_on_place(s, P) == P]
        G_P = Subgroup(G, gp_idx, check=False)
        alpha = self.place_root(P)
        i_idx = [s for s in gp_idx if self.mobius_point(s, alpha) == alpha]
        I_P = Subgroup(G, i_idx, check=False)
        contact = {s: self._contact_order(s, alpha)
                   for s in i_idx if s != G.identity}
        filtration = []
        s = 0
        while True:
            size = 1 + sum(1 for v in contact.values() if v >= s + 1)
            filtration.append(size)
            if size == 1:
                break
            s += 1
        wild_idx = [G.identity] + [g for g, v in contact.items() if v >= 2]
        wild = Subgroup(G, sorted(wild_idx), check=False)
        deg = P.degree
        kP = field_make(k.p, k.n * deg)
        if P.is_infinity:
            rho = 1
        else:
            rho_roots = poly_roots(P.poly.map_field(kP))
            if not rho_roots:
                raise Inconsistency("place has no root in its residue field")
            rho = rho_roots[0]
        alpha_coords = PowerBasisCoords(k, K,
                                        1 if alpha == INF_POINT else alpha,
                                        deg)

        def to_kP(z: int) -> int:
            cs = alpha_coords.coords(z)
            if cs is None:
                raise Inconsistency("value does not lie in the residue "
                                    "field")
            return alpha_coords.from_coords(cs, kP, rho)

        char = {}
        for sidx in i_idx:
            if sidx == G.identity:
                char[sidx] = 1
            else:
                char[sidx] = to_kP(self._cotangent_scalar(sidx, alpha))
        cocycle = {}
        for tau in gp_idx:
            if tau == G.identity:
                cocycle[tau] = (0, 1)
                continue
            b = to_kP(self._cocycle_value(tau, P, alpha))
            beta = self.mobius_point(G.inverse[tau], alpha)
            j = None
            probe = alpha
            for jj in range(deg):
                if probe == beta:
                    j = jj
                    break
                probe = K.frobenius(probe, k.n)
            if j is None:
                raise Inconsistency("residue action is not a Frobenius "
                                    "power")
            cocycle[tau] = (j, b)
        orbit_size = G.order // G_P.order
        datum = RamificationDatum(
            group=G, k=k, place=P, G_P=G_P, I_P=I_P, wild=wild,
            filtration=filtration, deg=deg, orbit_size=orbit_size,
            kP=kP, rho=rho, char=char, cocycle=cocycle)
        self._datum_cache[P] = datum
        return datum

    def quotient_place_degree(self, P: Place):
        """(deg of the image place on the quotient line, f_P)."""
        datum = self.ramification(P)
        return datum.residue_deg, datum.f

    def is_weakly_ramified(self) -> bool:
        return all(self.ramification(o[0]).is_weak_here
                   for o in self.ramified_orbits())

    def is_tame(self) -> bool:
        return all(self.ramification(o[0]).is_tame_here
                   for o in self.ramified_orbits())

    def riemann_hurwitz(self):
        """Exact audit of sum deg(P) * sum_s (|G_{P,s}|-1) = 2|G| - 2 for
        the cover P^1 -> P^1; failure aborts a scenario."""
        total = 0
        for orbit in self.ramified_orbits():
            datum = self.ramification(orbit[0])
            local = sum(size - 1 for size in datum.filtration)
            total += len(orbit) * datum.deg * local
        rhs = 2 * self.G.order - 2 if self.G.order > 1 else 0
        return {"lhs": total, "rhs": rhs, "pass": total == rhs}

    # -- Riemann-Roch spaces -----------------------------------------------------

    def rr_space_basis(self, D: Divisor) -> list[RatFunc]:
        """Partial-fraction basis of L(D) = {f : div f + D >= 0}; genus 0,
        so the dimension is deg D + 1 once deg D >= 0 and H^1 vanishes for
        deg D >= -1."""
        k = self.k
        deg_d = D.degree()
        if deg_d < -1:
            raise InputError("divisor degree below -1 leaves the oracle "
                             "regime (H^1 is nonzero)")
        if deg_d < 0:
            return []
        num = Poly.one(k)
        den = Poly.one(k)
        for P, c in D.items():
            if P.is_infinity:
                continue
            if c > 0:
                for _ in range(c):
                    den = den * P.poly
            else:
                for _ in range(-c):
                    num = num * P.poly
        u = RatFunc(num, den)
        x = RatFunc.from_poly(Poly.x(k))
        basis = []
        power = RatFunc.from_poly(Poly.one(k))
        for j in range(deg_d + 1):
            f = u * power
            self._check_in_space(f, D)
            basis.append(f)
            power = power * x
        return basis

    def _check_in_space(self, f: RatFunc, D: Divisor):
        check_places = set(D.support())
        check_places.add(Place.infinity())
        for g, _ in (list(_poly_factor_cached(f.num))
                     + list(_poly_factor_cached(f.den))):
            check_places.add(Place(g, check=False))
        for P in check_places:
            if P.is_infinity:
                v = f.valuation_at_infinity()
            else:
                v = f.valuation_at(P.poly)
            if v < -D.coeff(P):
                raise Inconsistency(
                    f"basis element violates the divisor bound at {P!r}")

    def rr_action_rep(self, D: Divisor) -> Rep:
        """Matrices of f -> f o sigma^{-1} on the partial-fraction basis;
        certified a homomorphism on generator pairs.  Non-equivariant
        divisors are rejected, never symmetrized."""
        ok, orbit = self.divisor_is_equivariant(D)
        if not ok:
            raise InputError(
                "divisor is not equivariant; offending orbit: "
                + ", ".join(repr(p) for p in orbit))
        basis = self.rr_space_basis(D)
        dim = len(basis)
        k = self.k
        deg_d = D.degree()
        num = Poly.one(k)
        den = Poly.one(k)
        for P, c in D.items():
            if P.is_infinity:
                continue
            if c > 0:
                for _ in range(c):
                    den = den * P.poly
            else:
                for _ in range(-c):
                    num = num * P.poly
        u = RatFunc(num, den)
        images = {}
        for t, g in enumerate(self.G.generators):
            ginv = self.G.inverse[g]
            A, B, C, Dd = self.G.labels[ginv]
            cols = []
            for f in basis:
                moved = f.compose_mobius(A, B, C, Dd)
                w = moved / u
                if w.den.degree != 0 or w.den.leading() != 1:
                    raise Inconsistency("moved basis element left the "
                                        "Riemann-Roch space")
                coeffs = list(w.num.coeffs) + [0] * (deg_d + 1
                                                     - len(w.num.coeffs))
                cols.append(coeffs)
            rows = [[cols[j][i] for j in range(dim)] for i in range(dim)]
            images[t] = Mat.from_rows(k, rows)
        rep = Rep(self.G, k, dim, images)
        rep.check_homomorphism()
        return rep

    def principal_divisor(self, f: RatFunc) -> Divisor:
        """div(f) including the place at infinity."""
        if f.is_zero():
            raise InputError("zero function has no divisor")
        data: dict[Place, int] = {}
        for g, m in _poly_factor_cached(f.num):
            data[Place(g, check=False)] = data.get(Place(g, check=False),
                                                   0) + m
        for g, m in _poly_factor_cached(f.den):
            P = Place(g, check=False)
            data[P] = data.get(P, 0) - m
        vinf = f.valuation_at_infinity()
        if vinf:
            data[Place.infinity()] = vinf
        return Divisor(data)


_factor_cache: dict = {}


def _poly_factor_cached(f: Poly):
    from .fields import poly_factor
    key = (id(f.field), f.coeffs)
    if key not in _factor_cache:
        if f.degree < 1:
            _factor_cache[key] = []
        else:
            _factor_cache[key] = [(g, m) for g, m in poly_factor(f)]
    return _factor_cache[key]


# ---------------------------------------------------------------------------
# abstract ramification data (formula side without a curve)


def abstract_datum(G: FiniteGroup, k: Field, *, label: str,
                   decomposition, inertia, wild, residue_degree: int,
                   cot_generator: int | None, cot_value,
                   coefficient: int = 0) -> RamificationDatum:
    """Build a RamificationDatum from an abstract description: subgroups by
    element index, the residue degree [k(P):k], and the cotangent character
    given by a generator of I/wild and a primitive value in the canonical
    residue field (as a GF(p) coefficient list)."""
    G_P = Subgroup(G, decomposition)
    I_P = Subgroup(G, inertia)
    wild_sub = Subgroup(G, wild)
    if not set(wild_sub.indices) <= set(I_P.indices) <= set(G_P.indices):
        raise InputError("need wild <= inertia <= decomposition")
    if any(G.conjugate(g, h) not in set(I_P.indices)
           for g in G_P.indices for h in I_P.indices):
        raise InputError("inertia must be normal in the decomposition group")
    if any(G.conjugate(g, h) not in set(wild_sub.indices)
           for g in I_P.indices for h in wild_sub.indices):
        raise InputError("wild group must be normal in inertia")
    e = I_P.order
    e_w = wild_sub.order
    if e % e_w:
        raise InputError("wild order must divide the inertia order")
    e_t = e // e_w
    deg = residue_degree
    kP = field_make(k.p, k.n * deg)
    # {y^i : i < deg} is a k-basis of the canonical residue field for the
    # field generator y (encoding p); degree-1 places use the basis {1}
    rho = 1 if deg == 1 else k.p
    filtration = [e, e_w, 1] if e_w > 1 else [e, 1]
    char = {G.identity: 1}
    if e_t == 1:
        for s in I_P.indices:
            char[s] = 1
    else:
        if cot_generator is None:
            raise InputError("a cotangent generator is required when "
                             "e_t > 1")
        if cot_generator not in set(I_P.indices):
            raise InputError("cotangent generator must lie in inertia")
        val = kP.encode(cot_value) if isinstance(cot_value, (list, tuple)) \
            else int(cot_value)
        if val == 0 or kP.element_order(val) != e_t:
            raise InputError("cotangent value must have order exactly e_t")
        # extend multiplicatively: s = g^j * w with w wild
        wild_set = set(wild_sub.indices)
        assigned = {s: None for s in I_P.indices}
        for w in wild_sub.indices:
            assigned[w] = 1
        cur = cot_generator
        cur_val = val
        for _ in range(e_t):
            for w in wild_sub.indices:
                assigned[G.table[cur][w]] = cur_val
            cur = G.table[cur][cot_generator]
            cur_val = kP.mul(cur_val, val)
        if any(v is None for v in assigned.values()):
            raise InputError("cotangent generator does not generate "
                             "I/wild")
        char.update(assigned)
    if e_t > 1 and set(wild_sub.indices) != \
            {s for s in I_P.indices if char[s] == 1}:
        raise InputError("cotangent kernel is not the declared wild group")
    # Galois-compatibility of the character under decomposition conjugation
    f = G_P.order // I_P.order
    if f > 1:
        q_r = k.q ** (deg // f)
        for tau in G_P.indices:
            ok = False
            for j in range(f):
                if all(char[G.conjugate(tau, s)]
                       == kP.pow_(char[s], q_r**j) for s in I_P.indices):
                    ok = True
                    break
            if not ok:
                raise InputError("cotangent character is not Galois "
                                 "compatible with the decomposition group")
    return RamificationDatum(
        group=G, k=k, place=label, G_P=G_P, I_P=I_P, wild=wild_sub,
        filtration=filtration, deg=deg,
        orbit_size=G.order // G_P.order,
        kP=kP, rho=rho, char=char, cocycle=None)
