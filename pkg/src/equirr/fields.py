"""Exact arithmetic for finite fields GF(p^n), univariate polynomials and
rational functions.

Field elements are encoded as plain ints in [0, q): the base-p digits of the
encoding, least significant first, are the coefficients of the representative
polynomial in the canonical generator.  For the prime field the encoding is
the residue itself.  All arithmetic routes through exp/log tables built once
per field, so scalar operations are O(1) dict-free lookups.

Field construction is deterministic: GF(p^n) always uses the first monic
irreducible of degree n in encoding order, so two descriptors with equal
(p, n) are the same object.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import CapExceeded, Inconsistency, InputError

# Largest field for which exp/log tables are built.  Everything in this
# engine is desk scale; bigger ambients indicate a misconfigured scenario.
TABLE_LIMIT = 1 << 16


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# low-level polynomial arithmetic over GF(p), used only to bootstrap fields
# (modulus search, table construction).  Coefficient lists, low degree first.


def _pp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _pp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _pp_trim(a)


def _pp_powmod(a, e, m, p):
    result = [1]
    base = _pp_mod(a, m, p)
    while e:
        if e & 1:
            result = _pp_mod(_pp_mul(result, base, p), m, p)
        base = _pp_mod(_pp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _pp_monic(c, p):
    lead = c[-1]
    if lead == 1:
        return list(c)
    inv = pow(lead, -1, p)
    return [x * inv % p for x in c]


def _pp_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x % p
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _pp_trim(out)


def _pp_gcd(a, b, p):
    a, b = _pp_trim(list(a)), _pp_trim(list(b))
    while b:
        a, b = b, _pp_mod(a, _pp_monic(b, p), p)
    return a


def _pp_is_irreducible(c, p):
    """Rabin test: x^(p^n) == x mod c and gcd(x^(p^(n/r)) - x, c) = 1."""
    n = len(c) - 1
    if n <= 0:
        return False
    c = _pp_monic(c, p)
    x = [0, 1]
    h = _pp_powmod(x, p**n, c, p)
    if _pp_sub(h, x, p):
        return False
    for r in prime_factors(n):
        h = _pp_powmod(x, p ** (n // r), c, p)
        g = _pp_gcd(c, _pp_sub(h, x, p), p)
        if len(g) - 1 != 0:
            return False
    return True


# ---------------------------------------------------------------------------


class Field:
    """Descriptor plus arithmetic context for GF(p^n).

    Use Field.make(p, n); construction is cached and deterministic.  The
    modulus is the encoding-least monic irreducible of degree n over GF(p),
    stored as a coefficient tuple low-to-high including the leading 1.
    """

    _cache: dict[tuple[int, int], "Field"] = {}

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self._powers = tuple(p**i for i in range(n))
        self._build_tables()
        self._digits_arr = None
        self._embeddings: dict[tuple[int, int], np.ndarray] = {}

    # -- construction -------------------------------------------------

    @classmethod
    def make(cls, p: int, n: int) -> "Field":
        if not is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if n < 1:
            raise InputError(f"field degree {n} must be positive")
        key = (p, n)
        if key not in cls._cache:
            cls._cache[key] = cls(p, n, cls._find_modulus(p, n))
        return cls._cache[key]

    @staticmethod
    def _find_modulus(p: int, n: int) -> tuple[int, ...]:
        if n == 1:
            return (0, 1)
        for low in range(p**n):
            coeffs = []
            v = low
            for _ in range(n):
                coeffs.append(v % p)
                v //= p
            cand = coeffs + [1]
            if _pp_is_irreducible(cand, p):
                return tuple(cand)
        raise CapExceeded(f"no irreducible of degree {n} over GF({p})")

    def _build_tables(self):
        if self.q > TABLE_LIMIT:
            raise CapExceeded(
                f"GF({self.p}^{self.n}) exceeds the desk-scale table limit")
        p, n, q = self.p, self.n, self.q
        if n == 1:
            gen = self._find_prime_generator()
        else:
            gen = None
        # exp/log over a multiplicative generator
        exp = np.zeros(q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        for cand in range(1, q):
            if n == 1 and cand != gen:
                continue
            order = self._element_order_raw(cand)
            if order == q - 1:
                cur = 1
                ok = True
                for i in range(q - 1):
                    exp[i] = cur
                    log[cur] = i
                    cur = self._mul_raw(cur, cand)
                self.generator = cand
                self._exp = exp
                self._log = log
                return
        raise CapExceeded("no multiplicative generator found")  # unreachable

    def _find_prime_generator(self):
        p = self.p
        if p == 2:
            return 1
        fac = prime_factors(p - 1)
        for g in range(2, p):
            if all(pow(g, (p - 1) // r, p) != 1 for r in fac):
                return g
        return None

    # raw digit arithmetic, used only while tables are being built
    def _mul_raw(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        if n == 1:
            return a * b % p
        da = self.digits(a)
        db = self.digits(b)
        prod = _pp_mod(_pp_mul(list(da), list(db), p), list(self.modulus), p)
        return self.encode(prod)

    def _element_order_raw(self, a: int) -> int:
        cur = a
        k = 1
        while cur != 1:
            cur = self._mul_raw(cur, a)
            k += 1
            if k > self.q:
                return 0
        return k

    # -- encoding helpers ----------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return tuple(out)

    def encode(self, digits) -> int:
        total = 0
        for c, w in zip(digits, self._powers):
            total += (c % self.p) * w
        return total

    @property
    def digits_array(self) -> np.ndarray:
        """(q, n) array of base-p digits for every encoded element."""
        if self._digits_arr is None:
            arr = np.zeros((self.q, self.n), dtype=np.int64)
            for a in range(self.q):
                arr[a] = self.digits(a)
            self._digits_arr = arr
        return self._digits_arr

    # -- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return self._add_digits(a, b)

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        total, w = 0, 1
        for _ in range(self.n):
            total += ((a % p) + (b % p)) % p * w
            a //= p
            b //= p
            w *= p
        return total

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        p = self.p
        total, w = 0, 1
        for _ in range(self.n):
            total += (-(a % p)) % p * w
            a //= p
            w *= p
        return total

    def sub(self, a: int, b: int) -> int:
        return self._add_digits(a, self.neg(b)) if self.n > 1 else (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def frobenius(self, a: int, iterate: int = 1) -> int:
        """a ** (p ** iterate), computed exactly."""
        if iterate == 0 or a == 0 or self.q == 2:
            return a
        return self.pow_(a, pow(self.p, iterate, self.q - 1))

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        e = int(self._log[a])
        return (self.q - 1) // _gcd(e, self.q - 1)

    def elements(self):
        return range(self.q)

    def rand_elem(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def rand_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.q)

    # -- embeddings ------------------------------------------------------

    def embedding_into(self, target: "Field") -> np.ndarray:
        """Lookup table realizing the canonical ring embedding into target.

        The image of the source generator is the encoding-least root of the
        source modulus in the target field.  Raises InputError unless the
        source degree divides the target degree over the same prime.
        """
        if target.p != self.p:
            raise InputError("embedding requires equal characteristic")
        if target.n % self.n != 0:
            raise InputError(
                f"degree {self.n} does not divide target degree {target.n}")
        key = (target.p, target.n)
        if key in self._embeddings:
            return self._embeddings[key]
        if target is self:
            table = np.arange(self.q, dtype=np.int64)
            self._embeddings[key] = table
            return table
        mod_t = Poly(target, [c % target.p for c in self.modulus])
        roots = poly_roots(mod_t)
        if not roots:
            raise Inconsistency(f"modulus of {self} has no root in {target}")
        r = roots[0]
        powers = [1]
        for _ in range(self.n - 1):
            powers.append(target.mul(powers[-1], r))
        table = np.zeros(self.q, dtype=np.int64)
        for a in range(self.q):
            acc = 0
            for c, rp in zip(self.digits(a), powers):
                acc = target._add_digits(acc, target.mul(c % target.p, rp))
            table[a] = acc
        self._embeddings[key] = table
        return table

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def field_make(p: int, n: int) -> Field:
    return Field.make(p, n)


def embed(a: int, source: Field, target: Field) -> int:
    return int(source.embedding_into(target)[a])


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial over a Field; coefficients are encoded
    ints, low degree first, no trailing zeros.  The zero polynomial has
    degree -1 (the distinguished sentinel)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        if field.n == 1:
            c = [x % field.p for x in coeffs]
        else:
            c = list(coeffs)
            if any(x < 0 or x >= field.q for x in c):
                raise InputError("polynomial coefficient is not a valid "
                                 f"element encoding for {field}")
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [1])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field, a):
        return cls(field, [a])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field is other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, bi in enumerate(b):
            out[i] = F._add_digits(out[i], bi) if F.n > 1 else (out[i] + bi) % F.p
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(other.coeffs):
                    if bj:
                        out[i + j] = F._add_digits(out[i + j], F.mul(ai, bj)) \
                            if F.n > 1 else (out[i + j] + ai * bj) % F.p
        return Poly(F, out)

    def scale(self, a: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for c in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero() or self.leading() == 1:
            return self
        return self.scale(self.field.inv(self.leading()))

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = F.inv(other.leading())
        quot = [0] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            if rem[-1] != 0:
                factor = F.mul(rem[-1], inv_lead)
                shift = len(rem) - 1 - db
                quot[shift] = factor
                for i, bc in enumerate(other.coeffs):
                    rem[shift + i] = F.sub(rem[shift + i], F.mul(factor, bc))
            rem.pop()
        return Poly(F, quot), Poly(F, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def evaluate(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F._add_digits(F.mul(acc, a), c) if F.n > 1 \
                else (acc * a + c) % F.p
        return acc

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(i % F.p, self.coeffs[i]))
        return Poly(F, out)

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly.one(self.field)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(self.field, c)
        return acc

    def map_field(self, target: Field) -> "Poly":
        table = self.field.embedding_into(target)
        return Poly(target, [int(table[c]) for c in self.coeffs])

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "Poly(" + " + ".join(terms) + f" over {self.field})"


def _pth_root(f: Poly) -> Poly:
    """For f with zero derivative, return g with g(x)^p == f(x)."""
    F = f.field
    p = F.p
    root_exp = F.q // p  # a ** (q/p) is the unique p-th root in GF(q)
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(F.pow_(f.coeffs[i], root_exp) if f.coeffs[i] else 0)
    return Poly(F, out)


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split monic squarefree f into (product of degree-d irreducibles, d)."""
    F = f.field
    out = []
    x = Poly.x(F)
    h = x
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = h.powmod(F.q, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus: f monic squarefree, all factors of degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    while True:
        w = Poly(F, [F.rand_elem(rng) for _ in range(f.degree)])
        if w.degree < 1:
            continue
        if F.p == 2:
            # trace map over GF(2)
            t = Poly.zero(F)
            cur = w % f
            for _ in range(F.n * d):
                t = t + cur
                cur = (cur * cur) % f
            g = f.gcd(t)
        else:
            e = (F.q**d - 1) // 2
            v = w.powmod(e, f) - Poly.one(F)
            g = f.gcd(v)
        if 0 < g.degree < f.degree:
            return (_equal_degree_split(g, d, rng)
                    + _equal_degree_split(f // g, d, rng))


def poly_factor(f: Poly, rng: random.Random | None = None):
    """Full factorization into monic irreducibles with multiplicities.

    Squarefree extraction handles the char-p pitfalls (p-th power parts)
    explicitly; splitting uses seeded Cantor-Zassenhaus so identical seeds
    give identical factor ordering.  Returns [(Poly, mult)] sorted by
    (degree, coefficients).
    """
    if f.is_zero():
        raise InputError("cannot factor the zero polynomial")
    rng = rng or random.Random(0)
    F = f.field
    counts: dict[Poly, int] = {}
    stack = [(f.monic(), 1)]
    while stack:
        g, mult = stack.pop()
        if g.degree <= 0:
            continue
        gp = g.derivative()
        if gp.is_zero():
            stack.append((_pth_root(g), mult * F.p))
            continue
        u = g // g.gcd(gp)  # squarefree part carrying every p-coprime factor
        for part, d in _distinct_degree(u):
            for h in _equal_degree_split(part, d, rng):
                h = h.monic()
                e = 0
                while True:
                    quo, rem = g.divmod(h)
                    if not rem.is_zero():
                        break
                    g = quo
                    e += 1
                counts[h] = counts.get(h, 0) + mult * e
        stack.append((g, mult))
    return sorted(counts.items(), key=lambda kv: kv[0].sort_key())


def poly_is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    fac = poly_factor(f)
    return len(fac) == 1 and fac[0][1] == 1 and fac[0][0].degree == f.degree


def poly_roots(f: Poly, rng: random.Random | None = None) -> list[int]:
    """Roots of f in its own coefficient field, sorted, with multiplicity."""
    out = []
    for g, mult in poly_factor(f, rng):
        if g.degree == 1:
            out.extend([f.field.neg(g.coeffs[0])] * mult)
    return sorted(out)


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Reduced fraction of polynomials: gcd(num, den) = 1, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        F = num.field
        if num.is_zero():
            self.num = num
            self.den = Poly.one(F)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading()
        if lead != 1:
            inv = F.inv(lead)
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: Poly):
        return cls(f, Poly.one(f.field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def evaluate(self, a: int):
        """Value at x = a, or None at a pole."""
        d = self.den.evaluate(a)
        if d == 0:
            return None
        F = self.field
        return F.mul(self.num.evaluate(a), F.inv(d))

    def valuation_at(self, pi: Poly) -> int:
        """Order at the finite place given by monic irreducible pi."""
        if self.is_zero():
            raise ZeroDivisionError("valuation of zero function")
        return _multiplicity(self.num, pi) - _multiplicity(self.den, pi)

    def valuation_at_infinity(self) -> int:
        if self.is_zero():
            raise ZeroDivisionError("valuation of zero function")
        return self.den.degree - self.num.degree

    def compose_mobius(self, a: int, b: int, c: int, d: int) -> "RatFunc":
        """Substitute x -> (a x + b)/(c x + d) and clear denominators."""
        F = self.field
        P = Poly(F, [b, a])
        Q = Poly(F, [d, c])
        m = max(self.num.degree, self.den.degree, 0)
        pow_p = [Poly.one(F)]
        pow_q = [Poly.one(F)]
        for _ in range(m):
            pow_p.append(pow_p[-1] * P)
            pow_q.append(pow_q[-1] * Q)

        def homog(f):
            acc = Poly.zero(F)
            for i, ci in enumerate(f.coeffs):
                if ci:
                    acc = acc + (pow_p[i] * pow_q[m - i]).scale(ci)
            return acc

        return RatFunc(homog(self.num), homog(self.den))

    def map_field(self, target: Field) -> "RatFunc":
        return RatFunc(self.num.map_field(target), self.den.map_field(target))

    def __repr__(self):
        return f"RatFunc(({self.num!r}) / ({self.den!r}))"


def _multiplicity(f: Poly, pi: Poly) -> int:
    m = 0
    while True:
        quo, rem = f.divmod(pi)
        if not rem.is_zero():
            return m
        f = quo
        m += 1
