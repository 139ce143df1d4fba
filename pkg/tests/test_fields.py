import random

import pytest

from equirr.errors import InputError
from equirr.fields import (Poly, RatFunc, embed, field_make,
                           poly_factor, poly_is_irreducible, poly_roots)


def brute_has_root(coeffs, p):
    """Independent root search for a polynomial over GF(p)."""
    return any(sum(c * pow(a, i, p) for i, c in enumerate(coeffs)) % p == 0
               for a in range(p))


def test_field_make_prime():
    F = field_make(3, 1)
    assert F.q == 3
    assert F.modulus == (0, 1)  # modulus x for the prime field


def test_field_make_gf9_modulus():
    # exhaustive oracle: x^2+1 is rootless over GF(3) and nothing smaller
    # in encoding order is irreducible
    assert not brute_has_root([1, 0, 1], 3)
    for low in range(1):  # only candidate below x^2+1 is x^2 itself
        assert brute_has_root([low, 0, 1], 3) or low == 0
    F = field_make(3, 2)
    assert F.modulus == (1, 0, 1)


def test_field_make_gf4_modulus():
    # the four monic quadratics over GF(2); only x^2+x+1 is irreducible
    irreducible = []
    for c0 in range(2):
        for c1 in range(2):
            coeffs = [c0, c1, 1]
            has_root = brute_has_root(coeffs, 2)
            if not has_root:
                irreducible.append(tuple(coeffs))
    assert irreducible == [(1, 1, 1)]
    assert field_make(2, 2).modulus == (1, 1, 1)


def test_field_make_rejects_composite():
    with pytest.raises(InputError):
        field_make(6, 1)


def test_field_make_deterministic():
    a = field_make(5, 2)
    b = field_make(5, 2)
    assert a is b
    assert a.modulus == b.modulus


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2),
                                 (2, 3), (5, 2), (7, 1)])
def test_scalar_arithmetic_axioms(p, n):
    F = field_make(p, n)
    rng = random.Random(7)
    for _ in range(60):
        a, b, c = (F.rand_elem(rng) for _ in range(3))
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    # generator has full order
    assert F.element_order(F.generator) == F.q - 1


def test_frobenius_basics():
    F9 = field_make(3, 2)
    for a in F9.elements():
        assert F9.frobenius(a, 0) == a
        assert F9.frobenius(F9.frobenius(a)) == a  # Gal(GF(9)/GF(3)) = C2
    fixed = [a for a in F9.elements() if F9.frobenius(a) == a]
    # exactly the prime subfield is fixed
    assert sorted(fixed) == [0, 1, 2]


def test_embed_is_ring_hom():
    rng = random.Random(3)
    F3 = field_make(3, 1)
    F9 = field_make(3, 2)
    F81 = field_make(3, 4)
    for src, dst in [(F3, F9), (F3, F81), (F9, F81)]:
        assert embed(0, src, dst) == 0
        assert embed(1, src, dst) == 1
        for _ in range(40):
            a, b = src.rand_elem(rng), src.rand_elem(rng)
            assert embed(src.add(a, b), src, dst) == \
                dst.add(embed(a, src, dst), embed(b, src, dst))
            assert embed(src.mul(a, b), src, dst) == \
                dst.mul(embed(a, src, dst), embed(b, src, dst))


def test_embed_prime_field_frobenius_fixed():
    F3 = field_make(3, 1)
    F9 = field_make(3, 2)
    for a in range(3):
        img = embed(a, F3, F9)
        assert F9.frobenius(img) == img


def test_embed_tower_compatible_from_prime_field():
    F2 = field_make(2, 1)
    F4 = field_make(2, 2)
    F16 = field_make(2, 4)
    for a in range(2):
        via_mid = embed(embed(a, F2, F4), F4, F16)
        assert via_mid == embed(a, F2, F16)


def test_embed_rejects_bad_degree():
    with pytest.raises(InputError):
        embed(1, field_make(2, 2), field_make(2, 3))


def test_factor_x2_plus_1_gf3():
    F = field_make(3, 1)
    f = Poly(F, [1, 0, 1])
    assert not brute_has_root([1, 0, 1], 3)  # oracle: irreducible
    assert poly_factor(f) == [(f, 1)]


def test_factor_difference_of_squares():
    F = field_make(3, 1)
    f = Poly(F, [2, 0, 1])  # x^2 - 1
    fac = poly_factor(f)
    assert sorted((g.coeffs, m) for g, m in fac) == \
        [((1, 1), 1), ((2, 1), 1)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_factor_artin_schreier_split(p):
    F = field_make(p, 1)
    coeffs = [0] * (p + 1)
    coeffs[1] = p - 1  # -x
    coeffs[p] = 1
    f = Poly(F, coeffs)  # x^p - x
    fac = poly_factor(f)
    assert len(fac) == p
    assert all(g.degree == 1 and m == 1 for g, m in fac)


def test_factor_reconstruction_property():
    rng = random.Random(11)
    for p, n in [(2, 1), (3, 1), (5, 1), (3, 2), (2, 2)]:
        F = field_make(p, n)
        for _ in range(25):
            deg = rng.randrange(1, 9)
            coeffs = [F.rand_elem(rng) for _ in range(deg)] + \
                     [F.rand_nonzero(rng)]
            f = Poly(F, coeffs)
            fac = poly_factor(f, random.Random(rng.randrange(10**6)))
            prod = Poly.const(F, f.leading())
            for g, m in fac:
                for _ in range(m):
                    prod = prod * g
            assert prod == f


def test_factor_deterministic_given_seed():
    F = field_make(5, 1)
    f = Poly(F, [1, 2, 3, 0, 1, 1])
    a = poly_factor(f, random.Random(42))
    b = poly_factor(f, random.Random(42))
    assert a == b


def test_poly_roots_multiplicity():
    F = field_make(5, 1)
    x = Poly.x(F)
    f = (x - Poly.const(F, 2)) * (x - Poly.const(F, 2)) * \
        (x - Poly.const(F, 4))
    assert poly_roots(f) == [2, 2, 4]


def test_poly_is_irreducible():
    F = field_make(2, 1)
    assert poly_is_irreducible(Poly(F, [1, 1, 1]))
    assert not poly_is_irreducible(Poly(F, [1, 0, 1]))  # (x+1)^2


def test_poly_divmod_random():
    rng = random.Random(5)
    F = field_make(7, 1)
    for _ in range(40):
        a = Poly(F, [F.rand_elem(rng) for _ in range(rng.randrange(1, 8))])
        b = Poly(F, [F.rand_elem(rng) for _ in range(rng.randrange(1, 5))])
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_ratfunc_normal_form():
    F = field_make(3, 1)
    x = Poly.x(F)
    one = Poly.one(F)
    f = RatFunc(x * x - one, x - one)  # (x^2-1)/(x-1) = x+1
    assert f == RatFunc(x + one, one)
    assert f.den.leading() == 1


def test_ratfunc_arithmetic():
    F = field_make(5, 1)
    x = Poly.x(F)
    one = Poly.one(F)
    f = RatFunc(one, x)
    g = RatFunc(x, x + one)
    h = f * g
    assert h == RatFunc(one, x + one)
    assert (f + g) - g == f
    assert (f / g) * g == f


def test_ratfunc_valuations():
    F = field_make(3, 1)
    x = Poly.x(F)
    one = Poly.one(F)
    f = RatFunc(x * x, x + one)  # zero of order 2 at x=0, pole at x=-1
    assert f.valuation_at(x) == 2
    assert f.valuation_at(x + one) == -1
    assert f.valuation_at_infinity() == -1


def test_ratfunc_compose_mobius():
    F = field_make(5, 1)
    x = Poly.x(F)
    f = RatFunc.from_poly(x)
    g = f.compose_mobius(0, 1, 1, 0)  # x -> 1/x
    assert g == RatFunc(Poly.one(F), x)
