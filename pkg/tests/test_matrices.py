import random

from equirr.fields import Poly, field_make
from equirr.matrices import (EchelonBasis, Mat, matrix_charpoly,
                             matrix_nullspace, matrix_rank, matrix_solve)


def random_matrix(F, rows, cols, rng):
    return Mat.from_rows(
        F, [[F.rand_elem(rng) for _ in range(cols)] for _ in range(rows)])


def test_rank_identity():
    F = field_make(5, 1)
    assert matrix_rank(Mat.identity(F, 3)) == 3


def test_nullspace_zero_matrix():
    F = field_make(3, 1)
    ns = matrix_nullspace(Mat.zeros(F, 2, 2))
    assert ns.cols == 2


def test_charpoly_diagonal():
    F = field_make(3, 1)
    m = Mat.from_rows(F, [[1, 0], [0, 2]])
    x = Poly.x(F)
    expected = (x - Poly.const(F, 1)) * (x - Poly.const(F, 2))
    assert matrix_charpoly(m) == expected


def test_charpoly_companion():
    # companion matrix of f has charpoly f
    F = field_make(7, 1)
    f = Poly(F, [3, 1, 4, 1])  # monic cubic
    m = Mat.from_rows(F, [[0, 0, F.neg(3)],
                          [1, 0, F.neg(1)],
                          [0, 1, F.neg(4)]])
    assert matrix_charpoly(m) == f


def test_rank_nullity_random():
    rng = random.Random(2)
    for p, n in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]:
        F = field_make(p, n)
        for _ in range(25):
            r = rng.randrange(1, 6)
            c = rng.randrange(1, 6)
            m = random_matrix(F, r, c, rng)
            assert m.rank() + m.nullspace().cols == c
            ns = m.nullspace()
            if ns.cols:
                assert (m @ ns).is_zero()


def test_cayley_hamilton_random():
    rng = random.Random(9)
    count = 0
    for p, n in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]:
        F = field_make(p, n)
        for _ in range(20):
            d = rng.randrange(1, 7)
            m = random_matrix(F, d, d, rng)
            cp = m.charpoly()
            assert m.eval_poly(cp).is_zero()
            count += 1
    assert count >= 100


def test_solve_and_inverse():
    rng = random.Random(4)
    for p, n in [(3, 1), (5, 1), (2, 2)]:
        F = field_make(p, n)
        for _ in range(20):
            d = rng.randrange(1, 6)
            a = random_matrix(F, d, d, rng)
            x = random_matrix(F, d, 2, rng)
            b = a @ x
            sol = matrix_solve(a, b)
            assert sol is not None
            assert a @ sol == b
            inv = a.inv()
            if inv is not None:
                assert a @ inv == Mat.identity(F, d)
                assert inv @ a == Mat.identity(F, d)


def test_solve_inconsistent():
    F = field_make(3, 1)
    a = Mat.from_rows(F, [[1, 0], [1, 0]])
    b = Mat.from_rows(F, [[1], [2]])
    assert matrix_solve(a, b) is None


def test_matmul_extension_field():
    F = field_make(3, 2)
    rng = random.Random(8)
    for _ in range(20):
        a = random_matrix(F, 3, 3, rng)
        b = random_matrix(F, 3, 3, rng)
        prod = a @ b
        # compare against scalar-by-scalar multiplication
        for i in range(3):
            for j in range(3):
                acc = 0
                for k in range(3):
                    acc = F.add(acc, F.mul(a.get(i, k), b.get(k, j)))
                assert prod.get(i, j) == acc


def test_kron_dimensions_and_values():
    F = field_make(5, 1)
    a = Mat.from_rows(F, [[1, 2], [3, 4]])
    b = Mat.from_rows(F, [[2, 0], [1, 1]])
    k = a.kron(b)
    assert (k.rows, k.cols) == (4, 4)
    assert k.get(0, 0) == F.mul(a.get(0, 0), b.get(0, 0))
    assert k.get(3, 3) == F.mul(a.get(1, 1), b.get(1, 1))
    assert k.get(1, 2) == F.mul(a.get(0, 1), b.get(1, 0))


def test_echelon_basis_spin_behaviour():
    F = field_make(3, 1)
    eb = EchelonBasis(F, 3)
    import numpy as np
    v1 = np.array([[1], [2], [0]], dtype=np.int64).reshape(3, 1)
    assert eb.add(v1)
    assert not eb.add((2 * v1) % 3)
    v2 = np.array([[0], [1], [1]], dtype=np.int64).reshape(3, 1)
    assert eb.add(v2)
    assert len(eb) == 2


def test_charpoly_block_multiplicative():
    F = field_make(3, 1)
    a = Mat.from_rows(F, [[1, 1], [0, 1]])
    b = Mat.from_rows(F, [[2]])
    blk = Mat.zeros(F, 3, 3)
    import numpy as np
    arr = np.zeros((3, 3, 1), dtype=np.int64)
    arr[:2, :2] = a.a
    arr[2:, 2:] = b.a
    blk = Mat(F, arr)
    assert blk.charpoly() == a.charpoly() * b.charpoly()
