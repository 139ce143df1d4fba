"""Dense exact matrices over finite fields.

Entries are stored as a numpy int64 tensor of shape (rows, cols, n) holding
base-p coefficient digits, so row operations vectorize even over extension
fields.  Elimination uses deterministic first-nonzero pivoting.  Everything
is immutable from the caller's point of view: operations return new Mat
values.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .fields import Field, Poly


class Mat:
    __slots__ = ("field", "rows", "cols", "a")

    def __init__(self, field: Field, a: np.ndarray):
        # a: (rows, cols, n) digit tensor, values already reduced mod p
        self.field = field
        self.rows = a.shape[0]
        self.cols = a.shape[1]
        self.a = a

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, np.zeros((rows, cols, field.n), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, size: int) -> "Mat":
        a = np.zeros((size, size, field.n), dtype=np.int64)
        for i in range(size):
            a[i, i, 0] = 1
        return cls(field, a)

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        a = np.zeros((r, c, field.n), dtype=np.int64)
        for i, row in enumerate(rows):
            if len(row) != c:
                raise InputError("ragged matrix rows")
            for j, enc in enumerate(row):
                a[i, j] = field.digits(enc % field.q if field.n == 1 else enc)
        return cls(field, a)

    @classmethod
    def column(cls, field: Field, entries) -> "Mat":
        return cls.from_rows(field, [[e] for e in entries])

    # -- entry access -----------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return self.field.encode(self.a[i, j])

    def to_lists(self):
        return [[self.get(i, j) for j in range(self.cols)]
                for i in range(self.rows)]

    def encoded(self) -> np.ndarray:
        """(rows, cols) array of encoded entries."""
        powers = np.array(self.field._powers, dtype=np.int64)
        return self.a @ powers

    def is_zero(self) -> bool:
        return not self.a.any()

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field is other.field
                and self.rows == other.rows and self.cols == other.cols
                and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((id(self.field), self.rows, self.cols,
                     self.a.tobytes()))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.field, (self.a + other.a) % self.field.p)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.field, (self.a - other.a) % self.field.p)

    def __neg__(self) -> "Mat":
        return Mat(self.field, (-self.a) % self.field.p)

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols \
                or self.field is not other.field:
            raise InputError("matrix shape or field mismatch")

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows or self.field is not other.field:
            raise InputError(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}")
        F = self.field
        n = F.n
        if n == 1:
            prod = (self.a[:, :, 0] @ other.a[:, :, 0]) % F.p
            return Mat(F, prod[:, :, None])
        raw = np.zeros((self.rows, other.cols, 2 * n - 1), dtype=np.int64)
        for s in range(n):
            part = np.tensordot(self.a[:, :, s], other.a, axes=([1], [0]))
            raw[:, :, s:s + n] += part
        return Mat(F, _reduce_tail(F, raw % F.p))

    def scale(self, enc: int) -> "Mat":
        F = self.field
        if F.n == 1:
            return Mat(F, (self.a * enc) % F.p)
        sd = np.array(F.digits(enc), dtype=np.int64)
        raw = np.zeros(self.a.shape[:-1] + (2 * F.n - 1,), dtype=np.int64)
        for s in range(F.n):
            if sd[s]:
                raw[..., s:s + F.n] += self.a * sd[s]
        return Mat(F, _reduce_tail(F, raw % F.p))

    @property
    def T(self) -> "Mat":
        return Mat(self.field, np.ascontiguousarray(
            self.a.transpose(1, 0, 2)))

    def hstack(self, other: "Mat") -> "Mat":
        return Mat(self.field, np.concatenate([self.a, other.a], axis=1))

    def vstack(self, other: "Mat") -> "Mat":
        return Mat(self.field, np.concatenate([self.a, other.a], axis=0))

    def submatrix(self, rows, cols) -> "Mat":
        return Mat(self.field, np.ascontiguousarray(
            self.a[np.ix_(list(rows), list(cols))]))

    def columns(self, cols) -> "Mat":
        return Mat(self.field, np.ascontiguousarray(self.a[:, list(cols)]))

    def kron(self, other: "Mat") -> "Mat":
        F = self.field
        n = F.n
        r = self.rows * other.rows
        c = self.cols * other.cols
        if n == 1:
            out = np.kron(self.a[:, :, 0], other.a[:, :, 0]) % F.p
            return Mat(F, out[:, :, None])
        raw = np.zeros((self.rows, other.rows, self.cols, other.cols,
                        2 * n - 1), dtype=np.int64)
        for s in range(n):
            block = np.einsum("ij,klt->ikjlt", self.a[:, :, s], other.a)
            raw[..., s:s + n] += block
        raw = raw.reshape(r, c, 2 * n - 1) % F.p
        return Mat(F, _reduce_tail(F, raw))

    def trace(self) -> int:
        F = self.field
        acc = 0
        for i in range(min(self.rows, self.cols)):
            acc = F.add(acc, self.get(i, i))
        return acc

    def pow_(self, e: int) -> "Mat":
        if self.rows != self.cols:
            raise InputError("matrix power needs a square matrix")
        result = Mat.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    # -- elimination --------------------------------------------------------

    def rref(self):
        """Reduced row echelon form.  Returns (R, pivot_columns)."""
        F = self.field
        A = self.a.copy()
        pivots = []
        r = 0
        for col in range(self.cols):
            if r >= self.rows:
                break
            nz = np.nonzero(A[r:, col].any(axis=1))[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                A[[r, i]] = A[[i, r]]
            piv = F.encode(A[r, col])
            if piv != 1:
                A[r] = _row_scale(F, A[r], F.inv(piv))
            mask = A[:, col].any(axis=1)
            mask[r] = False
            idx = np.nonzero(mask)[0]
            if idx.size:
                factors = A[idx, col].copy()
                A[idx] = (A[idx] - _outer_rows(F, factors, A[r])) % F.p
            pivots.append(col)
            r += 1
        return Mat(F, A), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Mat":
        """Basis of the right kernel, as columns; deterministic."""
        F = self.field
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        out = np.zeros((self.cols, len(free), F.n), dtype=np.int64)
        for k, j in enumerate(free):
            out[j, k, 0] = 1
            for i, pc in enumerate(pivots):
                out[pc, k] = (-R.a[i, j]) % F.p
        return Mat(F, out)

    def solve(self, b: "Mat"):
        """Solve self @ X = b; returns X (free vars zero) or None."""
        if b.rows != self.rows:
            raise InputError("solve: right-hand side row mismatch")
        F = self.field
        aug = self.hstack(b)
        R, pivots = aug.rref()
        for pc in pivots:
            if pc >= self.cols:
                return None  # pivot in the rhs block: inconsistent
        X = np.zeros((self.cols, b.cols, F.n), dtype=np.int64)
        for i, pc in enumerate(pivots):
            X[pc] = R.a[i, self.cols:]
        return Mat(F, X)

    def inv(self):
        if self.rows != self.cols:
            raise InputError("inverse needs a square matrix")
        X = self.solve(Mat.identity(self.field, self.rows))
        if X is None:
            return None
        # X is a right inverse iff rank was full; verify cheaply
        if len(self.rref()[1]) != self.rows:
            return None
        return X

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    # -- characteristic polynomial -------------------------------------------

    def charpoly(self) -> Poly:
        """Characteristic polynomial det(xI - A) via Hessenberg reduction."""
        if self.rows != self.cols:
            raise InputError("charpoly needs a square matrix")
        F = self.field
        d = self.rows
        if d == 0:
            return Poly.one(F)
        H = [[self.get(i, j) for j in range(d)] for i in range(d)]
        # reduce to upper Hessenberg by similarity
        for m in range(1, d - 1):
            pivot_row = None
            for i in range(m, d):
                if H[i][m - 1] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            if pivot_row != m:
                H[m], H[pivot_row] = H[pivot_row], H[m]
                for i in range(d):
                    H[i][m], H[i][pivot_row] = H[i][pivot_row], H[i][m]
            inv_p = F.inv(H[m][m - 1])
            for i in range(m + 1, d):
                if H[i][m - 1] == 0:
                    continue
                u = F.mul(H[i][m - 1], inv_p)
                for j in range(d):
                    H[i][j] = F.sub(H[i][j], F.mul(u, H[m][j]))
                for j in range(d):
                    H[j][m] = F.add(H[j][m], F.mul(u, H[j][i]))
        # recurrence for the characteristic polynomials of leading minors
        polys = [Poly.one(F)]
        for m in range(1, d + 1):
            x_minus = Poly(F, [F.neg(H[m - 1][m - 1]), 1])
            pm = x_minus * polys[m - 1]
            prod = 1
            for i in range(m - 1, 0, -1):
                prod = F.mul(prod, H[i][i - 1])
                term = polys[i - 1].scale(F.mul(prod, H[i - 1][m - 1]))
                pm = pm - term
            polys.append(pm)
        return polys[d]

    def eval_poly(self, f: Poly) -> "Mat":
        """f(self) by Horner."""
        F = self.field
        acc = Mat.zeros(F, self.rows, self.rows)
        for c in reversed(f.coeffs):
            acc = acc @ self
            if c:
                acc = acc + Mat.identity(F, self.rows).scale(c)
        return acc

    # -- field maps ------------------------------------------------------------

    def map_field(self, target: Field) -> "Mat":
        table = self.field.embedding_into(target)
        enc = self.encoded()
        mapped = table[enc]
        return Mat(target, target.digits_array[mapped])

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols} over {self.field})"


def _reduce_tail(field: Field, raw: np.ndarray) -> np.ndarray:
    """Fold coefficients of x^n..x^(2n-2) back using the field modulus."""
    n = field.n
    if raw.shape[-1] == n:
        return raw % field.p
    red = _reduction_rows(field)
    head = raw[..., :n]
    tail = raw[..., n:]
    return (head + np.tensordot(tail, red, axes=([-1], [0]))) % field.p


_reduction_cache: dict[int, np.ndarray] = {}


def _reduction_rows(field: Field) -> np.ndarray:
    key = id(field)
    if key not in _reduction_cache:
        n = field.n
        rows = np.zeros((n - 1, n), dtype=np.int64)
        # x^(n+t) mod modulus, iteratively
        cur = [(-c) % field.p for c in field.modulus[:n]]  # x^n
        for t in range(n - 1):
            rows[t] = cur
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                for i in range(n):
                    nxt[i] = (nxt[i] - lead * field.modulus[i]) % field.p
            cur = nxt
        _reduction_cache[key] = rows
    return _reduction_cache[key]


def _row_scale(field: Field, row: np.ndarray, enc: int) -> np.ndarray:
    if field.n == 1:
        return (row * enc) % field.p
    sd = field.digits(enc)
    raw = np.zeros(row.shape[:-1] + (2 * field.n - 1,), dtype=np.int64)
    for s in range(field.n):
        if sd[s]:
            raw[..., s:s + field.n] += row * sd[s]
    return _reduce_tail(field, raw % field.p)


def _outer_rows(field: Field, factors: np.ndarray, row: np.ndarray):
    """factors: (k, n) digit vectors; row: (c, n).  Returns (k, c, n)."""
    if field.n == 1:
        return (factors[:, 0][:, None, None] * row[None, :, :]) % field.p
    raw = np.zeros((factors.shape[0], row.shape[0], 2 * field.n - 1),
                   dtype=np.int64)
    for s in range(field.n):
        raw[..., s:s + field.n] += (factors[:, s][:, None, None]
                                    * row[None, :, :])
    return _reduce_tail(field, raw % field.p)


class EchelonBasis:
    """Incrementally echelonized row collection used by spinning loops.

    add() reduces the vector against the stored rows; if a nonzero residue
    remains it is normalized, inserted, and True is returned.
    """

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: list[np.ndarray] = []
        self.pivot_cols: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        F = self.field
        v = vec % F.p
        for row, pc in zip(self.rows, self.pivot_cols):
            coef = F.encode(v[pc])
            if coef:
                v = (v - _row_scale(F, row, coef)) % F.p
        return v

    def add(self, vec: np.ndarray) -> bool:
        F = self.field
        v = self.reduce(vec)
        nz = np.nonzero(v.any(axis=1))[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        lead = F.encode(v[pc])
        if lead != 1:
            v = _row_scale(F, v, F.inv(lead))
        # back-reduce existing rows to keep reduction canonical
        for i, row in enumerate(self.rows):
            coef = F.encode(row[pc])
            if coef:
                self.rows[i] = (row - _row_scale(F, v, coef)) % F.p
        self.rows.append(v)
        self.pivot_cols.append(pc)
        return True

    def as_matrix(self) -> Mat:
        if not self.rows:
            return Mat.zeros(self.field, 0, self.width)
        return Mat(self.field, np.stack(self.rows))


# spec-facing aliases
def matrix_rank(m: Mat) -> int:
    return m.rank()


def matrix_solve(a: Mat, b: Mat):
    return a.solve(b)


def matrix_nullspace(m: Mat) -> Mat:
    return m.nullspace()


def matrix_charpoly(m: Mat) -> Poly:
    return m.charpoly()
