"""Matrix representations of finite groups over finite fields.

Composition factors are the authoritative coordinates for classes in the
Grothendieck group of finitely generated modules: chop() implements a
Norton/Parker style MeatAxe (random algebra elements, kernel vectors of
characteristic-polynomial factors, submodule spinning, recursion on sub and
quotient) and certifies simplicity before a factor enters the registry.
Full direct-sum splitting (Fitting decomposition with a locality
certificate) is kept separate and used only where projective
indecomposables are genuinely needed.

All randomized routines draw from an explicit random.Random so a run is
reproducible from its seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from .errors import CapExceeded, Inconsistency, InputError
from .fields import Field, field_make, poly_factor
from .groups import (FiniteGroup, Subgroup, conjugacy_classes, coset_lookup,
                     schur_zassenhaus_complement, sylow_p)
from .matrices import EchelonBasis, Mat

MEATAXE_ROUNDS = 80
SPLIT_ROUNDS = 60
ISO_TRIES = 60
LOCALITY_EXHAUSTIVE_CAP = 1 << 14
LOCALITY_SAMPLES = 400
SUMMAND_DIM_CAP = 400


def _subgroup_generators(H: Subgroup) -> tuple[int, ...]:
    """Parent indices of a greedy generating set of H."""
    if H.order == 1:
        return ()
    parent = H.parent
    gens = []
    closed = {parent.identity}
    for i in H.indices:
        if i in closed:
            continue
        gens.append(i)
        closed = parent._closure_set(gens)
        if len(closed) == H.order:
            break
    return tuple(gens)


def subgroup_to_parent(H: Subgroup) -> list[int]:
    """Map position in H.as_group() to index in H.parent."""
    Hg = H.as_group()
    parent_pos = {r: i for i, r in enumerate(H.parent.root_index)}
    return [parent_pos[r] for r in Hg.labels]


class Rep:
    """A matrix representation: images for the group's generators, other
    images rebuilt from generator words and cached."""

    def __init__(self, group: FiniteGroup, field: Field, dim: int,
                 gen_images: dict[int, Mat]):
        self.group = group
        self.field = field
        self.dim = dim
        self._gen = dict(gen_images)
        if len(self._gen) != len(group.generators):
            raise InputError("need one image per group generator")
        self._images: dict[int, Mat] = {group.identity: Mat.identity(field, dim)}
        for t, g in enumerate(group.generators):
            self._images[g] = self._gen[t]

    def gen_image(self, t: int) -> Mat:
        return self._gen[t]

    def generator_images(self) -> list[Mat]:
        return [self._gen[t] for t in range(len(self.group.generators))]

    def image(self, i: int) -> Mat:
        if i not in self._images:
            m = Mat.identity(self.field, self.dim)
            for t in self.group.words[i]:
                m = m @ self._gen[t]
            self._images[i] = m
        return self._images[i]

    def check_homomorphism(self):
        """Verify image(a)image(b) = image(ab) on all generator pairs."""
        G = self.group
        for a in G.generators:
            for b in G.generators:
                if self.image(a) @ self.image(b) != self.image(G.table[a][b]):
                    raise Inconsistency("generator images are not a "
                                        "homomorphism")

    def __repr__(self):
        return (f"Rep(dim {self.dim} of order-{self.group.order} group "
                f"over {self.field})")


# -- constructors ---------------------------------------------------------


def rep_trivial(G: FiniteGroup, field: Field, dim: int = 1) -> Rep:
    return Rep(G, field, dim,
               {t: Mat.identity(field, dim)
                for t in range(len(G.generators))})


def rep_regular(G: FiniteGroup, field: Field) -> Rep:
    """Left-regular action on the group algebra: permutation matrices."""
    n = G.order
    images = {}
    for t, g in enumerate(G.generators):
        a = np.zeros((n, n, field.n), dtype=np.int64)
        for j in range(n):
            a[G.table[g][j], j, 0] = 1
        images[t] = Mat(field, a)
    return Rep(G, field, n, images)


def rep_restrict(M: Rep, H: Subgroup) -> Rep:
    if H.parent is not M.group:
        raise InputError("restriction subgroup has the wrong parent")
    Hg = H.as_group()
    to_parent = subgroup_to_parent(H)
    images = {t: M.image(to_parent[g]) for t, g in enumerate(Hg.generators)}
    return Rep(Hg, M.field, M.dim, images)


def rep_induce(M: Rep, G: FiniteGroup, H: Subgroup) -> Rep:
    """Block-matrix induced representation of dimension [G:H] * dim M,
    blocks laid out along the deterministic coset order."""
    if H.parent is not G:
        raise InputError("induction subgroup has the wrong parent")
    if H.as_group() is not M.group:
        raise InputError("representation is not over the given subgroup")
    to_parent = subgroup_to_parent(H)
    hg_pos = {p: k for k, p in enumerate(to_parent)}
    reps, where = coset_lookup(G, H)
    k = len(reps)
    m = M.dim
    F = M.field
    images = {}
    for t, g in enumerate(G.generators):
        a = np.zeros((k * m, k * m, F.n), dtype=np.int64)
        for j, rj in enumerate(reps):
            e = G.table[g][rj]
            i, h = where[e]
            block = M.image(hg_pos[h])
            a[i * m:(i + 1) * m, j * m:(j + 1) * m] = block.a
        images[t] = Mat(F, a)
    return Rep(G, F, k * m, images)


def rep_inflate(M: Rep, G: FiniteGroup, proj) -> Rep:
    """Pull back a representation of a quotient along proj: G -> Q."""
    images = {t: M.image(proj[g]) for t, g in enumerate(G.generators)}
    return Rep(G, M.field, M.dim, images)


def rep_tensor(M: Rep, N: Rep) -> Rep:
    _check_compatible(M, N)
    images = {t: M.gen_image(t).kron(N.gen_image(t))
              for t in range(len(M.group.generators))}
    return Rep(M.group, M.field, M.dim * N.dim, images)


def rep_dual(M: Rep) -> Rep:
    G = M.group
    images = {}
    for t, g in enumerate(G.generators):
        inv = M.image(G.inverse[g])
        images[t] = inv.T
    return Rep(G, M.field, M.dim, images)


def rep_direct_sum(M: Rep, N: Rep) -> Rep:
    _check_compatible(M, N)
    F = M.field
    images = {}
    for t in range(len(M.group.generators)):
        a = np.zeros((M.dim + N.dim, M.dim + N.dim, F.n), dtype=np.int64)
        a[:M.dim, :M.dim] = M.gen_image(t).a
        a[M.dim:, M.dim:] = N.gen_image(t).a
        images[t] = Mat(F, a)
    return Rep(M.group, F, M.dim + N.dim, images)


def _check_compatible(M: Rep, N: Rep):
    if M.group is not N.group or M.field is not N.field:
        raise InputError("representations live over different groups or "
                         "fields")


# -- hom spaces -------------------------------------------------------------


def hom_space(M: Rep, N: Rep) -> list[Mat]:
    """Basis of intertwiners X with X M(g) = N(g) X, as (dim N x dim M)
    matrices; deterministic."""
    _check_compatible(M, N)
    F = M.field
    dm, dn = M.dim, N.dim
    if dm == 0 or dn == 0:
        return []
    gens = M.group.generators
    if not gens:
        basis = []
        for i in range(dn):
            for j in range(dm):
                a = np.zeros((dn, dm, F.n), dtype=np.int64)
                a[i, j, 0] = 1
                basis.append(Mat(F, a))
        return basis
    blocks = []
    eye_n = Mat.identity(F, dn)
    eye_m = Mat.identity(F, dm)
    for t in range(len(gens)):
        a1 = eye_n.kron(M.gen_image(t).T)
        a2 = N.gen_image(t).kron(eye_m)
        blocks.append(a1 - a2)
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    ns = stacked.nullspace()
    out = []
    for c in range(ns.cols):
        a = ns.a[:, c, :].reshape(dn, dm, F.n)
        out.append(Mat(F, np.ascontiguousarray(a)))
    return out


def hom_dim(M: Rep, N: Rep) -> int:
    return len(hom_space(M, N))


# -- spinning and the MeatAxe ------------------------------------------------


def spin_columns(field: Field, dim: int, seeds, gen_mats) -> Mat:
    """Smallest invariant subspace containing the seed column vectors;
    returned as a (dim x r) column matrix."""
    eb = EchelonBasis(field, dim)
    queue = []
    for v in seeds:
        if eb.add(v):
            queue.append(eb.rows[-1].copy())
    while queue:
        v = queue.pop()
        col = Mat(field, v[:, None, :])
        for A in gen_mats:
            w = (A @ col).a[:, 0, :]
            if eb.add(w):
                queue.append(eb.rows[-1].copy())
    return eb.as_matrix().T


def _random_algebra_element(M: Rep, gen_mats, rng: random.Random) -> Mat:
    F = M.field
    acc = Mat.zeros(F, M.dim, M.dim)
    for _ in range(rng.randrange(2, 4)):
        prod = Mat.identity(F, M.dim)
        for _ in range(rng.randrange(1, 4)):
            prod = prod @ rng.choice(gen_mats)
        acc = acc + prod.scale(F.rand_nonzero(rng))
    return acc


def find_submodule_or_simple(M: Rep, rng: random.Random):
    """Either ('sub', W) with W a proper nonzero invariant column space, or
    'simple' once Norton's criterion certifies irreducibility."""
    F = M.field
    d = M.dim
    if d == 1:
        return "simple"
    gen_mats = M.generator_images()
    if not gen_mats:
        a = np.zeros((d, 1, F.n), dtype=np.int64)
        a[0, 0, 0] = 1
        return "sub", Mat(F, a)
    gen_t = [g.T for g in gen_mats]
    for _ in range(MEATAXE_ROUNDS):
        theta = _random_algebra_element(M, gen_mats, rng)
        cp = theta.charpoly()
        for f, _mult in poly_factor(cp, rng):
            ftheta = theta.eval_poly(f)
            ker = ftheta.nullspace()
            if ker.cols == 0:
                continue
            for c in range(ker.cols):
                w = spin_columns(F, d, [ker.a[:, c, :]], gen_mats)
                if 0 < w.cols < d:
                    return "sub", w
            if ker.cols == f.degree:
                kert = ftheta.T.nullspace()
                for c in range(kert.cols):
                    wt = spin_columns(F, d, [kert.a[:, c, :]], gen_t)
                    if 0 < wt.cols < d:
                        perp = wt.T.nullspace()
                        return "sub", perp
                return "simple"
    raise CapExceeded(
        f"MeatAxe did not decide a dim-{d} module in {MEATAXE_ROUNDS} "
        "rounds; rerun with a different seed")


def _complete_basis(field: Field, W: Mat) -> Mat:
    """Extend the columns of W to an invertible square matrix (columns of W
    first, then standard basis vectors)."""
    d = W.rows
    eb = EchelonBasis(field, d)
    cols = [W.a[:, c, :] for c in range(W.cols)]
    for v in cols:
        if not eb.add(v):
            raise Inconsistency("submodule basis is not independent")
    extra = []
    for i in range(d):
        v = np.zeros((d, field.n), dtype=np.int64)
        v[i, 0] = 1
        if eb.add(v):
            extra.append(v)
        if len(eb) == d:
            break
    stacked = np.stack([W.a[:, c, :] for c in range(W.cols)] + extra, axis=1)
    return Mat(field, stacked)


def split_on_submodule(M: Rep, W: Mat) -> tuple[Rep, Rep]:
    """Sub and quotient actions for an invariant column space W."""
    F = M.field
    r = W.cols
    P = _complete_basis(F, W)
    Pinv = P.inv()
    if Pinv is None:
        raise Inconsistency("completed basis is singular")
    sub_imgs, quot_imgs = {}, {}
    for t in range(len(M.group.generators)):
        C = Pinv @ M.gen_image(t) @ P
        if np.any(C.a[r:, :r]):
            raise Inconsistency("claimed submodule is not invariant")
        sub_imgs[t] = C.submatrix(range(r), range(r))
        quot_imgs[t] = C.submatrix(range(r, M.dim), range(r, M.dim))
    return (Rep(M.group, F, r, sub_imgs),
            Rep(M.group, F, M.dim - r, quot_imgs))


# -- registry and class vectors ----------------------------------------------


class SimpleRegistry:
    """Ordered list of pairwise non-isomorphic certified-simple modules over
    one (group, field); grows lazily as chop discovers new simples."""

    def __init__(self, group: FiniteGroup, field: Field):
        self.group = group
        self.field = field
        self.simples: list[Rep] = []
        self.fingerprints: list[tuple] = []
        self.log: list[dict] = []

    def __len__(self):
        return len(self.simples)

    def find_or_add(self, S: Rep, rng: random.Random, note: str = "") -> int:
        fp = class_fingerprint(S)
        for i, T in enumerate(self.simples):
            if T.dim == S.dim and self.fingerprints[i] == fp:
                if hom_dim(S, T) > 0:  # nonzero hom between simples is iso
                    return i
        self.simples.append(S)
        self.fingerprints.append(fp)
        self.log.append({"id": len(self.simples) - 1, "dim": S.dim,
                         "note": note})
        return len(self.simples) - 1

    def zero(self) -> "ClassVector":
        return ClassVector(self, ())

    def basis_vector(self, i: int, mult=1) -> "ClassVector":
        coeffs = [Fraction(0)] * (i + 1)
        coeffs[i] = Fraction(mult)
        return ClassVector(self, coeffs)


class ClassVector:
    """Composition-factor multiplicities over a registry; rational
    coefficients are allowed transiently, integrality is asserted where a
    genuine module class is claimed."""

    __slots__ = ("registry", "coeffs")

    def __init__(self, registry: SimpleRegistry, coeffs):
        self.registry = registry
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    def padded(self) -> tuple[Fraction, ...]:
        pad = len(self.registry) - len(self.coeffs)
        return self.coeffs + (Fraction(0),) * max(0, pad)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def _binop(self, other, op):
        if self.registry is not other.registry:
            raise InputError("class vectors over different registries")
        a, b = self.padded(), other.padded()
        return ClassVector(self.registry, [op(x, y) for x, y in zip(a, b)])

    def __add__(self, other):
        return self._binop(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binop(other, lambda x, y: x - y)

    def __neg__(self):
        return ClassVector(self.registry, [-c for c in self.coeffs])

    def scale(self, s) -> "ClassVector":
        s = Fraction(s)
        return ClassVector(self.registry, [c * s for c in self.coeffs])

    def __eq__(self, other):
        return (isinstance(other, ClassVector)
                and self.registry is other.registry
                and self.padded() == other.padded())

    def __hash__(self):
        return hash((id(self.registry), self.padded()))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integral_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise Inconsistency(f"class vector is not integral: {self}")
        return [int(c) for c in self.padded()]

    def total_dim(self) -> Fraction:
        return sum((c * s.dim for c, s in
                    zip(self.padded(), self.registry.simples)),
                   start=Fraction(0))

    def to_json(self):
        return [[i, self.registry.simples[i].dim, str(c)]
                for i, c in enumerate(self.padded()) if c != 0]

    def __repr__(self):
        parts = [f"{c}*[S{i}]" for i, c in enumerate(self.padded()) if c]
        return "ClassVector(" + (" + ".join(parts) or "0") + ")"


def chop(M: Rep, registry: SimpleRegistry, rng: random.Random,
         note: str = "") -> ClassVector:
    """Exact composition-factor multiplicities of M over the registry."""
    if M.group is not registry.group or M.field is not registry.field:
        raise InputError("module and registry are over different data")
    counts: dict[int, int] = {}
    stack = [M]
    while stack:
        A = stack.pop()
        if A.dim == 0:
            continue
        res = find_submodule_or_simple(A, rng)
        if res == "simple":
            idx = registry.find_or_add(A, rng, note=note)
            counts[idx] = counts.get(idx, 0) + 1
        else:
            _, W = res
            sub, quot = split_on_submodule(A, W)
            stack.append(sub)
            stack.append(quot)
    coeffs = [Fraction(0)] * len(registry)
    for i, c in counts.items():
        coeffs[i] = Fraction(c)
    v = ClassVector(registry, coeffs)
    if v.total_dim() != M.dim:
        raise Inconsistency("chop reassembly failed: factor dims do not "
                            f"sum to {M.dim}")
    return v


# -- isomorphism -------------------------------------------------------------


def is_isomorphic(M: Rep, N: Rep, rng: random.Random | None = None,
                  both_simple: bool = False) -> bool:
    """Explicit-intertwiner isomorphism test; raises CapExceeded when a
    nonzero Hom space yields no invertible element within the try budget
    (undecided is an error, never False)."""
    if M is N:
        return True
    if M.group is not N.group or M.field is not N.field or M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    basis = hom_space(M, N)
    if not basis:
        return False
    if both_simple:
        return True
    for X in basis:
        if X.is_invertible():
            return True
    rng = rng or random.Random(0)
    F = M.field
    for _ in range(ISO_TRIES):
        acc = Mat.zeros(F, N.dim, M.dim)
        for X in basis:
            c = F.rand_elem(rng)
            if c:
                acc = acc + X.scale(c)
        if acc.is_invertible():
            return True
    if hom_dim(M, M) != hom_dim(N, M):
        # asymmetric hom dimensions can never support an isomorphism
        return False
    raise CapExceeded("isomorphism test undecided within the try budget")


# -- direct-sum splitting -----------------------------------------------------


def _column_space(P: Mat) -> Mat:
    R, pivots = P.T.rref()
    if not pivots:
        return Mat.zeros(P.field, P.rows, 0)
    return Mat(P.field, R.a[:len(pivots)]).T


def _fitting_split(M: Rep, phi: Mat) -> tuple[Rep, Rep]:
    stable = phi.pow_(max(1, M.dim))
    ker = stable.nullspace()
    img = _column_space(stable)
    if ker.cols == 0 or img.cols == 0 or ker.cols + img.cols != M.dim:
        raise Inconsistency("Fitting decomposition is not a splitting")
    both = ker.hstack(img)
    sub, rest = split_on_submodule(M, both.columns(range(ker.cols)))
    # rest is the quotient in the ker-first basis; recompute image side
    # directly for an honest direct-sum split
    P = both
    Pinv = P.inv()
    if Pinv is None:
        raise Inconsistency("Fitting basis is singular")
    r = ker.cols
    a_imgs, b_imgs = {}, {}
    for t in range(len(M.group.generators)):
        C = Pinv @ M.gen_image(t) @ P
        if np.any(C.a[r:, :r]) or np.any(C.a[:r, r:]):
            raise Inconsistency("Fitting components are not invariant")
        a_imgs[t] = C.submatrix(range(r), range(r))
        b_imgs[t] = C.submatrix(range(r, M.dim), range(r, M.dim))
    return (Rep(M.group, M.field, r, a_imgs),
            Rep(M.group, M.field, M.dim - r, b_imgs))


def _is_nilpotent(phi: Mat) -> bool:
    return phi.pow_(max(1, phi.rows)).is_zero()


def indecomposable_summands(M: Rep, rng: random.Random,
                            dim_cap: int = SUMMAND_DIM_CAP) -> list[Rep]:
    """Split M into indecomposable direct summands.

    Random endomorphisms are decomposed along the distinct irreducible
    factors of their characteristic polynomial (primary decomposition);
    when no splitting appears, the endomorphism algebra is certified local,
    exhaustively when q^dim(End) is desk-sized and otherwise by a sampled
    nilpotent-or-invertible check whose failure feeds a Fitting split.
    """
    if M.dim == 0:
        return []
    if M.dim > dim_cap:
        raise CapExceeded(f"dim {M.dim} exceeds the summand-splitting cap")
    ends = hom_space(M, M)
    if len(ends) == 1:
        return [M]
    F = M.field

    def combos():
        for X in ends:
            yield X
        for _ in range(SPLIT_ROUNDS):
            acc = Mat.zeros(F, M.dim, M.dim)
            for X in ends:
                c = F.rand_elem(rng)
                if c:
                    acc = acc + X.scale(c)
            yield acc

    for theta in combos():
        if theta.is_zero():
            continue
        facs = poly_factor(theta.charpoly(), rng)
        if len(facs) >= 2:
            return _primary_split(M, theta, facs, rng, dim_cap)
    return _certify_or_split(M, ends, rng, dim_cap)


def _primary_split(M: Rep, theta: Mat, facs, rng, dim_cap) -> list[Rep]:
    F = M.field
    kernels = [theta.eval_poly(f).pow_(m).nullspace() for f, m in facs]
    stacked = kernels[0]
    for k in kernels[1:]:
        stacked = stacked.hstack(k)
    if stacked.cols != M.dim:
        raise Inconsistency("primary decomposition dimensions are wrong")
    Pinv = stacked.inv()
    if Pinv is None:
        raise Inconsistency("primary components are not independent")
    offsets = [0]
    for k in kernels:
        offsets.append(offsets[-1] + k.cols)
    out = []
    for bi in range(len(kernels)):
        lo, hi = offsets[bi], offsets[bi + 1]
        imgs = {}
        for t in range(len(M.group.generators)):
            C = Pinv @ M.gen_image(t) @ stacked
            block = C.submatrix(range(lo, hi), range(lo, hi))
            outside = C.a[lo:hi, :lo], C.a[lo:hi, hi:]
            if np.any(outside[0]) or np.any(outside[1]):
                raise Inconsistency("primary component is not invariant")
            imgs[t] = block
        out.extend(indecomposable_summands(
            Rep(M.group, F, hi - lo, imgs), rng, dim_cap))
    return out


def _certify_or_split(M: Rep, ends, rng, dim_cap) -> list[Rep]:
    F = M.field
    dim_e = len(ends)

    def check(phi: Mat):
        """None if nilpotent or invertible, else phi splits M."""
        if phi.is_invertible() or _is_nilpotent(phi):
            return None
        return phi

    if F.q ** dim_e <= LOCALITY_EXHAUSTIVE_CAP:
        for coeffs in itertools.product(range(F.q), repeat=dim_e):
            acc = Mat.zeros(F, M.dim, M.dim)
            for c, X in zip(coeffs, ends):
                if c:
                    acc = acc + X.scale(c)
            bad = check(acc)
            if bad is not None:
                a, b = _fitting_split(M, bad)
                return (indecomposable_summands(a, rng, dim_cap)
                        + indecomposable_summands(b, rng, dim_cap))
        return [M]  # every endomorphism nilpotent or invertible: local
    for X in ends:
        bad = check(X)
        if bad is not None:
            a, b = _fitting_split(M, bad)
            return (indecomposable_summands(a, rng, dim_cap)
                    + indecomposable_summands(b, rng, dim_cap))
    for _ in range(LOCALITY_SAMPLES):
        acc = Mat.zeros(F, M.dim, M.dim)
        for X in ends:
            c = F.rand_elem(rng)
            if c:
                acc = acc + X.scale(c)
        bad = check(acc)
        if bad is not None:
            a, b = _fitting_split(M, bad)
            return (indecomposable_summands(a, rng, dim_cap)
                    + indecomposable_summands(b, rng, dim_cap))
    return [M]


# -- projectivity -------------------------------------------------------------


def is_projective(M: Rep) -> bool:
    """Projective over k[G] iff free over k[P] for a Sylow p-subgroup P:
    dim M = |P| * dim(M / rad M) with rad spanned by (g-1)v.

    The augmentation ideal is spanned as a vector space by g - 1 over all
    g in P (generators alone would not span a submodule when P is
    nonabelian)."""
    G = M.group
    p = M.field.p
    P = sylow_p(G, p)
    if P.order == 1 or M.dim == 0:
        return True
    eye = Mat.identity(M.field, M.dim)
    stacked = None
    for g in P.indices:
        if g == G.identity:
            continue
        block = M.image(g) - eye
        stacked = block if stacked is None else stacked.hstack(block)
    rad_dim = stacked.rank()
    return M.dim == P.order * (M.dim - rad_dim)


def head_multiplicity(M: Rep, S: Rep) -> int:
    """Multiplicity of Cov(S) in the projective module M:
    dim Hom(M, S) / dim End(S), asserted integral."""
    if not is_projective(M):
        raise InputError("head multiplicities need a projective module")
    num = hom_dim(M, S)
    den = hom_dim(S, S)
    if num % den:
        raise Inconsistency("head multiplicity is not integral")
    return num // den


def projective_cover_over_inertia(I: FiniteGroup, P1: Subgroup,
                                  M: Rep) -> Rep:
    """Projective cover over k[I] of a module M on which the normal p-Sylow
    P1 acts trivially: induce the restriction to a Schur-Zassenhaus
    complement C of P1, Cov(M) = Ind_C^I Res_C M."""
    if M.group is not I:
        raise InputError("module is not over the inertia group")
    if P1.parent is not I:
        raise InputError("wild subgroup has the wrong parent")
    if not P1.is_normal():
        raise InputError("wild subgroup must be normal")
    p = M.field.p
    o = P1.order
    while o % p == 0:
        o //= p
    if o != 1:
        raise InputError("wild subgroup must be a p-group")
    if _gcd(P1.order, I.order // P1.order) != 1:
        raise InputError("wild subgroup must be a Sylow subgroup")
    eye = Mat.identity(M.field, M.dim)
    for g in _subgroup_generators(P1):
        if M.image(g) != eye:
            raise InputError("wild subgroup does not act trivially")
    C = schur_zassenhaus_complement(I, P1)
    cov = rep_induce(rep_restrict(M, C), I, C)
    if cov.dim != P1.order * M.dim:
        raise Inconsistency("projective cover has unexpected dimension")
    if not is_projective(cov):
        raise Inconsistency("projective cover failed the projectivity test")
    return cov


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- fingerprints --------------------------------------------------------------


def _mult_order(q: int, m: int) -> int:
    if m == 1:
        return 1
    k = 1
    cur = q % m
    while cur != 1:
        cur = cur * q % m
        k += 1
        if k > m:
            raise Inconsistency("multiplicative order loop ran away")
    return k


def _lcm(a, b):
    return a * b // _gcd(a, b)


def class_fingerprint(M: Rep) -> tuple:
    """For each p-regular conjugacy class, the multiset of eigenvalue
    exponents of image(g) relative to a fixed root of unity in one common
    cyclotomic ambient field.  Equal module classes give equal tokens."""
    G = M.group
    F = M.field
    reps = [c[0] for c in conjugacy_classes(G)]
    p_reg = [g for g in reps if G.element_order(g) % F.p != 0]
    s = 1
    for g in p_reg:
        s = _lcm(s, _mult_order(F.q, G.element_order(g)))
    E = field_make(F.p, F.n * s)
    token = []
    for g in p_reg:
        m = G.element_order(g)
        zeta = E.pow_(E.generator, (E.q - 1) // m)
        cp = M.image(g).charpoly()
        exps = []
        for h, mult in poly_factor(cp):
            h_e = h.map_field(E)
            for j in range(m):
                if h_e.evaluate(E.pow_(zeta, j)) == 0:
                    exps.extend([j] * mult)
        if len(exps) != M.dim:
            raise Inconsistency("eigenvalue exponents do not fill the "
                                "dimension")
        token.append((m, tuple(sorted(exps))))
    return tuple(token)


# -- socle (used by the scalar-extension semisimplicity property) -----------


def socle_dim(M: Rep, registry: SimpleRegistry, rng: random.Random) -> int:
    """Dimension of the sum of all simple submodules."""
    chop(M, registry, rng)  # make sure every relevant simple is registered
    cols = None
    for S in registry.simples:
        if S.dim > M.dim:
            continue
        for X in hom_space(S, M):
            cols = X if cols is None else cols.hstack(X)
    return 0 if cols is None else cols.rank()
