"""Exact rational matrix representations of finite permutation groups.

Provides permutation modules with their standard basis and identity pairing,
invariant pairings by averaging, fixed subspaces in canonical integer echelon
form, intertwiner spaces, isotypic splitting (orthogonal complements of
intertwiner images) and characters.  All arithmetic is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from regparity.exact_linalg import (
    QMatrix,
    determinant,
    inverse,
    kernel_basis,
    rref,
    _primitive_integer,
)
from regparity.perm_groups import Group, Subgroup, left_cosets, _check_same_parent

# groups at most this large get their representation maps verified on every
# pair of elements; larger groups are checked on generators plus random
# products
EXHAUSTIVE_CHECK_ORDER = 48
RANDOM_CHECK_PRODUCTS = 100


class DegeneratePairingError(ArithmeticError):
    """A bilinear form turned out degenerate where a nondegenerate one is
    required (restricted to a subrepresentation or a fixed subspace)."""


@dataclass(frozen=True)
class Pairing:
    """A symmetric nondegenerate G-invariant bilinear form on a representation,
    stored by its Gram matrix in the representation's basis."""

    rep: "Representation"
    gram: QMatrix


class Representation:
    """A homomorphism from a group into invertible matrices over Q.

    Images are materialised lazily via ``image(i)`` (i an element index of the
    group).  ``perm_action`` is an optional fast path for representations whose
    matrices are 0/1 permutation matrices: a callable giving, per element, the
    permutation of basis vectors.  ``pairing`` holds the canonical invariant
    form when the construction provides one (identity for permutation modules,
    the restricted form for split-off summands).
    """

    def __init__(
        self,
        group: Group,
        dim: int,
        image_fn: Callable[[int], QMatrix],
        pairing_gram: QMatrix | None = None,
        perm_action: Callable[[int], tuple] | None = None,
        check: bool = True,
    ):
        self.group = group
        self.dim = dim
        self._image_fn = image_fn
        self._images: dict[int, QMatrix] = {}
        self._perm_action = perm_action
        self.pairing = Pairing(self, pairing_gram) if pairing_gram is not None else None
        if check:
            _verify_homomorphism(self)

    def image(self, i: int) -> QMatrix:
        m = self._images.get(i)
        if m is None:
            m = self._image_fn(i)
            self._images[i] = m
        return m

    def action(self, i: int) -> tuple | None:
        return self._perm_action(i) if self._perm_action is not None else None

    def __repr__(self) -> str:
        return f"Representation(dim={self.dim}, |G|={self.group.order})"


def _check_pairs(G: Group) -> list[tuple[int, int]]:
    n = G.order
    if n <= EXHAUSTIVE_CHECK_ORDER:
        return [(i, j) for i in range(n) for j in range(n)]
    rng = random.Random(0)
    gens = G.generator_indices()
    pairs = [(g, rng.randrange(n)) for g in gens]
    pairs += [(rng.randrange(n), rng.randrange(n)) for _ in range(RANDOM_CHECK_PRODUCTS)]
    return pairs


def _verify_homomorphism(rep: Representation) -> None:
    G = rep.group
    if rep._perm_action is not None:
        # integer check on the underlying action is enough (and cheap)
        acts = {}

        def act(i):
            a = acts.get(i)
            if a is None:
                a = rep._perm_action(i)
                acts[i] = a
            return a

        if act(0) != tuple(range(rep.dim)):
            raise ValueError("representation does not send identity to identity")
        for i, j in _check_pairs(G):
            ai, aj, aij = act(i), act(j), act(G.mul(i, j))
            if any(ai[aj[k]] != aij[k] for k in range(rep.dim)):
                raise ValueError("permutation action is not a homomorphism")
        return
    if rep.image(0) != QMatrix.identity(rep.dim):
        raise ValueError("representation does not send identity to identity")
    for i, j in _check_pairs(G):
        if rep.image(i) @ rep.image(j) != rep.image(G.mul(i, j)):
            raise ValueError("matrix map is not a homomorphism")


def _matrix_from_action(act: tuple, dim: int) -> QMatrix:
    one, zero = Fraction(1), Fraction(0)
    rows = [[zero] * dim for _ in range(dim)]
    for j in range(dim):
        rows[act[j]][j] = one
    return QMatrix(rows, ncols=dim)


def perm_rep(G: Group, H: Subgroup) -> Representation:
    """The permutation module on the left cosets G/H with its standard basis.

    Images are 0/1 matrices; the identity matrix is attached as the canonical
    invariant pairing.
    """
    _check_same_parent(G, H)
    reps, coset_of = left_cosets(G, H)
    dim = len(reps)

    def action(i: int) -> tuple:
        return tuple(coset_of[G.mul(i, r)] for r in reps)

    return Representation(
        G,
        dim,
        image_fn=lambda i: _matrix_from_action(action(i), dim),
        pairing_gram=QMatrix.identity(dim),
        perm_action=action,
    )


def trivial_rep(G: Group) -> Representation:
    return perm_rep(G, G.whole_subgroup())


def direct_sum(V: Representation, W: Representation) -> Representation:
    """Block-diagonal sum; keeps the permutation fast path and the canonical
    pairing when both summands have them."""
    if V.group is not W.group:
        raise ValueError("direct sum of representations of different groups")
    G = V.group
    dim = V.dim + W.dim

    def image_fn(i: int) -> QMatrix:
        a, b = V.image(i), W.image(i)
        zero = Fraction(0)
        rows = [list(r) + [zero] * W.dim for r in a.data]
        rows += [[zero] * V.dim + list(r) for r in b.data]
        return QMatrix(rows, ncols=dim)

    act = None
    if V._perm_action is not None and W._perm_action is not None:
        dv = V.dim

        def act(i: int) -> tuple:
            return V._perm_action(i) + tuple(x + dv for x in W._perm_action(i))

    gram = None
    if V.pairing is not None and W.pairing is not None:
        zero = Fraction(0)
        rows = [list(r) + [zero] * W.dim for r in V.pairing.gram.data]
        rows += [[zero] * V.dim + list(r) for r in W.pairing.gram.data]
        gram = QMatrix(rows, ncols=dim)

    return Representation(G, dim, image_fn, pairing_gram=gram, perm_action=act)


def _check_positive_definite(seed: QMatrix) -> None:
    if not seed.is_symmetric():
        raise ValueError("pairing seed must be symmetric")
    for k in range(1, seed.nrows + 1):
        minor = QMatrix([row[:k] for row in seed.data[:k]])
        if determinant(minor) <= 0:
            raise ValueError("pairing seed must be positive definite")


def invariant_pairing(V: Representation, seed: QMatrix | None = None) -> Pairing:
    """Average a positive-definite symmetric seed over the group:
    gram = sum_g image(g)^T seed image(g).

    The result is G-invariant and positive definite, hence nondegenerate on
    every subrepresentation and every fixed subspace.
    """
    n = V.dim
    if seed is None:
        seed = QMatrix.identity(n)
    else:
        if (seed.nrows, seed.ncols) != (n, n):
            raise ValueError("seed has wrong shape")
        _check_positive_definite(seed)
    total = [[Fraction(0)] * n for _ in range(n)]
    if V._perm_action is not None:
        # P^T S P just permutes entries of the seed
        for g in range(V.group.order):
            act = V._perm_action(g)
            sd = seed.data
            for i in range(n):
                row, si = total[i], sd[act[i]]
                for j in range(n):
                    row[j] += si[act[j]]
    else:
        for g in range(V.group.order):
            m = V.image(g)
            p = m.transpose() @ seed @ m
            for i in range(n):
                row, pi = total[i], p.data[i]
                for j in range(n):
                    row[j] += pi[j]
    return Pairing(V, QMatrix(total, ncols=n))


def fixed_subspace(V: Representation, H: Subgroup) -> QMatrix:
    """Basis of the H-fixed vectors, as the columns of the returned matrix.

    Computed as the column space of the averaging projector over H, presented
    as primitive integer columns in canonical echelon position.  A trivial
    fixed space gives a matrix with zero columns.
    """
    _check_same_parent(V.group, H)
    n = V.dim
    total = [[Fraction(0)] * n for _ in range(n)]
    if V._perm_action is not None:
        one = Fraction(1)
        for h in H.indices:
            act = V._perm_action(h)
            for j in range(n):
                total[act[j]][j] += one
    else:
        for h in H.indices:
            m = V.image(h)
            for i in range(n):
                row, mi = total[i], m.data[i]
                for j in range(n):
                    row[j] += mi[j]
    # column space of the projector = row space of its transpose
    R, pivots = rref(QMatrix(total, ncols=n).transpose())
    cols = [_primitive_integer(R.data[r]) for r in range(len(pivots))]
    return QMatrix.from_columns(cols, nrows=n)


def hom_basis(V: Representation, W: Representation) -> list[QMatrix]:
    """Basis of the intertwiners V -> W: matrices X with
    W(g) X = X V(g) for all g.

    The linear system is solved over the generators only and every solution is
    then verified on all group elements.
    """
    if V.group is not W.group:
        raise ValueError("intertwiners require a common group")
    G = V.group
    dw, dv = W.dim, V.dim
    nunk = dw * dv
    rows: list[list[Fraction]] = []
    zero = Fraction(0)
    for gi in G.generator_indices():
        Wg = W.image(gi).data
        Vg = V.image(gi).data
        for a in range(dw):
            for b in range(dv):
                row = [zero] * nunk
                for k in range(dw):
                    if Wg[a][k]:
                        row[k * dv + b] += Wg[a][k]
                for l in range(dv):
                    if Vg[l][b]:
                        row[a * dv + l] -= Vg[l][b]
                rows.append(row)
    if rows:
        vecs = kernel_basis(QMatrix(rows, ncols=nunk))
    else:
        # trivial group: everything intertwines
        vecs = [
            tuple(1 if t == s else 0 for t in range(nunk)) for s in range(nunk)
        ]
    homs = [
        QMatrix([v[k * dv : (k + 1) * dv] for k in range(dw)], ncols=dv)
        for v in vecs
    ]
    for X in homs:
        for i in range(G.order):
            act = W.action(i)
            left = _permute_rows(X, act) if act is not None else W.image(i) @ X
            if left != X @ V.image(i):
                raise AssertionError("intertwiner candidate fails off generators")
    return homs


def _left_inverse(B: QMatrix) -> QMatrix:
    """(B^T B)^{-1} B^T for a full-column-rank B."""
    Bt = B.transpose()
    return inverse(Bt @ B) @ Bt


def _permute_rows(M: QMatrix, act: tuple) -> QMatrix:
    """P_act @ M where P_act maps basis vector j to act[j]."""
    n = M.nrows
    rows: list[tuple] = [()] * n
    for j in range(n):
        rows[act[j]] = M.data[j]
    return QMatrix(rows, ncols=M.ncols)


def split_off(V: Representation, W: Representation) -> Representation:
    """Orthogonal complement, under V's pairing, of the images of all
    intertwiners W -> V, as a representation with the restricted pairing.

    Splitting the trivial module off a permutation module on G/B yields the
    Steinberg-type complement; iterating the construction peels off known
    summands one at a time.
    """
    if V.group is not W.group:
        raise ValueError("split_off requires a common group")
    if V.pairing is None:
        raise ValueError("split_off requires V to carry a pairing")
    G = V.group
    homs = hom_basis(W, V)  # maps W -> V
    if homs:
        cols: list[tuple] = []
        for X in homs:
            cols.extend(X.columns())
        U = QMatrix.from_columns(cols, nrows=V.dim)
        M = U.transpose() @ V.pairing.gram
        vecs = kernel_basis(M)
    else:
        # nothing to remove: the complement is the whole space
        vecs = [
            tuple(1 if t == s else 0 for t in range(V.dim)) for s in range(V.dim)
        ]
    d = len(vecs)
    if d == 0:
        empty = QMatrix([], ncols=0)
        return Representation(
            G, 0, image_fn=lambda i: empty, pairing_gram=empty, check=False
        )
    B = QMatrix.from_columns(vecs, nrows=V.dim)
    L = _left_inverse(B)
    gram = B.transpose() @ V.pairing.gram @ B
    if determinant(gram) == 0:
        raise DegeneratePairingError("pairing degenerate on the complement")

    vact = V._perm_action

    def image_fn(i: int) -> QMatrix:
        vb = _permute_rows(B, vact(i)) if vact is not None else V.image(i) @ B
        return L @ vb

    return Representation(G, d, image_fn, pairing_gram=gram)


def character(V: Representation) -> tuple[Fraction, ...]:
    """Trace at one representative per conjugacy class, aligned with
    ``V.group.classes()``."""
    return tuple(V.image(cls[0]).trace() for cls in V.group.classes())


def char_inner(G: Group, f1: Sequence[Fraction], f2: Sequence[Fraction]) -> Fraction:
    """(1/|G|) sum_g f1(g) f2(g^{-1}) evaluated through class data."""
    classes = G.classes()
    total = Fraction(0)
    for c, cls in enumerate(classes):
        total += len(cls) * f1[c] * f2[G.inverse_class(c)]
    return total / G.order


def is_self_dual(V: Representation) -> tuple[bool, int | None]:
    """Whether the character satisfies chi(g) = chi(g^{-1}); on failure also
    returns a witnessing class index."""
    chi = character(V)
    for c in range(len(chi)):
        if chi[c] != chi[V.group.inverse_class(c)]:
            return False, c
    return True, None
