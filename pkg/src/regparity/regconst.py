"""Regulator constants of relations and the odd-valuation set S_Theta.

For a relation Theta = sum_i H_i - sum_j H'_j and a representation V with an
invariant pairing, the regulator constant is the square class of

    prod_i det((1/|H_i|) <,> | V^{H_i}) / prod_j det((1/|H'_j|) <,> | V^{H'_j}).

For permutation modules the same quantity is available without building any
matrices, from double-coset sizes alone:

    det((1/|N|) <,> | (Q[G/H])^N) = prod over N\\G/H of |NxH| / (|N||H|),

with the standard identity pairing.  S_Theta collects the self-dual blocks
whose constant has odd valuation at p; only valuations are needed there, so
no factorisation is ever performed on that path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from regparity.exact_linalg import (
    DEFAULT_FACTOR_BOUND,
    QMatrix,
    SquareClass,
    determinant,
    ord_p,
    rref,
    square_class,
)
from regparity.perm_groups import Subgroup, double_cosets, fixed_points_character
from regparity.brauer_relations import BrauerRelation
from regparity.representations import (
    DegeneratePairingError,
    Pairing,
    Representation,
    character,
    fixed_subspace,
    invariant_pairing,
    is_self_dual,
)


class NotSelfDualError(ValueError):
    """A representation offered to s_theta fails chi(g) = chi(g^{-1})."""

    def __init__(self, label: str, witness_class: int) -> None:
        super().__init__(
            f"representation {label!r} is not self-dual "
            f"(witness: conjugacy class {witness_class})"
        )
        self.label = label
        self.witness_class = witness_class


@dataclass(frozen=True)
class RegulatorConstant:
    """Square class of the alternating Gram-determinant product, with the
    per-term determinants kept as an audit trail."""

    value: SquareClass
    terms: tuple[tuple[Subgroup, int, Fraction], ...]  # (subgroup, coeff, det)
    ratio: Fraction

    def __str__(self) -> str:
        return str(self.value)


def pair_gram_det(gram: QMatrix, basis: QMatrix, subgroup_order: int) -> Fraction:
    """det((1/n) <,>) on the span of the given basis columns."""
    if basis.ncols == 0:
        return Fraction(1)
    m = (basis.transpose() @ gram @ basis).scale(Fraction(1, subgroup_order))
    return determinant(m)


def gram_det_fixed(V: Representation, pairing: Pairing, H: Subgroup) -> Fraction:
    """det((1/|H|) <,> | V^H) over the canonical fixed-subspace basis.

    A zero-dimensional fixed space contributes the empty product 1; a vanishing
    determinant means the pairing is degenerate there and is a hard error.
    """
    if pairing.rep is not V:
        raise ValueError("pairing belongs to a different representation")
    basis = fixed_subspace(V, H)
    det = pair_gram_det(pairing.gram, basis, H.order)
    if det == 0:
        raise DegeneratePairingError("pairing degenerate on fixed subspace")
    return det


def _package(
    theta: BrauerRelation,
    audits: list[tuple[Subgroup, int, Fraction]],
    factor_bound: int,
) -> RegulatorConstant:
    ratio = Fraction(1)
    for _, coeff, det in audits:
        ratio *= det**coeff
    return RegulatorConstant(square_class(ratio, factor_bound), tuple(audits), ratio)


def regulator_constant(
    theta: BrauerRelation,
    V: Representation,
    pairing: Pairing | None = None,
    factor_bound: int = DEFAULT_FACTOR_BOUND,
) -> RegulatorConstant:
    """Regulator constant of the relation on V.

    Without an explicit pairing the canonical one attached to V is used
    (identity on permutation modules, restricted form on split-off summands),
    falling back to averaging the identity seed; the square class does not
    depend on this choice.
    """
    if V.group is not theta.group:
        raise ValueError("representation and relation have different groups")
    if pairing is None:
        pairing = V.pairing if V.pairing is not None else invariant_pairing(V)
    audits = [
        (sub, coeff, gram_det_fixed(V, pairing, sub)) for sub, coeff in theta.terms
    ]
    return _package(theta, audits, factor_bound)


def regulator_constant_perm(
    theta: BrauerRelation,
    H: Subgroup,
    factor_bound: int = DEFAULT_FACTOR_BOUND,
) -> RegulatorConstant:
    """Regulator constant of the relation on the permutation module Q[G/H],
    computed purely from double-coset sizes (no matrices)."""
    G = theta.group
    if H.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    audits = []
    for N, coeff in theta.terms:
        det = Fraction(1)
        for size in double_cosets(G, N, H).sizes:
            det *= Fraction(size, N.order * H.order)
        audits.append((N, coeff, det))
    return _package(theta, audits, factor_bound)


@dataclass(frozen=True)
class SThetaReport:
    """Membership of the supplied self-dual blocks in S_Theta at p.

    ``exhaustive`` is set only when the supplied characters account exactly
    (uniquely, with nonnegative integer multiplicities) for the character of
    every induced module in the relation -- then all remaining irreducible
    blocks have zero fixed spaces under every term and constant 1.
    Memberships are reported at the granularity of the supplied rational
    blocks; constituents irrational over Q are only covered through the block
    that contains them.
    """

    relation: BrauerRelation
    p: int
    members: tuple[str, ...]
    exhaustive: bool
    ords: dict[str, int] = field(compare=False)

    GRANULARITY_NOTE = (
        "memberships are reported for the supplied rational blocks; "
        "irrational constituents are only covered through their block"
    )


def _solve_exact(A: QMatrix, target: Sequence[Fraction]) -> list[Fraction] | None:
    """Unique solution of A x = target, or None (inconsistent or
    underdetermined)."""
    aug = QMatrix(
        [list(A.data[i]) + [target[i]] for i in range(A.nrows)], ncols=A.ncols + 1
    )
    R, pivots = rref(aug)
    if A.ncols in pivots:
        return None
    if len(pivots) < A.ncols:
        return None
    x = [Fraction(0)] * A.ncols
    for r, c in enumerate(pivots):
        x[c] = R.data[r][A.ncols]
    return x


def s_theta(
    theta: BrauerRelation,
    reps: Sequence[tuple[str, Representation]],
    p: int,
) -> SThetaReport:
    """Labels of the supplied representations whose regulator constant has odd
    valuation at p.

    Only valuations of exact rationals are taken, so the factorisation bound
    never comes into play here.
    """
    G = theta.group
    labels = [label for label, _ in reps]
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate representation labels")
    for label, V in reps:
        if V.group is not G:
            raise ValueError(f"representation {label!r} is over a different group")
        ok, witness = is_self_dual(V)
        if not ok:
            raise NotSelfDualError(label, witness)

    ords: dict[str, int] = {}
    members = []
    for label, V in reps:
        rc = regulator_constant_ratio(theta, V)
        ords[label] = ord_p(rc, p)
        if ords[label] % 2:
            members.append(label)

    chars = [character(V) for _, V in reps]
    ncls = len(G.classes())
    A = QMatrix(
        [[chars[j][c] for j in range(len(reps))] for c in range(ncls)],
        ncols=len(reps),
    )
    exhaustive = True
    for sub, _ in theta.terms:
        target = [Fraction(v) for v in fixed_points_character(G, sub)]
        sol = _solve_exact(A, target)
        if sol is None or any(x.denominator != 1 or x < 0 for x in sol):
            exhaustive = False
            break
    return SThetaReport(theta, p, tuple(members), exhaustive, ords)


def regulator_constant_ratio(
    theta: BrauerRelation,
    V: Representation,
    pairing: Pairing | None = None,
) -> Fraction:
    """The exact alternating Gram-determinant product (not reduced modulo
    squares); this is the ord_p-only fast path used by s_theta."""
    if V.group is not theta.group:
        raise ValueError("representation and relation have different groups")
    if pairing is None:
        pairing = V.pairing if V.pairing is not None else invariant_pairing(V)
    ratio = Fraction(1)
    for sub, coeff in theta.terms:
        ratio *= gram_det_fixed(V, pairing, sub) ** coeff
    return ratio
