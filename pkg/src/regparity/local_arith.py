"""Prime splitting from decomposition/inertia data and Tamagawa parities.

A prime of the base field is described by its decomposition subgroup D, its
inertia subgroup I (normal in D with cyclic quotient) and a reduction model.
The splitting of the prime in the subfield fixed by H is read off the double
cosets DxH: one prime per coset, with ramification index e = [I : I n xHx^-1]
and residue degree f = [D : D n xHx^-1] / e.

Reduction models translate splitting data into valuations of local Tamagawa
numbers.  Good reduction contributes nothing; split multiplicative reduction
with base Tamagawa number c contributes ord_p(e*c) per prime (the split type
persists in every residue extension and the Tamagawa number scales with the
ramification index); everything else must be spelled out in a custom
(e, f) -> c table.  Neron-differential norm factors are deliberately not
modelled; fold them into a custom table if they matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from regparity.exact_linalg import ord_p
from regparity.perm_groups import (
    Group,
    Subgroup,
    double_cosets,
    perm_inverse,
    perm_mul,
    _check_same_parent,
)
from regparity.brauer_relations import BrauerRelation
from regparity.regconst import SThetaReport, s_theta
from regparity.representations import Representation


class LocalDataError(ValueError):
    """Decomposition/inertia data violates I normal in D with D/I cyclic."""


class ModelTableGap(LookupError):
    """A custom Tamagawa table misses a splitting type it is asked about."""

    def __init__(self, e: int, f: int) -> None:
        super().__init__(f"custom Tamagawa table has no entry for (e, f) = ({e}, {f})")
        self.e = e
        self.f = f


@dataclass(frozen=True)
class Good:
    """Good reduction: all Tamagawa numbers are 1."""


@dataclass(frozen=True)
class SplitMultiplicative:
    """Split multiplicative reduction with base Tamagawa number c; a prime
    with ramification index e over the base gets Tamagawa number e*c."""

    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError("base Tamagawa number must be a positive integer")


@dataclass(frozen=True)
class CustomTable:
    """Explicit Tamagawa numbers per splitting type (e, f)."""

    table: tuple[tuple[tuple[int, int], int], ...]

    @staticmethod
    def from_mapping(m: Mapping[tuple[int, int], int]) -> "CustomTable":
        items = tuple(sorted(((int(e), int(f)), int(c)) for (e, f), c in m.items()))
        for (_, _), c in items:
            if c < 1:
                raise ValueError("Tamagawa numbers must be positive integers")
        return CustomTable(items)

    def lookup(self, e: int, f: int) -> int:
        for (te, tf), c in self.table:
            if (te, tf) == (e, f):
                return c
        raise ModelTableGap(e, f)


ReductionModel = Union[Good, SplitMultiplicative, CustomTable]


@dataclass(frozen=True)
class SplittingType:
    """Multiset of (ramification index, residue degree) pairs, sorted
    lexicographically; sum of e*f equals the index of the subgroup."""

    factors: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return "".join(f"({e},{f})" for e, f in self.factors)


def validate_local_pair(D: Subgroup, I: Subgroup) -> None:
    """Require I <= D normal with cyclic quotient D/I."""
    if D.parent is not I.parent:
        raise LocalDataError("D and I belong to different groups")
    if not I.members <= D.members:
        raise LocalDataError("inertia subgroup is not contained in D")
    if not I.is_normal_in(D):
        raise LocalDataError("inertia subgroup is not normal in D")
    G = D.parent
    q = D.order // I.order
    # cyclic quotient iff some coset has order q in D/I
    for g in D.indices:
        k, x = 1, g
        while x not in I.members:
            x = G.mul(x, g)
            k += 1
        if k == q:
            return
    raise LocalDataError("quotient D/I is not cyclic")


@dataclass(frozen=True)
class LocalPrimeData:
    """One prime of the base field: a label (e.g. "l=11"), its decomposition
    and inertia subgroups, and a reduction model."""

    label: str
    D: Subgroup
    I: Subgroup
    model: ReductionModel

    def __post_init__(self) -> None:
        validate_local_pair(self.D, self.I)


def splitting(G: Group, H: Subgroup, D: Subgroup, I: Subgroup) -> SplittingType:
    """Splitting type of the prime with data (D, I) in the field fixed by H:
    one (e, f) per double coset DxH."""
    _check_same_parent(G, H, D, I)
    validate_local_pair(D, I)
    i_perms = I.element_perms()
    d_perms = D.element_perms()
    factors = []
    for rep, _ in double_cosets(G, D, H).pairs:
        x = G.elements[rep]
        xinv = perm_inverse(x)
        # |S n xHx^-1| = #{s in S : x^-1 s x in H}
        in_i = sum(
            1 for s in i_perms if G.index[perm_mul(perm_mul(xinv, s), x)] in H.members
        )
        in_d = sum(
            1 for s in d_perms if G.index[perm_mul(perm_mul(xinv, s), x)] in H.members
        )
        e = I.order // in_i
        ftot = D.order // in_d
        if ftot % e:
            raise AssertionError("residue degree is not integral")
        factors.append((e, ftot // e))
    return SplittingType(tuple(sorted(factors)))


def tamagawa_ord(model: ReductionModel, s: SplittingType, p: int) -> int:
    """ord_p of the product of local Tamagawa numbers over the primes of the
    splitting type, under the given reduction model."""
    if isinstance(model, Good):
        return 0
    if isinstance(model, SplitMultiplicative):
        return sum(ord_p(e * model.c, p) for e, _ in s.factors)
    if isinstance(model, CustomTable):
        return sum(ord_p(model.lookup(e, f), p) for e, f in s.factors)
    raise TypeError(f"unknown reduction model {model!r}")


def c_ratio_ord(
    theta: BrauerRelation, primes: Sequence[LocalPrimeData], p: int
) -> int:
    """ord_p of the alternating product of Tamagawa contributions over the
    relation's terms, summed over the supplied primes."""
    G = theta.group
    total = 0
    for prime in primes:
        if prime.D.parent is not G:
            raise ValueError(f"prime {prime.label!r} is over a different group")
        for sub, coeff in theta.terms:
            s = splitting(G, sub, prime.D, prime.I)
            total += coeff * tamagawa_ord(prime.model, s, p)
    return total


HYPOTHESES_CAVEAT = (
    "conditional on: the abelian variety is principally polarised; "
    "for p = 2, additionally the polarisation is induced by a rational "
    "divisor over the base field. Neron-differential norm factors are not "
    "modelled (use a custom Tamagawa table to absorb them)."
)


@dataclass(frozen=True)
class ParityReport:
    """Parity of the total multiplicity of the S_Theta blocks in the dual
    p^infinity-Selmer representation, as forced by the local Tamagawa data."""

    relation: BrauerRelation
    p: int
    s_theta: SThetaReport
    splittings: tuple[tuple[str, str, SplittingType], ...]  # (prime, subgroup, type)
    c_ratio_ord: int
    parity: str  # "odd" | "even"
    conclusion: str
    caveat: str
    warnings: tuple[str, ...] = field(default=())


def predict_parity(
    theta: BrauerRelation,
    reps: Sequence[tuple[str, Representation]],
    primes: Sequence[LocalPrimeData],
    p: int,
) -> ParityReport:
    """Combine S_Theta membership with the Tamagawa valuation sum into the
    parity statement for sum of m_rho over rho in S_Theta."""
    st = s_theta(theta, reps, p)
    G = theta.group
    splits = []
    total = 0
    for prime in primes:
        if prime.D.parent is not G:
            raise ValueError(f"prime {prime.label!r} is over a different group")
        for sub, coeff in theta.terms:
            s = splitting(G, sub, prime.D, prime.I)
            splits.append((prime.label, sub.label(), s))
            total += coeff * tamagawa_ord(prime.model, s, p)
    parity = "odd" if total % 2 else "even"
    if st.members:
        head = " + ".join(f"m_{label}" for label in st.members)
    else:
        head = "the empty sum over S_Theta"
    conclusion = f"{head} is {parity}"
    warnings = ()
    if not st.exhaustive:
        warnings = (
            "supplied representations do not exhaust the relation's induced "
            "characters; S_Theta may have further members",
        )
    return ParityReport(
        relation=theta,
        p=p,
        s_theta=st,
        splittings=tuple(splits),
        c_ratio_ord=total,
        parity=parity,
        conclusion=conclusion,
        caveat=HYPOTHESES_CAVEAT,
        warnings=warnings,
    )
