"""Relations between induced permutation representations.

A relation is an integer combination of subgroups whose induced trivial
characters cancel; equality of the permutation characters is equivalent to an
isomorphism of the rational permutation modules, so relations are found as
the integer kernel of the (classes x subgroups) fixed-point character matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from regparity.exact_linalg import QMatrix, kernel_basis
from regparity.perm_groups import (
    Group,
    Subgroup,
    fixed_points_character,
    subgroups_up_to_conjugacy,
)


class BrauerRelation:
    """Integer-weighted formal sum of subgroups; positive coefficients are the
    left-hand side of the induced-module isomorphism, negative ones the right.

    The coefficient vector is normalised to content 1 with positive first
    entry.  Construction does not check that the character sum vanishes; use
    :func:`verify_relation` for that.
    """

    def __init__(self, group: Group, terms: Iterable[tuple[Subgroup, int]]):
        terms = list(terms)
        if not terms:
            self.group = group
            self.terms: tuple[tuple[Subgroup, int], ...] = ()
            return
        seen = set()
        for sub, coeff in terms:
            if sub.parent is not group:
                raise ValueError("relation term over a different group")
            if coeff == 0:
                raise ValueError("relation coefficients must be nonzero")
            if sub.indices in seen:
                raise ValueError("duplicate subgroup in relation")
            seen.add(sub.indices)
        g = gcd(*(abs(c) for _, c in terms))
        sign = 1 if terms[0][1] > 0 else -1
        self.group = group
        self.terms = tuple((sub, sign * (c // g)) for sub, c in terms)

    @property
    def positive_terms(self) -> tuple[tuple[Subgroup, int], ...]:
        return tuple((s, c) for s, c in self.terms if c > 0)

    @property
    def negative_terms(self) -> tuple[tuple[Subgroup, int], ...]:
        return tuple((s, -c) for s, c in self.terms if c < 0)

    def coefficients(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.terms)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BrauerRelation)
            and self.group is other.group
            and tuple((s.indices, c) for s, c in self.terms)
            == tuple((s.indices, c) for s, c in other.terms)
        )

    def __hash__(self) -> int:
        return hash(tuple((s.indices, c) for s, c in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (sub, c) in enumerate(self.terms):
            mag = abs(c)
            body = f"[{sub.label()}]" if mag == 1 else f"{mag}*[{sub.label()}]"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BrauerRelation({self})"


@dataclass(frozen=True)
class RelationVerdict:
    ok: bool
    witness_class: int | None = None
    witness_value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.ok


def find_relations(
    G: Group, subgroups: Sequence[Subgroup] | None = None
) -> list[BrauerRelation]:
    """Basis of the relations supported on the given subgroups (all subgroup
    classes by default), in the canonical integer-kernel normalisation."""
    if subgroups is None:
        subgroups = subgroups_up_to_conjugacy(G)
    subgroups = list(subgroups)
    chars = [fixed_points_character(G, H) for H in subgroups]
    matrix = QMatrix(
        [[chars[j][c] for j in range(len(subgroups))] for c in range(len(G.classes()))]
    )
    vectors = kernel_basis(matrix)
    return [
        BrauerRelation(G, [(s, c) for s, c in zip(subgroups, vec) if c])
        for vec in vectors
    ]


def verify_relation(theta: BrauerRelation) -> RelationVerdict:
    """Check that the weighted permutation characters cancel on every class;
    on failure report the first offending class and its value."""
    G = theta.group
    ncls = len(G.classes())
    total = [0] * ncls
    for sub, coeff in theta.terms:
        fpc = fixed_points_character(G, sub)
        for c in range(ncls):
            total[c] += coeff * fpc[c]
    for c, v in enumerate(total):
        if v:
            return RelationVerdict(False, c, Fraction(v))
    return RelationVerdict(True)
