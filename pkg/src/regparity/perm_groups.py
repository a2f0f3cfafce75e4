"""Finite permutation groups with explicit element lists.

Groups are generated by breadth-first closure and keep a fixed, deterministic
element order (identity first).  Subgroups are subsets of a parent group;
double cosets, conjugacy classes and permutation characters are computed by
direct enumeration, which is entirely adequate at the scales this package
targets (|G| <= 10^4 by default, GL2(F7) of order 2016 being the largest
named group).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from regparity.exact_linalg import _is_prime

Perm = tuple  # a permutation of {0..degree-1} as its tuple of images

DEFAULT_ORDER_CAP = 10_000
DEFAULT_SUBGROUP_CLASS_CAP = 200


class CapExceeded(RuntimeError):
    """A configured size cap was hit; carries the cap that was exceeded."""

    def __init__(self, message: str, cap: int) -> None:
        super().__init__(f"{message} (cap: {cap})")
        self.cap = cap


# -- permutation primitives -------------------------------------------------

def perm_mul(a: Perm, b: Perm) -> Perm:
    """Compose: (a*b)(i) = a(b(i))."""
    return tuple(a[x] for x in b)


def perm_inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def perm_from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> Perm:
    images = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for x in cyc:
            if not 0 <= x < degree:
                raise ValueError(f"point {x} out of range for degree {degree}")
            if x in seen:
                raise ValueError(f"point {x} repeated in cycles")
            seen.add(x)
        for i, x in enumerate(cyc):
            images[x] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


def perm_to_cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles of p, each starting at its minimal point."""
    seen: set[int] = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        cycles.append(tuple(cyc))
    return cycles


def format_cycles(p: Perm) -> str:
    cycles = perm_to_cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse cycle notation like ``(0 1)(2 3)``; ``()`` is the identity."""
    text = text.strip()
    if not text:
        raise ValueError("empty permutation text")
    cycles = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "(":
            if depth:
                raise ValueError("nested parenthesis in cycle notation")
            depth = 1
            current = []
        elif ch == ")":
            if not depth:
                raise ValueError("unbalanced parenthesis in cycle notation")
            depth = 0
            body = "".join(current).replace(",", " ").split()
            if body:
                cycles.append([int(tok) for tok in body])
        elif depth:
            current.append(ch)
        elif not ch.isspace():
            raise ValueError(f"unexpected character {ch!r} in cycle notation")
    if depth:
        raise ValueError("unbalanced parenthesis in cycle notation")
    return perm_from_cycles(degree, cycles)


# -- groups and subgroups ---------------------------------------------------

class Group:
    """A finite permutation group with a fixed deterministic element order.

    Construct with :func:`generate`; the constructor itself trusts its input.
    """

    def __init__(self, degree: int, elements: list[Perm], generators: list[Perm]):
        self.degree = degree
        self.elements = list(elements)
        self.generators = list(generators)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._inverse = [self.index[perm_inverse(g)] for g in self.elements]
        self._classes: tuple[tuple[int, ...], ...] | None = None
        self._class_of: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[perm_mul(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._inverse[i]

    def generator_indices(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    # subgroup builders

    def subgroup(self, indices: Iterable[int], name: str | None = None) -> "Subgroup":
        return Subgroup(self, indices, name=name)

    def subgroup_from_perms(self, perms: Iterable[Perm], name: str | None = None) -> "Subgroup":
        return Subgroup(self, (self.index[p] for p in perms), name=name)

    def subgroup_generated(self, gens: Iterable[int], name: str | None = None) -> "Subgroup":
        members = self.closure(gens)
        return Subgroup(self, members, name=name, _trusted=True)

    def closure(self, seed: Iterable[int]) -> frozenset[int]:
        """Indices of the subgroup generated by the given element indices."""
        members = {0}
        frontier = [0]
        gens = sorted(set(seed))
        for g in gens:
            if g not in members:
                members.add(g)
                frontier.append(g)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), name="1", _trusted=True)

    def whole_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order), name="G", _trusted=True)

    # conjugacy classes

    def classes(self) -> tuple[tuple[int, ...], ...]:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def class_of(self, i: int) -> int:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of[i]

    def inverse_class(self, cidx: int) -> int:
        rep = self.classes()[cidx][0]
        return self.class_of(self.inv(rep))

    def _compute_classes(self) -> None:
        n = self.order
        gens = [(g, perm_inverse(g)) for g in self.generators] or [
            (self.elements[0], self.elements[0])
        ]
        seen = [False] * n
        classes = []
        class_of = [0] * n
        for i in range(n):
            if seen[i]:
                continue
            orbit = {i}
            stack = [i]
            while stack:
                x = stack.pop()
                ex = self.elements[x]
                for g, gi in gens:
                    y = self.index[perm_mul(perm_mul(g, ex), gi)]
                    if y not in orbit:
                        orbit.add(y)
                        stack.append(y)
            cls = tuple(sorted(orbit))
            cidx = len(classes)
            classes.append(cls)
            for x in cls:
                seen[x] = True
                class_of[x] = cidx
        self._classes = tuple(classes)
        self._class_of = class_of

    def __repr__(self) -> str:
        return f"Group(degree={self.degree}, order={self.order})"


class Subgroup:
    """A subgroup of an explicitly enumerated parent group."""

    __slots__ = ("parent", "indices", "members", "name")

    def __init__(
        self,
        parent: Group,
        indices: Iterable[int],
        name: str | None = None,
        _trusted: bool = False,
    ):
        idx = tuple(sorted(set(indices)))
        self.parent = parent
        self.indices = idx
        self.members = frozenset(idx)
        self.name = name
        if not _trusted:
            self._validate()

    def _validate(self) -> None:
        if not self.indices:
            raise ValueError("subgroup must contain the identity")
        if 0 not in self.members:
            raise ValueError("subgroup must contain the identity")
        for i in self.indices:
            if not 0 <= i < self.parent.order:
                raise ValueError(f"element index {i} out of range")
            if self.parent.inv(i) not in self.members:
                raise ValueError("subgroup not closed under inverse")
        for i in self.indices:
            for j in self.indices:
                if self.parent.mul(i, j) not in self.members:
                    raise ValueError("subgroup not closed under composition")
        if self.parent.order % len(self.indices):
            raise ValueError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    def contains(self, i: int) -> bool:
        return i in self.members

    def element_perms(self) -> list[Perm]:
        return [self.parent.elements[i] for i in self.indices]

    def conjugate(self, g: int, name: str | None = None) -> "Subgroup":
        G = self.parent
        gi = G.inv(g)
        return Subgroup(
            G,
            (G.mul(G.mul(g, h), gi) for h in self.indices),
            name=name,
            _trusted=True,
        )

    def is_normal_in(self, other: "Subgroup") -> bool:
        if self.parent is not other.parent or not self.members <= other.members:
            return False
        G = self.parent
        return all(
            G.mul(G.mul(g, h), G.inv(g)) in self.members
            for g in other.indices
            for h in self.indices
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.indices == other.indices
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.indices))

    def __repr__(self) -> str:
        label = self.name or f"order {self.order}"
        return f"Subgroup({label}, order={self.order})"

    def label(self) -> str:
        return self.name if self.name else "{" + ",".join(map(str, self.indices)) + "}"


def generate(degree: int, gens: Sequence[Perm], cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Close a generator list under composition, breadth-first from the
    identity with generators taken in the given order."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"{g} is not a permutation of degree {degree}")
    e = identity_perm(degree)
    elements = [e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(x, g)
                if y not in seen:
                    if len(elements) >= cap:
                        raise CapExceeded("group order exceeds cap", cap)
                    seen.add(y)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    return Group(degree, elements, gens)


# -- named group families ----------------------------------------------------

@dataclass(frozen=True)
class NamedGroup:
    """A group from one of the built-in families with its distinguished
    subgroups keyed by short names ("1" and "G" always present)."""

    group: Group
    family: str
    param: int
    subgroups: dict[str, Subgroup] = field(compare=False)

    def spec(self) -> str:
        return f"{self.family}:{self.param}"


def _squares_mod(p: int) -> frozenset[int]:
    return frozenset((x * x) % p for x in range(1, p))


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        x, seen = g, set()
        while x not in seen:
            seen.add(x)
            x = (x * g) % p
        if len(seen) == p - 1:
            return g
    raise ValueError(f"no primitive root modulo {p}")


def _named_cyclic(n: int) -> NamedGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    rot = tuple((i + 1) % n for i in range(n)) if n > 1 else (0,)
    G = generate(n if n > 1 else 1, [rot] if n > 1 else [])
    subs = {"1": G.trivial_subgroup(), "G": G.whole_subgroup()}
    return NamedGroup(G, "cyclic", n, subs)


def _named_dihedral(order: int) -> NamedGroup:
    if order % 2 or order < 6:
        raise ValueError("dihedral order must be an even integer >= 6")
    n = order // 2
    rot = tuple((i + 1) % n for i in range(n))
    refl = tuple((-i) % n for i in range(n))
    G = generate(n, [rot, refl])
    assert G.order == order
    subs = {
        "1": G.trivial_subgroup(),
        "C2": G.subgroup_generated([G.index[refl]], name="C2"),
        "Cn": G.subgroup_generated([G.index[rot]], name="Cn"),
        "G": G.whole_subgroup(),
    }
    return NamedGroup(G, "dihedral", order, subs)


def _gl2_vectors(p: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]


def _gl2_matrix_perm(mat: tuple[int, int, int, int], p: int,
                     vectors: list[tuple[int, int]],
                     vindex: dict[tuple[int, int], int]) -> Perm:
    a, b, c, d = mat
    return tuple(
        vindex[((a * x + b * y) % p, (c * x + d * y) % p)] for (x, y) in vectors
    )


def gl2_matrix_of(G: Group, p: int, i: int) -> tuple[int, int, int, int]:
    """Recover the matrix (a, b, c, d) of element i of a gl2(p) group from its
    action on the basis vectors (1,0) and (0,1)."""
    vectors = _gl2_vectors(p)
    vindex = {v: k for k, v in enumerate(vectors)}
    g = G.elements[i]
    a, c = vectors[g[vindex[(1, 0)]]]
    b, d = vectors[g[vindex[(0, 1)]]]
    return (a, b, c, d)


def _named_gl2(p: int) -> NamedGroup:
    if not _is_prime(p):
        raise ValueError(f"gl2 parameter {p} is not prime")
    if p > 7:
        raise ValueError("gl2 supports primes p <= 7")
    vectors = _gl2_vectors(p)
    vindex = {v: k for k, v in enumerate(vectors)}
    if p == 2:
        gens_m = [(1, 1, 0, 1), (0, 1, 1, 0)]
    else:
        gens_m = [(_primitive_root(p), 0, 0, 1), (p - 1, 1, p - 1, 0)]
    gens = [_gl2_matrix_perm(m, p, vectors, vindex) for m in gens_m]
    G = generate(p * p - 1, gens)
    expected = (p * p - 1) * (p * p - p)
    if G.order != expected:
        raise AssertionError(f"gl2({p}) generation produced order {G.order}")
    squares = _squares_mod(p)

    def members(pred) -> list[int]:
        out = []
        for i in range(G.order):
            if pred(gl2_matrix_of(G, p, i)):
                out.append(i)
        return out

    subs = {
        "1": G.trivial_subgroup(),
        "B": G.subgroup(members(lambda m: m[2] == 0), name="B"),
        "U1": G.subgroup(
            members(lambda m: m[2] == 0 and m[0] in squares), name="U1"
        ),
        "U2": G.subgroup(
            members(lambda m: m[2] == 0 and m[3] in squares), name="U2"
        ),
        "D": G.subgroup(members(lambda m: m[2] == 0 and m[3] == 1), name="D"),
        "I": G.subgroup(
            members(lambda m: m[2] == 0 and m[0] == 1 and m[3] == 1), name="I"
        ),
        "G": G.whole_subgroup(),
    }
    return NamedGroup(G, "gl2", p, subs)


def _named_borel_quotient(p: int) -> NamedGroup:
    if not _is_prime(p) or p < 3:
        raise ValueError("borel_quotient parameter must be an odd prime")
    g = _primitive_root(p)
    transl = tuple((x + 1) % p for x in range(p))
    scale = tuple((g * x) % p for x in range(p))
    G = generate(p, [transl, scale])
    assert G.order == p * (p - 1)
    squares = _squares_mod(p)

    def multiplier(i: int) -> int:
        e = G.elements[i]
        return (e[1] - e[0]) % p

    subs = {
        "1": G.trivial_subgroup(),
        "Cp": G.subgroup_generated([G.index[transl]], name="Cp"),
        "Cq": G.subgroup(
            (i for i in range(G.order) if G.elements[i][0] == 0), name="Cq"
        ),
        "sq": G.subgroup(
            (i for i in range(G.order) if multiplier(i) in squares), name="sq"
        ),
        "G": G.whole_subgroup(),
    }
    return NamedGroup(G, "borel_quotient", p, subs)


_FAMILIES = {
    "cyclic": _named_cyclic,
    "dihedral": _named_dihedral,
    "gl2": _named_gl2,
    "borel_quotient": _named_borel_quotient,
}


def named_group(family: str, param: int) -> NamedGroup:
    """Built-in families: cyclic(n), dihedral(2n), gl2(p) for prime p <= 7,
    borel_quotient(p) of order p(p-1) for odd prime p."""
    key = family.strip().lower()
    if key == "borel":
        key = "borel_quotient"
    if key not in _FAMILIES:
        raise ValueError(f"unknown group family {family!r}")
    return _FAMILIES[key](param)


# -- conjugacy, subgroup lattice, double cosets, characters -------------------

def conjugacy_classes(G: Group) -> tuple[tuple[int, ...], ...]:
    """Partition of element indices into conjugacy classes, each sorted, the
    list ordered by smallest member (identity class first)."""
    return G.classes()


def _canonical_conjugate(G: Group, members: frozenset[int]) -> tuple[int, ...]:
    best: tuple[int, ...] | None = None
    for g in range(G.order):
        gi = G.inv(g)
        img = tuple(sorted(G.mul(G.mul(g, h), gi) for h in members))
        if best is None or img < best:
            best = img
    return best


def subgroups_up_to_conjugacy(
    G: Group, cap: int = DEFAULT_SUBGROUP_CLASS_CAP
) -> list[Subgroup]:
    """One representative per conjugacy class of subgroups.

    Seeds with all cyclic subgroups, then closes under adjoining single
    elements; representatives are the conjugates with lexicographically
    minimal sorted member set, listed by (order, member set).
    """
    found: dict[tuple[int, ...], frozenset[int]] = {}

    def add(members: frozenset[int]) -> tuple[int, ...] | None:
        canon = _canonical_conjugate(G, members)
        if canon in found:
            return None
        if len(found) >= cap:
            raise CapExceeded(
                "too many subgroup classes; pass explicit subgroup lists", cap
            )
        found[canon] = frozenset(canon)
        return canon

    worklist: list[tuple[int, ...]] = []
    for i in range(G.order):
        canon = add(G.closure([i]))
        if canon is not None:
            worklist.append(canon)
    while worklist:
        members = found[worklist.pop()]
        for e in range(G.order):
            if e in members:
                continue
            canon = add(G.closure(list(members) + [e]))
            if canon is not None:
                worklist.append(canon)
    out = [
        Subgroup(G, m, _trusted=True)
        for m in sorted(found.values(), key=lambda s: (len(s), tuple(sorted(s))))
    ]
    return out


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    """Double cosets as (representative element index, size) pairs, listed by
    the smallest element index each coset occupies."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(size for _, size in self.pairs)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(rep for rep, _ in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def _check_same_parent(G: Group, *subs: Subgroup) -> None:
    for s in subs:
        if s.parent is not G:
            raise ValueError("subgroup belongs to a different group")


def double_cosets(G: Group, N: Subgroup, H: Subgroup) -> DoubleCosetDecomposition:
    """Decompose G into N\\G/H by direct orbit enumeration."""
    _check_same_parent(G, N, H)
    n = G.order
    seen = bytearray(n)
    n_perms = N.element_perms()
    h_perms = H.element_perms()
    pairs = []
    for idx in range(n):
        if seen[idx]:
            continue
        x = G.elements[idx]
        coset: set[int] = set()
        for np in n_perms:
            nx = perm_mul(np, x)
            for hp in h_perms:
                coset.add(G.index[perm_mul(nx, hp)])
        for m in coset:
            seen[m] = 1
        pairs.append((idx, len(coset)))
    return DoubleCosetDecomposition(tuple(pairs))


def left_cosets(G: Group, H: Subgroup) -> tuple[list[int], list[int]]:
    """Left cosets of H: (representative indices in scan order, map from
    element index to coset number)."""
    _check_same_parent(G, H)
    coset_of = [-1] * G.order
    reps = []
    for i in range(G.order):
        if coset_of[i] >= 0:
            continue
        c = len(reps)
        reps.append(i)
        for h in H.indices:
            coset_of[G.mul(i, h)] = c
    return reps, coset_of


def fixed_points_character(G: Group, H: Subgroup) -> tuple[int, ...]:
    """Character of the action on G/H: per conjugacy class, the number of
    cosets fixed by the class representative (the induced trivial character)."""
    _check_same_parent(G, H)
    reps, _ = left_cosets(G, H)
    values = []
    for cls in G.classes():
        r = G.elements[cls[0]]
        count = 0
        for gidx in reps:
            g = G.elements[gidx]
            conj = perm_mul(perm_mul(perm_inverse(g), r), g)
            if G.index[conj] in H.members:
                count += 1
        values.append(count)
    return tuple(values)
