import random
from fractions import Fraction

import pytest

from regparity.exact_linalg import QMatrix, determinant
from regparity.perm_groups import generate, left_cosets, named_group, parse_cycles
from regparity.representations import (
    Representation,
    char_inner,
    character,
    direct_sum,
    fixed_subspace,
    hom_basis,
    invariant_pairing,
    is_self_dual,
    perm_rep,
    split_off,
    trivial_rep,
)
from regparity.regconst import pair_gram_det

F = Fraction


@pytest.fixture(scope="module")
def s3():
    return generate(3, [parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)])


# -- permutation modules ---------------------------------------------------------

def test_perm_rep_trivial_and_regular(s3):
    assert trivial_rep(s3).dim == 1
    assert perm_rep(s3, s3.trivial_subgroup()).dim == s3.order


def test_perm_rep_dimension_is_index(gl2):
    ng, _, _ = gl2(3)
    assert perm_rep(ng.group, ng.subgroups["B"]).dim == 4


def test_perm_rep_images_are_permutation_matrices(s3):
    c2 = s3.subgroup_generated([s3.index[parse_cycles("(1 2)", 3)]])
    V = perm_rep(s3, c2)
    for i in range(s3.order):
        m = V.image(i)
        for row in m.data:
            assert sorted(row) == [0, 0, 1]


# -- invariant pairings ---------------------------------------------------------

def test_invariant_pairing_trivial_group_returns_seed():
    G = generate(1, [])
    V = trivial_rep(G)
    seed = QMatrix([[5]])
    assert invariant_pairing(V, seed).gram == seed


def test_invariant_pairing_perm_rep_identity_seed(s3):
    c2 = s3.subgroup_generated([s3.index[parse_cycles("(1 2)", 3)]])
    V = perm_rep(s3, c2)
    # permutation matrices are orthogonal, so averaging gives |G| . identity
    assert invariant_pairing(V).gram == QMatrix.identity(3).scale(6)


def test_invariant_pairing_on_steinberg_block(gl2):
    ng, _, reps = gl2(3)
    sigma = dict(reps)["sigma"]
    pairing = invariant_pairing(sigma)
    for i in range(ng.group.order):
        m = sigma.image(i)
        assert m.transpose() @ pairing.gram @ m == pairing.gram
    assert determinant(pairing.gram) != 0


def test_invariant_pairing_rejects_bad_seeds(s3):
    V = perm_rep(s3, s3.whole_subgroup())
    with pytest.raises(ValueError):
        invariant_pairing(V, QMatrix([[1, 1], [1, 1]]))  # wrong shape
    V3 = perm_rep(s3, s3.subgroup_generated([s3.index[parse_cycles("(1 2)", 3)]]))
    with pytest.raises(ValueError):
        invariant_pairing(V3, QMatrix([[1, 2, 0], [0, 1, 0], [0, 0, 1]]))  # asymmetric
    with pytest.raises(ValueError):
        invariant_pairing(V3, QMatrix([[1, 2, 0], [2, 1, 0], [0, 0, 1]]))  # indefinite


# -- fixed subspaces ---------------------------------------------------------

def test_fixed_subspace_under_trivial_subgroup_is_everything(s3):
    V = perm_rep(s3, s3.trivial_subgroup())
    assert fixed_subspace(V, s3.trivial_subgroup()) == QMatrix.identity(6)


def test_fixed_subspace_of_trivial_rep(s3):
    V = trivial_rep(s3)
    for H in (s3.trivial_subgroup(), s3.whole_subgroup()):
        assert fixed_subspace(V, H) == QMatrix([[1]])


def test_fixed_subspace_s3_coset_module(s3):
    c2 = s3.subgroup_generated([s3.index[parse_cycles("(1 2)", 3)]])
    V = perm_rep(s3, c2)
    B = fixed_subspace(V, c2)
    assert B.columns() == [(1, 0, 0), (0, 1, 1)]


def test_fixed_subspace_dimension_matches_character_average(gl2):
    ng, _, reps = gl2(3)
    G = ng.group
    chars = {label: character(V) for label, V in reps}
    for label, V in reps:
        for H in ng.subgroups.values():
            expected = sum(chars[label][G.class_of(h)] for h in H.indices)
            assert fixed_subspace(V, H).ncols * H.order == expected


# -- intertwiners ---------------------------------------------------------

def test_hom_from_trivial_is_all_ones_column(s3):
    c2 = s3.subgroup_generated([s3.index[parse_cycles("(1 2)", 3)]])
    homs = hom_basis(trivial_rep(s3), perm_rep(s3, c2))
    assert len(homs) == 1
    assert homs[0].column(0) == (1, 1, 1)


def test_hom_dimensions_on_induced_modules(gl2):
    ng, _, reps = gl2(3)
    G = ng.group
    indB = perm_rep(G, ng.subgroups["B"])
    one = dict(reps)["1"]
    sigma = dict(reps)["sigma"]
    assert len(hom_basis(indB, indB)) == 2
    assert len(hom_basis(one, sigma)) == 0


def test_hom_dimension_matches_character_inner_product(dihedral, gl2):
    for bundle in (dihedral(3), gl2(3)):
        ng, _, reps = bundle
        G = ng.group
        for _, V in reps:
            for _, W in reps:
                expected = char_inner(G, character(V), character(W))
                assert len(hom_basis(V, W)) == expected


# -- splitting ---------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5])
def test_split_off_steinberg_chain_dimensions(gl2, p):
    _, _, reps = gl2(p)
    d = dict(reps)
    assert d["sigma"].dim == p
    assert d["rho"].dim == p + 1


def test_split_off_self_gives_zero_rep(gl2):
    ng, _, _ = gl2(3)
    V = perm_rep(ng.group, ng.subgroups["B"])
    Z = split_off(V, V)
    assert Z.dim == 0
    assert character(Z) == (0,) * len(ng.group.classes())


def test_split_off_dimension_rule(gl2):
    ng, _, reps = gl2(3)
    G = ng.group
    one = dict(reps)["1"]
    V = perm_rep(G, ng.subgroups["U1"])
    k = len(hom_basis(one, V))
    W = split_off(V, one)
    assert W.dim == V.dim - k * one.dim


def test_split_off_requires_pairing(gl2):
    ng, _, reps = gl2(3)
    sigma = dict(reps)["sigma"]
    bare = Representation(
        ng.group, sigma.dim, sigma.image, pairing_gram=None, check=False
    )
    with pytest.raises(ValueError):
        split_off(bare, bare)


def test_split_off_complement_is_orthogonal_and_invariant(gl2):
    ng, _, reps = gl2(3)
    G = ng.group
    d = dict(reps)
    V = perm_rep(G, ng.subgroups["U1"])
    W = direct_sum(d["1"], d["sigma"])
    rho = split_off(V, W)
    assert rho.dim == 4
    # rho is an honest representation: verified on all pairs at construction;
    # spot-check the pairing invariance too
    for i in range(G.order):
        m = rho.image(i)
        assert m.transpose() @ rho.pairing.gram @ m == rho.pairing.gram


# -- characters ---------------------------------------------------------

def test_character_of_trivial_rep(s3):
    assert character(trivial_rep(s3)) == (1,) * len(s3.classes())


def test_character_of_perm_rep_counts_fixed_points(s3, gl2):
    from regparity.perm_groups import fixed_points_character

    ng, _, _ = gl2(3)
    for G, H in (
        (s3, s3.subgroup_generated([s3.index[parse_cycles("(1 2)", 3)]])),
        (ng.group, ng.subgroups["U1"]),
    ):
        V = perm_rep(G, H)
        assert character(V) == tuple(fixed_points_character(G, H))


def test_steinberg_character_dimension(gl2):
    for p in (3, 5):
        _, _, reps = gl2(p)
        assert character(dict(reps)["sigma"])[0] == p


def test_all_suite_representations_are_self_dual(dihedral, gl2, borel):
    for bundle in (dihedral(3), dihedral(5), gl2(3), borel(5)):
        for _, V in bundle[2]:
            ok, witness = is_self_dual(V)
            assert ok and witness is None


def test_representation_construction_rejects_non_homomorphism(s3):
    images = {i: QMatrix([[i + 1]]) for i in range(s3.order)}
    with pytest.raises(ValueError):
        Representation(s3, 1, lambda i: images[i])


# -- equivariant-maps inner product oracle ---------------------------------------

def equivariant_gram_det(V, gram, H):
    """Gram determinant of (f1, f2) = (1/|G|) sum over cosets s of
    <f1(s), f2(s)> on the equivariant maps G/H -> V, using the basis that maps
    f to its value at the trivial coset."""
    G = V.group
    B = fixed_subspace(V, H)
    if B.ncols == 0:
        return F(1)
    reps, _ = left_cosets(G, H)
    vals = [
        [V.image(r).apply(B.column(j)) for j in range(B.ncols)] for r in reps
    ]
    n = B.ncols
    entries = [[F(0)] * n for _ in range(n)]
    for vrow in vals:
        for i in range(n):
            gi = gram.apply(vrow[i])
            for j in range(n):
                entries[i][j] += sum(a * b for a, b in zip(gi, vrow[j]))
    M = QMatrix(entries).scale(F(1, G.order))
    return determinant(M)


def test_function_space_inner_product_matches_fixed_space(gl2):
    ng, _, reps = gl2(3)
    sigma = dict(reps)["sigma"]
    for key in ("B", "U1"):
        H = ng.subgroups[key]
        direct = pair_gram_det(sigma.pairing.gram, fixed_subspace(sigma, H), H.order)
        via_maps = equivariant_gram_det(sigma, sigma.pairing.gram, H)
        assert direct == via_maps


# -- basis changes ---------------------------------------------------------

def test_gram_det_invariant_under_unimodular_basis_change(gl2):
    ng, _, reps = gl2(3)
    rho = dict(reps)["rho"]
    H = ng.subgroups["U1"]
    B = fixed_subspace(rho, H)
    base = pair_gram_det(rho.pairing.gram, B, H.order)
    rng = random.Random(21)
    n = B.ncols
    for _ in range(10):
        # random integer matrix with determinant +-1 built from shears
        U = QMatrix.identity(n)
        for _ in range(4):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j:
                continue
            shear = [[F(1 if a == b else 0) for b in range(n)] for a in range(n)]
            shear[i][j] = F(rng.randrange(-3, 4))
            U = U @ QMatrix(shear)
        transformed = pair_gram_det(rho.pairing.gram, B @ U, H.order)
        assert transformed == base


def test_gram_det_changes_by_square_under_any_basis_change(gl2):
    from regparity.exact_linalg import determinant, square_class

    ng, _, reps = gl2(3)
    rho = dict(reps)["rho"]
    H = ng.subgroups["U1"]
    B = fixed_subspace(rho, H)
    base = pair_gram_det(rho.pairing.gram, B, H.order)
    rng = random.Random(22)
    n = B.ncols
    for _ in range(10):
        U = QMatrix([[F(rng.randrange(-3, 4)) for _ in range(n)] for _ in range(n)])
        d = determinant(U)
        if d == 0:
            continue
        transformed = pair_gram_det(rho.pairing.gram, B @ U, H.order)
        assert transformed == base * d * d
        assert square_class(transformed) == square_class(base)
