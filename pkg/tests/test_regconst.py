import random
from fractions import Fraction

import pytest

from regparity.exact_linalg import QMatrix, SquareClass, ord_p
from regparity.perm_groups import double_cosets, generate, named_group, parse_cycles
from regparity.representations import (
    DegeneratePairingError,
    Pairing,
    Representation,
    direct_sum,
    invariant_pairing,
    perm_rep,
    trivial_rep,
)
from regparity.brauer_relations import BrauerRelation
from regparity.regconst import (
    NotSelfDualError,
    gram_det_fixed,
    regulator_constant,
    regulator_constant_perm,
    regulator_constant_ratio,
    s_theta,
)

F = Fraction


# -- Gram determinants on fixed subspaces -----------------------------------------

def test_gram_det_trivial_rep_whole_group():
    G = named_group("dihedral", 6).group
    V = trivial_rep(G)
    det = gram_det_fixed(V, V.pairing, G.whole_subgroup())
    assert det == F(1, 6)


def test_gram_det_s3_coset_module_matches_double_coset_oracle():
    G = generate(3, [parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)])
    C2 = G.subgroup_generated([G.index[parse_cycles("(1 2)", 3)]])
    V = perm_rep(G, C2)
    det = gram_det_fixed(V, V.pairing, C2)
    oracle = F(1)
    for size in double_cosets(G, C2, C2).sizes:
        oracle *= F(size, C2.order * C2.order)
    assert det == oracle == F(1, 2)


def test_gram_det_zero_dimensional_fixed_space(dihedral):
    ng, _, reps = dihedral(3)
    eps = dict(reps)["eps"]
    assert gram_det_fixed(eps, eps.pairing, ng.subgroups["G"]) == 1


def test_gram_det_detects_degenerate_user_pairing():
    G = generate(3, [parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)])
    C2 = G.subgroup_generated([G.index[parse_cycles("(1 2)", 3)]])
    V = perm_rep(G, C2)
    ones = Pairing(V, QMatrix([[1, 1, 1], [1, 1, 1], [1, 1, 1]]))  # invariant, rank 1
    with pytest.raises(DegeneratePairingError):
        gram_det_fixed(V, ones, C2)


def test_gram_det_rejects_foreign_pairing(dihedral):
    ng, _, reps = dihedral(3)
    d = dict(reps)
    with pytest.raises(ValueError):
        gram_det_fixed(d["rho"], d["eps"].pairing, ng.subgroups["C2"])


# -- regulator constants ------------------------------------------------------------

def test_empty_relation_gives_trivial_class(dihedral):
    ng, _, reps = dihedral(3)
    empty = BrauerRelation(ng.group, [])
    rc = regulator_constant(empty, dict(reps)["rho"])
    assert rc.value == SquareClass.one()
    assert rc.ratio == 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_dihedral_regulator_constants_equal_p(dihedral, p):
    _, theta, reps = dihedral(p)
    for _, V in reps:
        assert regulator_constant(theta, V).value == SquareClass(1, p)


@pytest.mark.parametrize("p", [3, 5])
def test_gl2_regulator_constants(gl2, p):
    _, theta, reps = gl2(p)
    d = dict(reps)
    assert regulator_constant(theta, d["1"]).value == SquareClass.one()
    assert regulator_constant(theta, d["sigma"]).value == SquareClass.one()
    assert regulator_constant(theta, d["rho"]).value == SquareClass(1, p)


def test_gl2_permutation_route_goldens(gl2):
    ng, theta, _ = gl2(3)
    assert regulator_constant_perm(theta, ng.subgroups["B"]).value == SquareClass.one()
    assert regulator_constant_perm(theta, ng.subgroups["U1"]).value == SquareClass(1, 3)


def test_dihedral_permutation_route_on_whole_group(dihedral):
    for p in (3, 5, 7):
        ng, theta, _ = dihedral(p)
        rc = regulator_constant_perm(theta, ng.subgroups["G"])
        assert rc.value == SquareClass(1, p)


def test_audit_trail_aligns_with_terms(gl2):
    _, theta, reps = gl2(3)
    rc = regulator_constant(theta, dict(reps)["rho"])
    assert [(s.name, c) for s, c, _ in rc.terms] == [("U1", 1), ("U2", -1)]
    ratio = F(1)
    for _, c, det in rc.terms:
        ratio *= det**c
    assert ratio == rc.ratio


# -- properties ------------------------------------------------------------------

def _random_pos_def_seed(rng, n):
    a = QMatrix([[rng.randrange(-2, 3) for _ in range(n)] for _ in range(n)])
    return (a.transpose() @ a) + QMatrix.identity(n).scale(rng.randrange(1, 4))


def test_pairing_independence_small(dihedral, gl2):
    rng = random.Random(17)
    for bundle in (dihedral(3), gl2(3)):
        _, theta, reps = bundle
        for _, V in reps:
            reference = regulator_constant(theta, V).value
            for _ in range(8):
                pairing = invariant_pairing(V, _random_pos_def_seed(rng, V.dim))
                assert regulator_constant(theta, V, pairing).value == reference


def test_multiplicativity_under_direct_sum(gl2):
    _, theta, reps = gl2(3)
    d = dict(reps)
    for a in ("1", "sigma", "rho"):
        for b in ("1", "sigma", "rho"):
            combined = regulator_constant(theta, direct_sum(d[a], d[b])).value
            assert (
                combined
                == regulator_constant(theta, d[a]).value
                * regulator_constant(theta, d[b]).value
            )


def test_matrix_route_equals_double_coset_route(dihedral, gl2):
    # identical SquareClass and identical exact ratio, term by term
    bundles = [dihedral(3), dihedral(5), dihedral(7), gl2(3)]
    for ng, theta, _ in bundles:
        for H in ng.subgroups.values():
            V = perm_rep(ng.group, H)
            via_perm = regulator_constant_perm(theta, H)
            via_gram = regulator_constant(theta, V)
            assert via_gram.value == via_perm.value
            for (_, _, d1), (_, _, d2) in zip(via_gram.terms, via_perm.terms):
                assert d1 == d2


def test_ind_u1_decomposition_consistency(gl2):
    # Q[G/U1] = 1 + sigma + rho forces the constants to multiply up
    ng, theta, reps = gl2(3)
    d = dict(reps)
    product = (
        regulator_constant(theta, d["1"]).value
        * regulator_constant(theta, d["sigma"]).value
        * regulator_constant(theta, d["rho"]).value
    )
    assert product == regulator_constant_perm(theta, ng.subgroups["U1"]).value


# -- S_Theta ------------------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5, 7])
def test_dihedral_s_theta(dihedral, p):
    _, theta, reps = dihedral(p)
    report = s_theta(theta, reps, p)
    assert report.members == ("1", "eps", "rho")
    assert report.exhaustive


@pytest.mark.parametrize("p", [3, 5])
def test_gl2_s_theta(gl2, p):
    _, theta, reps = gl2(p)
    report = s_theta(theta, reps, p)
    assert report.members == ("rho",)
    assert report.exhaustive
    assert report.ords["1"] % 2 == 0 and report.ords["sigma"] % 2 == 0


@pytest.mark.parametrize("p", [3, 5])
def test_borel_s_theta_full_rational_decomposition(borel, p):
    _, theta, reps = borel(p)
    report = s_theta(theta, reps, p)
    assert report.members == ("1", "eps", "rho")
    assert report.exhaustive
    if p == 5:
        assert report.ords["block"] % 2 == 0


def test_s_theta_not_exhaustive_without_all_blocks(gl2):
    _, theta, reps = gl2(3)
    partial = [rt for rt in reps if rt[0] != "sigma"]
    report = s_theta(theta, partial, 3)
    assert not report.exhaustive
    assert report.members == ("rho",)


def test_s_theta_ord_matches_exact_ratio(gl2):
    _, theta, reps = gl2(3)
    report = s_theta(theta, reps, 3)
    for label, V in reps:
        assert report.ords[label] == ord_p(regulator_constant_ratio(theta, V), 3)


def test_s_theta_rejects_duplicate_labels(gl2):
    _, theta, reps = gl2(3)
    with pytest.raises(ValueError):
        s_theta(theta, [reps[0], reps[0]], 3)


def test_s_theta_rejects_non_self_dual_input():
    # a deliberately broken "representation" (constructed unchecked) whose
    # character is not inversion-invariant must be refused with a witness
    G = named_group("cyclic", 3).group
    images = {0: QMatrix([[1]]), 1: QMatrix([[2]]), 2: QMatrix([[3]])}
    fake = Representation(G, 1, lambda i: images[i], check=False)
    theta = BrauerRelation(G, [])
    with pytest.raises(NotSelfDualError) as exc:
        s_theta(theta, [("fake", fake)], 3)
    assert exc.value.witness_class in (1, 2)
