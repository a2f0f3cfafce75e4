import pytest

from regparity.brauer_relations import BrauerRelation, find_relations
from regparity.perm_groups import named_group
from regparity.representations import direct_sum, perm_rep, split_off, trivial_rep


def dihedral_bundle(p):
    """Order-2p dihedral group with its unique relation and the three rational
    blocks: trivial, sign, and the (p-1)-dimensional complement."""
    ng = named_group("dihedral", 2 * p)
    G = ng.group
    one = trivial_rep(G)
    eps = split_off(perm_rep(G, ng.subgroups["Cn"]), one)
    rho = split_off(perm_rep(G, ng.subgroups["C2"]), one)
    (theta,) = find_relations(G)
    return ng, theta, [("1", one), ("eps", eps), ("rho", rho)]


def gl2_bundle(p):
    """GL2(F_p) with the U1 - U2 relation and blocks 1, sigma, rho."""
    ng = named_group("gl2", p)
    G = ng.group
    one = trivial_rep(G)
    sigma = split_off(perm_rep(G, ng.subgroups["B"]), one)
    rho = split_off(perm_rep(G, ng.subgroups["U1"]), direct_sum(one, sigma))
    theta = BrauerRelation(G, [(ng.subgroups["U1"], 1), (ng.subgroups["U2"], -1)])
    return ng, theta, [("1", one), ("sigma", sigma), ("rho", rho)]


def borel_bundle(p):
    """Frobenius group of order p(p-1) with the four-term relation and the
    full rational block decomposition."""
    ng = named_group("borel_quotient", p)
    G = ng.group
    one = trivial_rep(G)
    eps = split_off(perm_rep(G, ng.subgroups["sq"]), one)
    rho = split_off(perm_rep(G, ng.subgroups["Cq"]), one)
    reps = [("1", one), ("eps", eps)]
    block = split_off(perm_rep(G, ng.subgroups["Cp"]), direct_sum(one, eps))
    if block.dim:
        reps.append(("block", block))
    reps.append(("rho", rho))
    subs = [ng.subgroups[k] for k in ("1", "Cq", "Cp", "G")]
    (theta,) = find_relations(G, subs)
    return ng, theta, reps


@pytest.fixture(scope="session")
def dihedral():
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = dihedral_bundle(p)
        return cache[p]

    return get


@pytest.fixture(scope="session")
def gl2():
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = gl2_bundle(p)
        return cache[p]

    return get


@pytest.fixture(scope="session")
def borel():
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = borel_bundle(p)
        return cache[p]

    return get
