import numpy as np
import pytest

from rdslink.ff import field_make
from rdslink.groups import (Subgroup, center, cyclic, heisenberg,
                            right_cosets)
from rdslink.rds import (EquationFails, IntersectionArray, LambdaNotPositive,
                         RdsError, WrongDiameter, cayley_adjacency,
                         certify_drg3, dev, find_forbidden,
                         is_icommuting, rds_product, rds_to_pds,
                         symplectic_standard, thas_somma, verify_pds,
                         verify_rds)


def test_verify_rds_small():
    # {0,1} is a (2,2,2,1)-RDS in C4 relative to {0,2}
    G = cyclic(4)
    N = Subgroup(G, (0, 2))
    cert = verify_rds(G, (0, 1), N)
    assert cert.parameters == (2, 2, 2, 1)
    assert cert.semiregular
    assert not cert.reversible
    assert cert.i_commuting


def test_verify_rds_failure_witness():
    G = cyclic(4)
    N = Subgroup(G, (0, 2))
    with pytest.raises(EquationFails) as ei:
        verify_rds(G, (0, 2), N)  # hits the forbidden subgroup
    assert ei.value.element is not None


def test_lambda_not_positive():
    G = cyclic(4)
    N = Subgroup(G, (0, 2))
    with pytest.raises((LambdaNotPositive, RdsError)):
        verify_rds(G, (0,), N)


def test_find_forbidden():
    G = cyclic(4)
    found = find_forbidden(G, (0, 1))
    assert any(N.members == (0, 2) for N in found)


def test_icommuting_dual_criteria_abelian():
    G = cyclic(6)
    N = Subgroup(G, (0, 3))
    assert is_icommuting(G, (0, 1), N)


def test_verify_pds_paley():
    # Paley: S = {1, 4} in C5 is a (5,2,0,1)-PDS
    G = cyclic(5)
    cert = verify_pds(G, (1, 4))
    assert cert.parameters == (5, 2, 0, 1)


def test_rds_to_pds_requires_reversible():
    G = cyclic(4)
    N = Subgroup(G, (0, 2))
    with pytest.raises(RdsError):
        rds_to_pds(G, (0, 1), N)


def test_rds_product_rejects_improper_factors():
    G = cyclic(4)
    emb = np.arange(4)
    with pytest.raises(RdsError):
        rds_product(G, emb, emb, (0, 1), (0, 1))


def test_intersection_array_feasibility():
    IntersectionArray(8, 6, 1, 1, 3, 8)
    with pytest.raises(RdsError):
        IntersectionArray(1, 6, 1, 1, 3, 8)
    with pytest.raises(RdsError):
        IntersectionArray(8, 6, 1, 2, 3, 8)
    assert str(IntersectionArray(8, 6, 1, 1, 3, 8)) == "{8,6,1;1,3,8}"


def _hypercube(d):
    v = 2 ** d
    adj = np.zeros((v, v), dtype=bool)
    for u in range(v):
        for bit in range(d):
            adj[u, u ^ (1 << bit)] = True
    return adj


def test_certify_drg3_hypercube():
    arr, classes = certify_drg3(_hypercube(3))
    assert arr.as_tuple() == (3, 2, 1, 1, 2, 3)
    assert len(classes) == 4
    assert all(len(c) == 2 for c in classes)  # antipodal pairs


def test_certify_drg3_wrong_diameter():
    with pytest.raises(WrongDiameter):
        certify_drg3(_hypercube(4))  # diameter 4
    # C6 cycle: diameter 3 but distance-3 classes are fine; C8 diameter 4
    v = 8
    adj = np.zeros((v, v), dtype=bool)
    for u in range(v):
        adj[u, (u + 1) % v] = adj[(u + 1) % v, u] = True
    with pytest.raises(WrongDiameter):
        certify_drg3(adj)


def test_cayley_adjacency_validation():
    G = cyclic(5)
    with pytest.raises(RdsError):
        cayley_adjacency(G, (0, 1, 4))  # identity in connection set
    with pytest.raises(RdsError):
        cayley_adjacency(G, (1, 2))  # not reversible
    adj = cayley_adjacency(G, (1, 4))
    assert adj.sum() == 10  # 2-regular on 5 vertices


def test_dev():
    G = cyclic(4)
    blocks = dev(G, (0, 1))
    assert len(blocks) == 4
    assert (0, 1) in blocks


def test_symplectic_form_checks():
    F = field_make(3)
    B = symplectic_standard(F, 1)
    assert B == [[0, 1], [2, 0]]
    adj, verts = thas_somma(F, 1)
    assert adj.shape == (27, 27)
    degenerate = [[0, 0], [0, 0]]
    with pytest.raises(RdsError):
        thas_somma(F, 1, degenerate)


def test_heisenberg_rds_manual():
    # direct verification against a hand-rolled group-ring computation
    F = field_make(3)
    G = heisenberg(F, 1)
    Z = center(G)
    # X = gamma-form set for i=0 plus identity
    half = F.inv(2)
    X = {0}
    for a in range(3):
        for b in range(3):
            if (a, b) == (0, 0):
                continue
            X.add(G.index[((a,), (b,), F.mul(F.mul(a, b), half))])
    cert = verify_rds(G, tuple(sorted(X)), Z)
    assert cert.parameters == (9, 3, 9, 3)
    assert cert.reversible and cert.semiregular and cert.i_commuting
    # cross-check transversality with cosets
    cosets = right_cosets(G, Z)
    for c in cosets:
        assert len(set(c) & X) == 1
