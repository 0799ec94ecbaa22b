import numpy as np
import pytest

from rdslink.ff import field_make
from rdslink.groups import (Automorphism, FiniteGroup, GroupError, Subgroup,
                            all_subgroups, automorphism_from_images, center,
                            central_product, cyclic, direct_product,
                            elementary_abelian, extraspecial_mp3,
                            generated_perm_group, heisenberg,
                            identity_automorphism, is_normal, is_transversal,
                            orbits, quaternion8, right_cosets,
                            subgroup_closure)


def test_cyclic():
    G = cyclic(6)
    assert G.order == 6
    assert G.element_orders() == [1, 6, 3, 2, 3, 6]
    assert G.is_abelian()
    assert G.exponent() == 6


def test_elementary_abelian():
    G = elementary_abelian(3, 2)
    assert G.order == 9
    assert G.exponent() == 3
    assert G.is_abelian()


def test_direct_product():
    G = direct_product(cyclic(4), cyclic(2))
    assert G.order == 8
    assert G.is_abelian()
    assert G.exponent() == 4
    # embeddings are homomorphic images
    assert G.mul(int(G.embed1[1]), int(G.embed2[1])) == 1 * 2 + 1


def test_audit_rejects_bad_table():
    t = cyclic(5).table.copy()
    t[1, 1] = 1  # row 1 no longer a permutation
    with pytest.raises(GroupError):
        FiniteGroup(t)


def test_audit_rejects_shifted_identity():
    t = cyclic(3).table[[1, 0, 2]]
    with pytest.raises(GroupError):
        FiniteGroup(t)


def test_heisenberg_basic():
    G = heisenberg(field_make(3), 1)
    assert G.order == 27
    assert not G.is_abelian()
    assert G.exponent() == 3
    Z = center(G)
    assert len(Z) == 3
    assert Z.members == tuple(G.index[((0,), (0,), z)] for z in range(3))


def test_heisenberg_commutator_is_central():
    F = field_make(3)
    G = heisenberg(F, 1)
    Z = set(center(G).members)
    for a in range(G.order):
        for b in range(G.order):
            comm = G.mul(G.mul(a, b), int(G.inv[G.mul(b, a)]))
            assert comm in Z


def test_heisenberg_even_rejected():
    with pytest.raises(GroupError):
        heisenberg(field_make(2, 2), 1)


def test_extraspecial_mp3():
    G = extraspecial_mp3(3)
    assert G.order == 27
    assert G.exponent() == 9
    assert not G.is_abelian()
    Z = center(G)
    assert Z.members == tuple(sorted(G.index[(3 * c, 0)] for c in range(3)))
    # y x y^-1 = x^(1+p)
    x, y = G.index[(1, 0)], G.index[(0, 1)]
    assert G.conj(y, x) == G.index[(4, 0)]


def test_quaternion8():
    G = quaternion8()
    assert G.order == 8
    assert G.order_multiset() == {1: 1, 2: 1, 4: 6}
    a, b = G.index[(1, 0)], G.index[(0, 1)]
    # b^2 = a^2 and b a b^-1 = a^-1
    assert G.mul(b, b) == G.index[(2, 0)]
    assert G.conj(b, a) == G.index[(3, 0)]


def test_subgroup_validation():
    G = cyclic(6)
    Subgroup(G, (0, 2, 4))
    with pytest.raises(GroupError):
        Subgroup(G, (0, 2))  # not closed
    with pytest.raises(GroupError):
        Subgroup(G, (1, 5))  # no identity


def test_subgroup_closure_and_cosets():
    G = cyclic(12)
    H = subgroup_closure(G, [4])
    assert H.members == (0, 4, 8)
    cosets = right_cosets(G, H)
    assert len(cosets) == 4
    assert sorted(g for c in cosets for g in c) == list(range(12))


def test_transversal():
    G = cyclic(6)
    H = Subgroup(G, (0, 3))
    assert is_transversal(G, H, [0, 1, 2]) == (True, True)
    assert is_transversal(G, H, [0, 1, 4]) == (False, False)


def test_all_subgroups_q8():
    subs = all_subgroups(quaternion8())
    assert len(subs) == 6  # 1, Z, three C4's, Q8
    assert sorted(len(s) for s in subs) == [1, 2, 4, 4, 4, 8]


def test_automorphism_validation():
    G = cyclic(5)
    inv_map = Automorphism(G, np.array([0, 4, 3, 2, 1]))
    assert inv_map.order() == 2
    assert orbits(G, [inv_map]) == [(0,), (1, 4), (2, 3)]
    with pytest.raises(GroupError):
        Automorphism(G, np.array([0, 2, 1, 3, 4]))  # not a homomorphism
    with pytest.raises(GroupError):
        Automorphism(G, np.array([1, 0, 2, 3, 4]))  # moves identity


def test_automorphism_from_images():
    G = cyclic(5)
    a = automorphism_from_images(G, {1: 2})  # x -> x^2
    assert a(1) == 2 and a(2) == 4
    assert a.order() == 4
    with pytest.raises(GroupError):
        automorphism_from_images(cyclic(6), {2: 2})  # 2 does not generate


def test_generated_perm_group():
    G = cyclic(5)
    a = automorphism_from_images(G, {1: 2})
    assert len(generated_perm_group([a])) == 4
    assert len(generated_perm_group([identity_automorphism(G)])) == 1


def test_is_normal():
    G = quaternion8()
    for H in all_subgroups(G):
        assert is_normal(G, H)  # every subgroup of Q8 is normal


def test_central_product_q8_q8():
    G1 = quaternion8()
    Z = center(G1)
    cp = central_product(G1, G1, Z, Z)
    G = cp.group
    assert G.order == 32
    assert len(cp.amalgamated) == 2
    im1, im2 = cp.embed1, cp.embed2
    # embedded factors commute elementwise
    for a in im1:
        for b in im2:
            assert G.mul(int(a), int(b)) == G.mul(int(b), int(a))
    # embeddings are monomorphisms
    for a in range(8):
        for b in range(8):
            assert int(im1[G1.mul(a, b)]) == G.mul(int(im1[a]), int(im1[b]))


def test_central_product_rejects_noncentral():
    G1 = quaternion8()
    H = Subgroup(G1, (0, 1, 2, 3))  # <a> is not central
    with pytest.raises(GroupError):
        central_product(G1, G1, H, H)
