"""Acceptance gate: one test per criterion, each printing a single
pass line with the measured facts.  Everything is recomputed in-process
by the generic verifiers; nothing is asserted from memory."""

import random
import time

import pytest

from rdslink.ff import field_make
from rdslink.groups import is_normal, right_cosets
from rdslink.groupring import GroupRingElement
from rdslink.linked import (LinkedError, associated_group, munu_branches,
                            verify_linked)
from rdslink.rds import (RdsError, cayley_drg_check, certify_drg3,
                         is_icommuting, rds_to_pds, thas_somma, verify_rds)
from rdslink.schur import verify_sring
from rdslink.constructions import (extraspecial_rds, heisenberg_system,
                                   heisenberg_system_2r, q8_system,
                                   q8_system_2r, theorem_1_2_rds)


@pytest.fixture(scope="module")
def heis_all():
    return {q: heisenberg_system(field_make(q)) for q in (3, 5, 7)}


@pytest.fixture(scope="module")
def es_all():
    return {p: extraspecial_rds(p) for p in (3, 5)}


def test_criterion_01_q8_system():
    t0 = time.monotonic()
    cert = q8_system()
    elapsed = time.monotonic() - t0
    assert cert.parameters == (4, 2, 4, 2, 2, 1, 3)
    assert cert.chi == (1, 0)  # chi = swap
    assert elapsed < 1.0
    print(f"PASS criterion 1: Q8 system (4,2,4,2,2,1,3), chi=swap, "
          f"{elapsed:.3f}s")


def test_criterion_02_heisenberg_systems(heis_all):
    notes = []
    for q in (3, 5, 7):
        t0 = time.monotonic()
        hs = heisenberg_system(field_make(q))
        elapsed = time.monotonic() - t0
        c = hs.certificate
        F = hs.field
        assert c.parameters == (q * q, q, q * q, q, q, 1, q + 1)
        # extracted psi == (ij + delta)/(i + j) pointwise; the working
        # delta is (16 eps)^(-1).  The stated closed form eps/16 agrees
        # exactly when eps^2 = 1 and is flagged otherwise.
        delta = hs.delta
        assert delta == F.inv(F.mul(16 % F.p, hs.eps))
        for a in F.elements():
            for b in F.elements():
                if F.add(a, b) == 0:
                    continue
                assert c.psi[(a, b)] == F.div(F.add(F.mul(a, b), delta),
                                              F.add(a, b))
        eps16 = F.div(hs.eps, 16 % F.p)
        agree = (delta == eps16)
        assert agree == (F.mul(hs.eps, hs.eps) == 1)
        flag = "" if agree else \
            f" [stated delta=eps/16={eps16} differs; data fixes delta={delta}]"
        assert elapsed < 30.0
        notes.append(f"q={q} ok {elapsed:.2f}s{flag}")
    print("PASS criterion 2: Heisenberg (q^2,q,q^2,q,q,1,q+1), psi "
          "pointwise; " + "; ".join(notes))


def test_criterion_03_associated_groups(heis_all, dps3, dps4):
    for q in (3, 5, 7):
        c = heis_all[q].certificate
        a = associated_group(c.s, c.chi, c.psi)
        assert a.kind == "cyclic" and a.order == q + 1
    cq8 = q8_system()
    a8 = associated_group(cq8.s, cq8.chi, cq8.psi)
    assert a8.kind == "cyclic" and a8.order == 3
    for ds, invs in ((dps3, (3,)), (dps4, (2, 2))):
        c = ds.certificate
        a = associated_group(c.s, c.chi, c.psi)
        assert a.invariant_factors == invs  # elementary abelian = S
        assert a.order == len(ds.endos)
    print("PASS criterion 3: associated groups C4/C6/C8 (Heisenberg), "
          "C3 (Q8), elementary abelian = S (DPS)")


def test_criterion_04_pds_certificates(heis_all, es_all):
    hs3 = heis_all[3]
    _, cert_h = rds_to_pds(hs3.group, hs3.sets[0], hs3.center)
    assert cert_h.parameters == (27, 10, 1, 5)
    assert es_all[3].pds_certs[0].parameters == (27, 10, 1, 5)
    hs5 = heis_all[5]
    _, cert_h5 = rds_to_pds(hs5.group, hs5.sets[0], hs5.center)
    assert cert_h5.parameters == (125, 28, 3, 7)
    assert es_all[5].pds_certs[0].parameters == (125, 28, 3, 7)
    print("PASS criterion 4: PDS (27,10,1,5) from Heisenberg q=3 and M27; "
          "(125,28,3,7) from q=5 and M125")


def test_criterion_05_extraspecial(es_all):
    for p in (3, 5):
        es = es_all[p]
        for cy, cz in zip(es.Y_certs, es.Z_certs):
            assert cy.parameters == (p * p, p, p * p, p)
            assert cz.parameters == (p * p, p, p * p, p)
        assert not is_normal(es.group, es.Y)
        for i, si in enumerate(es.sigma_i):
            assert si.apply_set(es.X_sets[0]) == es.X_sets[i]
    print("PASS criterion 5: extraspecial p=3,5: all Y_i/Z_i are "
          "(p^2,p,p^2,p)-RDSs, Y nonnormal, sigma_i(X_0)=X_i")


def test_criterion_06_theorem_1_2():
    t0 = time.monotonic()
    G, X, cert = theorem_1_2_rds(3, 2)
    elapsed = time.monotonic() - t0
    assert cert.parameters == (81, 3, 81, 27)
    assert G.exponent() == 9
    assert elapsed < 60.0
    print(f"PASS criterion 6: (81,3,81,27)-RDS in exponent-9 group of "
          f"order 243, {elapsed:.2f}s")


def test_criterion_07_branch_resolution():
    cert_h = heisenberg_system_2r(field_make(3), 2)
    realized_h = (cert_h.mu, cert_h.nu)
    assert realized_h in munu_branches(81, 3, 81)
    assert realized_h in {(21, 30), (33, 24)}
    h_flag = ("matches the closed-form claim (21,30)"
              if realized_h == (21, 30)
              else "matches the product recurrence (33,24), NOT the "
                   "closed-form claim (21,30)")
    cert_q = q8_system_2r(2)
    realized_q = (cert_q.mu, cert_q.nu)
    assert realized_q in munu_branches(16, 2, 16)
    assert realized_q in {(6, 10), (10, 6)}
    q_flag = ("matches the closed-form claim (6,10)"
              if realized_q == (6, 10)
              else "matches the product recurrence (10,6), NOT the "
                   "closed-form claim (6,10)")
    print(f"PASS criterion 7: heis2r q=3 r=2 realized {realized_h} — "
          f"{h_flag}; q8-2r r=2 realized {realized_q} — {q_flag}")


def test_criterion_08_dps(dps3, dps4):
    assert dps3.certificate.parameters == (9, 3, 9, 3, 2, 5, 2)
    assert dps4.certificate.parameters == (16, 4, 16, 4, 3, 7, 3)
    # the pairwise product identity (inverse pairs included) is enforced
    # by the constructor; re-run it here explicitly
    from rdslink.constructions import _check_dps_products
    for ds in (dps3, dps4):
        n, t = ds.n_field.q, ds.t
        _check_dps_products(ds.ambient, ds.certificate.N, ds.endos,
                            ds.families, n, t,
                            min(d for d in range(2, t + 1) if t % d == 0))
    print("PASS criterion 8: DPS (9,3,9,3,2,5,2) and (16,4,16,4,3,7,3); "
          "product identity holds for every pair incl. inverses")


def test_criterion_09_graph_layer(heis_all):
    hs = heis_all[3]
    S = hs.orbit_sets[0]  # X_0 minus identity
    arr, classes = cayley_drg_check(hs.group, S)
    assert arr.as_tuple() == (8, 6, 1, 1, 3, 8)
    assert len(classes) == 9
    cosets = {tuple(sorted(c)) for c in right_cosets(hs.group, hs.center)}
    assert {tuple(sorted(c)) for c in classes} == cosets
    adj, _ = thas_somma(field_make(3), 1)
    arr2, classes2 = certify_drg3(adj)
    assert arr2.as_tuple() == arr.as_tuple()
    print("PASS criterion 9: Cay(G, X_0^#) has array {8,6,1;1,3,8} with 9 "
          "antipodal classes = Z-cosets; Thas-Somma array identical")


def test_criterion_10_property_suites(heis_all, es_all, q8cert, dps3):
    rng = random.Random(0xACCE57)
    groups = [q8cert.group, heis_all[3].group, es_all[3].group]
    for G in groups:
        v = G.order
        for _ in range(100):
            a, b, c = (GroupRingElement(
                G, [rng.randrange(-3, 4) for _ in range(v)])
                for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert (a * b).involution() == b.involution() * a.involution()
    # every cyclotomic partition used is re-audited as an S-ring
    for P in [heis_all[q].partition for q in (3, 5, 7)] + \
             [es_all[p].partition for p in (3, 5)]:
        verify_sring(P)
    # parameter identity on every certificate produced above
    certs = [c for q in (3, 5, 7) for c in heis_all[q].certificate
             .member_certs]
    certs += [c for p in (3, 5) for c in es_all[p].Y_certs + es_all[p].Z_certs]
    certs += q8cert.member_certs + dps3.certificate.member_certs
    for c in certs:
        assert c.k * (c.k - 1) == c.lam * c.n * (c.m - 1)
        # dual i-commuting criteria agree (raises LemmaViolation if not)
        is_icommuting(c.group, c.X, c.N)
    print(f"PASS criterion 10: 300 random ring-law triples, "
          f"{5} S-ring audits, parameter identity and dual i-commuting "
          f"agreement on {len(certs)} certificates, zero failures")


def test_criterion_11_negative_controls(heis_all, es_all, q8cert, dps3):
    def perturb(G, X):
        X = set(X)
        out_el = max(set(range(G.order)) - X)
        in_el = max(g for g in X if g != 0)
        return tuple(sorted(X - {in_el} | {out_el}))

    witnesses = []
    # flagship RDSs
    flagships = [
        (heis_all[3].group, heis_all[3].sets[0], heis_all[3].center),
        (es_all[3].group, es_all[3].Y_certs[0].X, es_all[3].Z),
        (q8cert.group, q8cert.sets[0], q8cert.N),
    ]
    for G, X, N in flagships:
        with pytest.raises(RdsError) as ei:
            verify_rds(G, perturb(G, X), N)
        witnesses.append(type(ei.value).__name__)
    # flagship linked systems
    for cert in (q8cert, dps3.certificate):
        fam = list(cert.sets)
        fam[0] = perturb(cert.group, fam[0])
        with pytest.raises((LinkedError, RdsError)) as ei:
            verify_linked(cert.group, cert.N, fam)
        witnesses.append(type(ei.value).__name__)
    assert len(witnesses) == 5
    print("PASS criterion 11: all 5 perturbed flagship sets rejected with "
          "witnesses: " + ", ".join(witnesses))
