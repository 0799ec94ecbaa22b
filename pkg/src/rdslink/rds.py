"""Verification and derivation for relative and partial difference sets:
the defining group-ring equations, semiregularity, i-commuting, the
product of two RDSs inside an ambient group, the correspondence with
antipodal distance-regular covers, developments, and the symplectic
cover graph used for comparison."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ff import Field
from .groups import FiniteGroup, Subgroup, all_subgroups, right_cosets
from .groupring import GroupRingElement


class RdsError(ValueError):
    pass


class EquationFails(RdsError):
    def __init__(self, message, element=None, expected=None, actual=None):
        super().__init__(message)
        self.element = element
        self.expected = expected
        self.actual = actual


class LambdaNotPositive(RdsError):
    pass


class LemmaViolation(AssertionError):
    """The two i-commuting criteria disagreed; must never fire."""


class NotDistanceRegular(RdsError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WrongDiameter(RdsError):
    pass


@dataclass
class RdsCertificate:
    group: FiniteGroup
    X: tuple
    N: Subgroup
    m: int
    n: int
    k: int
    lam: int
    semiregular: bool
    reversible: bool
    i_commuting: bool

    @property
    def parameters(self):
        return (self.m, self.n, self.k, self.lam)

    def to_json(self):
        return {"group": self.group.name, "set": list(self.X),
                "set_labels": [self.group.labels[g] for g in self.X],
                "forbidden": list(self.N.members),
                "m": self.m, "n": self.n, "k": self.k, "lambda": self.lam,
                "semiregular": self.semiregular,
                "reversible": self.reversible,
                "i_commuting": self.i_commuting}


@dataclass
class PdsCertificate:
    group: FiniteGroup
    S: tuple
    v: int
    k: int
    lam: int
    mu: int

    @property
    def parameters(self):
        return (self.v, self.k, self.lam, self.mu)

    def to_json(self):
        return {"group": self.group.name, "set": list(self.S),
                "v": self.v, "k": self.k, "lambda": self.lam, "mu": self.mu}


@dataclass
class IntersectionArray:
    b0: int
    b1: int
    b2: int
    c1: int
    c2: int
    c3: int

    def __post_init__(self):
        if not (self.b0 > self.b1 >= self.b2 > 0):
            raise RdsError(f"infeasible b-sequence {self}")
        if not (self.c1 == 1 <= self.c2 <= self.c3):
            raise RdsError(f"infeasible c-sequence {self}")

    def as_tuple(self):
        return (self.b0, self.b1, self.b2, self.c1, self.c2, self.c3)

    def __str__(self):
        return (f"{{{self.b0},{self.b1},{self.b2};"
                f"{self.c1},{self.c2},{self.c3}}}")


# ---------------------------------------------------------------------------
# RDS / PDS verification


def verify_rds(G: FiniteGroup, X, N: Subgroup) -> RdsCertificate:
    """Check X.X^(-1) = k e + lambda (G - N) exactly and certify."""
    X = tuple(sorted(set(int(g) for g in X)))
    k = len(X)
    if N.group is not G:
        raise RdsError("forbidden subgroup belongs to a different group")
    x = GroupRingElement.indicator(G, X)
    d = (x * x.involution()).vec
    if d[0] != k:
        raise EquationFails(
            f"coefficient at identity is {int(d[0])}, expected {k}",
            element=0, expected=k, actual=int(d[0]))
    nset = set(N.members)
    lam = None
    for g in range(1, G.order):
        want_zero = g in nset
        if want_zero:
            if d[g] != 0:
                raise EquationFails(
                    f"nonzero coefficient {int(d[g])} on forbidden element "
                    f"{g}", element=g, expected=0, actual=int(d[g]))
        else:
            if lam is None:
                lam = int(d[g])
            elif d[g] != lam:
                raise EquationFails(
                    f"coefficient {int(d[g])} at element {g} differs from "
                    f"lambda = {lam}", element=g, expected=lam,
                    actual=int(d[g]))
    if not lam or lam <= 0:
        raise LambdaNotPositive(f"lambda = {lam} is not a positive integer")
    n = len(N)
    m = G.order // n
    if k * (k - 1) != lam * n * (m - 1):
        raise RdsError("parameter identity k(k-1) = lambda n (m-1) fails")
    semiregular = (k == m)
    if semiregular:
        # cross-check: X meets every right N-coset exactly once
        hits = {c: 0 for c in right_cosets(G, N)}
        lookup = {}
        for c in hits:
            for g in c:
                lookup[g] = c
        for g in X:
            hits[lookup[g]] += 1
        if any(h != 1 for h in hits.values()):
            raise LemmaViolation("k = m but X is not a right transversal")
    reversible = (X == tuple(sorted(int(G.inv[g]) for g in X)))
    icom = is_icommuting(G, X, N)
    return RdsCertificate(G, X, N, m, n, k, lam, semiregular, reversible,
                          icom)


def is_icommuting(G: FiniteGroup, X, N: Subgroup) -> bool:
    """Dual-checked: X.X^(-1) = X^(-1).X must agree with X.N_ = N_.X."""
    x = GroupRingElement.indicator(G, X)
    nn = GroupRingElement.indicator(G, N.members)
    xi = x.involution()
    by_product = (x * xi == xi * x)
    by_subgroup = (x * nn == nn * x)
    if by_product != by_subgroup:
        raise LemmaViolation(
            f"i-commuting criteria disagree on X={X}, N={N.members}")
    return by_product


def find_forbidden(G: FiniteGroup, X):
    """All subgroups N for which verify_rds(G, X, N) succeeds."""
    out = []
    for N in all_subgroups(G):
        try:
            verify_rds(G, X, N)
        except RdsError:
            continue
        out.append(N)
    return out


def verify_pds(G: FiniteGroup, S) -> PdsCertificate:
    """Check S.S^(-1) = |S| e + lambda S + mu (G^# - S) exactly."""
    S = tuple(sorted(set(int(g) for g in S)))
    k = len(S)
    s = GroupRingElement.indicator(G, S)
    d = (s * s.involution()).vec
    sset = set(S)
    lam = mu = None
    for g in range(1, G.order):
        if g in sset:
            if lam is None:
                lam = int(d[g])
            elif d[g] != lam:
                raise EquationFails(
                    f"coefficient not constant on S at {g}", element=g,
                    expected=lam, actual=int(d[g]))
        else:
            if mu is None:
                mu = int(d[g])
            elif d[g] != mu:
                raise EquationFails(
                    f"coefficient not constant off S at {g}", element=g,
                    expected=mu, actual=int(d[g]))
    expected_e = k + (lam or 0) * (1 if 0 in sset else 0)
    if d[0] != expected_e:
        raise EquationFails(
            f"identity coefficient {int(d[0])}, expected {expected_e}",
            element=0, expected=expected_e, actual=int(d[0]))
    return PdsCertificate(G, S, G.order, k, lam or 0, mu or 0)


def rds_to_pds(G: FiniteGroup, X, N: Subgroup):
    """S = X^# union N^# for a reversible semiregular RDS with lambda = n."""
    cert = verify_rds(G, X, N)
    if not cert.semiregular or not cert.reversible:
        raise RdsError("X must be a reversible semiregular RDS")
    if cert.lam != cert.n:
        raise RdsError(f"lambda = {cert.lam} must equal n = {cert.n}")
    S = tuple(sorted((set(cert.X) | set(N.members)) - {0}))
    return S, verify_pds(G, S)


# ---------------------------------------------------------------------------
# product of RDSs


def _verify_in_subgroup(G, emb, X, N: Subgroup):
    """Certify X as an RDS of the embedded subgroup emb(G_i) <= G."""
    img = tuple(int(emb[g]) for g in range(len(emb)))
    sub = set(img)
    Ximg = tuple(int(emb[g]) for g in X)
    x = GroupRingElement.indicator(G, Ximg)
    d = (x * x.involution()).vec
    k = len(Ximg)
    lam = None
    nset = set(N.members)
    if not nset <= sub:
        raise RdsError("forbidden subgroup not inside the embedded factor")
    for g in sorted(sub):
        if g == 0:
            if d[g] != k:
                raise EquationFails("identity coefficient wrong in factor")
        elif g in nset:
            if d[g] != 0:
                raise EquationFails(f"forbidden element {g} hit in factor")
        else:
            if lam is None:
                lam = int(d[g])
            elif d[g] != lam:
                raise EquationFails(f"lambda not constant in factor at {g}")
    if np.any(d[sorted(set(range(G.order)) - sub)]):
        raise RdsError("factor product escapes the embedded subgroup")
    if not lam or lam <= 0:
        raise LambdaNotPositive(f"lambda = {lam} in embedded factor")
    m = len(sub) // len(nset)
    if k != m:
        raise RdsError("factor RDS is not semiregular")
    return Ximg, lam


def rds_product(G: FiniteGroup, emb1, emb2, X1, X2):
    """Product RDS of Proposition-style form: X1 X2 inside G = G1 G2.

    emb1, emb2 map factor indices into G; X1, X2 are index sets of the
    factors.  X1 (embedded) must be i-commuting; the result is
    re-verified from scratch.
    """
    img1 = [int(emb1[g]) for g in range(len(emb1))]
    img2 = [int(emb2[g]) for g in range(len(emb2))]
    inter = sorted(set(img1) & set(img2))
    if len(img2) == len(inter) or len(img1) == len(inter):
        raise RdsError("factors must be proper subgroups")
    N = Subgroup(G, tuple(inter))
    t = G.table
    prod_all = {int(t[a, b]) for a in img1 for b in img2}
    if len(prod_all) != G.order:
        raise RdsError("G is not the product of the embedded factors")
    X1img, lam1 = _verify_in_subgroup(G, emb1, X1, N)
    X2img, lam2 = _verify_in_subgroup(G, emb2, X2, N)
    if not is_icommuting(G, X1img, N):
        raise RdsError("X1 must be i-commuting")
    prods = [int(t[a, b]) for a in X1img for b in X2img]
    if len(set(prods)) != len(prods):
        raise RdsError("collision in products; preconditions violated")
    X = tuple(sorted(prods))
    cert = verify_rds(G, X, N)
    n = len(N)
    expect = (n ** 2 * lam1 * lam2, n, n ** 2 * lam1 * lam2, n * lam1 * lam2)
    if cert.parameters != expect:
        raise RdsError(
            f"product parameters {cert.parameters} differ from the "
            f"predicted {expect}")
    return X, cert


# ---------------------------------------------------------------------------
# graphs


def certify_drg3(adj: np.ndarray):
    """Certify a diameter-3 distance-regular graph from every base vertex.

    Returns (IntersectionArray, antipodal classes) where the classes
    are the equivalence classes of the distance-0-or-3 relation; raises
    if distances exceed 3, the graph is disconnected, the intersection
    numbers vary, or the distance-3 relation is not an equivalence.
    """
    v = adj.shape[0]
    adj = adj.astype(bool)
    if adj.diagonal().any() or not np.array_equal(adj, adj.T):
        raise RdsError("adjacency must be symmetric and loop-free")
    nums = {}
    dist3 = np.zeros((v, v), dtype=bool)
    A = adj.astype(np.int64)
    for u in range(v):
        dist = np.full(v, -1, dtype=np.int64)
        dist[u] = 0
        frontier = np.zeros(v, dtype=bool)
        frontier[u] = True
        d = 0
        while frontier.any():
            nxt = (adj[frontier].any(axis=0)) & (dist < 0)
            d += 1
            dist[nxt] = d
            frontier = nxt
        if (dist < 0).any():
            raise WrongDiameter("graph is disconnected")
        diam = int(dist.max())
        if diam != 3:
            raise WrongDiameter(f"diameter {diam}, expected 3")
        dist3[u] = dist == 3
        # neighbor counts per distance layer
        layer_counts = [A @ (dist == i) for i in range(4)]
        for i in range(4):
            here = dist == i
            if i < 3:
                bs = layer_counts[i + 1][here]
                if not (bs == bs[0]).all():
                    raise NotDistanceRegular(
                        f"b_{i} varies from base {u}",
                        witness=(u, int(np.where(here)[0][0])))
                nums.setdefault(("b", i), set()).add(int(bs[0]))
            if i > 0:
                cs = layer_counts[i - 1][here]
                if not (cs == cs[0]).all():
                    raise NotDistanceRegular(
                        f"c_{i} varies from base {u}",
                        witness=(u, int(np.where(here)[0][0])))
                nums.setdefault(("c", i), set()).add(int(cs[0]))
    for key, vals in nums.items():
        if len(vals) != 1:
            raise NotDistanceRegular(f"intersection number {key} varies "
                                     f"between base vertices")
    arr = IntersectionArray(
        b0=nums[("b", 0)].pop(), b1=nums[("b", 1)].pop(),
        b2=nums[("b", 2)].pop(), c1=nums[("c", 1)].pop(),
        c2=nums[("c", 2)].pop(), c3=nums[("c", 3)].pop())
    # distance-3 (plus equality) must be an equivalence relation
    rel = dist3 | np.eye(v, dtype=bool)
    if not np.array_equal(rel @ rel > 0, rel):
        raise RdsError("distance-3 relation is not an equivalence")
    seen = set()
    classes = []
    for u in range(v):
        if u in seen:
            continue
        cls = tuple(int(w) for w in np.where(rel[u])[0])
        seen.update(cls)
        classes.append(cls)
    return arr, classes


def cayley_adjacency(G: FiniteGroup, S) -> np.ndarray:
    """u ~ v iff v u^-1 in S; S must be reversible and identity-free."""
    S = set(int(g) for g in S)
    if 0 in S:
        raise RdsError("connection set must be identity-free")
    if S != {int(G.inv[g]) for g in S}:
        raise RdsError("connection set must be reversible")
    adj = np.zeros((G.order, G.order), dtype=bool)
    t = G.table
    for s in S:
        for u in range(G.order):
            adj[u, int(t[s, u])] = True
    return adj


def cayley_drg_check(G: FiniteGroup, S):
    """Certify Cay(G, S) as a diameter-3 antipodal DRG; returns the
    intersection array and the distance-3 classes."""
    return certify_drg3(cayley_adjacency(G, S))


def symplectic_standard(F: Field, r: int):
    """Block form ((0, I), (-I, 0)) on F^(2r)."""
    d = 2 * r
    B = [[0] * d for _ in range(d)]
    for i in range(r):
        B[i][r + i] = 1
        B[r + i][i] = F.neg(1)
    return B


def _check_alternating_nondegenerate(F: Field, B):
    d = len(B)
    for i in range(d):
        if B[i][i] != 0:
            raise RdsError("form is not alternating")
        for j in range(d):
            if B[i][j] != F.neg(B[j][i]):
                raise RdsError("form is not alternating")
    # nondegeneracy: row reduce over F
    M = [row[:] for row in B]
    rank = 0
    for col in range(d):
        piv = next((r for r in range(rank, d) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][col])
        M[rank] = [F.mul(inv, x) for x in M[rank]]
        for r2 in range(d):
            if r2 != rank and M[r2][col] != 0:
                c = M[r2][col]
                M[r2] = [F.sub(x, F.mul(c, y))
                         for x, y in zip(M[r2], M[rank])]
        rank += 1
    if rank != d:
        raise RdsError("form is degenerate")


def thas_somma(F: Field, r: int, B=None):
    """Cover graph on F^(2r+1): (a, alpha) ~ (b, beta) iff
    B(a, b) = alpha - beta and a != b.  Returns (adjacency, vertices)."""
    if B is None:
        B = symplectic_standard(F, r)
    _check_alternating_nondegenerate(F, B)
    d = 2 * r
    vecs = list(itertools.product(F.elements(), repeat=d))
    verts = [(a, al) for a in vecs for al in F.elements()]
    n = len(verts)

    def form(a, b):
        s = 0
        for i in range(d):
            if a[i] == 0:
                continue
            row = B[i]
            for j in range(d):
                if row[j] and b[j]:
                    s = F.add(s, F.mul(a[i], F.mul(row[j], b[j])))
        return s

    adj = np.zeros((n, n), dtype=bool)
    for i, (a, al) in enumerate(verts):
        for j in range(i + 1, n):
            b, be = verts[j]
            if a != b and form(a, b) == F.sub(al, be):
                adj[i, j] = adj[j, i] = True
    return adj, verts


def dev(G: FiniteGroup, X):
    """Development {Xg : g in G}, distinct blocks only."""
    t = G.table
    blocks = {tuple(sorted(int(t[x, g]) for x in X)) for g in range(G.order)}
    return sorted(blocks)
