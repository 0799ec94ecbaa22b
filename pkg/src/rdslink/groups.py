"""Concrete finite groups as fully materialized index tables.

Elements are integers 0..v-1 with the identity at index 0.  Every
group built here carries its v x v multiplication table, so all
downstream checks are exhaustive exact arithmetic.  Heisenberg groups,
the extraspecial group of order p^3 and exponent p^2, Q8, abelian
groups, and direct/central products are provided, plus subgroups,
automorphisms, orbits, and transversal tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .ff import Field, is_prime

TABLE_LIMIT = 65536
EXHAUSTIVE_AUDIT = 512
SAMPLE_AUDIT = 100_000


class GroupError(ValueError):
    pass


def _audit_table(table: np.ndarray):
    v = table.shape[0]
    if table.shape != (v, v):
        raise GroupError("multiplication table must be square")
    if table.min() < 0 or table.max() >= v:
        raise GroupError("table entries out of range")
    if not (np.array_equal(table[0], np.arange(v))
            and np.array_equal(table[:, 0], np.arange(v))):
        raise GroupError("index 0 is not a two-sided identity")
    # two-sided inverses: every row and column is a permutation hitting 0
    for g in range(v):
        if 0 not in table[g]:
            raise GroupError(f"element {g} has no right inverse")
    # associativity: exhaustive for small orders, deterministic sample above
    if v <= EXHAUSTIVE_AUDIT:
        for a in range(v):
            if not np.array_equal(table[table[a]], table[a][table]):
                raise GroupError(f"associativity fails at a={a}")
    else:
        rng = random.Random(0xC0FFEE)
        for _ in range(SAMPLE_AUDIT):
            a = rng.randrange(v)
            b = rng.randrange(v)
            c = rng.randrange(v)
            if table[table[a, b], c] != table[a, table[b, c]]:
                raise GroupError(f"associativity fails at ({a},{b},{c})")


class FiniteGroup:
    """A finite group on indices 0..v-1 with a materialized Cayley table."""

    def __init__(self, table, labels=None, name="group", elements=None,
                 audit=True):
        table = np.asarray(table, dtype=np.int64)
        if audit:
            _audit_table(table)
        self.table = table
        self.order = table.shape[0]
        self.name = name
        self.labels = labels if labels is not None else [
            str(i) for i in range(self.order)]
        self.elements = elements  # optional normal-form objects
        self.index = ({el: i for i, el in enumerate(elements)}
                      if elements is not None else None)
        inv = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            inv[g] = int(np.where(table[g] == 0)[0][0])
        self.inv = inv
        self._orders = None

    @classmethod
    def from_elements(cls, elements, mul, name="group", label=None):
        """Materialize a group from a list of elements and a product rule.

        elements[0] must be the identity.
        """
        v = len(elements)
        if v > TABLE_LIMIT:
            raise GroupError(f"order {v} exceeds table limit {TABLE_LIMIT}")
        index = {el: i for i, el in enumerate(elements)}
        if len(index) != v:
            raise GroupError("duplicate elements")
        table = np.empty((v, v), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                table[i, j] = index[mul(a, b)]
        if label is None:
            label = str
        labels = [label(el) for el in elements]
        return cls(table, labels=labels, name=name, elements=list(elements))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return int(self.table[self.table[g, h], self.inv[g]])

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != 0:
            x = int(self.table[x, g])
            n += 1
        return n

    def element_orders(self):
        if self._orders is None:
            self._orders = [self.element_order(g) for g in range(self.order)]
        return self._orders

    def exponent(self) -> int:
        exp = 1
        for o in self.element_orders():
            exp = exp * o // _gcd(exp, o)
        return exp

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def order_multiset(self):
        """Multiset of element orders, an isomorphism invariant."""
        out = {}
        for o in self.element_orders():
            out[o] = out.get(o, 0) + 1
        return out

    def to_json(self):
        return {"name": self.name, "order": self.order,
                "table": self.table.tolist(), "labels": self.labels}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    members: tuple  # sorted element indices

    def __post_init__(self):
        mem = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", mem)
        if 0 not in mem:
            raise GroupError("subgroup must contain the identity")
        mset = set(mem)
        t = self.group.table
        for a in mem:
            if int(self.group.inv[a]) not in mset:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in mem:
                if int(t[a, b]) not in mset:
                    raise GroupError(f"subgroup not closed at ({a},{b})")

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in set(self.members)


@dataclass(frozen=True)
class Automorphism:
    group: FiniteGroup
    perm: tuple  # perm[g] = image of g

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64)
        object.__setattr__(self, "perm", perm)
        v = self.group.order
        if perm.shape != (v,) or len(set(perm.tolist())) != v:
            raise GroupError("automorphism must be a permutation of G")
        if perm[0] != 0:
            raise GroupError("automorphism must fix the identity")
        t = self.group.table
        if not np.array_equal(perm[t], t[perm][:, perm]):
            bad = np.argwhere(perm[t] != t[perm][:, perm])[0]
            raise GroupError(
                f"not a homomorphism at pair ({bad[0]},{bad[1]})")

    def __call__(self, g: int) -> int:
        return int(self.perm[g])

    def apply_set(self, S):
        return tuple(sorted(int(self.perm[g]) for g in S))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        return Automorphism(self.group, self.perm[other.perm])

    def order(self) -> int:
        n = 1
        cur = self.perm
        ident = np.arange(self.group.order)
        while not np.array_equal(cur, ident):
            cur = self.perm[cur]
            n += 1
        return n


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(G, np.arange(G.order))


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("order must be positive")
    els = list(range(n))
    return FiniteGroup.from_elements(els, lambda a, b: (a + b) % n,
                                     name=f"C{n}")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    els = list(itertools.product(range(p), repeat=k))
    return FiniteGroup.from_elements(
        els, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
        name=f"C{p}^{k}")


def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    v1, v2 = G1.order, G2.order
    if v1 * v2 > TABLE_LIMIT:
        raise GroupError("direct product exceeds table limit")
    t1, t2 = G1.table, G2.table
    # mixed-radix index (a1, a2) -> a1*v2 + a2
    table = (t1[:, None, :, None] * v2 + t2[None, :, None, :]).reshape(
        v1 * v2, v1 * v2)
    labels = [f"({G1.labels[a]},{G2.labels[b]})"
              for a in range(v1) for b in range(v2)]
    G = FiniteGroup(table, labels=labels, name=f"{G1.name}x{G2.name}")
    G.embed1 = np.arange(v1) * v2
    G.embed2 = np.arange(v2)
    return G


def heisenberg(F: Field, r: int = 1) -> FiniteGroup:
    """Heisenberg group of dimension 2r+1 over GF(q), q odd.

    Elements (x, y, z) in F^r x F^r x F with
    (x,y,z)(a,b,c) = (x+a, y+b, z+c+<x,b>).
    """
    if F.q % 2 == 0:
        raise GroupError("q must be odd")
    q = F.q
    if q ** (2 * r + 1) > TABLE_LIMIT:
        raise GroupError("group exceeds table limit")
    vecs = list(itertools.product(range(q), repeat=r))

    def vadd(u, w):
        return tuple(F.add(a, b) for a, b in zip(u, w))

    def dot(u, w):
        s = 0
        for a, b in zip(u, w):
            s = F.add(s, F.mul(a, b))
        return s

    els = [(x, y, z) for x in vecs for y in vecs for z in range(q)]

    def mul(g, h):
        (x, y, z), (a, b, c) = g, h
        return (vadd(x, a), vadd(y, b), F.add(F.add(z, c), dot(x, b)))

    return FiniteGroup.from_elements(els, mul, name=f"Heis({q},{r})")


def extraspecial_mp3(p: int) -> FiniteGroup:
    """M_{p^3}: order p^3, exponent p^2, for odd prime p.

    Pairs (a, b) represent x^a y^b with |x| = p^2, |y| = p and
    y x y^-1 = x^{1+p}; the derived law is
    (a,b)(c,d) = (a + c + p*b*c mod p^2, b + d mod p).
    """
    if not is_prime(p) or p == 2:
        raise GroupError("p must be an odd prime")
    p2 = p * p
    els = [(a, b) for a in range(p2) for b in range(p)]
    # identity (0,0) is first in this enumeration
    els.sort()

    def mul(g, h):
        (a, b), (c, d) = g, h
        return ((a + c + p * b * c) % p2, (b + d) % p)

    return FiniteGroup.from_elements(
        els, mul, name=f"M{p ** 3}",
        label=lambda e: f"x^{e[0]}y^{e[1]}")


def quaternion8() -> FiniteGroup:
    """Q8 = <a, b : a^4 = e, a^2 = b^2, b a b^-1 = a^-1>.

    Pairs (i, j) represent a^i b^j with i mod 4, j in {0, 1}.
    """
    els = [(i, j) for j in range(2) for i in range(4)]
    els.sort(key=lambda e: (e[1], e[0]))

    def mul(g, h):
        (i, j), (k, l) = g, h
        # b a^k = a^-k b, b^2 = a^2
        i2 = (i + (-k if j else k)) % 4
        if j and l:
            return ((i2 + 2) % 4, 0)
        return (i2, (j + l) % 2)

    return FiniteGroup.from_elements(
        els, mul, name="Q8", label=lambda e: f"a^{e[0]}b^{e[1]}")


# ---------------------------------------------------------------------------
# subgroups, cosets, transversals


def subgroup_closure(G: FiniteGroup, seeds) -> Subgroup:
    members = {0}
    frontier = [0]
    seeds = list(seeds)
    t = G.table
    # closure under multiplication by the seeds on both sides
    changed = True
    members.update(seeds)
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                c = int(t[a, b])
                if c not in members:
                    members.add(c)
                    changed = True
    return Subgroup(G, tuple(sorted(members)))


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    members = [g for g in range(G.order)
               if np.array_equal(t[g], t[:, g])]
    return Subgroup(G, tuple(members))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    mem = set(H.members)
    return all(G.conj(g, h) in mem for g in range(G.order) for h in H.members)


def right_cosets(G: FiniteGroup, H: Subgroup):
    """Partition of G into right cosets Hg, each sorted."""
    seen = set()
    out = []
    t = G.table
    for g in range(G.order):
        if g in seen:
            continue
        coset = tuple(sorted(int(t[h, g]) for h in H.members))
        seen.update(coset)
        out.append(coset)
    return out


def is_transversal(G: FiniteGroup, H: Subgroup, X):
    """(left, right): does X meet every left / right H-coset exactly once."""
    X = list(X)
    if len(X) * len(H) != G.order:
        return (False, False)
    t = G.table
    # right coset of g is Hg; X is a right transversal iff the sets Hx cover G
    right = len({int(t[h, x]) for x in X for h in H.members}) == G.order
    left = len({int(t[x, h]) for x in X for h in H.members}) == G.order
    return (left, right)


def all_subgroups(G: FiniteGroup):
    """Every subgroup, by closure of incremental generator additions."""
    if G.order > 2048:
        raise GroupError("subgroup scan limited to order <= 2048")
    trivial = Subgroup(G, (0,))
    found = {trivial.members: trivial}
    frontier = [trivial]
    while frontier:
        new_frontier = []
        for H in frontier:
            mem = set(H.members)
            for g in range(1, G.order):
                if g in mem:
                    continue
                K = subgroup_closure(G, list(H.members) + [g])
                if K.members not in found:
                    found[K.members] = K
                    new_frontier.append(K)
        frontier = new_frontier
    return sorted(found.values(), key=lambda H: (len(H), H.members))


# ---------------------------------------------------------------------------
# automorphisms and orbits


def automorphism_from_images(G: FiniteGroup, images: dict) -> Automorphism:
    """Extend generator images to an automorphism; the generators must
    generate G and the images must respect every relation (verified on
    the full table by the Automorphism audit)."""
    gens = list(images)
    perm = np.full(G.order, -1, dtype=np.int64)
    perm[0] = 0
    t = G.table
    frontier = [0]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = int(t[g, s])
                if perm[h] < 0:
                    perm[h] = int(t[perm[g], images[s]])
                    nxt.append(h)
        frontier = nxt
    if (perm < 0).any():
        raise GroupError("given elements do not generate G")
    return Automorphism(G, perm)


def generated_perm_group(autos):
    """All permutations in the group generated by the given automorphisms."""
    if not autos:
        return [np.arange(0)]
    v = autos[0].group.order
    ident = tuple(range(v))
    seen = {ident}
    frontier = [np.arange(v)]
    out = [np.arange(v)]
    gens = [a.perm for a in autos]
    while frontier:
        nxt = []
        for cur in frontier:
            for gperm in gens:
                new = gperm[cur]
                key = tuple(new.tolist())
                if key not in seen:
                    seen.add(key)
                    out.append(new)
                    nxt.append(new)
        frontier = nxt
    return out


def orbits(G: FiniteGroup, autos):
    """Orbit partition of <autos> acting on G, each orbit sorted; orbits
    ordered by least element."""
    parent = list(range(G.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in autos:
        for g in range(G.order):
            rg, ri = find(g), find(int(a.perm[g]))
            if rg != ri:
                parent[max(rg, ri)] = min(rg, ri)
    buckets = {}
    for g in range(G.order):
        buckets.setdefault(find(g), []).append(g)
    return sorted((tuple(sorted(v)) for v in buckets.values()),
                  key=lambda o: o[0])


# ---------------------------------------------------------------------------
# central product


@dataclass
class CentralProduct:
    group: FiniteGroup
    embed1: np.ndarray  # index map G1 -> group
    embed2: np.ndarray  # index map G2 -> group
    amalgamated: Subgroup  # image of Z1 = image of Z2 in group


def _check_iso(Z1: Subgroup, Z2: Subgroup, theta: dict):
    if set(theta) != set(Z1.members) or set(theta.values()) != set(Z2.members):
        raise GroupError("theta is not a bijection Z1 -> Z2")
    t1, t2 = Z1.group.table, Z2.group.table
    for a in Z1.members:
        for b in Z1.members:
            if theta[int(t1[a, b])] != int(t2[theta[a], theta[b]]):
                raise GroupError("theta is not an isomorphism")


def central_product(G1: FiniteGroup, G2: FiniteGroup,
                    Z1: Subgroup, Z2: Subgroup,
                    theta: dict | None = None) -> CentralProduct:
    """(G1 x G2) / D with D = {(z, theta(z)^-1) : z in Z1}.

    Z_i must be central in G_i and theta an isomorphism Z1 -> Z2
    (default: match elements in enumeration order, then verify).
    """
    c1, c2 = center(G1), center(G2)
    if not set(Z1.members) <= set(c1.members):
        raise GroupError("Z1 is not central in G1")
    if not set(Z2.members) <= set(c2.members):
        raise GroupError("Z2 is not central in G2")
    if len(Z1) != len(Z2):
        raise GroupError("central subgroups have different orders")
    if theta is None:
        theta = dict(zip(Z1.members, Z2.members))
    _check_iso(Z1, Z2, theta)

    v1, v2 = G1.order, G2.order
    if v1 * v2 // len(Z1) > TABLE_LIMIT:
        raise GroupError("central product exceeds table limit")
    D = [(z, int(G2.inv[theta[z]])) for z in Z1.members]

    # cosets of the central subgroup D in G1 x G2, keyed by least pair index
    pair = lambda a, b: a * v2 + b
    rep_of = np.full(v1 * v2, -1, dtype=np.int64)
    reps = []
    t1, t2 = G1.table, G2.table
    for a in range(v1):
        for b in range(v2):
            i = pair(a, b)
            if rep_of[i] >= 0:
                continue
            coset = [pair(int(t1[a, z]), int(t2[b, w])) for z, w in D]
            r = min(coset)
            for j in coset:
                rep_of[j] = r
            reps.append(r)
    reps.sort()
    idx_of_rep = {r: i for i, r in enumerate(reps)}

    v = len(reps)
    table = np.empty((v, v), dtype=np.int64)
    for i, r in enumerate(reps):
        a1, a2 = divmod(r, v2)
        for j, s in enumerate(reps):
            b1, b2 = divmod(s, v2)
            prod = pair(int(t1[a1, b1]), int(t2[a2, b2]))
            table[i, j] = idx_of_rep[int(rep_of[prod])]
    labels = [f"[{G1.labels[r // v2]}.{G2.labels[r % v2]}]" for r in reps]
    G = FiniteGroup(table, labels=labels,
                    name=f"{G1.name}*{G2.name}")
    embed1 = np.array([idx_of_rep[int(rep_of[pair(a, 0)])]
                       for a in range(v1)], dtype=np.int64)
    embed2 = np.array([idx_of_rep[int(rep_of[pair(0, b)])]
                       for b in range(v2)], dtype=np.int64)
    amalg = Subgroup(G, tuple(int(embed1[z]) for z in Z1.members))
    # the embedded copies must commute elementwise and intersect in amalg
    im1, im2 = set(embed1.tolist()), set(embed2.tolist())
    if im1 & im2 != set(amalg.members):
        raise GroupError("embedded factors do not intersect in Z")
    for g1 in im1:
        for g2 in im2:
            if table[g1, g2] != table[g2, g1]:
                raise GroupError("embedded factors do not commute")
    return CentralProduct(G, embed1, embed2, amalg)
