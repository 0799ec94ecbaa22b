"""Exact integer group-ring arithmetic over a materialized finite group.

Dense signed 64-bit coefficient vectors; every RDS / PDS / S-ring /
linked-system verification in this package reduces to products and
comparisons of these.
"""

from __future__ import annotations

import numpy as np

from .groups import FiniteGroup

_COEFF_BOUND = 2 ** 31  # |a|_1 * max|b| stays far below int64 overflow


class GroupRingError(ValueError):
    pass


class GroupRingElement:
    __slots__ = ("group", "vec")

    def __init__(self, group: FiniteGroup, vec):
        vec = np.asarray(vec, dtype=np.int64)
        if vec.shape != (group.order,):
            raise GroupRingError("coefficient vector length must equal |G|")
        self.group = group
        self.vec = vec

    @classmethod
    def indicator(cls, group: FiniteGroup, subset) -> "GroupRingElement":
        vec = np.zeros(group.order, dtype=np.int64)
        for g in subset:
            g = int(g)
            if not 0 <= g < group.order:
                raise GroupRingError(f"index {g} out of range")
            vec[g] = 1
        return cls(group, vec)

    @classmethod
    def basis(cls, group: FiniteGroup, g: int) -> "GroupRingElement":
        return cls.indicator(group, [g])

    def _check(self, other):
        if not isinstance(other, GroupRingElement):
            raise TypeError("expected a GroupRingElement")
        if other.group is not self.group:
            raise GroupRingError("elements of different group rings")

    def __add__(self, other):
        self._check(other)
        return GroupRingElement(self.group, self.vec + other.vec)

    def __sub__(self, other):
        self._check(other)
        return GroupRingElement(self.group, self.vec - other.vec)

    def __rmul__(self, scalar: int):
        return GroupRingElement(self.group, int(scalar) * self.vec)

    def __neg__(self):
        return GroupRingElement(self.group, -self.vec)

    def __mul__(self, other):
        """Convolution: c_g = sum over h*k = g of a_h b_k."""
        self._check(other)
        a, b = self.vec, other.vec
        if (np.abs(a).sum() * max(1, np.abs(b).max())) >= _COEFF_BOUND:
            raise GroupRingError("coefficients too large for exact product")
        table = self.group.table
        out = np.zeros(self.group.order, dtype=np.int64)
        for g in np.nonzero(a)[0]:
            # row g of the Cayley table is a permutation, no index clashes
            out[table[g]] += a[g] * b
        return GroupRingElement(self.group, out)

    def involution(self) -> "GroupRingElement":
        """Coefficient transport along g -> g^-1."""
        out = np.empty_like(self.vec)
        out[self.group.inv] = self.vec
        return GroupRingElement(self.group, out)

    def scalar(self, other) -> int:
        self._check(other)
        return int(self.vec @ other.vec)

    def coeff_sum(self) -> int:
        return int(self.vec.sum())

    def support(self):
        return tuple(int(g) for g in np.nonzero(self.vec)[0])

    def __eq__(self, other):
        return (isinstance(other, GroupRingElement)
                and other.group is self.group
                and np.array_equal(self.vec, other.vec))

    def __getitem__(self, g: int) -> int:
        return int(self.vec[g])

    def to_json(self):
        return {"group": self.group.name, "coeffs": self.vec.tolist()}

    def __repr__(self):
        return f"GroupRingElement({self.group.name}, {self.vec.tolist()})"


def indicator(G: FiniteGroup, S) -> GroupRingElement:
    return GroupRingElement.indicator(G, S)


def gr_mult(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def gr_involution(a: GroupRingElement) -> GroupRingElement:
    return a.involution()


def gr_scalar(a: GroupRingElement, b: GroupRingElement) -> int:
    return a.scalar(b)
