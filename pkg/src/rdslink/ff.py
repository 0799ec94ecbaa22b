"""Exact arithmetic in prime-power fields GF(p^r), p odd unless stated.

Elements are canonical integers 0..q-1 read as base-p digit vectors,
low digit = constant coefficient of the residue polynomial.  The
modulus is the lexicographically least monic irreducible polynomial of
degree r over F_p, coefficients compared low-degree-first, so every
field here is reproducible bit for bit.
"""

from __future__ import annotations

import itertools


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# Polynomials over Z_p are coefficient lists, low degree first, no
# trailing zeros ([] is the zero polynomial).

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        shift = len(a) - 1 - dm
        if lead:
            for j, mj in enumerate(m):
                a[shift + j] = (a[shift + j] - lead * mj) % p
        a.pop()
        _poly_trim(a)
    return a


def _is_irreducible(m, p):
    """Trial division by every lower-degree monic polynomial."""
    deg = len(m) - 1
    if deg == 1:
        return True
    if m[0] == 0:  # divisible by t
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            if not _poly_mod(m, div, p):
                return False
    return True


def _least_irreducible(p, r):
    for tail in itertools.product(range(p), repeat=r):
        m = list(tail) + [1]
        if _is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible polynomial of degree {r} over F_{p}")


class Field:
    """GF(p^r) with elements encoded as integers 0..q-1."""

    _TABLE_LIMIT = 4096  # precompute add/mul tables below this size

    def __init__(self, p: int, r: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if r < 1:
            raise FieldError("degree must be positive")
        q = p ** r
        if q > 2 ** 16:
            raise FieldError(f"p^r = {q} exceeds the supported range")
        self.p = p
        self.r = r
        self.q = q
        if modulus is None:
            modulus = _least_irreducible(p, r)
        else:
            modulus = _poly_trim(list(modulus))
            if len(modulus) - 1 != r or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree r")
            if not _is_irreducible(modulus, p):
                raise FieldError("modulus is reducible")
        self.modulus = tuple(modulus)
        self._mul_table = None
        if q <= self._TABLE_LIMIT:
            self._build_tables()

    def _build_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = self.coeffs(a)
            for b in range(a, q):
                v = self.from_coeffs(
                    _poly_mod(_poly_mul(ca, self.coeffs(b), self.p),
                              list(self.modulus), self.p))
                mul[a][b] = v
                mul[b][a] = v
        self._mul_table = mul

    # int <-> coefficient vector

    def coeffs(self, a: int):
        """Base-p digits of a, low degree first, trimmed."""
        out = []
        while a:
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, c) -> int:
        a = 0
        for d in reversed(c):
            a = a * self.p + d
        return a

    def elements(self):
        return range(self.q)

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        p, out, mult = self.p, 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        p, out, mult = self.p, 0, 1
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self.from_coeffs(
            _poly_mod(_poly_mul(self.coeffs(a), self.coeffs(b), self.p),
                      list(self.modulus), self.p))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = 1
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.q % 2 == 0:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def to_json(self):
        return {"p": self.p, "r": self.r, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.p, self.r, self.modulus)
                == (other.p, other.r, other.modulus))

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"Field(p={self.p}, r={self.r})"


def field_make(p: int, r: int = 1) -> Field:
    """Deterministic GF(p^r) with the canonical modulus."""
    return Field(p, r)


def least_nonsquare(F: Field) -> int:
    """First element in canonical order that is not a square; q must be odd."""
    if F.q % 2 == 0:
        raise FieldError("no nonsquares in even characteristic")
    squares = {F.mul(u, u) for u in F.elements()}
    for a in F.elements():
        if a not in squares:
            return a
    raise AssertionError("odd field without nonsquares")  # unreachable


def pell_solutions(F: Field, eps: int, c: int):
    """All (u, v) with u^2 - eps*v^2 = c; eps must be a nonsquare.

    There are q+1 solutions for c != 0 and only (0, 0) for c = 0.
    """
    if F.is_square(eps):
        raise FieldError(f"eps = {eps} is a square")
    out = set()
    for u in F.elements():
        uu = F.mul(u, u)
        for v in F.elements():
            if F.sub(uu, F.mul(eps, F.mul(v, v))) == c:
                out.add((u, v))
    return out
