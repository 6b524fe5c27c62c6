"""Arithmetic in GF(p^m).

Elements are plain integers in ``range(p**m)``. The base-p digits of an
element are the coefficients of its polynomial representative, lowest degree
first, so ``x + 1`` over GF(2) is the integer 3. Multiplication is reduction
modulo a fixed monic irreducible polynomial; :func:`make_field` picks the
lexicographically least one so every run builds the same field.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

DEFAULT_FIELD_CAP = 1024


class NotAPrimePower(ValueError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


def factor_prime_power(d: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``d == p**m`` and p prime, or None."""
    if d < 2:
        return None
    p = next(q for q in range(2, d + 1) if d % q == 0)
    m = 0
    while d % p == 0:
        d //= p
        m += 1
    return (p, m) if d == 1 else None


def is_prime_power(d: int) -> bool:
    return factor_prime_power(d) is not None


# -- polynomials over GF(p) as coefficient tuples, lowest degree first --------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of the given degree in ascending integer encoding."""
    for low in range(p ** degree):
        yield [(low // p ** i) % p for i in range(degree)] + [1]


def is_irreducible(poly: list[int] | tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(k, p):
            if not _poly_mod(poly, g, p):
                return False
    return True


def to_digits(value: int, p: int, m: int) -> list[int]:
    return [(value // p ** i) % p for i in range(m)]


def from_digits(digits, p: int) -> int:
    return sum(int(c) * p ** i for i, c in enumerate(digits))


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed modulus (coefficients lowest degree first)."""

    p: int
    m: int
    modulus: tuple[int, ...]
    _tables: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if factor_prime_power(self.p) != (self.p, 1):
            raise ValueError(f"p={self.p} is not prime")
        if self.m < 1:
            raise ValueError("m must be positive")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("modulus coefficients must lie in 0..p-1")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def d(self) -> int:
        return self.p ** self.m

    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.d:
            raise ValueError(f"{a!r} is not an element of GF({self.d})")
        return int(a)

    def descriptor(self) -> dict:
        return {"p": self.p, "m": self.m, "d": self.d, "modulus": list(self.modulus)}

    @classmethod
    def from_descriptor(cls, desc: dict) -> FieldSpec:
        F = cls(int(desc["p"]), int(desc["m"]), tuple(int(c) for c in desc["modulus"]))
        if "d" in desc and int(desc["d"]) != F.d:
            raise ValueError("field descriptor has inconsistent d")
        return F

    def _mul_slow(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        x = to_digits(a, self.p, self.m)
        y = to_digits(b, self.p, self.m)
        prod = [0] * (2 * self.m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % self.p
        return from_digits(_poly_mod(prod, list(self.modulus), self.p), self.p)

    def _add_slow(self, a: int, b: int) -> int:
        x = to_digits(a, self.p, self.m)
        y = to_digits(b, self.p, self.m)
        return from_digits([(u + v) % self.p for u, v in zip(x, y)], self.p)

    @property
    def add_table(self) -> np.ndarray:
        if "add" not in self._tables:
            q = self.d
            t = np.array([[self._add_slow(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
            t.setflags(write=False)
            self._tables["add"] = t
        return self._tables["add"]

    @property
    def mul_table(self) -> np.ndarray:
        if "mul" not in self._tables:
            q = self.d
            t = np.array([[self._mul_slow(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
            t.setflags(write=False)
            self._tables["mul"] = t
        return self._tables["mul"]


@functools.lru_cache(maxsize=None)
def make_field(d: int, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """Build GF(d) with the lexicographically least monic irreducible modulus.

    Candidates are compared from the highest-degree coefficient down, which is
    the same as ascending order of their integer encodings.
    """
    pm = factor_prime_power(d)
    if pm is None:
        raise NotAPrimePower(f"{d} is not a prime power")
    if d > cap:
        raise ValueError(f"field size {d} exceeds cap {cap}")
    p, m = pm
    for poly in _monic_polys(m, p):
        if is_irreducible(poly, p):
            return FieldSpec(p, m, tuple(poly))
    raise AssertionError("no irreducible polynomial found")  # unreachable for prime p


def ff_add(F: FieldSpec, a: int, b: int) -> int:
    return int(F.add_table[F.check(a), F.check(b)])


def ff_neg(F: FieldSpec, a: int) -> int:
    digits = to_digits(F.check(a), F.p, F.m)
    return from_digits([(-c) % F.p for c in digits], F.p)


def ff_sub(F: FieldSpec, a: int, b: int) -> int:
    return ff_add(F, a, ff_neg(F, b))


def ff_mul(F: FieldSpec, a: int, b: int) -> int:
    return int(F.mul_table[F.check(a), F.check(b)])


def ff_inv(F: FieldSpec, a: int) -> int:
    """Multiplicative inverse by scanning the row of the product table."""
    a = F.check(a)
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    (hits,) = np.nonzero(F.mul_table[a] == 1)
    return int(hits[0])


def ff_pow(F: FieldSpec, a: int, e: int) -> int:
    out = 1
    for _ in range(e):
        out = ff_mul(F, out, a)
    return out
