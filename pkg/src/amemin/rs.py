"""Reed-Solomon codes over GF(q) and their single and double extensions.

A message is the coefficient vector ``(a0, ..., a_{k-1})`` of a polynomial f.
The codeword lists f at the field points 0..q-1 in integer-encoding order,
then (single extension) ``a_{k-1}``, or (double extension, q even and k = 3)
``a2`` and ``a1``. Every output is checked with :func:`oa_check` before it is
returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import Code, oa_check, puncture_to
from .finite_field import FieldSpec, NotAPrimePower, is_prime_power, make_field

EXTENSIONS = ("none", "single", "double")


class ConstructionError(RuntimeError):
    """A construction produced a non-MDS word set. Always a bug."""


@dataclass(frozen=True)
class RsParams:
    F: FieldSpec
    k: int
    extension: str = "single"

    def __post_init__(self):
        q = self.F.d
        if self.extension not in EXTENSIONS:
            raise ValueError(f"extension must be one of {EXTENSIONS}")
        if self.extension == "double" and not (self.F.p == 2 and self.k == 3):
            raise ValueError("double extension needs q even and k = 3")
        if not 1 <= self.k <= self.length:
            raise ValueError(f"k = {self.k} out of range for length {self.length}")
        if self.extension == "none" and self.k > q:
            raise ValueError("k must not exceed q without extension")

    @property
    def length(self) -> int:
        return self.F.d + EXTENSIONS.index(self.extension)


def _messages(q: int, k: int) -> np.ndarray:
    """All coefficient vectors (a0..a_{k-1}), a0 fastest-varying last."""
    grids = np.indices((q,) * k).reshape(k, -1).T
    return grids[:, ::-1].copy()


def rs_words(F: FieldSpec, k: int, extension: str) -> np.ndarray:
    """Candidate word array; no validity or MDS check."""
    q = F.d
    add, mul = F.add_table, F.mul_table
    coeffs = _messages(q, k)
    cols = []
    for x in range(q):
        acc = coeffs[:, k - 1].copy()
        for i in range(k - 2, -1, -1):
            acc = add[mul[acc, x], coeffs[:, i]]
        cols.append(acc)
    if extension == "single":
        cols.append(coeffs[:, k - 1])
    elif extension == "double":
        cols.append(coeffs[:, 2])
        cols.append(coeffs[:, 1])
    return np.stack(cols, axis=1)


def rs_code(params: RsParams) -> Code:
    C = Code.from_array(params.F.d, rs_words(params.F, params.k, params.extension), params.F)
    if len(C) != params.F.d ** params.k or not oa_check(C, params.k):
        raise ConstructionError(f"RS construction {params} is not MDS")
    return C


def ame_code_for_prime_power(d: int) -> Code:
    """MDS code of length d+1 and dimension floor((d+1)/2)."""
    if not is_prime_power(d):
        raise NotAPrimePower(f"{d} is not a prime power")
    if d < 3:
        raise ValueError("d = 2 gives k = 1; use ghz_code")
    return rs_code(RsParams(make_field(d), (d + 1) // 2, "single"))


def ghz_code(n: int = 3, d: int = 2) -> Code:
    """Repetition code {(s,...,s)}: MDS with k = 1, delta = n."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return Code.from_words(d, n, [(s,) * n for s in range(d)])


def mds_code_for(n: int, d: int) -> Code | None:
    """An MDS code of length n and dimension n//2 from the RS family, if one applies.

    Covers n <= 3 (repetition), prime powers with n <= d+1 (singly extended
    RS punctured down to n) and q = 2**j with n//2 = 3, n <= q+2 (doubly
    extended).
    """
    k = n // 2
    if n <= 3:
        return ghz_code(3, d) if n == 3 else puncture_to(ghz_code(3, d), n)
    if not is_prime_power(d):
        return None
    F = make_field(d)
    if n <= d + 1 and k <= d:
        return puncture_to(rs_code(RsParams(F, k, "single")), n)
    if F.p == 2 and k == 3 and n <= d + 2:
        return puncture_to(rs_code(RsParams(F, 3, "double")), n)
    return None
