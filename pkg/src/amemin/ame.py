"""Uniform, zero-phase AME states of minimal support.

A state is stored as its support in the computational basis. Two verifiers
are provided: a combinatorial one for minimal-support states, and an exact
partial-trace oracle that forms every reduced density matrix in rational
arithmetic.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import Code, project_keys

PARTIAL_TRACE_CAP = 4096


class AmeError(ValueError):
    pass


class CapExceeded(AmeError):
    pass


@dataclass(frozen=True)
class AmeState:
    n: int
    d: int
    kets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 2 or self.d < 2:
            raise AmeError("need n >= 2 and d >= 2")
        if not self.kets:
            raise AmeError("a state needs at least one ket")
        for ket in self.kets:
            if len(ket) != self.n or any(not 0 <= s < self.d for s in ket):
                raise AmeError(f"bad ket {ket} for n={self.n}, d={self.d}")
        if any(a >= b for a, b in zip(self.kets, self.kets[1:])):
            raise AmeError("kets must be sorted and distinct")

    @classmethod
    def from_kets(cls, n: int, d: int, kets) -> AmeState:
        ks = [tuple(int(s) for s in k) for k in kets]
        ordered = sorted(set(ks))
        if len(ordered) != len(ks):
            raise AmeError("duplicate kets")
        return cls(n, d, tuple(ordered))

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "kets": [list(k) for k in self.kets]}

    @classmethod
    def from_json(cls, obj: dict) -> AmeState:
        return cls.from_kets(int(obj["n"]), int(obj["d"]), obj["kets"])


@dataclass(frozen=True)
class AmeVerdict:
    is_ame: bool
    method: str
    failing_partition: tuple[int, ...] | None = None
    reason: str = ""

    def __post_init__(self):
        if not self.is_ame and self.failing_partition is None:
            raise AmeError("a negative verdict must name a failing partition")

    def to_json(self) -> dict:
        return {
            "is_ame": self.is_ame,
            "method": self.method,
            "failing_partition": list(self.failing_partition) if self.failing_partition is not None else None,
            "reason": self.reason,
        }


def state_from_code(C: Code) -> AmeState:
    if len(C) == 0:
        raise AmeError("empty code")
    return AmeState(C.n, C.d, C.words)


def code_from_state(S: AmeState) -> Code:
    return Code(S.d, S.n, S.kets)


def support(S: AmeState) -> int:
    return len(S.kets)


def is_minimal_support(S: AmeState) -> bool:
    return support(S) == S.d ** (S.n // 2)


def _sites(B) -> str:
    return "{" + ",".join(str(i + 1) for i in B) + "}"


def verify_ame_combinatorial(S: AmeState) -> AmeVerdict:
    """Check every balanced cut B (|B| = n//2) of a minimal-support state.

    (a) the kets project onto B bijectively, so the diagonal of rho_B is flat;
    (b) the kets project injectively onto the complement, so rho_B has no
    off-diagonal terms.
    """
    if not is_minimal_support(S):
        raise AmeError("combinatorial check needs minimal support; use the partial-trace oracle")
    m = S.n // 2
    arr = np.array(S.kets, dtype=np.int64)
    size = S.d ** m
    for B in itertools.combinations(range(S.n), m):
        A = [i for i in range(S.n) if i not in B]
        counts = np.bincount(project_keys(arr, B, S.d), minlength=size)
        if not np.all(counts == 1):
            missing = int(np.sum(counts == 0))
            return AmeVerdict(False, "combinatorial", B,
                              f"sites {_sites(B)}: {missing} of {size} basis states missing from the marginal")
        if len(np.unique(project_keys(arr, A, S.d))) != len(arr):
            return AmeVerdict(False, "combinatorial", B,
                              f"sites {_sites(B)}: complement projection not injective (coherences survive)")
    return AmeVerdict(True, "combinatorial")


def reduced_density(S: AmeState, B) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction]:
    """Nonzero entries of Tr_A |psi><psi| with A the complement of B.

    Entry (b, b') is the number of ket pairs agreeing on A with B-parts b and
    b', divided by the support size.
    """
    A = [i for i in range(S.n) if i not in B]
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = defaultdict(list)
    for ket in S.kets:
        groups[tuple(ket[i] for i in A)].append(tuple(ket[i] for i in B))
    counts: Counter = Counter()
    for bs in groups.values():
        for b in bs:
            for b2 in bs:
                counts[b, b2] += 1
    N = len(S.kets)
    return {key: Fraction(c, N) for key, c in counts.items()}


def verify_ame_partial_trace(S: AmeState, cap: int = PARTIAL_TRACE_CAP) -> AmeVerdict:
    """Compare every reduced state with |B| <= n//2 to Id/d^|B|, exactly."""
    if S.d ** (S.n // 2) > cap:
        raise CapExceeded(f"d**(n//2) = {S.d ** (S.n // 2)} exceeds cap {cap}")
    for m in range(1, S.n // 2 + 1):
        target = Fraction(1, S.d ** m)
        for B in itertools.combinations(range(S.n), m):
            rho = reduced_density(S, B)
            for (b, b2), val in rho.items():
                if b != b2:
                    return AmeVerdict(False, "partial-trace", B,
                                      f"rho_{_sites(B)}[{b},{b2}] = {val}, expected 0")
                if val != target:
                    return AmeVerdict(False, "partial-trace", B,
                                      f"rho_{_sites(B)}[{b},{b}] = {val}, expected {target}")
            diag = sum(1 for (b, b2) in rho if b == b2)
            if diag != S.d ** m:
                return AmeVerdict(False, "partial-trace", B,
                                  f"rho_{_sites(B)} has {S.d ** m - diag} zero diagonal entries")
    return AmeVerdict(True, "partial-trace")


def verify_ame(S: AmeState, method: str = "comb") -> AmeVerdict:
    if method in ("comb", "combinatorial"):
        return verify_ame_combinatorial(S)
    if method in ("trace", "partial-trace"):
        return verify_ame_partial_trace(S)
    raise ValueError(f"unknown method {method!r}")


def random_uniform_state(n: int, d: int, rng: np.random.Generator) -> AmeState:
    """Uniform state on d**(n//2) distinct basis kets drawn without replacement."""
    idx = rng.choice(d ** n, size=d ** (n // 2), replace=False)
    kets = [tuple(int(i) // d ** (n - 1 - p) % d for p in range(n)) for i in idx]
    return AmeState.from_kets(n, d, kets)
