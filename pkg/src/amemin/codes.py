"""Block codes over the alphabet {0..d-1}, held as explicit word sets.

Nothing here assumes linearity. The MDS test is the Singleton equality
``|C| == d**(n - delta + 1)``; :func:`oa_check` is the independent
orthogonal-array route to the same property.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from .finite_field import FieldSpec

OA_TABLE_CAP = 1 << 26
NAIVE_DISTANCE_LIMIT = 5000

Word = tuple[int, ...]


class CodeError(ValueError):
    pass


class DuplicateWords(CodeError):
    def __init__(self, word: Word, count: int):
        super().__init__(f"puncturing merges {count} words into {word}")
        self.word = word
        self.count = count


@dataclass(frozen=True)
class Code:
    d: int
    n: int
    words: tuple[Word, ...]
    field: FieldSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.d < 2 or self.n < 1:
            raise CodeError("need d >= 2 and n >= 1")
        for w in self.words:
            if len(w) != self.n:
                raise CodeError(f"word {w} does not have length {self.n}")
            if any(not 0 <= s < self.d for s in w):
                raise CodeError(f"word {w} has a symbol outside 0..{self.d - 1}")
        if any(a >= b for a, b in zip(self.words, self.words[1:])):
            raise CodeError("words must be sorted and distinct; use Code.from_words")

    @classmethod
    def from_words(cls, d: int, n: int, words, field: FieldSpec | None = None) -> Code:
        ws = [tuple(int(s) for s in w) for w in words]
        ordered = sorted(set(ws))
        if len(ordered) != len(ws):
            raise CodeError("duplicate words")
        return cls(d, n, tuple(ordered), field)

    @classmethod
    def from_array(cls, d: int, arr: np.ndarray, field: FieldSpec | None = None) -> Code:
        arr = np.asarray(arr, dtype=np.int64)
        return cls.from_words(d, arr.shape[1], map(tuple, arr.tolist()), field)

    def __len__(self) -> int:
        return len(self.words)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.words, dtype=np.int64).reshape(len(self.words), self.n)
        a.setflags(write=False)
        return a

    def to_json(self) -> dict:
        out = {"d": self.d, "n": self.n}
        if self.field is not None:
            out["field"] = self.field.descriptor()
        out["words"] = [list(w) for w in self.words]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Code:
        F = FieldSpec.from_descriptor(obj["field"]) if obj.get("field") else None
        return cls.from_words(int(obj["d"]), int(obj["n"]), obj["words"], F)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.d}"] + [" ".join(map(str, w)) for w in self.words]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Code:
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        n, d = (int(x) for x in lines[0])
        return cls.from_words(d, n, lines[1:])


def dumps_code(C: Code) -> str:
    return json.dumps(C.to_json())


@dataclass(frozen=True)
class MdsReport:
    is_mds: bool
    delta: int
    k: int | None
    size: int
    witness: tuple[Word, Word] | None = None

    def to_json(self) -> dict:
        return {
            "is_mds": self.is_mds,
            "delta": self.delta,
            "k": self.k,
            "size": self.size,
            "witness": [list(w) for w in self.witness] if self.witness else None,
        }


def hamming_distance(w: Word, v: Word) -> int:
    if len(w) != len(v):
        raise CodeError("words have different lengths")
    return sum(a != b for a, b in zip(w, v))


def project_keys(arr: np.ndarray, cols, d: int) -> np.ndarray:
    """Encode each row restricted to ``cols`` as a base-d integer."""
    cols = list(cols)
    if not cols:
        return np.zeros(len(arr), dtype=np.int64)
    weights = d ** np.arange(len(cols) - 1, -1, -1, dtype=np.int64)
    return arr[:, cols] @ weights


def _first_collision(keys: np.ndarray) -> tuple[int, int] | None:
    order = np.argsort(keys, kind="stable")
    s = keys[order]
    (dup,) = np.nonzero(s[1:] == s[:-1])
    if len(dup) == 0:
        return None
    return int(order[dup[0]]), int(order[dup[0] + 1])


def _min_distance_naive(C: Code) -> tuple[int, tuple[int, int]]:
    arr = C.array
    best, pair = C.n + 1, (0, 1)
    for i in range(len(arr) - 1):
        dists = (arr[i + 1:] != arr[i]).sum(axis=1)
        j = int(np.argmin(dists))
        if dists[j] < best:
            best, pair = int(dists[j]), (i, i + 1 + j)
            if best == 1:
                break
    return best, pair


def _min_distance_by_collision(C: Code) -> tuple[int, tuple[int, int]]:
    # delta = n - a*, where a* is the largest coordinate set on which two
    # distinct words agree. "Some a-set collides" is monotone in a.
    arr = C.array

    def collision_at(a: int):
        for cols in itertools.combinations(range(C.n), a):
            hit = _first_collision(project_keys(arr, cols, C.d))
            if hit is not None:
                return hit
        return None

    lo, hi = 0, C.n - 1  # a=0 always collides; a=n never does
    best = collision_at(0)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        hit = collision_at(mid)
        if hit is not None:
            lo, best = mid, hit
        else:
            hi = mid - 1
    return C.n - lo, best


def min_distance(C: Code, method: str = "auto") -> tuple[int, tuple[Word, Word]]:
    """Minimum pairwise Hamming distance and a pair of words achieving it.

    ``naive`` is the pairwise scan. ``collision`` searches for the largest
    coordinate set on which two words agree, which stays fast for the
    d**k-sized codes the constructions produce.
    """
    if len(C) < 2:
        raise CodeError("min_distance needs at least two words")
    if method == "auto":
        method = "naive" if len(C) <= NAIVE_DISTANCE_LIMIT else "collision"
    if method == "naive":
        delta, (i, j) = _min_distance_naive(C)
    elif method == "collision":
        delta, (i, j) = _min_distance_by_collision(C)
    else:
        raise ValueError(f"unknown method {method!r}")
    w, v = sorted((C.words[i], C.words[j]))
    return delta, (w, v)


def is_mds(C: Code) -> MdsReport:
    delta, witness = min_distance(C)
    k = C.n - delta + 1
    singleton = C.d ** k
    assert len(C) <= singleton, "Singleton bound violated"
    ok = len(C) == singleton
    return MdsReport(ok, delta, k if ok else None, len(C), witness)


def dimension_of(C: Code) -> int | None:
    """k with |C| == d**k, or None."""
    k, size = 0, 1
    while size < len(C):
        size *= C.d
        k += 1
    return k if size == len(C) else None


def oa_check(C: Code, k: int) -> bool:
    """True iff every k coordinates carry each k-tuple exactly once."""
    if len(C) != C.d ** k:
        raise CodeError(f"|C| = {len(C)} but d**k = {C.d ** k}")
    if k > C.n:
        return False
    if C.d ** k > OA_TABLE_CAP:
        raise CodeError(f"counting table d**k = {C.d ** k} exceeds cap")
    arr = C.array
    for cols in itertools.combinations(range(C.n), k):
        counts = np.bincount(project_keys(arr, cols, C.d), minlength=C.d ** k)
        if not np.all(counts == 1):
            return False
    return True


def oa_subsets(n: int, k: int) -> int:
    return comb(n, k)


def puncture(C: Code, position: int) -> Code:
    """Delete one coordinate from every word.

    Raises DuplicateWords rather than silently merging words.
    """
    if C.n < 2:
        raise CodeError("cannot puncture a length-1 code")
    if not 0 <= position < C.n:
        raise CodeError(f"position {position} out of range 0..{C.n - 1}")
    words = [w[:position] + w[position + 1:] for w in C.words]
    seen: dict[Word, int] = {}
    for w in words:
        seen[w] = seen.get(w, 0) + 1
    for w, c in seen.items():
        if c > 1:
            raise DuplicateWords(w, c)
    return Code.from_words(C.d, C.n - 1, words, C.field)


def puncture_to(C: Code, n: int) -> Code:
    """Puncture trailing coordinates until the length is n."""
    while C.n > n:
        C = puncture(C, C.n - 1)
    return C
