"""Latin hypercubes, orthogonality, and conversion to and from MDS codes.

A cube is stored flat in row-major order (first index slowest) together with
its dimension k and order d. Converting a code uses its first k coordinates
as the cube index.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .codes import Code, CodeError, dimension_of, oa_check


class LatinError(ValueError):
    pass


class NotLatin(LatinError):
    pass


@dataclass(frozen=True)
class LatinHypercube:
    k: int
    d: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1 or self.d < 2:
            raise LatinError("need k >= 1 and d >= 2")
        if len(self.values) != self.d ** self.k:
            raise LatinError(f"expected {self.d ** self.k} entries, got {len(self.values)}")

    @classmethod
    def from_array(cls, arr) -> LatinHypercube:
        a = np.asarray(arr, dtype=np.int64)
        if a.ndim < 1 or len(set(a.shape)) != 1:
            raise LatinError(f"array shape {a.shape} is not a hypercube")
        return cls(a.ndim, a.shape[0], tuple(int(v) for v in a.ravel()))

    @classmethod
    def from_function(cls, k: int, d: int, fn) -> LatinHypercube:
        return cls(k, d, tuple(int(fn(*j)) for j in itertools.product(range(d), repeat=k)))

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.values, dtype=np.int64).reshape((self.d,) * self.k)
        a.setflags(write=False)
        return a

    def to_json(self) -> dict:
        return {"k": self.k, "d": self.d, "values": list(self.values),
                "order": "row-major, first index slowest"}

    @classmethod
    def from_json(cls, obj: dict) -> LatinHypercube:
        return cls(int(obj["k"]), int(obj["d"]), tuple(int(v) for v in obj["values"]))


@dataclass(frozen=True)
class HypercubeSet:
    k: int
    d: int
    cubes: tuple[LatinHypercube, ...] = ()

    def __post_init__(self):
        for c in self.cubes:
            if (c.k, c.d) != (self.k, self.d):
                raise LatinError("all cubes in a set must share (k, d)")

    def __len__(self) -> int:
        return len(self.cubes)

    def to_json(self) -> dict:
        return {"k": self.k, "d": self.d, "cubes": [c.to_json() for c in self.cubes]}

    @classmethod
    def from_json(cls, obj: dict) -> HypercubeSet:
        return cls(int(obj["k"]), int(obj["d"]),
                   tuple(LatinHypercube.from_json(c) for c in obj["cubes"]))


def is_latin(L: LatinHypercube) -> bool:
    a = L.array
    if a.min() < 0 or a.max() >= L.d:
        return False
    target = np.arange(L.d)
    for axis in range(L.k):
        if not np.all(np.sort(a, axis=axis) == target.reshape([-1 if i == axis else 1 for i in range(L.k)])):
            return False
    return True


def are_orthogonal(L: LatinHypercube, M: LatinHypercube) -> bool:
    """Every induced pair of squares (all but two indices fixed) is orthogonal.

    For k = 1 there are no induced squares and any two latin 1-cubes pass.
    """
    if (L.k, L.d) != (M.k, M.d):
        raise LatinError("cubes have different shapes")
    for cube in (L, M):
        if not is_latin(cube):
            raise NotLatin("orthogonality is only defined for latin cubes")
    d, k = L.d, L.k
    pairs = L.array * d + M.array
    target = np.arange(d * d)
    for a, b in itertools.combinations(range(k), 2):
        rest = [i for i in range(k) if i not in (a, b)]
        squares = np.transpose(pairs, rest + [a, b]).reshape(-1, d * d)
        if not np.all(np.sort(squares, axis=1) == target):
            return False
    return True


def mols_check(S: HypercubeSet) -> bool:
    if not all(is_latin(c) for c in S.cubes):
        return False
    return all(are_orthogonal(L, M) for L, M in itertools.combinations(S.cubes, 2))


def code_to_hypercubes(C: Code) -> HypercubeSet:
    """Read delta-1 mutually orthogonal k-cubes off an MDS code.

    Cube i at index j is coordinate k+i of the word whose first k coordinates
    are j.
    """
    k = dimension_of(C)
    if k is None or k < 1 or not oa_check(C, k):
        raise CodeError("code is not MDS with |C| = d**k, k >= 1")
    # sorted words with a bijective prefix enumerate the index in row-major order
    arr = C.array
    cubes = tuple(LatinHypercube(k, C.d, tuple(int(v) for v in arr[:, k + i]))
                  for i in range(C.n - k))
    S = HypercubeSet(k, C.d, cubes)
    if not mols_check(S):
        raise AssertionError("code_to_hypercubes produced a non-MOLS set")
    return S


def hypercubes_to_code(S: HypercubeSet) -> Code:
    if not mols_check(S):
        raise LatinError("cube set is not mutually orthogonal latin")
    idx = np.indices((S.d,) * S.k).reshape(S.k, -1).T
    cols = [idx] + [np.array(c.values, dtype=np.int64)[:, None] for c in S.cubes]
    C = Code.from_array(S.d, np.concatenate(cols, axis=1))
    if not oa_check(C, S.k):
        raise LatinError("resulting code is not MDS")
    return C


def dumps(obj) -> str:
    return json.dumps(obj.to_json())
