import itertools

import numpy as np
import pytest

from amemin.codes import (
    Code,
    CodeError,
    DuplicateWords,
    dimension_of,
    hamming_distance,
    is_mds,
    min_distance,
    oa_check,
    puncture,
)
from amemin.rs import RsParams, ame_code_for_prime_power, rs_code
from amemin.finite_field import make_field


def brute_min_distance(words):
    return min(sum(a != b for a, b in zip(u, v)) for u, v in itertools.combinations(words, 2))


def brute_oa(words, d, k):
    n = len(words[0])
    for cols in itertools.combinations(range(n), k):
        seen = sorted(tuple(w[c] for c in cols) for w in words)
        if seen != sorted(itertools.product(range(d), repeat=k)):
            return False
    return True


@pytest.fixture
def ame43():
    return Code.from_words(3, 4, [(i, j, (i + j) % 3, (i + 2 * j) % 3) for i in range(3) for j in range(3)])


def test_hamming():
    assert hamming_distance((0, 0, 0), (0, 1, 2)) == 2
    assert hamming_distance((1, 2, 0), (1, 2, 0)) == 0
    assert hamming_distance((0, 1, 2, 0), (1, 2, 0, 1)) == 4
    with pytest.raises(CodeError):
        hamming_distance((0, 1), (0, 1, 2))


def test_min_distance_examples(ame43):
    assert min_distance(Code.from_words(3, 3, [(0, 0, 0), (1, 1, 1), (2, 2, 2)]))[0] == 3
    assert brute_min_distance(ame43.words) == 3
    delta, (w, v) = min_distance(ame43)
    assert delta == 3 and hamming_distance(w, v) == 3
    assert min_distance(Code.from_words(2, 2, [(0, 0), (0, 1)]))[0] == 1
    with pytest.raises(CodeError):
        min_distance(Code.from_words(2, 2, [(0, 0)]))


def test_is_mds_examples(ame43):
    r = is_mds(Code.from_words(3, 3, [(0, 0, 0), (1, 1, 1), (2, 2, 2)]))
    assert r.is_mds and r.k == 1
    r = is_mds(ame43)
    assert r.is_mds and (r.k, r.delta) == (2, 3)
    r = is_mds(Code.from_words(2, 3, [(0, 0, 0), (0, 1, 1)]))
    assert not r.is_mds and r.delta == 2 and r.k is None


def test_oa_examples(ame43):
    assert oa_check(ame43, 2)
    assert oa_check(Code.from_words(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]), 2)
    full = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0), (0, 2), (1, 0), (2, 1)]
    assert oa_check(Code.from_words(3, 2, full), 2)
    with pytest.raises(CodeError):
        oa_check(ame43, 3)


def test_puncture_examples(ame43):
    P = puncture(ame43, 3)
    assert len(P) == 9 and P.n == 3
    r = is_mds(P)
    assert r.is_mds and (r.k, r.delta) == (2, 2)
    assert brute_min_distance(P.words) == 2
    G = puncture(Code.from_words(3, 3, [(0, 0, 0), (1, 1, 1), (2, 2, 2)]), 0)
    assert G.words == ((0, 0), (1, 1), (2, 2)) and is_mds(G).k == 1
    with pytest.raises(DuplicateWords):
        puncture(Code.from_words(2, 2, [(0, 0), (0, 1)]), 1)
    with pytest.raises(CodeError):
        puncture(ame43, 4)


def test_puncture_chain_stays_mds():
    C = ame_code_for_prime_power(5)
    while True:
        r = is_mds(C)
        assert r.is_mds and r.k == 3
        if r.delta == 1:
            break
        C = puncture(C, 0)
    assert C.n == 3


def test_code_validation():
    with pytest.raises(CodeError):
        Code.from_words(2, 2, [(0, 0), (0, 0)])
    with pytest.raises(CodeError):
        Code.from_words(2, 2, [(0, 2)])
    with pytest.raises(CodeError):
        Code.from_words(2, 2, [(0, 0, 1)])


def test_json_and_text_round_trip(ame43):
    assert Code.from_json(ame43.to_json()) == ame43
    assert Code.from_text(ame43.to_text()) == ame43
    C = ame_code_for_prime_power(4)
    again = Code.from_json(C.to_json())
    assert again == C and again.field == make_field(4)


def _random_sized_code(rng, d, n, k):
    idx = rng.choice(d ** n, size=d ** k, replace=False)
    return Code.from_words(d, n, [tuple(int(i) // d ** p % d for p in range(n)) for i in idx])


def test_mds_iff_oa_on_constructions_and_random_codes():
    codes = []
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = make_field(q)
        for ext in ("none", "single") + (("double",) if q % 2 == 0 and q >= 4 else ()):
            for k in ((3,) if ext == "double" else range(1, min(q, 3) + 1)):
                codes.append(rs_code(RsParams(F, k, ext)))
    rng = np.random.default_rng(7)
    for _ in range(100):
        d = int(rng.integers(2, 4))
        n = int(rng.integers(2, 5))
        k = int(rng.integers(1, n))
        codes.append(_random_sized_code(rng, d, n, k))
    for C in codes:
        k = dimension_of(C)
        r = is_mds(C)
        assert len(C) <= C.d ** (C.n - r.delta + 1)
        assert (r.is_mds and r.k == k) == oa_check(C, k)
        if len(C) <= 400:
            assert brute_oa(C.words, C.d, k) == oa_check(C, k)
            assert brute_min_distance(C.words) == r.delta


@pytest.mark.parametrize("d", [3, 4, 5, 7])
def test_distance_methods_agree(d):
    C = ame_code_for_prime_power(d)
    rng = np.random.default_rng(d)
    R = _random_sized_code(rng, d, C.n, dimension_of(C))
    for code in (C, R, puncture(C, 0)):
        a = min_distance(code, "naive")
        b = min_distance(code, "collision")
        assert a[0] == b[0]
        assert hamming_distance(*b[1]) == b[0]
