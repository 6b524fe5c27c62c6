import itertools

import pytest

from amemin.codes import is_mds
from amemin.latin import HypercubeSet, LatinHypercube, NotLatin, are_orthogonal, hypercubes_to_code, is_latin
from amemin.search import (
    SearchCertificate,
    SearchError,
    ame_minimal_exists,
    count_reduced,
    enumerate_reduced,
    exact_cover,
    find_transversals,
    has_orthogonal_mate,
    mate_by_backtracking,
    orthogonal_pair_exists,
    second_rows,
)


def cyclic(d):
    return [[(i + j) % d for j in range(d)] for i in range(d)]


def reduced_by_row_permutations(d):
    """Independent count: build squares row by row from whole permutations."""
    perms = [p for p in itertools.permutations(range(d))]
    count = 0

    def extend(rows):
        nonlocal count
        r = len(rows)
        if r == d:
            count += 1
            return
        for p in perms:
            if p[0] == r and all(p[c] != row[c] for row in rows for c in range(d)):
                extend(rows + [p])

    if d >= 1:
        extend([tuple(range(d))])
    return count


def brute_transversals(L):
    d = len(L)
    return sum(1 for p in itertools.permutations(range(d)) if len({L[r][p[r]] for r in range(d)}) == d)


@pytest.mark.parametrize("d,expected", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_reduced_counts_small(d, expected):
    assert count_reduced(d) == expected == reduced_by_row_permutations(d)


def test_reduced_squares_are_reduced_latin_and_ordered():
    squares = list(enumerate_reduced(5))
    assert squares == sorted(squares) and len(set(squares)) == 56
    for sq in squares:
        assert sq[0] == tuple(range(5)) and tuple(r[0] for r in sq) == tuple(range(5))
        assert is_latin(LatinHypercube.from_array(sq))


def test_partitions_cover_enumeration():
    for d in (4, 5, 6):
        total = sum(sum(1 for _ in enumerate_reduced(d, row)) for row in second_rows(d))
        assert total == count_reduced(d)


def test_order_cap():
    with pytest.raises(SearchError):
        next(enumerate_reduced(8))


@pytest.mark.parametrize("d,expected", [(3, 3), (4, 0), (5, 15)])
def test_cyclic_transversals(d, expected):
    T = find_transversals(cyclic(d))
    assert len(T) == expected == brute_transversals(cyclic(d))
    for t in T:
        L = cyclic(d)
        assert sorted(r for r, _ in t.cells) == list(range(d))
        assert sorted(c for _, c in t.cells) == list(range(d))
        assert sorted(L[r][c] for r, c in t.cells) == list(range(d))


def test_transversal_counts_match_brute_force_order5():
    for sq in enumerate_reduced(5):
        assert len(find_transversals(sq)) == brute_transversals(sq)


def test_non_latin_rejected():
    with pytest.raises(NotLatin):
        find_transversals([[0, 0], [1, 1]])
    with pytest.raises(NotLatin):
        has_orthogonal_mate([[0, 0], [1, 1]])


def test_exact_cover_small():
    sets = {"a": [1, 2], "b": [3], "c": [2, 3], "d": [4], "e": [1]}
    sol = exact_cover([1, 2, 3, 4], sets)
    cover = sorted(x for key in sol for x in sets[key])
    assert cover == [1, 2, 3, 4]
    assert exact_cover([1, 2], {"a": [1, 2], "b": [2]}) == ["a"]
    assert exact_cover([1, 2, 3], {"a": [1, 2], "b": [2, 3]}) is None


def test_mate_examples():
    M = has_orthogonal_mate(cyclic(3))
    assert M is not None and are_orthogonal(LatinHypercube.from_array(cyclic(3)), M)
    assert has_orthogonal_mate(cyclic(4)) is None
    assert mate_by_backtracking(cyclic(4)) is None


def test_mates_yield_mds_codes():
    for d in (3, 4, 5):
        for sq in enumerate_reduced(d):
            M = has_orthogonal_mate(sq)
            if M is None:
                continue
            L = LatinHypercube.from_array(sq)
            C = hypercubes_to_code(HypercubeSet(2, d, (L, M)))
            r = is_mds(C)
            assert r.is_mds and (C.n, r.k) == (4, 2)


def test_pair_exists_small_orders():
    assert orthogonal_pair_exists(3).verdict == "exists"
    c2 = orthogonal_pair_exists(2)
    assert c2.verdict == "not-exists" and c2.squares_examined == 1 and c2.squares_with_mate == 0


def test_exhaustive_counts_order5():
    cert = orthogonal_pair_exists(5, exhaustive=True)
    direct = sum(1 for sq in enumerate_reduced(5) if mate_by_backtracking(sq) is not None)
    assert cert.squares_examined == 56 and cert.squares_with_mate == direct


def test_certificate_json_round_trip():
    cert = orthogonal_pair_exists(4)
    again = SearchCertificate.from_json(cert.to_json())
    assert again.same_result(cert)


def test_not_exists_certificate_invariant():
    with pytest.raises(SearchError):
        SearchCertificate(6, 10, 1, "not-exists", 0.0)


def test_first_hit_is_deterministic_across_workers():
    a = orthogonal_pair_exists(5, workers=1)
    b = orthogonal_pair_exists(5, workers=3)
    assert a.same_result(b)
    assert a.first_hit_index == a.squares_examined - 1


def test_order7_first_hit():
    cert = orthogonal_pair_exists(7)
    assert cert.verdict == "exists" and not cert.exhaustive
    L = LatinHypercube.from_array(cert.witness["square"])
    M = LatinHypercube.from_array(cert.witness["mate"])
    assert are_orthogonal(L, M)


@pytest.mark.parametrize("n,d", [(2, 6), (3, 6), (4, 3), (5, 4), (6, 4), (8, 7)])
def test_ame_exists_constructive(n, d):
    v = ame_minimal_exists(n, d)
    assert v.exists is True and v.check.is_ame
    assert len(v.state.kets) == d ** (n // 2)


def test_ame_exists_6_4_has_64_kets():
    assert len(ame_minimal_exists(6, 4).state.kets) == 64


def test_ame_exists_falls_back_to_bounds():
    assert ame_minimal_exists(7, 5).exists is False
    assert ame_minimal_exists(5, 6).exists is False
    v = ame_minimal_exists(4, 10)
    assert v.exists is True and v.state is None
    assert ame_minimal_exists(10, 10).exists is None
    assert ame_minimal_exists(4, 2).exists is False
