import itertools
from math import factorial

import pytest

from hesslab.dotchar import (
    betti_rs,
    chromatic_qsym,
    compact_partition_key,
    dot_action_multiplicities,
    multiplicities_json,
    regular_betti,
)
from hesslab.errors import CostGuardError
from hesslab.hessenberg import dimension, enumerate_hessenberg, incomparability_graph, is_indecomposable
from hesslab.partitions import dim_irrep, partitions_of
from hesslab.symfunc import QPoly, q_factorial


def brute_force_csf(h):
    """Direct product-loop coloring enumerator, nothing shared with the library."""
    n = len(h)
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if j <= h[i - 1]]
    hist: dict[tuple, dict[int, int]] = {}
    for kappa in itertools.product(range(1, n + 1), repeat=n):
        if any(kappa[i - 1] == kappa[j - 1] for i, j in edges):
            continue
        asc = sum(1 for i, j in edges if kappa[i - 1] < kappa[j - 1])
        usage = [0] * n
        for c in kappa:
            usage[c - 1] += 1
        key = tuple(usage)
        hist.setdefault(key, {})
        hist[key][asc] = hist[key].get(asc, 0) + 1
    return hist


@pytest.mark.parametrize("h", [(1, 2), (2, 2), (1, 3, 3), (2, 3, 3), (3, 3, 3), (2, 3, 4, 4), (4, 4, 4, 4)])
def test_chromatic_matches_brute_force(h):
    X = chromatic_qsym(h)
    hist = brute_force_csf(h)
    n = len(h)
    for lam in partitions_of(n):
        canonical = tuple(lam) + (0,) * (n - len(lam))
        expected = QPoly(dict(hist.get(canonical, {})))
        assert X.coefficient(lam) == expected, (h, lam)


def test_chromatic_cost_guard():
    h = (9,) * 9
    with pytest.raises(CostGuardError):
        chromatic_qsym(h)


def test_flag_variety_pin():
    # complete graph: everything concentrates on lam = (n) with the
    # q-factorial as its graded multiplicity row
    for n in (2, 3, 4):
        h = (n,) * n
        gm = dot_action_multiplicities(h)
        qfact = q_factorial(n).coefficient_list(dimension(h))
        for lam in partitions_of(n):
            if lam == (n,):
                assert gm.table[lam] == qfact
            else:
                assert gm.table[lam] == [0] * (dimension(h) + 1)
        assert betti_rs(h) == qfact


def test_empty_graph_is_regular_representation():
    for n in (2, 3, 4):
        h = tuple(range(1, n + 1))
        gm = dot_action_multiplicities(h)
        assert gm.l == 0
        for lam in partitions_of(n):
            assert gm.table[lam] == [dim_irrep(lam)]
        assert betti_rs(h) == [factorial(n)]


def test_hexagon_table():
    gm = dot_action_multiplicities((2, 3, 3))
    assert gm.table[(3,)] == [1, 2, 1]
    assert gm.table[(2, 1)] == [0, 1, 0]
    assert gm.table[(1, 1, 1)] == [0, 0, 0]
    assert betti_rs((2, 3, 3)) == [1, 4, 1]


def test_peterson_invariants():
    row = regular_betti((2, 3, 3), (1, 2))
    assert row == [1, 2, 1]
    # product formula: prod over i of [h(i) - i + 1]_q
    prod = QPoly.one()
    for i, hi in enumerate((2, 3, 3), start=1):
        prod = prod * QPoly({k: 1 for k in range(hi - i + 1)})
    assert row == prod.coefficient_list()


def test_regular_betti_specializations():
    for n in (2, 3, 4):
        for h in enumerate_hessenberg(n):
            assert regular_betti(h, ()) == betti_rs(h)


def test_json_shape():
    doc = multiplicities_json(dot_action_multiplicities((2, 3, 3)))
    assert doc == {
        "n": 3,
        "h": "2,3,3",
        "l": 2,
        "mult": {"3": [1, 2, 1], "21": [0, 1, 0], "111": [0, 0, 0]},
        "betti": [1, 4, 1],
    }


def test_compact_partition_key():
    assert compact_partition_key((2, 1)) == "21"
    assert compact_partition_key((4,)) == "4"
    assert compact_partition_key((1, 1, 1)) == "111"


def test_total_dimension_is_group_order():
    # the semisimple space always has n! cells in total
    for n in range(2, 6):
        for h in enumerate_hessenberg(n):
            assert sum(betti_rs(h)) == factorial(n)


def test_betti_palindromic_small():
    for n in range(2, 6):
        for h in enumerate_hessenberg(n):
            row = betti_rs(h)
            assert row == row[::-1], h


def test_regular_betti_palindromic_small():
    for n in range(2, 5):
        for h in enumerate_hessenberg(n):
            for size in range(n):
                for J in itertools.combinations(range(1, n), size):
                    row = regular_betti(h, J)
                    assert row == row[::-1], (h, J)


def test_indecomposable_has_connected_ends():
    for n in range(2, 6):
        for h in enumerate_hessenberg(n, indecomposable_only=True):
            row = betti_rs(h)
            assert row[0] == 1 and row[-1] == 1, h


def test_multiplicity_degrees_and_signs():
    for n in range(2, 6):
        for h in enumerate_hessenberg(n):
            gm = dot_action_multiplicities(h)
            for lam, row in gm.table.items():
                assert len(row) == gm.l + 1
                assert all(v >= 0 for v in row)
