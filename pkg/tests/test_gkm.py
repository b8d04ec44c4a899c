import itertools
import random
from fractions import Fraction
from math import comb, factorial

import pytest

from hesslab.dotchar import betti_rs, dot_action_multiplicities, regular_betti
from hesslab.errors import ConsistencyError
from hesslab.exactpoly import Poly
from hesslab.gkm import (
    EquivClass,
    build_gkm,
    default_kahler_weight,
    dot_action,
    equivariant_dimension,
    equivariant_piece,
    flow_up_class,
    integrate,
    invariant_subring,
    kahler_class,
    kahler_report,
    lift,
    lift_with_noise,
    morse_betti,
    ordinary_basis,
    ordinary_project,
    poincare_pairing,
)
from hesslab.hessenberg import dimension, enumerate_hessenberg
from hesslab.linalg import inertia
from hesslab.partitions import character_value


def cycle_type(w):
    n = len(w)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = w[j] - 1
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def euler_at(g, u, point):
    """Product of the oriented tangent weights t_{w(b)} - t_{w(a)} at a point."""
    full = list(point) + [-sum(point)]
    out = Fraction(1)
    for wa, wb in g.weight_pairs[u]:
        out *= full[wb - 1] - full[wa - 1]
    return out


def localization_sum(g, c, point):
    total = Fraction(0)
    for u in range(len(g.vertices)):
        total += c.values[u].eval_at(point) / euler_at(g, u, point)
    return total


def test_graph_shape():
    for n in (2, 3, 4):
        for h in enumerate_hessenberg(n):
            g = build_gkm(h)
            assert len(g.vertices) == factorial(n)
            l = dimension(h)
            assert g.l == l
            edges = list(g.edges())
            assert len(edges) == factorial(n) * l // 2
            for u in range(len(g.vertices)):
                assert len(set(g.neighbor[u])) == l


def test_weight_pair_convention():
    g = build_gkm((2, 3, 3))
    assert g.roots == ((2, 1), (3, 2))
    uid = g.vindex[(1, 2, 3)]
    assert g.weight_pairs[uid] == [(2, 1), (3, 2)]
    # the edge for root (a, b) swaps the values in positions a and b
    assert g.vertices[g.neighbor[uid][0]] == (2, 1, 3)
    assert g.vertices[g.neighbor[uid][1]] == (1, 3, 2)


def test_graph_size_guard():
    with pytest.raises(ValueError):
        build_gkm((6,) * 6)


def test_morse_betti_matches_character_route():
    for n in (2, 3, 4):
        for h in enumerate_hessenberg(n):
            assert morse_betti(build_gkm(h)) == betti_rs(h), h


def test_morse_betti_n5_sample():
    # the full 42-function sweep runs in acceptance; one tall and one flat case
    for h in ((2, 3, 4, 5, 5), (5, 5, 5, 5, 5)):
        assert morse_betti(build_gkm(h)) == betti_rs(h)


def test_equivariant_dimensions_free_module_formula():
    def predicted(h, k):
        b = betti_rs(h)
        m = len(h) - 1
        return sum(
            b[j] * comb(k - j + m - 1, m - 1) for j in range(min(k, len(b) - 1) + 1)
        )

    hexagon = build_gkm((2, 3, 3))
    assert [equivariant_dimension(hexagon, k) for k in (0, 1, 2)] == [1, 6, 12]
    for h in ((2, 2), (1, 3, 3), (3, 3, 3), (2, 3, 4, 4)):
        g = build_gkm(h)
        for k in range(min(2 * g.l, 3) + 1):
            assert equivariant_dimension(g, k) == predicted(h, k), (h, k)


def test_equivariant_dimension_edgeless():
    g = build_gkm((1, 2, 3))
    assert equivariant_dimension(g, 0) == 6
    assert equivariant_dimension(g, 1) == 12  # six components, two linear forms


def test_equivariant_piece_is_certified_basis():
    g = build_gkm((2, 3, 3))
    for k in (0, 1, 2, 3):
        basis = equivariant_piece(g, k)
        assert len(basis) == equivariant_dimension(g, k)
        for cls in basis:
            assert cls.degree == k
    with pytest.raises(ValueError):
        equivariant_piece(g, 2 * g.l + 4)


def test_ordinary_dimensions():
    assert len(ordinary_basis(build_gkm((2, 3, 3)), 1)) == 4
    assert len(ordinary_basis(build_gkm((3, 3, 3)), 3)) == 1
    for h in ((2, 2), (2, 3, 3), (3, 3, 3), (2, 3, 4, 4)):
        g = build_gkm(h)
        b = betti_rs(h)
        for k in range(g.l + 1):
            assert len(ordinary_basis(g, k)) == b[k]


def test_flow_up_triangularity_and_normalization():
    for h in ((2, 3, 3), (3, 3, 3), (2, 2, 3, 4)):
        g = build_gkm(h)
        for vid in range(len(g.vertices)):
            cls = flow_up_class(g, vid)
            assert cls.degree == g.index[vid]
            val = cls.values[vid]
            assert not val.is_zero()
            assert val.degree == g.index[vid]
            for u in g.order:
                if u == vid:
                    break
                assert cls.values[u].is_zero()


def test_flow_up_guard_above_class_scale():
    g = build_gkm((2, 3, 4, 5, 5))
    with pytest.raises(ValueError):
        flow_up_class(g, 0)


def test_project_lift_roundtrip():
    g = build_gkm((2, 3, 3))
    for k in range(g.l + 1):
        dim = len(ordinary_basis(g, k))
        for i in range(dim):
            vec = [Fraction(int(i == j)) for j in range(dim)]
            assert ordinary_project(g, lift(g, k, vec)) == vec


def test_projection_kills_decomposables():
    # a flow-up class times a positive-degree polynomial projects to zero
    g = build_gkm((2, 3, 3))
    sigma = flow_up_class(g, g.order[0])  # bottom class, degree 0
    t0 = Poly.variable(g.nvars, 0)
    assert ordinary_project(g, sigma * t0) == [Fraction(0)] * len(ordinary_basis(g, 1))


def test_integrate_constant_is_zero():
    g = build_gkm((2, 3, 3))
    one = EquivClass(g, 0, tuple(Poly.const(g.nvars, 1) for _ in g.vertices))
    # degree 0 < l, so the localization sum collapses to zero
    assert integrate(g, one * kahler_class(g, (1, 0, -1))) == 0


def test_integrate_point_class_normalization():
    # the top flow-up class represents a point; it is normalized by the
    # down-oriented forms while integration orients every tangent weight for
    # ample positivity, so the two differ by one sign per edge at the top
    for h in ((2, 2), (2, 3, 3), (3, 3, 3)):
        g = build_gkm(h)
        top = max(range(len(g.vertices)), key=lambda u: g.position[u])
        assert g.index[top] == g.l
        assert integrate(g, flow_up_class(g, top)) == (-1) ** g.l


def test_integrate_projective_line():
    g = build_gkm((2, 2))
    omega = kahler_class(g, default_kahler_weight(2))
    assert integrate(g, omega) == 1


def test_integrate_hexagon_self_intersection():
    # the permutohedron of (2,1,0) has normalized area 3, so the square of the
    # corresponding ample class integrates to 2! * 3
    g = build_gkm((2, 3, 3))
    omega = kahler_class(g, (2, 1, 0))
    assert integrate(g, omega * omega) == 6
    for lam in ((2, 0, -2), (5, 1, 0), (3, 1, -4)):
        w = kahler_class(g, lam)
        assert integrate(g, w * w) > 0


def test_integrate_matches_pointwise_localization():
    point3 = (Fraction(3, 7), Fraction(-5, 11))
    g = build_gkm((2, 3, 3))
    omega = kahler_class(g, (2, 1, 0))
    assert localization_sum(g, omega * omega, point3) == 6
    cubic = omega * omega * omega
    value = integrate(g, cubic)  # degree 1 polynomial
    assert value.eval_at(point3) == localization_sum(g, cubic, point3)

    flag = build_gkm((3, 3, 3))
    w = kahler_class(flag, (4, 1, 0))
    assert localization_sum(flag, w * w * w, point3) == integrate(flag, w * w * w)

    point4 = (Fraction(3, 7), Fraction(-5, 11), Fraction(9, 13))
    g4 = build_gkm((2, 3, 4, 4))
    w4 = kahler_class(g4, default_kahler_weight(4))
    deg = g4.l
    power = w4
    for _ in range(deg - 1):
        power = power * w4
    assert localization_sum(g4, power, point4) == integrate(g4, power)


def test_kahler_class_values_and_validation():
    g = build_gkm((2, 3, 3))
    cls = kahler_class(g, (1, 0, -1))
    assert cls.values[g.vindex[(1, 2, 3)]] == Poly.linear([2, 1])  # t1 - t3
    assert cls.values[g.vindex[(2, 3, 1)]] == Poly.linear([-1, 1])  # t2 - t1
    with pytest.raises(ValueError):
        kahler_class(g, (1, 1, 0))
    with pytest.raises(ValueError):
        kahler_class(g, (1, 0))


def test_kahler_class_dot_invariant():
    g = build_gkm((2, 3, 3))
    for lam in ((1, 0, -1), (2, 1, 0), (5, 2, -3)):
        cls = kahler_class(g, lam)
        for w in itertools.permutations(range(1, 4)):
            assert dot_action(g, w, cls) == cls


def test_dot_action_identity_and_constants():
    g = build_gkm((2, 3, 3))
    omega = kahler_class(g, (2, 1, 0))
    assert dot_action(g, (1, 2, 3), omega) == omega
    one = EquivClass(g, 0, tuple(Poly.const(g.nvars, 1) for _ in g.vertices))
    for w in itertools.permutations(range(1, 4)):
        assert dot_action(g, w, one) == one
    with pytest.raises(ValueError):
        dot_action(g, (1, 1, 3), omega)


def rep_trace(g, w, k):
    basis = ordinary_basis(g, k)
    total = Fraction(0)
    for i, cls in enumerate(basis):
        total += ordinary_project(g, dot_action(g, w, cls))[i]
    return total


def test_dot_action_traces_match_characters():
    # the graded trace of each group element equals the character predicted by
    # the multiplicity table: a cross-module oracle
    for h in ((2, 3, 3), (1, 3, 3), (3, 3, 3)):
        g = build_gkm(h)
        gm = dot_action_multiplicities(h)
        for w in itertools.permutations(range(1, 4)):
            mu = cycle_type(w)
            for k in range(g.l + 1):
                expected = sum(
                    row[k] * character_value(lam, mu) for lam, row in gm.table.items()
                )
                assert rep_trace(g, w, k) == expected, (h, w, k)


def test_hexagon_degree_one_trace_table():
    # two trivial summands plus the standard rep
    g = build_gkm((2, 3, 3))
    for w in itertools.permutations(range(1, 4)):
        expected = {(1, 1, 1): 4, (2, 1): 2, (3,): 1}[cycle_type(w)]
        assert rep_trace(g, w, 1) == expected


def test_poincare_pairing_fixtures():
    points = build_gkm((1, 2, 3))
    matrix = poincare_pairing(points, 0)
    assert matrix == [
        [Fraction(int(i == j)) for j in range(6)] for i in range(6)
    ]

    hexagon = build_gkm((2, 3, 3))
    top = poincare_pairing(hexagon, 0)
    assert top == [[Fraction(1)]]
    middle = poincare_pairing(hexagon, 2)
    assert len(middle) == 4
    assert middle == [list(row) for row in zip(*middle)]  # middle degree: symmetric
    assert tuple(inertia(middle)) == (1, 3, 0)  # surface intersection form

    with pytest.raises(ValueError):
        poincare_pairing(hexagon, 1)


def test_pairing_independent_of_lift():
    g = build_gkm((2, 3, 3))
    rng = random.Random(552)
    dim1 = len(ordinary_basis(g, 1))
    for trial in range(5):
        a = [Fraction(rng.randint(-3, 3)) for _ in range(dim1)]
        b = [Fraction(rng.randint(-3, 3)) for _ in range(dim1)]
        reference = integrate(g, lift(g, 1, a) * lift(g, 1, b))
        noisy = integrate(g, lift_with_noise(g, 1, a, rng) * lift_with_noise(g, 1, b, rng))
        assert noisy == reference


def test_invariant_subring_dimensions():
    hexagon = build_gkm((2, 3, 3))
    assert [len(v) for v in invariant_subring(hexagon, ())] == [1, 4, 1]
    assert [len(v) for v in invariant_subring(hexagon, (1,))] == [1, 3, 1]
    assert [len(v) for v in invariant_subring(hexagon, (2,))] == [1, 3, 1]
    assert [len(v) for v in invariant_subring(hexagon, (1, 2))] == [1, 2, 1]

    flag = build_gkm((3, 3, 3))
    assert [len(v) for v in invariant_subring(flag, (1, 2))] == [1, 2, 2, 1]
    with pytest.raises(ValueError):
        invariant_subring(build_gkm((2, 3, 4, 5, 5)), ())


def test_invariant_dims_match_character_prediction():
    for h in ((2, 2), (2, 3, 3), (3, 3, 3), (2, 3, 4, 4)):
        g = build_gkm(h)
        for r in range(len(h)):
            for J in itertools.combinations(range(1, len(h)), r):
                dims = [len(v) for v in invariant_subring(g, J)]
                assert dims == regular_betti(h, J), (h, J)


def test_kahler_report_hexagon():
    g = build_gkm((2, 3, 3))
    report = kahler_report(g, ())
    assert report["invariant_betti"] == [1, 4, 1]
    assert report["verdicts"] == {
        "poincare": True,
        "hard_lefschetz": True,
        "hodge_riemann": True,
        "all": True,
    }
    assert report["poincare"]["2"] == {"size": 4, "rank": 4, "nondegenerate": True}
    assert report["hard_lefschetz"]["0"] == {"power": 2, "rank": 1, "dim": 1, "full": True}
    hr0 = report["hodge_riemann"]["0"]
    assert hr0["sign"] == 1 and hr0["definite"] and hr0["dim_primitive"] == 1
    hr2 = report["hodge_riemann"]["2"]
    assert hr2["sign"] == -1
    assert hr2["dim_primitive"] == 3
    assert hr2["signature"] == [3, 0, 0]
    assert hr2["definite"]
    assert all(Fraction(p) > 0 for p in hr2["pivots"])


def test_kahler_report_flag_and_peterson_slice():
    flag = build_gkm((3, 3, 3))
    report = kahler_report(flag, ())
    assert report["verdicts"]["all"] is True
    assert report["hodge_riemann"]["2"]["dim_primitive"] == 1

    hexagon = build_gkm((2, 3, 3))
    inv = kahler_report(hexagon, (1, 2))
    assert inv["invariant_betti"] == [1, 2, 1]
    assert inv["verdicts"]["all"] is True

    points = build_gkm((1, 2, 3))
    flat = kahler_report(points, ())
    assert flat["verdicts"]["all"] is True

    with pytest.raises(ValueError):
        kahler_report(build_gkm((2, 3, 4, 5, 5)), ())


def test_kahler_report_alternate_weight():
    g = build_gkm((2, 3, 3))
    report = kahler_report(g, (), (7, 2, -1))
    assert report["lambda"] == [7, 2, -1]
    assert report["verdicts"]["all"] is True
