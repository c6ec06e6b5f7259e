"""Finite-sum evaluation: worked values, rejection rules, and invariants."""

import json
import math
import random
from fractions import Fraction as F

import pytest

from lbk.engine import lobachevsky, mixed_parseval, single_term_check
from lbk.kernels import (
    ExcludedPointError,
    dilate,
    kernel_arcsine,
    kernel_bspline,
    kernel_semicircle,
)
from lbk.oracle import oracle_integral
from lbk.periodic import (
    constant,
    cosine,
    linear_combination,
    parse_periodic,
    sine,
    square_wave,
    trig_polynomial,
)


# --------------------------------------------------------------------------
# mixed_parseval examples
# --------------------------------------------------------------------------

def test_constant_with_box_is_one():
    for T in (F(1), F(1, 2), F(2, 3)):
        r = mixed_parseval(constant(T), kernel_bspline(1))
        assert r.value == 1.0


def test_cos_pi_x_with_box_hits_the_jump():
    # T = 2 puts the nodes at +-1/2 where the box takes its midpoint value
    r = mixed_parseval(cosine(2), kernel_bspline(1))
    assert abs(r.value - 0.5) < 1e-15
    nodes = {str(t.node): t.kernel_avg for t in r.terms}
    assert nodes["1/2"] == 0.5 and nodes["-1/2"] == 0.5
    # independent check: truncated quadrature of the same integral
    rep = oracle_integral(cosine(2), kernel_bspline(1), 500, 1e-3, "block_averaged")
    assert abs(rep.value - 0.5) < 1e-3


def test_arcsine_kernel_rejects_integer_period():
    with pytest.raises(ExcludedPointError) as err:
        mixed_parseval(cosine(1), kernel_arcsine())
    msg = str(err.value)
    assert "n = -1" in msg and "n = 1" in msg


def test_arcsine_kernel_small_period():
    r = mixed_parseval(constant(F(1, 2)), kernel_arcsine())
    assert r.value == 1.0
    assert len(r.terms) == 1 and r.terms[0].n == 0


def test_semicircle_cosine_value():
    r = mixed_parseval(cosine(2), kernel_semicircle())
    assert abs(r.value - math.sqrt(3) / 2) < 1e-15


# --------------------------------------------------------------------------
# lobachevsky examples
# --------------------------------------------------------------------------

def test_orders_one_and_two_give_unity():
    for k in (1, 2):
        assert lobachevsky(constant(1), k).value == 1.0


def test_order_three_cosine():
    r = lobachevsky(cosine(1), 3)
    assert abs(r.value - 0.125) < 1e-15
    # certify against the brute-force integral of sinc^3 * cos(2 pi x)
    rep = oracle_integral(cosine(1), kernel_bspline(3), 300, 1e-8, "plain")
    assert abs(rep.value - 0.125) < 1e-6


def test_order_three_and_four_constants():
    assert lobachevsky(constant(1), 3).value == 0.75
    assert abs(lobachevsky(constant(1), 4).value - 2.0 / 3.0) < 1e-15


def test_boundary_nodes_omitted_for_k_ge_2():
    # T = 2, k = 2: nodes n/2 with |n/2| < 1, so n = +-2 must not appear
    r = lobachevsky(cosine(2), 2)
    assert {t.n for t in r.terms} == {-1, 0, 1}
    # k = 1 keeps its boundary nodes (closed range)
    r = lobachevsky(cosine(2), 1)
    assert {t.n for t in r.terms} == {-1, 0, 1}
    assert abs(r.value - 0.5) < 1e-15


def test_endpoint_zero_invariant():
    # including the boundary nodes changes nothing for k >= 2
    p = trig_polynomial(F(2), [0.5, 1.0, -0.25], [0.0, 0.7])
    full = mixed_parseval(p, kernel_bspline(2), 1e-10)
    reduced = lobachevsky(p, 2, 1e-10)
    assert abs(full.value - reduced.value) == 0.0
    assert len(full.terms) == len(reduced.terms) + 2


def test_order_validation():
    with pytest.raises(ValueError):
        lobachevsky(constant(1), 0)
    with pytest.raises(ValueError):
        mixed_parseval(constant(1), kernel_bspline(1), -1.0)


# --------------------------------------------------------------------------
# single_term_check
# --------------------------------------------------------------------------

def test_single_term_examples():
    assert single_term_check(constant(F(1, 2)), 4) is True   # k*T = 2
    assert single_term_check(constant(1), 3) is False        # k*T = 3
    assert single_term_check(constant(F(3, 2)), 1) is True   # 0 < T < 2
    assert single_term_check(constant(2), 1) is False


def test_single_term_implies_one_node():
    for T, k in ((F(1, 2), 4), (F(2, 3), 3), (F(3, 2), 1)):
        p = constant(T)
        assert single_term_check(p, k)
        assert len(lobachevsky(p, k).terms) == 1


# --------------------------------------------------------------------------
# invariants
# --------------------------------------------------------------------------

def test_linearity():
    p, q = cosine(1), square_wave(1)
    combo = linear_combination([(1.5, p), (-2.0, q)])
    for k in (1, 3):
        lhs = lobachevsky(combo, k, 1e-11).value
        rhs = 1.5 * lobachevsky(p, k, 1e-11).value - 2.0 * lobachevsky(q, k, 1e-11).value
        assert abs(lhs - rhs) < 1e-10


def test_realness_for_real_inputs():
    for p in (square_wave(1), trig_polynomial(F(3, 2), [0.2, 0.4], [0.0, -0.3])):
        for K in (kernel_bspline(3), kernel_semicircle()):
            r = mixed_parseval(p, K, 1e-10)
            assert abs(r.value.imag) <= 1e-10


def test_degeneracy_of_first_two_orders():
    # with 0 < T <= 1 both sums collapse to the n = 0 node
    rng = random.Random(41)
    for _ in range(5):
        T = F(rng.randint(1, 12), 12)
        p = trig_polynomial(T, [rng.uniform(-1, 1) for _ in range(3)],
                            [rng.uniform(-1, 1) for _ in range(3)])
        a = lobachevsky(p, 1).value
        b = lobachevsky(p, 2).value
        assert abs(a - b) < 1e-14, T


def test_oracle_equivalence_sample():
    rng = random.Random(43)
    for _ in range(4):
        deg = rng.randint(0, 4)
        T = F(rng.randint(2, 12), 4)
        p = trig_polynomial(T, [rng.uniform(-1, 1) for _ in range(deg + 1)],
                            [rng.uniform(-1, 1) for _ in range(deg + 1)])
        for k in (1, 2, 3):
            tol = 1e-3 if k == 1 else 1e-6
            X, method = (500, "block_averaged") if k <= 2 else (260, "plain")
            rep = oracle_integral(p, kernel_bspline(k), X, 1e-8, method)
            got = lobachevsky(p, k, 1e-9).value
            assert abs(got - rep.value) <= tol, (T, k)


def test_resummation_is_bit_exact():
    p = trig_polynomial(F(7, 4), [0.3, -0.8, 0.1], [0.0, 0.2, 0.9])
    for k in (1, 2, 5):
        r = lobachevsky(p, k, 1e-10)
        assert r.resummed() == r.value


def test_numeric_coefficient_path():
    # a parsed expression takes the quadrature route end to end
    p = parse_periodic("cos(2*pi*x)", 1)
    r = lobachevsky(p, 3, 1e-10)
    assert abs(r.value - 0.125) < 1e-9


def test_no_conjugation_of_coefficients():
    # p = exp(2 pi i x) has c_1 = 1 and c_{-1} = 0; pairing with a conjugated
    # integrand would swap them and return 0 here
    p = linear_combination([(1.0, cosine(1)), (1j, sine(1))])
    r = lobachevsky(p, 3)
    assert abs(r.value - 0.125) < 1e-14


def test_all_nodes_inside_support():
    for k in (1, 2, 4):
        r = mixed_parseval(trig_polynomial(F(5, 2), [1.0, 0.5]), kernel_bspline(k))
        A = kernel_bspline(k).support_radius
        assert all(abs(t.node) <= A for t in r.terms)


def test_dilated_kernel_nodes():
    # support radius 1/4: only node 0 survives at T = 1
    K = dilate(kernel_bspline(1), F(1, 2))
    r = mixed_parseval(constant(1), K)
    assert len(r.terms) == 1
    assert abs(r.value - 1.0) < 1e-15


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def test_json_round_trip():
    r = lobachevsky(cosine(1), 3)
    payload = json.loads(json.dumps(r.to_json_dict()))
    assert payload["kernel"] == "sinc:k=3"
    assert payload["period"] == "1"
    assert payload["value"] == {"re": 0.125, "im": 0.0}
    assert [t["n"] for t in payload["terms"]] == [-1, 0, 1]
    term = payload["terms"][0]
    assert set(term) == {"n", "node", "coeff", "kernel_avg", "contribution"}
    assert term["node"] == "-1"
    assert "mean-normalized" in payload["normalization_note"]
