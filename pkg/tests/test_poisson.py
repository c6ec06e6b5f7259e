"""Compact-support Poisson summation: finite side vs transform series."""

import math
from fractions import Fraction as F

import pytest

from lbk.kernels import (
    ExcludedPointError,
    dilate,
    kernel_arcsine,
    kernel_bspline,
)
from lbk.poisson import poisson_check, poisson_lhs, poisson_rhs
from lbk.pwpoly import bspline, eval_limits


# --------------------------------------------------------------------------
# finite side
# --------------------------------------------------------------------------

def test_rhs_box_is_one_for_any_shift():
    K = kernel_bspline(1)
    for xi in (F(0), F(1, 4), F(-3, 7), F(123, 11)):
        assert poisson_rhs(K, xi) == 1.0


def test_rhs_dilated_box():
    # support radius below 1/2 leaves only the n = 0 term
    K = dilate(kernel_bspline(1), 1 / math.pi)
    assert poisson_rhs(K, 0) == 1.0


def test_rhs_bspline3_partition_at_zero():
    K = kernel_bspline(3)
    got = poisson_rhs(K, 0)
    want = sum(float(eval_limits(bspline(3), n).avg) for n in (-1, 0, 1))
    assert got == want == 1.0


def test_rhs_is_one_periodic_in_xi_exactly():
    K = kernel_bspline(4)
    for xi in (F(1, 3), F(2, 7), F(-5, 6)):
        assert poisson_rhs(K, xi) == poisson_rhs(K, xi + 1)
        assert poisson_rhs(K, xi) == poisson_rhs(K, xi - 3)


def test_rhs_arcsine_rejected():
    with pytest.raises(ExcludedPointError):
        poisson_rhs(kernel_arcsine(), 0)


# --------------------------------------------------------------------------
# series side
# --------------------------------------------------------------------------

def test_lhs_box_quarter_shift():
    partial, spread = poisson_lhs(kernel_bspline(1), F(1, 4), 10**4)
    assert abs(partial - 1.0) < 1e-3
    assert spread < 1e-3


def test_lhs_bspline2_converges_absolutely():
    partial, _ = poisson_lhs(kernel_bspline(2), 0, 100)
    assert abs(partial - 1.0) < 1e-6


def test_lhs_dilated_box_gives_sin_n_over_n():
    lam = 1 / math.pi
    K = dilate(kernel_bspline(1), lam)
    partial, _ = poisson_lhs(K, 0, 2**15)
    # partial = lam * (1 + 2 sum sinc-type terms); solve for the sine series
    series = (partial.real / lam - 1.0) / 2.0
    assert abs(series - (math.pi - 1) / 2) < 1e-4


def test_lhs_validates_M():
    with pytest.raises(ValueError):
        poisson_lhs(kernel_bspline(1), 0, 0)


# --------------------------------------------------------------------------
# the doubling check
# --------------------------------------------------------------------------

def test_check_box_converges_immediately():
    rep = poisson_check(kernel_bspline(1), 0, 1e-9, 10)
    assert rep.converged
    assert rep.M <= 10
    assert rep.lhs_partial == 1.0  # each nonzero term is an exact sinc zero
    assert rep.rhs == 1.0


def test_check_bspline4_at_third():
    rep = poisson_check(kernel_bspline(4), F(1, 3), 1e-8, 10**4)
    assert rep.converged
    assert abs(rep.lhs_partial - rep.rhs) <= 1e-8
    # rhs is the exact three-node sum
    want = sum(
        float(eval_limits(bspline(4), n).avg)
        * complex(math.cos(2 * math.pi * n / 3), -math.sin(2 * math.pi * n / 3))
        for n in (-1, 0, 1)
    )
    assert abs(rep.rhs - want) < 1e-15


def test_check_arcsine_rejected():
    with pytest.raises(ExcludedPointError):
        poisson_check(kernel_arcsine(), 0, 1e-6, 100)


def test_check_reports_nonconvergence_honestly():
    # an absurd tolerance cannot be met; the report must say so, not raise
    K = dilate(kernel_bspline(1), 1 / math.pi)
    rep = poisson_check(K, F(1, 3), 1e-15, 64)
    assert not rep.converged
    assert rep.M == 64
    assert rep.tail_estimate > 0


def test_report_invariant():
    # the k = 2 series tail decays like 1/M, so ask for what M_max can buy
    K = kernel_bspline(2)
    rep = poisson_check(K, F(1, 5), 1e-5, 10**5)
    assert rep.converged
    assert abs(rep.lhs_partial - rep.rhs) <= rep.tail_estimate + 1e-5


def test_report_json_schema():
    rep = poisson_check(kernel_bspline(2), F(1, 3), 1e-8, 10**4)
    payload = rep.to_json_dict()
    assert set(payload) == {"xi", "rhs", "lhs_partial", "M", "tail_estimate", "converged"}
    assert payload["xi"] == "1/3"
    assert isinstance(payload["M"], int)


def test_box_partial_sums_bracket_one():
    # the paired terms alternate in sign with shrinking magnitude, so the
    # symmetric partial sums land on alternating sides of the limit
    K = kernel_bspline(1)
    xi = 0.25
    running = K.transform(xi)
    sums = []
    for m in range(1, 40):
        running += K.transform(m + xi) + K.transform(-m + xi)
        sums.append(running)
    for a, b in zip(sums[10:], sums[11:]):
        assert (a - 1.0) * (b - 1.0) < 0


def test_absolute_tail_decay_budget():
    # decay like 1/m^k: halving the tolerance must not blow up the needed M
    K = kernel_bspline(3)
    rep1 = poisson_check(K, F(1, 3), 1e-6, 10**5)
    rep2 = poisson_check(K, F(1, 3), 5e-7, 10**5)
    assert rep1.converged and rep2.converged
    assert rep2.M <= 2 * max(rep1.M, 16)
