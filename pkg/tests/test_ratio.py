import random
from fractions import Fraction

import pytest
import sympy as sp
from mpmath import mp, mpf

from lattice_theta.builtin import builtin_codes, builtin_entries, builtin_entry
from lattice_theta.codes import BinaryLinearCode, CodeError, WeightDistribution, ub_distribution, weight_distribution
from lattice_theta.criteria import h_power_series
from lattice_theta.numerics import precision, theta3, workdps
from lattice_theta.ratio import (
    LatticeSpec,
    NotInSpan,
    OddWeightError,
    RatioPolynomial,
    decompose_h_basis,
    ratio_eval,
    ratio_poly_from_code,
    scaled_ratio_eval,
    theta_eval,
)

from oracles import T, h_decompose_sympy, ratio_poly_sympy

TOL = mpf("1e-30")
GOLAY = builtin_entry("golay24").distribution
HAMMING = builtin_entry("hamming8").distribution
EXAMPLE_32 = builtin_entry("ex32").distribution
SELF_DUAL = [e for e in builtin_entries() if e.claims_self_dual]

# frozen from sympy's linear solve (oracles.h_decompose_sympy)
GOLAY_H = (Fraction(-21, 8), Fraction(21, 4), Fraction(-21, 8), Fraction(1))


def _as_sympy(coeffs):
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(coeffs)))


# ratio_poly_from_code ----------------------------------------------------------------

def test_ub_distribution_gives_constant_one():
    for n in (2, 4, 8, 16, 24):
        assert ratio_poly_from_code(ub_distribution(n)).coeffs_t == (Fraction(1),)


def test_repetition_code_gives_one():
    assert ratio_poly_from_code(builtin_entry("rep2").distribution).coeffs_t == (Fraction(1),)


def test_golay_polynomial_matches_sympy_and_numeric_ratio():
    p = ratio_poly_from_code(GOLAY)
    assert _as_sympy(p.coeffs_t) == ratio_poly_sympy(GOLAY.counts)
    assert len(p.coeffs_t) == 13
    with workdps():
        at_root = p(1 / mp.sqrt(2))
        assert abs(at_root - ratio_eval(LatticeSpec.construction_a(GOLAY), 1, TOL).value) < mpf("1e-29")


def test_odd_weights_rejected():
    d = WeightDistribution(4, (1, 1, 1, 1, 0))
    with pytest.raises(OddWeightError):
        ratio_poly_from_code(d)


def test_ratio_polynomial_endpoint_invariant():
    with pytest.raises(ValueError):
        RatioPolynomial((Fraction(1), Fraction(1)), 8)


# decompose_h_basis -------------------------------------------------------------------

def test_ex32_decomposition():
    p = decompose_h_basis(ratio_poly_from_code(EXAMPLE_32))
    assert p.h_coeffs == (Fraction(-1), Fraction(1, 2), Fraction(1), Fraction(1, 2), Fraction(0))


def test_constant_decomposition():
    p = decompose_h_basis(RatioPolynomial((Fraction(1),), 16))
    assert p.h_coeffs == (Fraction(1), Fraction(0), Fraction(0))


def test_golay_decomposition_round_trip():
    p = decompose_h_basis(ratio_poly_from_code(GOLAY))
    assert p.h_coeffs == GOLAY_H
    assert [Fraction(int(c.p), int(c.q)) for c in h_decompose_sympy(ratio_poly_sympy(GOLAY.counts), 3)] == list(GOLAY_H)
    assert sum(p.h_coeffs) == 1
    assert tuple(h_power_series(p.h_coeffs)) == p.coeffs_t


def test_degree_beyond_span_is_reported():
    # the [8,4] ratio has degree 4 in t, but n = 4 forces l = 0
    coeffs = ratio_poly_from_code(HAMMING).coeffs_t
    with pytest.raises(NotInSpan):
        decompose_h_basis(RatioPolynomial(coeffs, 4))


def test_odd_powers_are_reported():
    with pytest.raises(NotInSpan):
        decompose_h_basis(RatioPolynomial((Fraction(1), Fraction(1), Fraction(-1)), 16))


def test_inconsistent_system_is_reported():
    # 1 - t^4 + t^6: even, degree <= 8, endpoints 1, yet a t^6 term needs h^2 and brings t^8
    coeffs = (Fraction(1), 0, 0, 0, Fraction(-1), 0, Fraction(1))
    with pytest.raises(NotInSpan):
        decompose_h_basis(RatioPolynomial(coeffs, 16))


# ratio_eval ----------------------------------------------------------------------------

def test_integer_lattice_ratio_is_exactly_one():
    for tau in (0.3, 1, 7):
        v = ratio_eval(LatticeSpec.integer(12), tau, TOL)
        assert v.value == 1 and v.err == 0


def test_golay_two_paths_agree_at_one():
    spec = LatticeSpec.construction_a(GOLAY)
    a = ratio_eval(spec, 1, TOL)
    with workdps():
        b = theta_eval(spec, 1, TOL) / theta3(1, TOL) ** 24
        assert abs(a.value - b.value) <= 10 * TOL


def test_ex32_explicit_h_at_one():
    a = [Fraction(-1), Fraction(1, 2), Fraction(1), Fraction(1, 2), Fraction(0)]
    exact = sum(c * Fraction(3, 4) ** r for r, c in enumerate(a))
    assert exact == -1 + Fraction(1, 2) * Fraction(3, 4) + Fraction(9, 16) + Fraction(1, 2) * Fraction(27, 64)
    v = ratio_eval(LatticeSpec.explicit_h(32, a), 1, TOL)
    with workdps():
        assert abs(v.value - mpf(exact.numerator) / exact.denominator) <= 10 * TOL


# scaled construction ---------------------------------------------------------------------

def test_scaled_limits():
    with workdps():
        hi = scaled_ratio_eval(HAMMING, 4, 60, TOL)
        assert abs(hi.value - 1) < mpf("1e-20")
        lo = scaled_ratio_eval(HAMMING, 4, mpf("0.005"), TOL)
        assert abs(lo.value - mpf(2) ** -4) < mpf("1e-20")


def test_scaled_hamming_matches_theta_quotient():
    v = scaled_ratio_eval(HAMMING, 4, 1, TOL)
    assert mpf(2) ** -4 < v.value < 1
    with workdps():
        direct = theta_eval(LatticeSpec.scaled(HAMMING, 4), 1, TOL) / theta3(1, TOL) ** 8
        assert abs(v.value - direct.value) <= 10 * TOL


def test_scaled_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        scaled_ratio_eval(HAMMING, 3, 1, TOL)


# theta_eval --------------------------------------------------------------------------------

def test_theta_z1_at_one():
    assert abs(float(theta_eval(LatticeSpec.integer(1), 1, TOL)) - 1.08643) < 5e-6


def test_golay_jacobi_self_duality():
    spec = LatticeSpec.construction_a(GOLAY)
    for tau in (mpf("0.5"), mpf("0.8"), mpf(2)):
        with workdps():
            lhs = theta_eval(spec, tau, TOL).value
            rhs = tau**-12 * theta_eval(spec, 1 / tau, TOL).value
            assert abs(lhs - rhs) <= 10 * TOL * max(1, abs(lhs))


def test_theta_tends_to_one():
    for spec in (LatticeSpec.integer(8), LatticeSpec.construction_a(GOLAY), LatticeSpec.scaled(HAMMING, 4)):
        with workdps():
            assert abs(theta_eval(spec, 80, TOL).value - 1) < mpf("1e-30")


# properties --------------------------------------------------------------------------------

def test_endpoint_normalization_for_self_dual_codes():
    for e in SELF_DUAL:
        p = ratio_poly_from_code(e.distribution)
        assert p(Fraction(0)) == 1 and p(Fraction(1)) == 1


def test_h_basis_round_trip_for_builtin_codes():
    for e in SELF_DUAL:
        p = decompose_h_basis(ratio_poly_from_code(e.distribution))
        assert tuple(h_power_series(p.h_coeffs)) == p.coeffs_t
        assert len(p.h_coeffs) == e.n // 8 + 1


def test_evaluation_paths_agree_on_tau_grid():
    for e in SELF_DUAL:
        if e.name not in builtin_codes():
            continue
        spec = LatticeSpec.construction_a(e.distribution, e.name)
        for tau in (mpf("0.3"), mpf("0.5"), mpf(1), mpf(2), mpf(3)):
            with workdps():
                a = ratio_eval(spec, tau, TOL)
                b = theta_eval(spec, tau, TOL) / theta3(tau, TOL) ** e.n
                assert abs(a.value - b.value) <= 10 * TOL * max(1, b.value), (e.name, tau)


def test_scaled_sandwich_on_50_random_codes():
    rng = random.Random(5)
    with workdps():
        taus = [mpf("0.2") * mpf("1.15") ** i for i in range(20)]
    for _ in range(50):
        n = rng.randint(2, 24)
        k = rng.randint(0, min(n - 1, 12))
        while True:
            try:
                code = BinaryLinearCode(n, tuple(rng.getrandbits(n) for _ in range(k)))
                break
            except CodeError:
                pass
        dist = weight_distribution(code)
        for tau in taus:
            v = scaled_ratio_eval(dist, k, tau, TOL)
            with workdps():
                assert v > mpf(2) ** (k - n)
                assert v < 1


def test_construction_a_jacobi_symmetry_for_builtin_codes():
    with precision(60):
        for e in SELF_DUAL:
            spec = LatticeSpec.construction_a(e.distribution, e.name)
            with workdps():
                tau = mpf("0.7")
                lhs = theta_eval(spec, tau, TOL).value
                rhs = tau ** (-mpf(e.n) / 2) * theta_eval(spec, 1 / tau, TOL).value
                assert abs(lhs - rhs) <= 10 * TOL * max(1, lhs)
