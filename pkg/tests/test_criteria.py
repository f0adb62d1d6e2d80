from fractions import Fraction
from pathlib import Path

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from lattice_theta import poly
from lattice_theta.builtin import builtin_entries, builtin_entry
from lattice_theta.codes import (
    is_self_dual,
    load_catalog_dir,
    pure_double_circulant,
    ub_distribution,
    weight_distribution,
)
from lattice_theta.criteria import (
    Method,
    PreconditionError,
    Verdict,
    derivative_factor,
    global_min_check,
    h_power_series,
    necessary_condition,
    sufficient_condition,
    ushape_exact,
    ushape_sampled,
)
from lattice_theta.numerics import h_eval, workdps
from lattice_theta.ratio import LatticeSpec, decompose_h_basis, ratio_eval, ratio_poly_from_code

from oracles import T, g_roots_in_unit_interval

TOL = mpf("1e-30")
EX32_H = (Fraction(-1), Fraction(1, 2), Fraction(1), Fraction(1, 2), Fraction(0))
F = Fraction

# frozen from exact rational sums over the enumerated distributions
HAMMING_NECESSARY = F(32, 105)
GOLAY_NECESSARY = F(33935360, 2028117)


def _corpus():
    entries = [(e.name, e.distribution) for e in builtin_entries() if e.claims_self_dual]
    entries += [(e.name, e.distribution) for e in load_catalog_dir(Path(__file__).parent.parent / "catalog")]
    for bits in range(64):
        code = pure_double_circulant(f"{bits:06b}")
        if is_self_dual(code):
            entries.append((code.name, weight_distribution(code)))
    return entries


CORPUS = _corpus()


def _h_coeffs(dist):
    return decompose_h_basis(ratio_poly_from_code(dist)).h_coeffs


def _as_function(h_coeffs):
    coeffs = h_power_series(h_coeffs)

    def f(t):
        return mp.polyval([mpf(c.numerator) / c.denominator for c in reversed(coeffs)], t)

    return f


# sufficient_condition --------------------------------------------------------------------

def test_ex32_sufficient_pairs():
    report = sufficient_condition(EX32_H)
    assert [(j, a, b) for j, a, b, _ in report.per_j] == [
        (3, F(3), F(3)), (2, F(17, 4), F(5)), (1, F(91, 32), F(4))]
    assert report.overall


def test_constant_ratio_fails_sufficient_condition():
    report = sufficient_condition((F(1), F(0), F(0), F(0)))
    assert all(a == 0 and b == 0 and not p for _, a, b, p in report.per_j)
    assert not report.overall


def test_empty_range_rule():
    assert sufficient_condition((F(0), F(1))).overall
    assert sufficient_condition((F(0), F(1))).per_j == ()
    assert not sufficient_condition((F(2), F(-1))).overall
    assert not sufficient_condition((F(1),)).overall


# necessary_condition ----------------------------------------------------------------------

def test_necessary_condition_examples():
    for n in (4, 8, 24):
        assert necessary_condition(ub_distribution(n)) == (0, True)
    assert necessary_condition(builtin_entry("hamming8").distribution) == (HAMMING_NECESSARY, True)
    assert necessary_condition(builtin_entry("golay24").distribution) == (GOLAY_NECESSARY, True)


def test_necessary_condition_oracle_sums():
    for name in ("hamming8", "golay24"):
        d = builtin_entry(name).distribution
        ub = ub_distribution(d.n)
        expected = sum(sp.Rational(u - c, w + 1) for w, (u, c) in enumerate(zip(ub.counts, d.counts)))
        assert necessary_condition(d).value == F(int(expected.p), int(expected.q))


# ushape_exact --------------------------------------------------------------------------------

def test_ex32_is_u_shaped():
    cert = ushape_exact(EX32_H)
    assert cert.verdict is Verdict.U_SHAPED and cert.method is Method.EXACT_STURM
    assert cert.proof.roots_in_unit_interval == 0 and cert.proof.g_at_half > 0
    assert cert.g_positivity


def test_inverted_h_is_not_u_shaped():
    cert = ushape_exact((F(2), F(-1)))
    assert cert.verdict is Verdict.NOT_U_SHAPED
    assert 0 < cert.witness < 1


def test_h_itself_is_u_shaped():
    assert ushape_exact((F(0), F(1))).u_shaped


def test_exact_requires_unit_sum():
    with pytest.raises(PreconditionError):
        ushape_exact((F(1), F(1)))


def test_sign_change_of_g_is_witnessed():
    # g = 2h - 7/4 is negative near 1/sqrt(2) and positive near the endpoints
    cert = ushape_exact((F(7, 4), F(-7, 4), F(1)))
    assert cert.verdict is Verdict.NOT_U_SHAPED
    assert poly.evaluate(derivative_factor((F(7, 4), F(-7, 4), F(1))), cert.witness) < 0


def _oracle_verdict(a):
    roots = g_roots_in_unit_interval(a)
    if roots is None:
        return Verdict.NOT_U_SHAPED
    h = T**4 - T**2 + 1
    g = sp.expand(sum(r * sp.Rational(c) * h ** (r - 1) for r, c in enumerate(a) if r))
    edges = [sp.Integer(0)] + sorted(set(roots)) + [sp.Integer(1)]
    probes = [(x + y) / 2 for x, y in zip(edges, edges[1:])]
    if any(g.subs(T, p) <= 0 for p in probes):
        return Verdict.NOT_U_SHAPED
    if any(sp.simplify(r - 1 / sp.sqrt(2)) != 0 for r in roots):
        return Verdict.NOT_U_SHAPED
    return Verdict.U_SHAPED


coefficient = st.fractions(min_value=-4, max_value=4, max_denominator=8)


@settings(max_examples=60, deadline=None)
@given(st.lists(coefficient, min_size=1, max_size=4))
def test_exact_verdict_matches_sympy_roots(tail):
    a = [1 - sum(tail, F(0))] + list(tail)
    assert ushape_exact(a).verdict is _oracle_verdict(a)


def test_double_root_at_pivot_is_u_shaped():
    # g = (2h - 3/2)^2 vanishes only where h = 3/4, i.e. at t = 1/sqrt(2)
    # expand: 4h^2 - 6h + 9/4 = sum r a_r h^(r-1) with a_1 = 9/4, a_2 = -3, a_3 = 4/3
    a = [1 - F(9, 4) + 3 - F(4, 3), F(9, 4), F(-3), F(4, 3)]
    assert ushape_exact(a).verdict is Verdict.U_SHAPED
    assert _oracle_verdict(a) is Verdict.U_SHAPED


# ushape_sampled ------------------------------------------------------------------------------

def test_sampled_h_is_u_shaped():
    cert = ushape_sampled(lambda t: h_eval(t), 1001, 1e-8)
    assert cert.verdict is Verdict.U_SHAPED and cert.method is Method.SAMPLED


def test_sampled_wrong_minimum():
    cert = ushape_sampled(lambda t: (t - mpf(1) / 2) ** 2, 1001)
    assert cert.verdict is Verdict.NOT_U_SHAPED
    assert 0.5 < cert.witness < 1 / 2**0.5
    assert abs(cert.witness - 0.6) < 0.11


def test_sampled_flat_function_is_indeterminate():
    assert ushape_sampled(lambda t: mpf(1), 101).verdict is Verdict.INDETERMINATE


def test_sampled_grid_minimum():
    with pytest.raises(ValueError):
        ushape_sampled(lambda t: t, 100)


@pytest.mark.parametrize("a", [
    EX32_H,
    (F(0), F(1)),
    (F(2), F(-1)),
    (F(7, 4), F(-7, 4), F(1)),
    (F(-1), F(2), F(0)),
    (F(-21, 8), F(21, 4), F(-21, 8), F(1)),
    (F(0), F(-7, 2), F(7), F(-7, 2), F(1)),
])
def test_exact_and_sampled_agree(a):
    assert ushape_sampled(_as_function(a), 10001).verdict is ushape_exact(a).verdict


# global_min_check ----------------------------------------------------------------------------

def test_global_min_examples():
    m = global_min_check(EX32_H, TOL)
    assert m.min_value == F(19, 128)
    assert 0 < m.min_value <= 1
    assert global_min_check((F(1),), TOL).min_value == 1
    assert global_min_check((F(0), F(1)), TOL).min_value == F(3, 4)
    with workdps():
        assert abs(m.min_location_t.value - 1 / mp.sqrt(2)) < mpf("1e-45")


def test_global_min_requires_certificate():
    with pytest.raises(PreconditionError):
        global_min_check((F(2), F(-1)), TOL)
    with pytest.raises(PreconditionError):
        global_min_check((F(3),), TOL)


# properties over the corpus ---------------------------------------------------------------------

def test_soundness_chain_over_corpus():
    for name, dist in CORPUS:
        a = _h_coeffs(dist)
        if sufficient_condition(a).overall:
            assert ushape_exact(a).u_shaped, name


def test_necessary_condition_contrapositive_over_corpus():
    for name, dist in CORPUS:
        if ushape_exact(_h_coeffs(dist)).u_shaped:
            assert necessary_condition(dist).passes, name


def test_min_value_matches_ratio_at_one():
    for name, dist in CORPUS:
        if dist.n > 32:
            continue
        a = _h_coeffs(dist)
        m = global_min_check(a, TOL)
        assert 0 < m.min_value <= 1
        v = ratio_eval(LatticeSpec.construction_a(dist, name), 1, TOL)
        with workdps():
            assert abs(v.value - mpf(m.min_value.numerator) / m.min_value.denominator) <= 10 * TOL, name


def test_endpoint_values_over_corpus():
    for name, dist in CORPUS:
        coeffs = h_power_series(_h_coeffs(dist))
        assert poly.evaluate(coeffs, F(0)) == 1 and poly.evaluate(coeffs, F(1)) == 1, name
