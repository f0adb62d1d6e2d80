"""U-shape certificates and the sufficient / necessary conditions on h-basis
coefficients.

Coefficient sequences are ascending: ``a[r]`` multiplies ``h(t)^r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Callable, NamedTuple, Sequence

from mpmath import mp, mpf

from . import poly
from .codes import WeightDistribution, ub_distribution
from .numerics import PrecisionReal, workdps

__all__ = [
    "DEFAULT_MARGIN",
    "Verdict",
    "Method",
    "SturmProof",
    "UShapeCertificate",
    "SufficientConditionReport",
    "NecessaryCondition",
    "GlobalMinimum",
    "PreconditionError",
    "H_POLY",
    "h_power_series",
    "derivative_factor",
    "sufficient_condition",
    "necessary_condition",
    "ushape_exact",
    "ushape_sampled",
    "global_min_check",
]

DEFAULT_MARGIN = 1e-8

# h(t) = t^4 - t^2 + 1
H_POLY = [Fraction(1), Fraction(0), Fraction(-1), Fraction(0), Fraction(1)]
_THREE_QUARTERS = Fraction(3, 4)


class PreconditionError(ValueError):
    pass


class Verdict(str, Enum):
    U_SHAPED = "u_shaped"
    NOT_U_SHAPED = "not_u_shaped"
    INDETERMINATE = "indeterminate"


class Method(str, Enum):
    EXACT_STURM = "exact_sturm"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class SturmProof:
    """g(t), its Sturm chain and the resulting root count on (0, 1)."""

    g: tuple[Fraction, ...]
    chain: tuple[tuple[Fraction, ...], ...]
    roots_in_unit_interval: int
    g_at_half: Fraction


@dataclass(frozen=True)
class UShapeCertificate:
    verdict: Verdict
    method: Method
    witness: Fraction | float | None = None
    g_positivity: bool | None = None
    proof: SturmProof | None = None
    note: str = ""

    @property
    def u_shaped(self) -> bool:
        return self.verdict is Verdict.U_SHAPED


@dataclass(frozen=True)
class SufficientConditionReport:
    per_j: tuple[tuple[int, Fraction, Fraction, bool], ...]
    overall: bool
    note: str = ""


class NecessaryCondition(NamedTuple):
    value: Fraction
    passes: bool


class GlobalMinimum(NamedTuple):
    min_location_t: PrecisionReal
    min_value: Fraction
    marker: str = "1/sqrt(2)"


def _coeffs(h_coeffs: Sequence) -> list[Fraction]:
    a = [Fraction(c) for c in h_coeffs]
    if not a:
        raise ValueError("empty h-basis coefficient list")
    return a


def h_power_series(coeffs: Sequence) -> list[Fraction]:
    """sum_r c_r h(t)^r as a polynomial in t."""
    return poly.compose(list(coeffs), H_POLY)


def derivative_factor(h_coeffs: Sequence) -> list[Fraction]:
    """g(t) = sum_r r a_r h(t)^(r-1), so that f'(t) = h'(t) g(t)."""
    a = _coeffs(h_coeffs)
    return h_power_series([r * a[r] for r in range(1, len(a))])


def _falling(r: int, j: int) -> int:
    return factorial(r) // factorial(r - j)


def sufficient_condition(h_coeffs: Sequence) -> SufficientConditionReport:
    """alpha_j = sum_{r>=j} r!/(r-j)! a_r (3/4)^(r-j) and beta_j = sum_{r>=j} r!/(r-j)! a_r
    for j = 1..l-1; the condition holds when min(alpha_j, beta_j) > 0 for every j."""
    a = _coeffs(h_coeffs)
    ell = len(a) - 1
    rows = []
    for j in range(ell - 1, 0, -1):
        alpha = sum((_falling(r, j) * a[r] * _THREE_QUARTERS ** (r - j) for r in range(j, ell + 1)), Fraction(0))
        beta = sum((_falling(r, j) * a[r] for r in range(j, ell + 1)), Fraction(0))
        rows.append((j, alpha, beta, min(alpha, beta) > 0))
    if rows:
        return SufficientConditionReport(tuple(rows), all(p for *_, p in rows))
    # empty j-range: f = a_0 + a_1 h is U-shaped exactly when a_1 > 0
    if ell == 1:
        ok = a[1] > 0
        note = "empty j-range; l = 1 and " + ("a_1 > 0, f follows h" if ok else "a_1 <= 0")
        return SufficientConditionReport((), ok, note)
    return SufficientConditionReport((), False, "empty j-range; l = 0, ratio is constant")


def necessary_condition(dist: WeightDistribution) -> NecessaryCondition:
    """sum_w (A_w^UB - A_w) / (w + 1); non-negative whenever the ratio is bounded by one."""
    if dist.n % 2 or not dist.is_even:
        raise ValueError("necessary_condition expects an even-weight distribution of even length")
    ub = ub_distribution(dist.n)
    value = sum((Fraction(u - c, w + 1) for w, (u, c) in enumerate(zip(ub.counts, dist.counts))), Fraction(0))
    return NecessaryCondition(value, value >= 0)


def _is_inverse_sqrt2_root(g: list[Fraction], lo: Fraction, hi: Fraction) -> bool:
    if not lo * lo <= Fraction(1, 2) <= hi * hi:
        return False
    return not poly.divmod_poly(g, [Fraction(-1), Fraction(0), Fraction(2)])[1]


def ushape_exact(h_coeffs: Sequence) -> UShapeCertificate:
    """Decide U-shapedness of f = sum a_r h^r on (0, 1) around 1/sqrt(2) exactly.

    f'(t) = h'(t) g(t) and h' = 2t(2t^2 - 1) already has the required sign
    pattern, so f is U-shaped iff g does not change sign to negative and
    vanishes at most at 1/sqrt(2). Roots of g are counted with a Sturm chain.
    """
    a = _coeffs(h_coeffs)
    if sum(a) != 1:
        raise PreconditionError(f"h-basis coefficients must sum to 1, got {sum(a)}")
    g = derivative_factor(a)
    half = Fraction(1, 2)
    if not g:
        return UShapeCertificate(Verdict.NOT_U_SHAPED, Method.EXACT_STURM, half, False,
                                 note="f is constant")
    chain = poly.sturm_chain(poly.squarefree(g))
    nroots = poly.count_roots(g, 0, 1)
    g_half = poly.evaluate(g, half)
    proof = SturmProof(tuple(g), tuple(tuple(c) for c in chain), nroots, g_half)
    if nroots == 0:
        if g_half > 0:
            return UShapeCertificate(Verdict.U_SHAPED, Method.EXACT_STURM, None, True, proof)
        return UShapeCertificate(Verdict.NOT_U_SHAPED, Method.EXACT_STURM, half, False, proof,
                                 note="g < 0 on (0, 1): inverted U")
    intervals = poly.isolate_roots(g, 0, 1)
    edges = [Fraction(0)] + [x for iv in intervals for x in iv] + [Fraction(1)]
    probes = [(edges[i] + edges[i + 1]) / 2 for i in range(0, len(edges), 2)]
    for p in probes:
        if 0 < p < 1 and poly.evaluate(g, p) < 0:
            return UShapeCertificate(Verdict.NOT_U_SHAPED, Method.EXACT_STURM, p, False, proof,
                                     note="g changes sign on (0, 1)")
    for lo, hi in intervals:
        if not _is_inverse_sqrt2_root(g, lo, hi):
            return UShapeCertificate(Verdict.NOT_U_SHAPED, Method.EXACT_STURM, (lo + hi) / 2, False, proof,
                                     note="f' vanishes away from 1/sqrt(2)")
    return UShapeCertificate(Verdict.U_SHAPED, Method.EXACT_STURM, None, False, proof,
                             note="g >= 0 with its only zero at 1/sqrt(2)")


def ushape_sampled(f: Callable, grid_size: int = 1001, margin=DEFAULT_MARGIN) -> UShapeCertificate:
    """Check the U-shape sign pattern of f on a uniform grid of [0, 1].

    Central difference quotients are taken at interior grid points, skipping
    points within ``margin`` of 1/sqrt(2). A quotient smaller than ``margin``
    in magnitude makes the verdict indeterminate.
    """
    if grid_size < 101:
        raise ValueError("grid_size must be at least 101")
    with workdps():
        margin = mpf(margin)
        step = mpf(1) / (grid_size - 1)
        pivot = 1 / mp.sqrt(2)
        values = [f(i * step) for i in range(grid_size)]
        wrong: list[float] = []
        unclear: list[float] = []
        for i in range(1, grid_size - 1):
            t = i * step
            if abs(t - pivot) < margin:
                continue
            slope = (mpf(values[i + 1]) - mpf(values[i - 1])) / (2 * step)
            if abs(slope) < margin:
                unclear.append(float(t))
            elif (slope > 0) != (t > pivot):
                wrong.append(float(t))
    if wrong:
        return UShapeCertificate(Verdict.NOT_U_SHAPED, Method.SAMPLED, wrong[len(wrong) // 2],
                                 note=f"{len(wrong)} grid points with the wrong slope sign")
    if unclear:
        return UShapeCertificate(Verdict.INDETERMINATE, Method.SAMPLED, unclear[0],
                                 note=f"{len(unclear)} slopes below the margin")
    return UShapeCertificate(Verdict.U_SHAPED, Method.SAMPLED)


def global_min_check(h_coeffs: Sequence, tol=mpf("1e-30"),
                     certificate: UShapeCertificate | None = None) -> GlobalMinimum:
    """Location and exact value sum a_r (3/4)^r of the minimum of a U-shaped f.

    A constant ratio (a_r = 0 for r >= 1) is accepted as well: its minimum is
    attained everywhere, 1/sqrt(2) included.
    """
    a = _coeffs(h_coeffs)
    constant = not any(a[1:])
    if constant and a[0] != 1:
        raise PreconditionError("h-basis coefficients must sum to 1")
    if not constant:
        cert = certificate if certificate is not None else ushape_exact(a)
        if not cert.u_shaped:
            raise PreconditionError("global minimum requires a u_shaped certificate")
    value = sum((c * _THREE_QUARTERS**r for r, c in enumerate(a)), Fraction(0))
    if value > 1:
        raise AssertionError(f"minimum {value} exceeds the endpoint value 1")
    with workdps():
        loc = PrecisionReal.exact(1) / PrecisionReal(mp.sqrt(2), mp.ldexp(mp.sqrt(2), 1 - mp.prec))
    return GlobalMinimum(loc, value)
