"""Flatness factor, smoothing parameter and the tau_eps solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from mpmath import mp, mpf

from .codes import CodeCatalogEntry, is_self_dual, pure_double_circulant, weight_distribution
from .numerics import (
    IndeterminateComparison,
    PrecisionReal,
    refine,
    theta3_scaled,
    workdps,
)
from .ratio import LatticeSpec, ratio_eval, ratio_poly_from_code

__all__ = [
    "DEFAULT_TAU_TOL",
    "NonBracketing",
    "SecrecyMethod",
    "SecrecyReport",
    "flatness_factor",
    "flatness_curve",
    "tau_eps_solve",
    "smoothing_parameter",
    "eta_from_tau",
    "tau_lower_bound_solve",
    "secrecy_report",
    "Figure1Row",
    "figure1_sweep",
    "Table1Row",
    "table1_row",
    "TABLE1_LENGTHS",
]

DEFAULT_TAU_TOL = mpf("1e-9")
_EVAL_TOL = mpf("1e-30")
_TAU_FLOOR = mpf("1e-6")
_TAU_START = mpf(4)
_TAU_CAP = mpf(2) ** 20

TABLE1_LENGTHS = (8, 16, 24, 32, 72, 128, 168, 256)


class NonBracketing(ValueError):
    """The flatness factor does not cross the target inside the search range."""


class SecrecyMethod(str, Enum):
    EXACT_THETA = "exact_theta"
    UPPER_BOUND_THETA = "upper_bound_theta"


@dataclass(frozen=True)
class SecrecyReport:
    lattice: LatticeSpec | None
    eps_n: Fraction
    tau_eps: mpf
    eta_eps: mpf
    method: SecrecyMethod
    samples: tuple[tuple[mpf, mpf], ...] | None = None


def flatness_factor(spec: LatticeSpec, tau, tol=_EVAL_TOL) -> PrecisionReal:
    """eps(tau) = V tau^(n/2) Theta(i tau) - 1.

    Evaluated as V (sqrt(tau) theta_3(i tau))^n Delta(tau) - 1, which keeps
    every factor of moderate size for small tau.
    """
    n = spec.n
    volume = spec.volume
    scale = _magnitude(spec, tau)

    def compute(inner):
        # sized for Delta of order one; refine rejects the result if that fails
        base = theta3_scaled(tau, inner / (4 * n * scale)) ** n * volume
        return base * ratio_eval(spec, tau, inner / (4 * scale)) - 1

    return refine(compute, tol)


def _magnitude(spec: LatticeSpec, tau) -> mpf:
    """max(1, V (sqrt(tau) theta_3(i tau))^n), an upper bound on eps + 1."""
    with workdps():
        return max(mpf(1), spec.volume * (theta3_scaled(tau, mpf("1e-10")).value * (1 + mpf("1e-9"))) ** spec.n)


def flatness_curve(spec: LatticeSpec, taus: Iterable, tol=_EVAL_TOL) -> list[tuple[mpf, PrecisionReal]]:
    return [(mpf(t), flatness_factor(spec, t, tol)) for t in taus]


def _below(spec: LatticeSpec, tau: mpf, eps: mpf) -> bool | None:
    """Whether eps(tau) < eps; None when the enclosure straddles the target."""
    # far from the crossing eps(tau) can be huge; a relative tolerance suffices there
    value = flatness_factor(spec, tau, _EVAL_TOL * _magnitude(spec, tau))
    try:
        return value < eps
    except IndeterminateComparison:
        return None


def tau_eps_solve(spec: LatticeSpec, eps, tol=DEFAULT_TAU_TOL) -> mpf:
    """tau_eps = max{tau > 0 : eps(tau) <= eps} by bisection.

    The flatness factor increases with tau, so the upper end of the bracket
    is doubled from 4 until it exceeds the target. The returned tau lies
    within tol of the crossing and never on the far side of it.
    """
    with workdps():
        eps = mpf(eps) if not isinstance(eps, Fraction) else mpf(eps.numerator) / eps.denominator
        tol = mpf(tol)
        if eps <= 0 or tol <= 0:
            raise ValueError("eps and tol must be positive")
        lo = _TAU_FLOOR
        if _below(spec, lo, eps) is not True:
            raise NonBracketing(f"flatness factor already reaches {mp.nstr(eps, 6)} at tau = {lo}")
        hi = _TAU_START
        while _below(spec, hi, eps) is not False:
            lo = hi
            hi *= 2
            if hi > _TAU_CAP:
                raise NonBracketing(f"flatness factor stays below {mp.nstr(eps, 6)} up to tau = {_TAU_CAP}")
        while hi - lo > tol:
            mid = (lo + hi) / 2
            side = _below(spec, mid, eps)
            if side is None:
                return mid
            if side:
                lo = mid
            else:
                hi = mid
        return lo


def eta_from_tau(tau) -> mpf:
    """eta = 1 / sqrt(2 pi tau)."""
    with workdps():
        return 1 / mp.sqrt(2 * mp.pi * mpf(tau))


def smoothing_parameter(spec: LatticeSpec, eps, tol=DEFAULT_TAU_TOL) -> mpf:
    return eta_from_tau(tau_eps_solve(spec, eps, tol))


def tau_lower_bound_solve(n: int, tol=mpf("1e-12")) -> mpf:
    """Root in (0, 1) of tau^(1/2) exp(-(pi - 1)/tau) = (1 + 1/n)^(1/n) - 1.

    Replacing theta_3 by its closed-form upper bound turns eps_{Z^n}(tau) = 1/n
    into this equation. Its left side increases from 0 to exp(-(pi - 1)) on
    (0, 1), so a root exists only when the right side is below that value,
    which needs n >= 3.
    """
    if n < 1:
        raise ValueError("n must be positive")
    with workdps():
        tol = mpf(tol)
        rhs = (1 + mpf(1) / n) ** (mpf(1) / n) - 1
        c = mp.pi - 1

        def lhs(t):
            return mp.sqrt(t) * mp.exp(-c / t)

        if rhs >= lhs(mpf(1)):
            raise NonBracketing(f"no root in (0, 1) for n = {n}: right side {mp.nstr(rhs, 6)} "
                                f">= {mp.nstr(lhs(mpf(1)), 6)}")
        lo, hi = mpf(0), mpf(1)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if lhs(mid) < rhs:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def secrecy_report(spec: LatticeSpec, eps=None, tol=DEFAULT_TAU_TOL,
                   sample_taus: Sequence | None = None) -> SecrecyReport:
    eps_n = Fraction(1, spec.n) if eps is None else Fraction(eps)
    tau = tau_eps_solve(spec, eps_n, tol)
    samples = None
    if sample_taus is not None:
        samples = tuple((mpf(t), flatness_factor(spec, t).value) for t in sample_taus)
    return SecrecyReport(spec, eps_n, tau, eta_from_tau(tau), SecrecyMethod.EXACT_THETA, samples)


@dataclass(frozen=True)
class Figure1Row:
    code_id: str
    n: int
    tau_eps: mpf
    eta_eps: mpf
    # Construction A of a code with ratio identically 1 is a rotated Z^n
    isometric_to_zn: bool = False
    spec: LatticeSpec | None = field(default=None, compare=False, repr=False)


def _figure1_specs(m: int) -> list[tuple[str, LatticeSpec]]:
    specs = []
    for bits in product((0, 1), repeat=m):
        code = pure_double_circulant(bits)
        if is_self_dual(code):
            specs.append((code.name, LatticeSpec.construction_a(weight_distribution(code), code.name)))
    return specs


def figure1_sweep(eps=Fraction(1, 12), n: int = 12, tol=DEFAULT_TAU_TOL) -> list[Figure1Row]:
    """eta_eps of Z^n and of every self-dual pure double circulant Construction A lattice.

    Rows are sorted by code_id. Codes sharing a weight distribution share the
    same ratio polynomial, so each distinct distribution is solved once.
    """
    if n % 2:
        raise ValueError("n must be even")
    specs = _figure1_specs(n // 2)
    if not specs:
        raise RuntimeError(f"no self-dual pure double circulant codes of length {n}")
    zn = LatticeSpec.integer(n)
    zn_tau = tau_eps_solve(zn, eps, tol)
    rows = [Figure1Row(f"Z{n}", n, zn_tau, eta_from_tau(zn_tau), True, zn)]
    solved: dict[tuple[int, ...], mpf] = {}
    for code_id, spec in specs:
        counts = spec.distribution.counts
        if counts not in solved:
            solved[counts] = tau_eps_solve(spec, eps, tol)
        tau = solved[counts]
        flat = ratio_poly_from_code(spec.distribution).coeffs_t == (Fraction(1),)
        rows.append(Figure1Row(code_id, n, tau, eta_from_tau(tau), flat, spec))
    return sorted(rows, key=lambda r: r.code_id)


@dataclass(frozen=True)
class Table1Row:
    n: int
    tau_zn: mpf
    tau_lower: mpf
    tau_code: mpf | None
    tau_ensemble: mpf
    code_name: str | None = None


def table1_row(n: int, entry: CodeCatalogEntry | None, tol=DEFAULT_TAU_TOL) -> Table1Row:
    """One row of the secrecy table at eps = 1/n; the code column is None without an entry."""
    eps = Fraction(1, n)
    tau_code = None
    if entry is not None:
        tau_code = tau_eps_solve(LatticeSpec.construction_a(entry.distribution, entry.name), eps, tol)
    return Table1Row(
        n,
        tau_eps_solve(LatticeSpec.integer(n), eps, tol),
        tau_lower_bound_solve(n),
        tau_code,
        tau_eps_solve(LatticeSpec.ensemble(n), eps, tol),
        None if entry is None else entry.name,
    )
