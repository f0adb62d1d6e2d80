"""Theta series ratios: exact polynomials in t, the h-basis, and numerical evaluation.

For a Construction A lattice from a self-dual [n, n/2] code C the ratio
Theta / theta_3^n is the polynomial

    f_C(t) / 2^k = 2^-k * sum_w' A_{2w'} (1 + t)^(k - w') (1 - t)^w'

in t = theta_4^2 / theta_3^2, and it can be written as sum_r a_r h(t)^r with
h(t) = t^4 - t^2 + 1 and r <= floor(n / 8).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from mpmath import mpf

from . import poly
from .codes import BinaryLinearCode, WeightDistribution, weight_distribution
from .criteria import h_power_series
from .ensemble import EnsembleSpec, ensemble_ratio
from .linalg import InconsistentSystem, solve_exact
from .numerics import (
    PrecisionReal,
    h_eval_unchecked,
    refine,
    s_of_tau,
    t_of_tau,
    theta2,
    theta3,
    workdps,
)

__all__ = [
    "NotInSpan",
    "OddWeightError",
    "RatioPolynomial",
    "LatticeKind",
    "LatticeSpec",
    "ratio_poly_from_code",
    "decompose_h_basis",
    "ratio_poly_for",
    "ratio_eval",
    "scaled_ratio_eval",
    "weight_enumerator_eval",
    "theta_eval",
]

_DEFAULT_TOL = mpf("1e-30")


class NotInSpan(ValueError):
    """The polynomial is not a combination of h^0, ..., h^l with l = floor(n/8)."""


class OddWeightError(ValueError):
    """A distribution with odd weights has no polynomial ratio in t."""


@dataclass(frozen=True)
class RatioPolynomial:
    """Exact ratio polynomial in t (ascending coefficients) with optional h-basis form."""

    coeffs_t: tuple[Fraction, ...]
    n: int
    h_coeffs: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        coeffs = tuple(poly.trim([Fraction(c) for c in self.coeffs_t]))
        object.__setattr__(self, "coeffs_t", coeffs)
        if poly.evaluate(coeffs, Fraction(0)) != 1 or poly.evaluate(coeffs, Fraction(1)) != 1:
            raise ValueError("ratio polynomial must equal 1 at t = 0 and t = 1")
        if self.h_coeffs is not None:
            h = tuple(Fraction(c) for c in self.h_coeffs)
            object.__setattr__(self, "h_coeffs", h)
            if sum(h) != 1:
                raise ValueError("h-basis coefficients must sum to 1")
            if tuple(poly.trim(h_power_series(h))) != coeffs:
                raise ValueError("h-basis coefficients do not reproduce the t-polynomial")

    @property
    def k(self) -> int:
        return self.n // 2

    @property
    def ell(self) -> int:
        return self.n // 8

    def __call__(self, t):
        return poly.evaluate(self.coeffs_t, t)

    @classmethod
    def from_h_coeffs(cls, n: int, h_coeffs: Sequence) -> "RatioPolynomial":
        h = [Fraction(c) for c in h_coeffs]
        return cls(tuple(h_power_series(h)), n, tuple(h))


class LatticeKind(str, Enum):
    INTEGER = "integer_lattice"
    CONSTRUCTION_A = "construction_a"
    EXPLICIT_H = "explicit_h_coeffs"
    SCALED = "scaled_construction_a"
    ENSEMBLE = "ensemble"


def _distribution(source: WeightDistribution | BinaryLinearCode) -> tuple[WeightDistribution, int | None]:
    if isinstance(source, BinaryLinearCode):
        return weight_distribution(source), source.k
    return source, None


@dataclass(frozen=True)
class LatticeSpec:
    kind: LatticeKind
    n: int
    distribution: WeightDistribution | None = None
    k: int | None = None
    h_coeffs: tuple[Fraction, ...] | None = None
    name: str = field(default="", compare=False)

    @classmethod
    def integer(cls, n: int) -> "LatticeSpec":
        if n < 1:
            raise ValueError("dimension must be positive")
        return cls(LatticeKind.INTEGER, n, name=f"Z{n}")

    @classmethod
    def construction_a(cls, source: WeightDistribution | BinaryLinearCode, name: str = "") -> "LatticeSpec":
        dist, _ = _distribution(source)
        _check_self_dual_distribution(dist)
        name = name or getattr(source, "name", "") or f"A({dist.n})"
        return cls(LatticeKind.CONSTRUCTION_A, dist.n, dist, dist.n // 2, name=name)

    @classmethod
    def scaled(cls, source: WeightDistribution | BinaryLinearCode, k: int | None = None,
               name: str = "") -> "LatticeSpec":
        dist, code_k = _distribution(source)
        k = code_k if k is None else k
        if k is None:
            k = dist.k
        if sum(dist.counts) != 2**k:
            raise ValueError(f"distribution does not sum to 2^{k}")
        name = name or getattr(source, "name", "") or f"C+2Z({dist.n},{k})"
        return cls(LatticeKind.SCALED, dist.n, dist, k, name=name)

    @classmethod
    def explicit_h(cls, n: int, h_coeffs: Sequence, name: str = "") -> "LatticeSpec":
        h = tuple(Fraction(c) for c in h_coeffs)
        if sum(h) != 1:
            raise ValueError("h-basis coefficients must sum to 1")
        return cls(LatticeKind.EXPLICIT_H, n, h_coeffs=h, name=name or f"h({n})")

    @classmethod
    def ensemble(cls, n: int) -> "LatticeSpec":
        EnsembleSpec(n)
        return cls(LatticeKind.ENSEMBLE, n, k=n // 2, name=f"ensemble{n}")

    @property
    def volume(self) -> int:
        """Volume of the fundamental region; 2^(n-k) for C + 2Z^n, 1 otherwise."""
        if self.kind is LatticeKind.SCALED:
            return 2 ** (self.n - self.k)
        return 1

    @property
    def label(self) -> str:
        return self.name or self.kind.value


def _check_self_dual_distribution(dist: WeightDistribution) -> None:
    if dist.n % 2:
        raise ValueError("self-dual codes have even length")
    if not dist.is_even:
        raise OddWeightError("distribution has odd-weight codewords")
    if sum(dist.counts) != 2 ** (dist.n // 2):
        raise ValueError(f"distribution sums to {sum(dist.counts)}, expected 2^{dist.n // 2}")


@lru_cache(maxsize=256)
def _ratio_coeffs(dist: WeightDistribution) -> tuple[Fraction, ...]:
    k = dist.n // 2
    total: list[Fraction] = []
    for w2 in range(0, dist.n + 1, 2):
        count = dist.counts[w2]
        if count:
            w = w2 // 2
            term = poly.mul(poly.binomial_power(1, 1, k - w), poly.binomial_power(1, -1, w))
            total = poly.add(total, poly.scale(term, count))
    return tuple(poly.scale(total, Fraction(1, 2**k)))


def ratio_poly_from_code(dist: WeightDistribution) -> RatioPolynomial:
    """Exact ratio polynomial f_C(t)/2^k of a self-dual distribution."""
    _check_self_dual_distribution(dist)
    return RatioPolynomial(_ratio_coeffs(dist), dist.n)


def decompose_h_basis(p: RatioPolynomial) -> RatioPolynomial:
    """Write p as sum_{r=0..l} a_r h(t)^r exactly, l = floor(n/8)."""
    ell = p.ell
    coeffs = list(p.coeffs_t)
    if any(c for c in coeffs[1::2]):
        raise NotInSpan("polynomial has odd powers of t")
    if poly.degree(coeffs) > 4 * ell:
        raise NotInSpan(f"degree {poly.degree(coeffs)} exceeds 4*l = {4 * ell}")
    # work in u = t^2, where h = u^2 - u + 1
    target = coeffs[0::2] + [Fraction(0)] * (2 * ell + 1)
    target = target[: 2 * ell + 1]
    base = [Fraction(1), Fraction(-1), Fraction(1)]
    columns = []
    for r in range(ell + 1):
        col = poly.power(base, r) + [Fraction(0)] * (2 * ell + 1)
        columns.append(col[: 2 * ell + 1])
    matrix = [[columns[r][i] for r in range(ell + 1)] for i in range(2 * ell + 1)]
    try:
        a = solve_exact(matrix, target)
    except InconsistentSystem as exc:
        raise NotInSpan(str(exc)) from exc
    if sum(a) != 1:
        raise NotInSpan(f"h-basis coefficients sum to {sum(a)}, not 1")
    return RatioPolynomial(p.coeffs_t, p.n, tuple(a))


def ratio_poly_for(spec: LatticeSpec) -> RatioPolynomial | None:
    """Exact ratio polynomial of a spec when one exists (None for scaled and ensemble)."""
    if spec.kind is LatticeKind.INTEGER:
        return RatioPolynomial((Fraction(1),), spec.n, (Fraction(1),))
    if spec.kind is LatticeKind.CONSTRUCTION_A:
        return ratio_poly_from_code(spec.distribution)
    if spec.kind is LatticeKind.EXPLICIT_H:
        return RatioPolynomial.from_h_coeffs(spec.n, spec.h_coeffs)
    return None


def weight_enumerator_eval(dist: WeightDistribution, x: PrecisionReal, y: PrecisionReal) -> PrecisionReal:
    """W(x, y) = sum_w A_w x^(n-w) y^w with error propagation."""
    n = dist.n
    total = PrecisionReal.exact(0)
    for w, count in enumerate(dist.counts):
        if count:
            total = total + (x ** (n - w)) * (y**w) * count
    return total


def _half_pair(v: PrecisionReal) -> tuple[PrecisionReal, PrecisionReal]:
    """((1 + v)/2, (1 - v)/2)."""
    return (v + 1) * Fraction(1, 2), (1 - v) * Fraction(1, 2)


def _construction_a_ratio(dist: WeightDistribution, t: PrecisionReal) -> PrecisionReal:
    # positive-term form: every summand is non-negative on [0, 1]
    k = dist.n // 2
    plus, minus = _half_pair(t)
    total = PrecisionReal.exact(0)
    for w2 in range(0, dist.n + 1, 2):
        count = dist.counts[w2]
        if count:
            w = w2 // 2
            total = total + (plus ** (k - w)) * (minus**w) * count
    return total


def ratio_eval(spec: LatticeSpec, tau, tol=_DEFAULT_TOL) -> PrecisionReal:
    """Delta(tau) = Theta(i tau) / theta_3(i tau)^n, with error at most tol."""
    if spec.kind is LatticeKind.INTEGER:
        return PrecisionReal.exact(1)
    if spec.kind is LatticeKind.SCALED:
        return scaled_ratio_eval(spec.distribution, spec.k, tau, tol)

    def compute(inner):
        t = t_of_tau(tau, inner)
        with workdps():
            if spec.kind is LatticeKind.CONSTRUCTION_A:
                return _construction_a_ratio(spec.distribution, t)
            if spec.kind is LatticeKind.EXPLICIT_H:
                h = h_eval_unchecked(t)
                total = PrecisionReal.exact(0)
                for c in reversed(spec.h_coeffs):
                    total = total * h + c
                return total
            return ensemble_ratio(EnsembleSpec(spec.n), t, mpf(1))

    return refine(compute, tol)


def scaled_ratio_eval(dist: WeightDistribution, k: int, tau, tol=_DEFAULT_TOL) -> PrecisionReal:
    """W_C(1 + s, 1 - s) / 2^n for C + 2Z^n, an [n, k] code; lies in [2^-(n-k), 1]."""
    if sum(dist.counts) != 2**k:
        raise ValueError(f"distribution does not sum to 2^{k}")

    def compute(inner):
        s = s_of_tau(tau, inner)
        with workdps():
            plus, minus = _half_pair(s)
            return weight_enumerator_eval(dist, plus, minus)

    out = refine(compute, tol)
    with workdps():
        if out.hi < mpf(2) ** (k - dist.n) or out.lo > 1:
            raise ArithmeticError("scaled ratio left [2^-(n-k), 1]; the distribution is inconsistent")
    return out


def theta_eval(spec: LatticeSpec, tau, tol=_DEFAULT_TOL) -> PrecisionReal:
    """Theta_Lambda(i tau) with error at most tol.

    Construction A lattices go through W_C(theta_3(2z), theta_2(2z)) and
    C + 2Z^n through W_C(theta_3(4z), theta_2(4z)), independently of the
    t-polynomial route used by :func:`ratio_eval`.
    """
    n = spec.n
    with workdps():
        tau_mp = mpf(tau)
    if spec.kind is LatticeKind.INTEGER:
        return refine(lambda inner: theta3(tau_mp, inner) ** n, tol)
    if spec.kind in (LatticeKind.CONSTRUCTION_A, LatticeKind.SCALED):
        scale = 2 if spec.kind is LatticeKind.CONSTRUCTION_A else 4

        def compute(inner):
            x = theta3(scale * tau_mp, inner)
            y = theta2(scale * tau_mp, inner)
            with workdps():
                return weight_enumerator_eval(spec.distribution, x, y)

        return refine(compute, tol)

    def compute(inner):
        base = theta3(tau_mp, inner) ** n
        with workdps():
            return base * ratio_eval(spec, tau_mp, inner)

    return refine(compute, tol)
