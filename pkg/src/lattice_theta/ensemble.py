"""Average behaviour of Construction A lattices over random self-dual codes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from .criteria import DEFAULT_MARGIN, UShapeCertificate, ushape_sampled
from .numerics import PrecisionError, PrecisionReal, workdps

__all__ = [
    "EnsembleSpec",
    "expected_weight_enumerator",
    "ensemble_ratio",
    "ensemble_min_value",
    "ensemble_ushape_check",
]


@dataclass(frozen=True)
class EnsembleSpec:
    """Uniformly random self-dual [n, n/2] code."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 4 or self.n % 2:
            raise ValueError("ensemble length must be even and at least 4")

    @property
    def k(self) -> int:
        return self.n // 2


def expected_weight_enumerator(spec: EnsembleSpec) -> tuple[Fraction, ...]:
    """Expected counts E[A_w]; weights 0 and n are certain, even weights
    2..n-2 are binom(n, w) / (2^(k-1) + 1)."""
    n, k = spec.n, spec.k
    scale = Fraction(1, 2 ** (k - 1) + 1)
    out = [Fraction(0)] * (n + 1)
    out[0] = out[n] = Fraction(1)
    for w in range(1, k):
        out[2 * w] = comb(n, 2 * w) * scale
    return tuple(out)


def ensemble_ratio(spec: EnsembleSpec, t, tol=mpf("1e-30")) -> PrecisionReal:
    """Expected theta series ratio as a function of t in [0, 1]:

        c * [(1+t)^k + (1-t)^k + (1+r)^k + (1-r)^k] / 2^k,
        r = sqrt(1 - t^2),  c = 2^(k-1) / (2^(k-1) + 1).
    """
    k = spec.k
    with workdps():
        t = PrecisionReal.exact(t)
        if t.hi < 0 or t.lo > 1:
            raise ValueError("ensemble_ratio needs t in [0, 1]")
        tv = min(max(t.value, mpf(0)), mpf(1))
        r = mp.sqrt(1 - tv * tv)
        one_minus_r = tv * tv / (1 + r)
        half = mpf(1) / 2
        s = ((1 + tv) * half) ** k + ((1 - tv) * half) ** k + ((1 + r) * half) ** k + (one_minus_r * half) ** k
        c = mpf(2 ** (k - 1)) / (2 ** (k - 1) + 1)
        value = c * s
        u = mp.ldexp(mpf(1), 1 - mp.prec)
        rounding = 4 * (k + 12) * u * value
        # |d/dt| <= k for both pairs (the r-pair is a polynomial in 1 - t^2)
        out = PrecisionReal(value, rounding + 2 * k * t.err)
        if out.err > mpf(tol):
            raise PrecisionError(f"ensemble ratio error {mp.nstr(out.err, 3)} exceeds tol")
        return out


def ensemble_min_value(spec: EnsembleSpec) -> PrecisionReal:
    """((sqrt2 - 1)^k + (sqrt2 + 1)^k) / (2^(k/2) (1 + 2^(k-1))), the value at t = 1/sqrt(2)."""
    k = spec.k
    with workdps():
        r2 = mp.sqrt(2)
        v = ((r2 - 1) ** k + (r2 + 1) ** k) / (r2**k * (1 + 2 ** (k - 1)))
        u = mp.ldexp(mpf(1), 1 - mp.prec)
        return PrecisionReal(v, 4 * (k + 8) * u * v)


def ensemble_ushape_check(spec: EnsembleSpec, grid_size: int = 1001,
                          margin=DEFAULT_MARGIN) -> UShapeCertificate:
    """Sampled U-shape certificate for the expected ratio on [0, 1] around 1/sqrt(2)."""
    if grid_size < 1001:
        raise ValueError("grid_size must be at least 1001")
    return ushape_sampled(lambda t: ensemble_ratio(spec, t).value, grid_size, margin)
