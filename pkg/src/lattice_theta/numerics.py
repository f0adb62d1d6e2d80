"""Extended-precision reals with error bounds and Jacobi theta functions on the
imaginary axis.

Every transcendental value in the package is produced here as a
:class:`PrecisionReal`: an mpmath value together with a guaranteed absolute
error bound. Theta functions are only evaluated at ``z = i*tau``.
"""

from __future__ import annotations

import functools
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Union

from mpmath import mp, mpf

__all__ = [
    "DEFAULT_DIGITS",
    "IndeterminateComparison",
    "PrecisionError",
    "ToleranceUnachievable",
    "PrecisionReal",
    "ThetaArgument",
    "precision",
    "working_digits",
    "workdps",
    "theta2",
    "theta3",
    "theta4",
    "theta3_scaled",
    "s_of_tau",
    "t_of_tau",
    "h_eval",
    "h_eval_unchecked",
    "theta3_upper_bound",
    "refine",
]

DEFAULT_DIGITS = 50

_DIGITS: ContextVar[int] = ContextVar("lattice_theta_digits", default=DEFAULT_DIGITS)

Number = Union[int, float, Fraction, mpf]


class IndeterminateComparison(ArithmeticError):
    """Two enclosures overlap, so their order cannot be decided."""


class PrecisionError(ArithmeticError):
    """An error bound could not be brought below the requested tolerance."""


class ToleranceUnachievable(PrecisionError):
    """The tolerance is below what the working precision can resolve."""


@contextmanager
def precision(digits: int) -> Iterator[None]:
    """Set the working precision (decimal digits) for the current context."""
    if digits < 15:
        raise ValueError("working precision must be at least 15 digits")
    token = _DIGITS.set(int(digits))
    try:
        yield
    finally:
        _DIGITS.reset(token)


def working_digits() -> int:
    return _DIGITS.get()


def workdps():
    """mpmath precision context matching :func:`working_digits`."""
    return mp.workdps(working_digits())


def _ulp_rel() -> mpf:
    return mp.ldexp(mpf(1), 1 - mp.prec)


def _rnd(v) -> mpf:
    return abs(v) * _ulp_rel()


def _to_mpf(x) -> tuple[mpf, mpf]:
    """Convert a plain number to (value, conversion error bound)."""
    if isinstance(x, PrecisionReal):
        return x.value, x.err
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        v = mpf(x)
        return v, (mpf(0) if x.bit_length() <= mp.prec else _rnd(v))
    if isinstance(x, Fraction):
        v = mpf(x.numerator) / x.denominator
        return v, (mpf(0) if x.denominator == 1 and x.numerator.bit_length() <= mp.prec else _rnd(v))
    if isinstance(x, float):
        return mpf(x), mpf(0)
    v = mpf(x)
    return v, mpf(0)


def _at_working_precision(method):
    """Run a PrecisionReal operation at the context's working precision."""

    @functools.wraps(method)
    def wrapper(*args):
        with workdps():
            return method(*args)

    return wrapper


@dataclass(frozen=True, eq=False)
class PrecisionReal:
    """A real number known to lie in ``[value - err, value + err]``.

    Arithmetic propagates the bound conservatively and adds the rounding
    error of the working precision. Order comparisons raise
    :class:`IndeterminateComparison` when the two enclosures overlap.
    """

    value: mpf
    err: mpf

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", mpf(self.value))
        err = mpf(self.err)
        if err < 0:
            raise ValueError("err_bound must be non-negative")
        object.__setattr__(self, "err", err)

    @classmethod
    def exact(cls, x: Number) -> "PrecisionReal":
        if isinstance(x, PrecisionReal):
            return x
        v, e = _to_mpf(x)
        return cls(v, e)

    @property
    def lo(self) -> mpf:
        return self.value - self.err

    @property
    def hi(self) -> mpf:
        return self.value + self.err

    def contains(self, x: Number) -> bool:
        v, e = _to_mpf(x)
        return self.lo - e <= v <= self.hi + e

    # arithmetic -------------------------------------------------------

    @_at_working_precision
    def __neg__(self) -> "PrecisionReal":
        return PrecisionReal(-self.value, self.err)

    def __abs__(self) -> "PrecisionReal":
        return PrecisionReal(abs(self.value), self.err)

    @_at_working_precision
    def __add__(self, other) -> "PrecisionReal":
        ov, oe = _to_mpf(other)
        v = self.value + ov
        return PrecisionReal(v, self.err + oe + _rnd(v))

    __radd__ = __add__

    @_at_working_precision
    def __sub__(self, other) -> "PrecisionReal":
        ov, oe = _to_mpf(other)
        v = self.value - ov
        return PrecisionReal(v, self.err + oe + _rnd(v))

    @_at_working_precision
    def __rsub__(self, other) -> "PrecisionReal":
        return (-self).__add__(other)

    @_at_working_precision
    def __mul__(self, other) -> "PrecisionReal":
        ov, oe = _to_mpf(other)
        v = self.value * ov
        e = abs(self.value) * oe + abs(ov) * self.err + self.err * oe
        return PrecisionReal(v, e + _rnd(v))

    __rmul__ = __mul__

    @_at_working_precision
    def __truediv__(self, other) -> "PrecisionReal":
        ov, oe = _to_mpf(other)
        if abs(ov) <= oe:
            raise PrecisionError("divisor enclosure contains zero")
        v = self.value / ov
        e = (abs(self.value) * oe + abs(ov) * self.err) / (abs(ov) * (abs(ov) - oe))
        return PrecisionReal(v, e + _rnd(v))

    @_at_working_precision
    def __rtruediv__(self, other) -> "PrecisionReal":
        return PrecisionReal.exact(other) / self

    @_at_working_precision
    def __pow__(self, n: int) -> "PrecisionReal":
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers are supported")
        if n == 0:
            return PrecisionReal(mpf(1), mpf(0))
        a = abs(self.value)
        v = self.value**n
        # |x^n - y^n| <= (|y| + e)^n - |y|^n for |x - y| <= e
        e = (a + self.err) ** n - a**n
        return PrecisionReal(v, e + (n + 1) * _rnd(v))

    @_at_working_precision
    def sqrt(self) -> "PrecisionReal":
        if self.hi < 0:
            raise ValueError("square root of a negative enclosure")
        x = max(self.value, mpf(0))
        v = mp.sqrt(x)
        lo = self.lo
        if lo > 0:
            e = self.err / (mp.sqrt(lo) + v)
        else:
            e = mp.sqrt(self.err + abs(self.value - x))
        return PrecisionReal(v, e + 2 * _rnd(v))

    # comparisons ------------------------------------------------------

    def _cmp(self, other) -> int:
        ov, oe = _to_mpf(other)
        if self.value + self.err < ov - oe:
            return -1
        if self.value - self.err > ov + oe:
            return 1
        raise IndeterminateComparison(
            f"enclosures overlap: {mp.nstr(self.value, 15)} +/- {mp.nstr(self.err, 3)} "
            f"vs {mp.nstr(ov, 15)} +/- {mp.nstr(oe, 3)}"
        )

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __le__(self, other) -> bool:
        return self._cmp(other) < 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) > 0

    def sign(self) -> int:
        if self.value == 0 and self.err == 0:
            return 0
        return self._cmp(0)

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"PrecisionReal({mp.nstr(self.value, 20)} +/- {mp.nstr(self.err, 3)})"

    def format(self, digits: int = 20) -> str:
        return f"{mp.nstr(self.value, digits)} +/- {mp.nstr(self.err, 3)}"


@dataclass(frozen=True)
class ThetaArgument:
    """The point ``z = i*tau`` on the imaginary axis; nome ``q = exp(-pi*tau)``."""

    tau: Number

    def __post_init__(self) -> None:
        if isinstance(self.tau, PrecisionReal):
            raise TypeError("tau must be an exact or floating number")
        if not self.tau > 0:
            raise ValueError(f"tau must be strictly positive, got {self.tau}")

    def mp_tau(self) -> mpf:
        return _to_mpf(self.tau)[0]

    @property
    def nome(self) -> mpf:
        return mp.exp(-mp.pi * self.mp_tau())


def _as_arg(arg) -> ThetaArgument:
    return arg if isinstance(arg, ThetaArgument) else ThetaArgument(arg)


def _check_tol(tol) -> mpf:
    tol = mpf(tol)
    if not tol > 0:
        raise ValueError("tol must be positive")
    return tol


def _theta_series(kind: int, tau: mpf, tol: mpf) -> PrecisionReal:
    """Direct q-series for tau >= 1 (q <= exp(-pi))."""
    pt = mp.pi * tau
    u = _ulp_rel()
    q = mp.exp(-pt)
    if kind == 2:
        total = mpf(0)
        v = 0
    else:
        total = mpf(1)
        v = 1
    rounding = mpf(0)
    while True:
        e = (mpf(2 * v + 1) / 2) ** 2 if kind == 2 else mpf(v * v)
        term = mp.exp(-pt * e)
        if term < tol / 4:
            if kind == 4:
                tail = 2 * term
            elif kind == 3:
                tail = 2 * term / (1 - q ** (2 * v + 1))
            else:
                tail = 2 * term / (1 - q ** (2 * v + 2))
            break
        signed = -term if (kind == 4 and v % 2) else term
        total += 2 * signed
        rounding += 2 * term * (pt * e + 8) * u + abs(total) * u
        v += 1
    err = tail + rounding + _rnd(total)
    if err > tol:
        raise ToleranceUnachievable(
            f"tol={mp.nstr(tol, 3)} is below the resolution of {working_digits()} digits"
        )
    return PrecisionReal(total, err)


# theta_j(i*tau) = tau^(-1/2) * theta_dual(j)(i/tau)
_MODULAR_PARTNER = {2: 4, 3: 3, 4: 2}


def _theta(kind: int, arg, tol) -> PrecisionReal:
    arg = _as_arg(arg)
    with workdps():
        tol = _check_tol(tol)
        tau = arg.mp_tau()
        if tau >= 1:
            return _theta_series(kind, tau, tol)
        root = mp.sqrt(tau)
        inner = _theta_series(_MODULAR_PARTNER[kind], 1 / tau, tol * root / 2)
        factor = PrecisionReal(1 / root, 2 * _rnd(1 / root))
        out = factor * inner
        if out.err > tol:
            raise ToleranceUnachievable(f"tol={mp.nstr(tol, 3)} not reachable at tau={mp.nstr(tau, 8)}")
        return out


def theta2(arg, tol=mpf("1e-30")) -> PrecisionReal:
    """theta_2(i*tau) = sum over v of q^((v+1/2)^2)."""
    return _theta(2, arg, tol)


def theta3(arg, tol=mpf("1e-30")) -> PrecisionReal:
    """theta_3(i*tau) = sum over v of q^(v^2); tau < 1 goes through tau -> 1/tau."""
    return _theta(3, arg, tol)


def theta4(arg, tol=mpf("1e-30")) -> PrecisionReal:
    """theta_4(i*tau) = sum over v of (-q)^(v^2)."""
    return _theta(4, arg, tol)


def theta3_scaled(arg, tol=mpf("1e-30")) -> PrecisionReal:
    """sqrt(tau) * theta_3(i*tau), which equals theta_3(i/tau).

    Used for flatness factors, where tau^(n/2) * theta_3^n would otherwise pass
    through very large intermediates.
    """
    arg = _as_arg(arg)
    with workdps():
        tol = _check_tol(tol)
        tau = arg.mp_tau()
        if tau < 1:
            return _theta_series(3, 1 / tau, tol)
        root = mp.sqrt(tau)
        out = PrecisionReal(root, 2 * _rnd(root)) * _theta_series(3, tau, tol / (2 * root))
        if out.err > tol:
            raise ToleranceUnachievable(f"tol={mp.nstr(tol, 3)} not reachable")
        return out


def refine(compute: Callable[[mpf], PrecisionReal], tol, *, first: float = 1e-2,
           step: float = 1e-6, attempts: int = 5) -> PrecisionReal:
    """Call ``compute(inner_tol)`` with shrinking inner tolerances until the
    result's error bound is at most ``tol``."""
    with workdps():
        tol = _check_tol(tol)
        inner = tol * mpf(first)
        last = None
        for _ in range(attempts):
            try:
                out = compute(inner)
            except ToleranceUnachievable:
                break
            if out.err <= tol:
                return out
            last = out
            inner *= mpf(step)
        detail = "" if last is None else f" (best bound {mp.nstr(last.err, 3)})"
        raise PrecisionError(f"could not reach tol={mp.nstr(tol, 3)}{detail}")


def s_of_tau(tau, tol=mpf("1e-30")) -> PrecisionReal:
    """s(tau) = theta_4(i*tau) / theta_3(i*tau), in [0, 1]."""
    arg = _as_arg(tau)

    def compute(inner):
        t = arg.mp_tau()
        if t < 1:
            # the tau^(-1/2) factors cancel
            return _theta_series(2, 1 / t, inner) / _theta_series(3, 1 / t, inner)
        return _theta_series(4, t, inner) / _theta_series(3, t, inner)

    return refine(compute, tol)


def t_of_tau(tau, tol=mpf("1e-30")) -> PrecisionReal:
    """t(tau) = theta_4^2 / theta_3^2 at i*tau; increasing from 0 to 1, t(1) = 1/sqrt(2)."""
    return refine(lambda inner: s_of_tau(tau, inner) ** 2, tol)


def h_eval_unchecked(t):
    """t^4 - t^2 + 1 written as (t^2 - 1/2)^2 + 3/4, for any argument type."""
    if isinstance(t, (int, Fraction)):
        t = Fraction(t)
        u = t * t - Fraction(1, 2)
        return u * u + Fraction(3, 4)
    if isinstance(t, PrecisionReal):
        u = t * t - Fraction(1, 2)
        return u * u + Fraction(3, 4)
    u = t * t - mpf(1) / 2
    return u * u + mpf(3) / 4


def h_eval(t):
    """h(t) = t^4 - t^2 + 1 on [0, 1]; the range there is [3/4, 1]."""
    v = t.value if isinstance(t, PrecisionReal) else t
    if not 0 <= v <= 1:
        raise ValueError(f"h_eval is defined on [0, 1], got {v}")
    return h_eval_unchecked(t)


def theta3_upper_bound(tau) -> PrecisionReal:
    """Closed-form upper bound tau^(-1/2) + exp(-(pi - 1)/tau) on theta_3(i*tau), 0 < tau < 1."""
    arg = _as_arg(tau)
    with workdps():
        t = arg.mp_tau()
        if not 0 < t < 1:
            raise ValueError("theta3_upper_bound needs 0 < tau < 1")
        a = 1 / mp.sqrt(t)
        x = (mp.pi - 1) / t
        b = mp.exp(-x)
        v = a + b
        return PrecisionReal(v, 2 * _rnd(a) + (x + 4) * _rnd(b) + _rnd(v))
