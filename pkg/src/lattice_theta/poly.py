"""Dense univariate polynomials over Q with Sturm-sequence root counting.

A polynomial is a list of :class:`~fractions.Fraction` coefficients in
ascending powers; the zero polynomial is ``[]``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm
from typing import Sequence

Poly = list  # list[Fraction], ascending


def trim(p: Sequence) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def add(p: Sequence, q: Sequence) -> Poly:
    m = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(m)])


def scale(p: Sequence, c) -> Poly:
    return trim([Fraction(x) * c for x in p])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def power(p: Sequence, e: int) -> Poly:
    out: Poly = [Fraction(1)]
    base = trim(p)
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def binomial_power(a, b, e: int) -> Poly:
    """(a + b*t)^e expanded exactly."""
    return trim([Fraction(comb(e, i)) * Fraction(a) ** (e - i) * Fraction(b) ** i for i in range(e + 1)])


def evaluate(p: Sequence, x):
    """Horner evaluation; works for Fraction, mpf and PrecisionReal arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def compose(p: Sequence, q: Sequence) -> Poly:
    """p(q(t))."""
    out: Poly = []
    for c in reversed(p):
        out = add(mul(out, q), [c])
    return out


def divmod_poly(p: Sequence, d: Sequence) -> tuple[Poly, Poly]:
    p = trim(p)
    d = trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(d) + 1, 1)
    rem = list(p)
    lead = d[-1]
    while len(rem) >= len(d):
        c = rem[-1] / lead
        shift = len(rem) - len(d)
        quot[shift] = c
        for i, dc in enumerate(d):
            rem[shift + i] -= c * dc
        rem = trim(rem)
    return trim(quot), rem


def primitive(p: Sequence) -> Poly:
    """Positive rational multiple of p with coprime integer coefficients."""
    p = trim(p)
    if not p:
        return []
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [Fraction(v, g) for v in ints]


def poly_gcd(p: Sequence, q: Sequence) -> Poly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return []
    return scale(a, 1 / a[-1])


def squarefree(p: Sequence) -> Poly:
    """p / gcd(p, p'), normalised to be primitive."""
    p = trim(p)
    if len(p) <= 1:
        return primitive(p)
    g = poly_gcd(p, derivative(p))
    return primitive(divmod_poly(p, g)[0])


def sturm_chain(p: Sequence) -> list[Poly]:
    """Sturm sequence p, p', -rem(p, p'), ... with content removed at every step."""
    p0 = primitive(p)
    if not p0:
        return []
    chain = [p0]
    p1 = primitive(derivative(p0))
    while p1:
        chain.append(p1)
        r = divmod_poly(chain[-2], chain[-1])[1]
        p1 = primitive(scale(r, -1))
    return chain


def sign_changes(chain: Sequence[Sequence], x) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, Fraction(x))
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Sequence, a, b) -> int:
    """Number of distinct real roots of p in the open interval (a, b)."""
    p = squarefree(p)
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    a, b = Fraction(a), Fraction(b)
    at_b = 1 if evaluate(p, b) == 0 else 0
    # deflate a root at a so the left endpoint is regular
    if evaluate(p, a) == 0:
        p = divmod_poly(p, [-a, Fraction(1)])[0]
        at_b = 1 if evaluate(p, b) == 0 else 0
    chain = sturm_chain(p)
    return sign_changes(chain, a) - sign_changes(chain, b) - at_b


def isolate_roots(p: Sequence, a, b, width=Fraction(1, 2**40)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi), each holding exactly one root of p in (a, b).

    An interval with lo == hi is an exact rational root.
    """
    p = squarefree(p)
    a, b = Fraction(a), Fraction(b)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(p, lo, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            out.append((mid, mid))
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)
