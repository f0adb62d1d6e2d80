"""Binary linear codes, weight distributions and the weight-enumerator catalog.

Codewords are Python ints used as bit vectors: bit ``j`` is coordinate ``j``.
All counts are arbitrary-precision integers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ENUMERATION_LIMIT",
    "CodeError",
    "DimensionTooLarge",
    "UnrealizableDistribution",
    "CatalogParseError",
    "CatalogValidationError",
    "BinaryLinearCode",
    "WeightDistribution",
    "CodeCatalogEntry",
    "gf2_rank",
    "weight_distribution",
    "macwilliams_transform",
    "krawtchouk",
    "is_self_dual",
    "pure_double_circulant",
    "ub_distribution",
    "extremal_type2_distribution",
    "parse_generator",
    "read_generator",
    "parse_catalog",
    "load_catalog",
    "format_catalog",
    "load_catalog_dir",
]

# maximum dimension k for full codeword enumeration (2^k codewords)
ENUMERATION_LIMIT = 28


class CodeError(ValueError):
    pass


class DimensionTooLarge(CodeError):
    pass


class UnrealizableDistribution(CodeError):
    """A transform produced a non-integer or negative count."""


class CatalogParseError(CodeError):
    def __init__(self, message: str, line: int, source: str = "<catalog>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


class CatalogValidationError(CodeError):
    pass


def gf2_rank(rows: Iterable[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def _bits_to_int(bits: Sequence[int] | str) -> int:
    v = 0
    for j, b in enumerate(bits):
        b = int(b)
        if b not in (0, 1):
            raise CodeError(f"bit entries must be 0 or 1, got {b!r}")
        v |= b << j
    return v


@dataclass(frozen=True)
class BinaryLinearCode:
    """An [n, k] binary code given by a full-rank k x n generator matrix."""

    n: int
    generator: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise CodeError("code length must be positive")
        object.__setattr__(self, "generator", tuple(int(r) for r in self.generator))
        for r in self.generator:
            if r < 0 or r >> self.n:
                raise CodeError("generator row wider than the code length")
        if gf2_rank(self.generator) != len(self.generator):
            raise CodeError("generator rows are linearly dependent over GF(2)")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str], name: str = "",
                  n: int | None = None) -> "BinaryLinearCode":
        rows = list(rows)
        if n is None:
            if not rows:
                raise CodeError("an empty generator needs an explicit length")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise CodeError("generator rows have unequal lengths")
        return cls(n, tuple(_bits_to_int(r) for r in rows), name)

    @property
    def k(self) -> int:
        return len(self.generator)

    def rows(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.generator]

    def codewords(self) -> Iterator[int]:
        """All 2^k codewords in Gray-code order (one row added per step)."""
        v = 0
        yield v
        for i in range(1, 1 << self.k):
            v ^= self.generator[(i & -i).bit_length() - 1]
            yield v

    def dual(self) -> "BinaryLinearCode":
        """The dual code, from the reduced row echelon form of the generator."""
        n = self.n
        rows = list(self.generator)
        pivots: list[int] = []
        r = 0
        for c in range(n):
            p = next((i for i in range(r, len(rows)) if rows[i] >> c & 1), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i] >> c & 1:
                    rows[i] ^= rows[r]
            pivots.append(c)
            r += 1
        free = [c for c in range(n) if c not in pivots]
        dual_rows = []
        for f in free:
            v = 1 << f
            for i, c in enumerate(pivots):
                if rows[i] >> f & 1:
                    v |= 1 << c
            dual_rows.append(v)
        return BinaryLinearCode(n, tuple(dual_rows), f"{self.name}-dual" if self.name else "")

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"{label}[{self.n},{self.k}]"


@dataclass(frozen=True)
class WeightDistribution:
    """Exact counts A_0..A_n of codewords of each Hamming weight."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != self.n + 1:
            raise CodeError(f"expected {self.n + 1} counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise CodeError("weight counts must be non-negative")
        if counts[0] != 1:
            raise CodeError("A_0 must be 1")
        total = sum(counts)
        if total & (total - 1):
            raise CodeError(f"total {total} is not a power of two")

    @classmethod
    def from_dict(cls, n: int, counts: dict[int, int]) -> "WeightDistribution":
        a = [0] * (n + 1)
        for w, c in counts.items():
            a[w] = c
        return cls(n, tuple(a))

    @property
    def k(self) -> int:
        return sum(self.counts).bit_length() - 1

    @property
    def is_even(self) -> bool:
        return all(c == 0 for c in self.counts[1::2])

    @property
    def min_distance(self) -> int | None:
        return next((w for w in range(1, self.n + 1) if self.counts[w]), None)

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    def __getitem__(self, w: int) -> int:
        return self.counts[w]


@dataclass(frozen=True)
class CodeCatalogEntry:
    name: str
    n: int
    k: int
    source: str
    distribution: WeightDistribution

    def __post_init__(self) -> None:
        _validate_entry(self)

    @property
    def claims_self_dual(self) -> bool:
        return 2 * self.k == self.n


def _validate_entry(e: CodeCatalogEntry) -> None:
    d = e.distribution
    if d.n != e.n:
        raise CatalogValidationError(f"{e.name}: distribution length {d.n} != n={e.n}")
    if sum(d.counts) != 2**e.k:
        raise CatalogValidationError(f"{e.name}: sum of A_w is {sum(d.counts)}, expected 2^{e.k}")
    if d.counts[0] != 1:
        raise CatalogValidationError(f"{e.name}: A_0 must be 1")
    if e.claims_self_dual and not d.is_even:
        raise CatalogValidationError(f"{e.name}: self-dual length but odd weights present")


def weight_distribution(code: BinaryLinearCode, limit: int = ENUMERATION_LIMIT) -> WeightDistribution:
    """Weight distribution by full codeword enumeration (k <= limit)."""
    if code.k > limit:
        raise DimensionTooLarge(
            f"k={code.k} exceeds the enumeration limit {limit}; supply a catalog entry instead"
        )
    counts = [0] * (code.n + 1)
    for c in code.codewords():
        counts[c.bit_count()] += 1
    return WeightDistribution(code.n, tuple(counts))


def krawtchouk(j: int, w: int, n: int) -> int:
    return sum((-1) ** s * comb(w, s) * comb(n - w, j - s) for s in range(0, min(j, w) + 1))


def macwilliams_transform(dist: WeightDistribution, k: int) -> WeightDistribution:
    """Dual weight distribution via Krawtchouk polynomials:
    A'_j = 2^-k * sum_w A_w K_j(w)."""
    if sum(dist.counts) != 2**k:
        raise CodeError(f"distribution sums to {sum(dist.counts)}, not 2^{k}")
    n = dist.n
    out = []
    for j in range(n + 1):
        s = sum(a * krawtchouk(j, w, n) for w, a in enumerate(dist.counts) if a)
        if s % (1 << k) or s < 0:
            raise UnrealizableDistribution(
                f"dual count A'_{j} = {Fraction(s, 1 << k)} is not a non-negative integer"
            )
        out.append(s >> k)
    return WeightDistribution(n, tuple(out))


def is_self_dual(code: BinaryLinearCode) -> bool:
    if 2 * code.k != code.n:
        return False
    g = code.generator
    return all((a & b).bit_count() % 2 == 0 for i, a in enumerate(g) for b in g[i:])


def pure_double_circulant(first_row: Sequence[int] | str, name: str = "") -> BinaryLinearCode:
    """The [2m, m] code with generator [I | A], A the circulant with the given first row."""
    first = [int(b) for b in first_row]
    m = len(first)
    if m == 0:
        raise CodeError("first row must be non-empty")
    rows = []
    for i in range(m):
        circ = [first[(j - i) % m] for j in range(m)]
        rows.append([1 if c == i else 0 for c in range(m)] + circ)
    if not name:
        name = "pdc" + "".join(str(b) for b in first)
    return BinaryLinearCode.from_rows(rows, name)


def ub_distribution(n: int) -> WeightDistribution:
    """A_{2w} = binom(n/2, w), odd weights zero."""
    if n <= 0 or n % 2:
        raise CodeError("ub_distribution needs a positive even length")
    k = n // 2
    counts = [0] * (n + 1)
    for w in range(k + 1):
        counts[2 * w] = comb(k, w)
    return WeightDistribution(n, tuple(counts))


def _ipoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ipoly_pow(a: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = _ipoly_mul(out, a)
    return out


def extremal_type2_distribution(n: int) -> WeightDistribution:
    """Weight distribution forced on a doubly-even self-dual [n, n/2] code
    with minimum distance 4*floor(n/24) + 4.

    Uses Gleason's theorem: the enumerator is a combination of
    phi8^(n/8 - 3i) * xi24^i, where phi8 = x^8 + 14x^4y^4 + y^8 and
    xi24 = x^4y^4(x^4 - y^4)^4, and the coefficients are fixed by
    A_0 = 1 and A_4 = ... = A_{4 floor(n/24)} = 0. Whether a code attaining
    the distribution exists is a separate question.
    """
    if n <= 0 or n % 8:
        raise CodeError("doubly-even self-dual codes need n divisible by 8")
    m = n // 24
    phi8 = [1, 0, 0, 0, 14, 0, 0, 0, 1]
    xi24 = [0, 0, 0, 0] + _ipoly_pow([1, 0, 0, 0, -1], 4)
    basis = []
    for i in range(m + 1):
        b = _ipoly_mul(_ipoly_pow(phi8, n // 8 - 3 * i), _ipoly_pow(xi24, i))
        basis.append(b + [0] * (n + 1 - len(b)))
    coef: list[Fraction] = []
    for i in range(m + 1):
        target = 1 if i == 0 else 0
        acc = sum(coef[j] * basis[j][4 * i] for j in range(i))
        coef.append((Fraction(target) - acc) / basis[i][4 * i])
    counts = [sum(coef[j] * basis[j][w] for j in range(m + 1)) for w in range(n + 1)]
    if any(c.denominator != 1 or c < 0 for c in counts):
        raise CodeError(f"no valid extremal doubly-even distribution for n={n}")
    return WeightDistribution(n, tuple(int(c) for c in counts))


# text formats ------------------------------------------------------------

def parse_generator(text: str, name: str = "") -> BinaryLinearCode:
    """Bit-matrix text: one generator row per line, characters '0'/'1'."""
    rows = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise CatalogParseError("generator rows may only contain '0' and '1'", ln, name or "<generator>")
        rows.append(line)
    if not rows:
        raise CodeError("generator file has no rows")
    return BinaryLinearCode.from_rows(rows, name)


def read_generator(path: str | os.PathLike) -> BinaryLinearCode:
    p = Path(path)
    return parse_generator(p.read_text(), p.stem)


def parse_catalog(text: str, source: str = "<catalog>") -> list[CodeCatalogEntry]:
    """Parse catalog text.

    Each entry is a header line ``n k name source...`` followed by ``w count``
    lines for the nonzero counts. Blank lines and ``#`` comments are ignored.
    """
    entries: list[CodeCatalogEntry] = []
    header = None
    counts: dict[int, int] = {}

    def flush(line: int) -> None:
        if header is None:
            return
        n, k, name, src = header
        try:
            dist = WeightDistribution.from_dict(n, counts)
        except (CodeError, IndexError) as exc:
            raise CatalogValidationError(f"{source}: entry {name!r} ending at line {line}: {exc}") from exc
        entries.append(CodeCatalogEntry(name, n, k, src, dist))

    lines = text.splitlines()
    for ln, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) >= 3:
            flush(ln - 1)
            try:
                n, k = int(tok[0]), int(tok[1])
            except ValueError:
                raise CatalogParseError("header must start with integers n and k", ln, source) from None
            if n <= 0 or not 0 <= k <= n:
                raise CatalogParseError(f"invalid parameters [{n},{k}]", ln, source)
            header = (n, k, tok[2], " ".join(tok[3:]))
            counts = {}
        elif len(tok) == 2:
            if header is None:
                raise CatalogParseError("count line before any header", ln, source)
            try:
                w, c = int(tok[0]), int(tok[1])
            except ValueError:
                raise CatalogParseError("count line must be two integers 'w count'", ln, source) from None
            if not 0 <= w <= header[0]:
                raise CatalogParseError(f"weight {w} outside [0, {header[0]}]", ln, source)
            if w in counts:
                raise CatalogParseError(f"weight {w} listed twice", ln, source)
            counts[w] = c
        else:
            raise CatalogParseError("expected a header 'n k name source' or a line 'w count'", ln, source)
    flush(len(lines))
    return entries


def load_catalog(path: str | os.PathLike) -> list[CodeCatalogEntry]:
    p = Path(path)
    return parse_catalog(p.read_text(), str(p))


def load_catalog_dir(path: str | os.PathLike) -> list[CodeCatalogEntry]:
    """All entries from ``*.txt`` files in a directory (missing directory -> empty)."""
    p = Path(path)
    if not p.is_dir():
        return []
    out: list[CodeCatalogEntry] = []
    for f in sorted(p.glob("*.txt")):
        out.extend(load_catalog(f))
    return out


def format_catalog(entries: Iterable[CodeCatalogEntry]) -> str:
    chunks = []
    for e in entries:
        lines = [f"{e.n} {e.k} {e.name} {e.source}".rstrip()]
        lines += [f"{w} {c}" for w, c in e.distribution.nonzero().items()]
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + ("\n" if chunks else "")
