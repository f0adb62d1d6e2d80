"""Codes and weight distributions shipped with the package.

Generators are built from their standard constructions, so the embedded
distributions can be re-derived by enumeration in the test suite.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .codes import (
    BinaryLinearCode,
    CodeCatalogEntry,
    WeightDistribution,
    pure_double_circulant,
    weight_distribution,
)

__all__ = [
    "repetition_code",
    "extended_hamming_code",
    "golay_code",
    "reed_muller_code",
    "type1_16_code",
    "EXAMPLE_32_DISTRIBUTION",
    "builtin_codes",
    "builtin_entries",
    "builtin_entry",
    "TABLE1_BUILTIN",
]

# first row of a pure double circulant self-dual [16,8,4] code with A_4 = 12
_TYPE1_16_ROW = "11101010"

# [32,16,8] Type I enumerator from the Conway-Sloane tables (x-power suppressed)
EXAMPLE_32_DISTRIBUTION = WeightDistribution.from_dict(32, {
    0: 1, 8: 364, 10: 2048, 12: 6720, 14: 14336, 16: 18598,
    18: 14336, 20: 6720, 22: 2048, 24: 364, 32: 1,
})


def repetition_code() -> BinaryLinearCode:
    return BinaryLinearCode.from_rows(["11"], "rep2")


def extended_hamming_code() -> BinaryLinearCode:
    rows = [
        "11110000",
        "00111100",
        "00001111",
        "01010101",
    ]
    return BinaryLinearCode.from_rows(rows, "hamming8")


def golay_code() -> BinaryLinearCode:
    """Extended binary Golay code from g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11."""
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]
    rows = []
    for shift in range(12):
        r = [0] * 23
        for i, b in enumerate(g):
            r[i + shift] = b
        rows.append(r + [sum(r) % 2])
    return BinaryLinearCode.from_rows(rows, "golay24")


def reed_muller_code(r: int, m: int) -> BinaryLinearCode:
    """RM(r, m): evaluations of all monomials of degree <= r on F_2^m."""
    points = range(1 << m)
    rows = []
    for deg in range(r + 1):
        for mono in combinations(range(m), deg):
            rows.append([int(all(p >> v & 1 for v in mono)) for p in points])
    return BinaryLinearCode.from_rows(rows, f"rm{r}_{m}")


def type1_16_code() -> BinaryLinearCode:
    return pure_double_circulant(_TYPE1_16_ROW, "typeI16")


def builtin_codes() -> dict[str, BinaryLinearCode]:
    rm = reed_muller_code(2, 5)
    rm = BinaryLinearCode(rm.n, rm.generator, "rm32")
    return {
        "rep2": repetition_code(),
        "hamming8": extended_hamming_code(),
        "typeI16": type1_16_code(),
        "golay24": golay_code(),
        "rm32": rm,
    }


_SOURCES = {
    "rep2": "[2,1] repetition code",
    "hamming8": "[8,4,4] extended Hamming code",
    "typeI16": f"[16,8,4] Type I pure double circulant, first row {_TYPE1_16_ROW}",
    "golay24": "[24,12,8] extended binary Golay code",
    "rm32": "[32,16,8] Reed-Muller RM(2,5), doubly even",
}


@lru_cache(maxsize=None)
def builtin_entries() -> tuple[CodeCatalogEntry, ...]:
    entries = []
    for name, code in builtin_codes().items():
        entries.append(CodeCatalogEntry(name, code.n, code.k, _SOURCES[name], weight_distribution(code)))
    entries.append(CodeCatalogEntry("ex32", 32, 16, "[32,16,8] Type I enumerator (Conway-Sloane)",
                                    EXAMPLE_32_DISTRIBUTION))
    return tuple(entries)


def builtin_entry(name: str) -> CodeCatalogEntry:
    for e in builtin_entries():
        if e.name == name:
            return e
    raise KeyError(f"no built-in code named {name!r}")


# lengths 8..32 of the secrecy table use these codes
TABLE1_BUILTIN = {8: "hamming8", 16: "typeI16", 24: "golay24", 32: "rm32"}
