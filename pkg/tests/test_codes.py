import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_theta.builtin import (
    EXAMPLE_32_DISTRIBUTION,
    builtin_codes,
    builtin_entries,
    builtin_entry,
)
from lattice_theta.codes import (
    BinaryLinearCode,
    CatalogParseError,
    CatalogValidationError,
    CodeCatalogEntry,
    CodeError,
    DimensionTooLarge,
    UnrealizableDistribution,
    WeightDistribution,
    extremal_type2_distribution,
    format_catalog,
    is_self_dual,
    load_catalog,
    load_catalog_dir,
    macwilliams_transform,
    parse_catalog,
    parse_generator,
    pure_double_circulant,
    ub_distribution,
    weight_distribution,
)

from oracles import brute_dual, distribution_of, macwilliams_sympy, span

HAMMING = builtin_codes()["hamming8"]
GOLAY = builtin_codes()["golay24"]


# weight_distribution -----------------------------------------------------------

def test_hamming_distribution():
    assert weight_distribution(HAMMING).counts == (1, 0, 0, 0, 14, 0, 0, 0, 1)
    assert distribution_of(span(HAMMING.rows()), 8) == [1, 0, 0, 0, 14, 0, 0, 0, 1]


def test_golay_distribution():
    d = weight_distribution(GOLAY)
    assert d.nonzero() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    assert list(d.counts) == distribution_of(span(GOLAY.rows()), 24)


def test_trivial_code():
    code = BinaryLinearCode.from_rows([], n=5)
    assert code.k == 0
    assert weight_distribution(code).counts == (1, 0, 0, 0, 0, 0)


def test_enumeration_limit():
    with pytest.raises(DimensionTooLarge):
        weight_distribution(GOLAY, limit=10)


def test_builtin_generators_match_subset_enumeration():
    for code in builtin_codes().values():
        if code.k <= 16:
            assert list(weight_distribution(code).counts) == distribution_of(span(code.rows()), code.n)


def test_dependent_rows_rejected():
    with pytest.raises(CodeError):
        BinaryLinearCode.from_rows(["1100", "0011", "1111"])


# MacWilliams ---------------------------------------------------------------------

def test_golay_is_macwilliams_fixed_point():
    d = weight_distribution(GOLAY)
    assert macwilliams_transform(d, 12) == d


def test_full_space_dual_is_zero_code():
    n = 6
    full = WeightDistribution(n, tuple(comb(n, w) for w in range(n + 1)))
    assert macwilliams_transform(full, n).counts == (1, 0, 0, 0, 0, 0, 0)


def test_hamming_dual_by_brute_force():
    d = weight_distribution(HAMMING)
    dual = distribution_of(brute_dual(HAMMING.rows(), 8), 8)
    assert list(macwilliams_transform(d, 4).counts) == dual == list(d.counts)


def test_unrealizable_distribution_detected():
    # sums to 2^2 but no [4,2] code has this enumerator
    bad = WeightDistribution(4, (1, 3, 0, 0, 0))
    with pytest.raises(UnrealizableDistribution):
        macwilliams_transform(bad, 2)


def test_macwilliams_matches_sympy_expansion():
    for name in ("hamming8", "typeI16", "golay24", "rm32", "ex32"):
        e = builtin_entry(name)
        assert list(macwilliams_transform(e.distribution, e.k).counts) == macwilliams_sympy(e.distribution.counts, e.k)


# self-duality ----------------------------------------------------------------------

def test_self_dual_examples():
    assert is_self_dual(HAMMING)
    assert is_self_dual(builtin_codes()["rep2"])
    for n in (3, 4, 7):
        parity = BinaryLinearCode.from_rows([[1 if j in (i, n - 1) else 0 for j in range(n)] for i in range(n - 1)])
        assert parity.k == n - 1
        assert not is_self_dual(parity)


def test_builtin_codes_are_self_dual():
    for code in builtin_codes().values():
        assert is_self_dual(code), code.name


# pure double circulant ----------------------------------------------------------------

def test_pdc_length_12_sweep_finds_self_dual_codes():
    found = [c for c in (pure_double_circulant(f"{i:06b}") for i in range(64)) if is_self_dual(c)]
    assert len(found) == 12
    assert all(c.n == 12 and c.k == 6 for c in found)


def test_pdc_all_zero_row_not_self_dual():
    for m in (2, 3, 6):
        assert not is_self_dual(pure_double_circulant([0] * m))


def test_pdc_n4_identity_block():
    code = pure_double_circulant([1, 0])
    assert code.rows() == [[1, 0, 1, 0], [0, 1, 0, 1]]
    assert is_self_dual(code)


# ub distribution ---------------------------------------------------------------------

def test_ub_distribution_examples():
    assert ub_distribution(4).counts == (1, 0, 2, 0, 1)
    assert ub_distribution(2).counts == (1, 0, 1)
    assert ub_distribution(8).counts == (1, 0, 4, 0, 6, 0, 4, 0, 1)
    with pytest.raises(CodeError):
        ub_distribution(5)


@given(st.integers(min_value=1, max_value=60))
def test_ub_sums_to_power_of_two(half):
    assert sum(ub_distribution(2 * half).counts) == 2**half


# catalog files -----------------------------------------------------------------------

def test_golay_catalog_roundtrip(tmp_path):
    entry = CodeCatalogEntry("golay24", 24, 12, "extended Golay", weight_distribution(GOLAY))
    path = tmp_path / "golay.txt"
    path.write_text(format_catalog([entry]))
    loaded = load_catalog(path)
    assert len(loaded) == 1
    assert loaded[0].distribution[8] == 759
    assert loaded[0].distribution == entry.distribution


def test_catalog_sum_violation(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("8 4 broken test\n0 1\n4 13\n8 1\n")
    with pytest.raises(CatalogValidationError):
        load_catalog(path)


def test_catalog_odd_weight_on_self_dual_length():
    with pytest.raises(CatalogValidationError):
        parse_catalog("4 2 odd test\n0 1\n1 2\n4 1\n")


def test_empty_catalog(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    assert load_catalog(path) == []
    assert load_catalog_dir(tmp_path / "missing") == []


def test_catalog_parse_error_has_line_number():
    with pytest.raises(CatalogParseError) as info:
        parse_catalog("# comment\n8 4 h test\n0 1\n4 fourteen\n")
    assert info.value.line == 4


def test_shipped_catalog_directory_loads():
    from pathlib import Path

    entries = load_catalog_dir(Path(__file__).parent.parent / "catalog")
    assert sorted(e.n for e in entries) == [72, 128, 168, 256]
    for e in entries:
        assert e.claims_self_dual
        assert macwilliams_transform(e.distribution, e.k) == e.distribution


def test_generator_text_format():
    code = parse_generator("# hamming\n11110000\n00111100\n00001111\n01010101\n", "h")
    assert weight_distribution(code) == weight_distribution(HAMMING)
    with pytest.raises(CatalogParseError):
        parse_generator("1102\n")


# extremal and built-in distributions ----------------------------------------------------

def test_extremal_distribution_small_lengths():
    assert extremal_type2_distribution(24) == weight_distribution(GOLAY)
    assert extremal_type2_distribution(32) == builtin_entry("rm32").distribution
    assert extremal_type2_distribution(48)[12] == 17296
    with pytest.raises(CodeError):
        extremal_type2_distribution(20)


def test_builtin_reference_distributions():
    assert builtin_entry("rm32").distribution.nonzero() == {
        0: 1, 8: 620, 12: 13888, 16: 36518, 20: 13888, 24: 620, 32: 1}
    assert builtin_entry("typeI16").distribution.nonzero() == {
        0: 1, 4: 12, 6: 64, 8: 102, 10: 64, 12: 12, 16: 1}
    assert macwilliams_transform(EXAMPLE_32_DISTRIBUTION, 16) == EXAMPLE_32_DISTRIBUTION
    assert {e.name for e in builtin_entries()} == {"rep2", "hamming8", "typeI16", "golay24", "rm32", "ex32"}


# properties -------------------------------------------------------------------------

def _random_code(rng: random.Random, n: int, k: int) -> BinaryLinearCode:
    while True:
        rows = [rng.getrandbits(n) for _ in range(k)]
        try:
            return BinaryLinearCode(n, tuple(rows))
        except CodeError:
            continue


def test_macwilliams_involution_on_100_random_codes():
    rng = random.Random(20240601)
    for _ in range(100):
        n = rng.randint(1, 20)
        k = rng.randint(0, min(n, 14))
        d = weight_distribution(_random_code(rng, n, k))
        dual = macwilliams_transform(d, k)
        assert sum(dual.counts) == 2 ** (n - k)
        assert macwilliams_transform(dual, n - k) == d


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_transform_agrees_with_enumerated_dual(data):
    n = data.draw(st.integers(min_value=1, max_value=12))
    k = data.draw(st.integers(min_value=0, max_value=n))
    seed = data.draw(st.integers(min_value=0, max_value=2**32))
    code = _random_code(random.Random(seed), n, k)
    assert weight_distribution(code.dual()) == macwilliams_transform(weight_distribution(code), k)
    assert list(weight_distribution(code.dual()).counts) == distribution_of(brute_dual(code.rows(), n), n)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**32))
def test_self_dual_codes_have_even_weights(m, seed):
    rng = random.Random(seed)
    code = pure_double_circulant([rng.randint(0, 1) for _ in range(m)])
    if is_self_dual(code):
        assert weight_distribution(code).is_even
