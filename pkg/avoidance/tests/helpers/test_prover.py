import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from src.errors import BudgetError, ExponentError, InputError
from src.helpers.cyclic import ExponentWord, build_cyclic
from src.helpers.encounter import avoids, validate_witness
from src.helpers.formulas import make_phi, parse_formula
from src.helpers.prover import (
    CensusTable,
    Verdict,
    VerdictKind,
    census,
    cyclic3_scan,
    growth_ratios,
    prove_unavoidable,
    search_alphabet,
)
from src.helpers.words import Word

EXPONENTS_40 = st.lists(st.integers(1, 3), min_size=40, max_size=40)
WORD_TEXT = st.text(alphabet="0123", min_size=1, max_size=10)

long_search = pytest.mark.skipif(
    not os.getenv("LONG_SEARCHES"), reason="set LONG_SEARCHES=1 to run"
)


def test_phi1_on_one_letter():
    verdict = prove_unavoidable(make_phi(1), 1, 10, 1000)
    assert verdict == Verdict(VerdictKind.UNAVOIDABLE, 2, 4, "00")


def test_phi1_on_two_letters_is_unavoidable():
    verdict = prove_unavoidable(make_phi(1), 2, 60, 100_000)
    assert verdict == Verdict(VerdictKind.UNAVOIDABLE, 4, 14, "0011")
    assert avoids(Word(verdict.example, search_alphabet(2)), make_phi(1))
    assert len(verdict.example) == verdict.max_depth


def test_budget_exhausted_counts_exactly():
    verdict = prove_unavoidable(make_phi(1), 3, 40, 5, split_depth=3)
    assert verdict == Verdict(VerdictKind.BUDGET_EXHAUSTED, 3, 5, "001")


def test_depth_budget_reached_gives_evidence():
    verdict = prove_unavoidable(make_phi(1), 1, 2, 1000)
    assert verdict == Verdict(VerdictKind.AVOIDER_EVIDENCE, 2, 3, "00")


def test_avoider_evidence_on_four_letters():
    verdict = prove_unavoidable(make_phi(1), 4, 12, 100_000)
    assert verdict.kind is VerdictKind.AVOIDER_EVIDENCE
    assert verdict.max_depth == 12
    assert avoids(Word(verdict.example, search_alphabet(4)), make_phi(1))


@pytest.mark.parametrize("depth, nodes", [(0, 10), (10, 0)])
def test_zero_budgets_are_rejected(depth, nodes):
    with pytest.raises(BudgetError):
        prove_unavoidable(make_phi(1), 2, depth, nodes)


def test_bad_search_options_are_rejected():
    with pytest.raises(InputError):
        prove_unavoidable(make_phi(1), 2, 10, 10, jobs=0)
    with pytest.raises(InputError):
        prove_unavoidable(make_phi(1), 2, 10, 10, split_depth=-1)
    with pytest.raises(InputError):
        search_alphabet(0)


@pytest.mark.parametrize("nodes", [7, 40, 100_000])
def test_verdict_does_not_depend_on_jobs(nodes):
    serial = prove_unavoidable(make_phi(1), 2, 60, nodes, jobs=1)
    parallel = prove_unavoidable(make_phi(1), 2, 60, nodes, jobs=2)
    assert serial == parallel


@pytest.mark.parametrize("split_depth", [0, 1, 2, 5])
def test_closed_tree_does_not_depend_on_split_depth(split_depth):
    reference = prove_unavoidable(make_phi(1), 2, 60, 100_000, split_depth=3)
    verdict = prove_unavoidable(make_phi(1), 2, 60, 100_000, split_depth=split_depth)
    assert (verdict.kind, verdict.max_depth, verdict.nodes_visited) == (
        reference.kind,
        reference.max_depth,
        reference.nodes_visited,
    )


def test_incremental_check_gives_the_same_verdict():
    for formula in (make_phi(1), parse_formula("x x"), make_phi(2)):
        full = prove_unavoidable(formula, 2, 30, 100_000, incremental=False)
        suffix = prove_unavoidable(formula, 2, 30, 100_000, incremental=True)
        assert full == suffix


@pytest.mark.slow
def test_phi1_on_three_letters_is_unavoidable():
    verdict = prove_unavoidable(make_phi(1), 3, 200, 10_000_000, incremental=True)
    assert verdict == Verdict(VerdictKind.UNAVOIDABLE, 14, 219, "01200112200120")
    assert verdict == prove_unavoidable(make_phi(1), 3, 200, 10_000_000)


@pytest.mark.slow
def test_avoider_evidence_at_depth_forty():
    verdict = prove_unavoidable(make_phi(1), 4, 40, 10_000_000, incremental=True)
    assert verdict.kind is VerdictKind.AVOIDER_EVIDENCE


@long_search
@pytest.mark.slow
@pytest.mark.long
@pytest.mark.parametrize("k", [2, 3])
def test_phi_on_four_letters(k):
    verdict = prove_unavoidable(
        make_phi(k), 4, 400, 50_000_000, jobs=4, incremental=True
    )
    assert verdict.kind in (VerdictKind.UNAVOIDABLE, VerdictKind.BUDGET_EXHAUSTED)
    assert avoids(Word(verdict.example, search_alphabet(4)), make_phi(k))


def test_census_of_squares_on_two_letters():
    table = census(parse_formula("x x"), 2, 4)
    assert table.counts == (1, 2, 2, 2, 0)
    assert table.rows == {0: 1, 1: 2, 2: 2, 3: 2, 4: 0}
    assert census(parse_formula("x x"), 2, 4, symmetry=False) == table


def test_census_with_and_without_symmetry():
    for split_depth in (0, 2, 10):
        assert census(make_phi(1), 3, 6, split_depth=split_depth) == census(
            make_phi(1), 3, 6, symmetry=False
        )


def test_census_closes_at_the_unavoidability_depth():
    verdict = prove_unavoidable(make_phi(1), 2, 60, 100_000)
    table = census(make_phi(1), 2, verdict.max_depth + 1)
    assert table.counts[verdict.max_depth] > 0
    assert table.counts[-1] == 0


def test_census_with_workers():
    assert census(make_phi(1), 3, 7, jobs=2, split_depth=2) == census(make_phi(1), 3, 7)


def test_census_rejects_negative_length():
    with pytest.raises(BudgetError):
        census(make_phi(1), 2, -1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_census_grows_with_the_alphabet(k):
    smaller = census(make_phi(1), k, 7)
    larger = census(make_phi(1), k + 1, 7)
    assert all(a <= b for a, b in zip(smaller.counts, larger.counts))


def test_census_counts_are_prefix_closed():
    table = census(make_phi(1), 3, 10)
    assert table.counts[0] == 1
    # every avoider of length n + 1 extends an avoider of length n
    assert all(nxt <= 3 * cur for cur, nxt in zip(table.counts, table.counts[1:]))


@given(WORD_TEXT)
def test_prefixes_of_avoiding_words_avoid(text):
    alphabet = search_alphabet(4)
    phi = make_phi(1)
    verdicts = [
        avoids(Word(text[:end], alphabet), phi) for end in range(1, len(text) + 1)
    ]
    assert verdicts == sorted(verdicts, reverse=True)


def test_growth_ratios():
    assert growth_ratios(CensusTable(2, (1, 2, 2, 2, 0))) == [2.0, 1.0, 1.0, 0.0]
    assert growth_ratios(CensusTable(2, (1, 2, 0, 0))) == [2.0, 0.0, None]


@pytest.mark.slow
def test_growth_on_four_letters():
    table = census(make_phi(1), 4, 12, incremental=True)
    assert all(count > 0 for count in table.counts)
    assert all(ratio >= 1.05 for ratio in growth_ratios(table)[9:])


def _scan_valid(k: int, w: ExponentWord, cap: int) -> dict[str, str]:
    witness = cyclic3_scan(k, w, cap)
    assert witness is not None
    word = build_cyclic(3, ExponentWord(w.exponents[:cap]), "012")
    assert validate_witness(word, make_phi(k), witness)
    return {var.name: image.text for var, image in witness.assignment.images.items()}


def test_scan_constant_word_shapes():
    ones = ExponentWord((1,) * 40)
    assert _scan_valid(2, ones, 40) == {"x": "0", "y1": "1", "y2": "2"}
    assert _scan_valid(3, ones, 40) == {"x": "012", "y1": "0", "y2": "1", "y3": "2"}
    assert _scan_valid(4, ones, 40) == {"x": "01", "y1": "2", "y2": "0", "y3": "1", "y4": "2"}


@pytest.mark.parametrize("k", range(1, 9))
def test_scan_constant_word(k):
    _scan_valid(k, ExponentWord((1,) * 40), 40)


@settings(max_examples=40, deadline=None)
@given(k=st.integers(1, 8), exponents=EXPONENTS_40)
def test_scan_random_words(k, exponents):
    _scan_valid(k, ExponentWord(tuple(exponents)), 40)


@pytest.mark.slow
@pytest.mark.parametrize("k", range(1, 9))
@settings(max_examples=200, deadline=None)
@given(exponents=EXPONENTS_40)
def test_scan_many_random_words(k, exponents):
    _scan_valid(k, ExponentWord(tuple(exponents)), 40)


def test_scan_rejects_empty_prefix():
    with pytest.raises(ExponentError):
        cyclic3_scan(2, ExponentWord((1, 1)), 0)
