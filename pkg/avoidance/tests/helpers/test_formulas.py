import pytest
from src.errors import FormulaParseError, InputError
from src.helpers.formulas import (
    FragmentSymbol,
    Pattern,
    Polarity,
    Variable,
    associated_pattern,
    format_formula,
    known_index_bounds,
    make_phi,
    parse_formula,
    reverse_formula,
)


def test_make_phi_shape():
    phi = make_phi(3)
    assert len(phi.fragments) == 4
    assert len(phi.variables) == 4
    assert phi.reversed_variables == {Variable("y1"), Variable("y2"), Variable("y3")}
    assert sorted(len(fragment) for fragment in phi.fragments) == [1, 1, 1, 5]


def test_make_phi_rejects_zero():
    with pytest.raises(InputError):
        make_phi(0)


@pytest.mark.parametrize(
    "k, text", [(1, "x y1 x . y1^R"), (2, "x y1 y2 x . y1^R . y2^R")]
)
def test_format_formula(k, text):
    assert format_formula(make_phi(k)) == text


def test_format_orders_variables_naturally():
    assert format_formula(make_phi(10)).endswith("y9^R . y10^R")


def test_parse_formula_matches_make_phi():
    assert parse_formula("x y1 x . y1^R") == make_phi(1)


def test_parse_formula_without_reversal():
    formula = parse_formula("a b . b a")
    assert len(formula.fragments) == 2
    assert formula.reversed_variables == frozenset()
    assert format_formula(parse_formula("x x")) == "x x"


@pytest.mark.parametrize(
    "text, message, position",
    [
        ("", "Empty formula", 0),
        ("x y . . y", "Empty fragment", 5),
        ("x^Q y", "Malformed reversal suffix", 1),
        ("x 1y", "Invalid symbol", 2),
    ],
)
def test_parse_formula_errors(text, message, position):
    with pytest.raises(FormulaParseError, match=message) as error:
        parse_formula(text)
    assert error.value.position == position


@pytest.mark.parametrize("k", range(1, 8))
def test_parse_format_round_trip(k):
    phi = make_phi(k)
    assert parse_formula(format_formula(phi)) == phi


def test_reverse_formula():
    mirrored = reverse_formula(make_phi(1))
    assert format_formula(mirrored) == "x^R y1^R x^R . y1"
    assert reverse_formula(mirrored) == make_phi(1)


def test_reversed_variables_subset_of_variables():
    formula = parse_formula("a b^R c . c^R a")
    assert formula.reversed_variables == {Variable("c")}
    assert formula.reversed_variables <= formula.variables


def test_associated_pattern():
    assert str(associated_pattern(make_phi(2))) == "x y1 y2 x z1 y1^R z2 y2^R"


def test_associated_pattern_skips_used_names():
    pattern = associated_pattern(parse_formula("z1 z1 . a"))
    assert str(pattern) == "z1 z1 z2 a"


def test_pattern_and_variable_validation():
    with pytest.raises(InputError):
        Pattern(())
    with pytest.raises(InputError):
        Variable("1x")
    symbol = FragmentSymbol(Variable("y"), Polarity.REVERSED)
    assert str(symbol) == "y^R"
    assert symbol.flipped() == FragmentSymbol(Variable("y"))


@pytest.mark.parametrize(
    "k, lower, upper",
    [(1, 4, 4), (2, 5, 5), (3, 5, 5), (4, 5, 6), (5, 5, 7), (6, 5, 5), (7, 4, 6), (8, 4, 6), (9, 4, 5)],
)
def test_known_index_bounds(k, lower, upper):
    bounds = known_index_bounds(k)
    assert (bounds.lower, bounds.upper) == (lower, upper)
    assert bounds.exact == (lower == upper)
