import pytest
from hypothesis import given
from hypothesis import strategies as st
from src.errors import AlphabetError, InputError, MorphismError
from src.helpers.words import (
    TERNARY,
    Alphabet,
    Letter,
    Word,
    apply_morphism,
    canonical_relabel,
    factor_positions,
    find_square,
    is_factor,
    is_reversible_in,
    is_square_free,
    iterate_morphism,
    morphism,
    reverse,
    run_length_encode,
    square_free_stream,
)

TERNARY_TEXT = st.text(alphabet="012", min_size=1, max_size=14)


def test_alphabet_rejects_duplicates():
    with pytest.raises(AlphabetError):
        Alphabet("aba")


def test_alphabet_rejects_whitespace():
    with pytest.raises(AlphabetError):
        Alphabet("a b")


def test_alphabet_infer_sorts_distinct_letters():
    assert Alphabet.infer("banana").chars == "abn"


def test_alphabet_letter_lookup():
    alphabet = Alphabet("xyz")
    assert alphabet.letter("y") == Letter(1, "y")
    assert "z" in alphabet
    assert "w" not in alphabet
    with pytest.raises(AlphabetError):
        alphabet.letter("w")


def test_word_rejects_foreign_letters():
    with pytest.raises(AlphabetError, match="'2'"):
        Word("012", Alphabet("01"))


def test_word_parse_infers_alphabet():
    w = Word.parse("0110")
    assert w.alphabet.chars == "01"
    assert w.ids == (0, 1, 1, 0)


def test_word_concatenation_needs_same_alphabet():
    with pytest.raises(AlphabetError):
        Word.parse("ab") + Word.parse("abc")
    assert (Word("ab", TERNARY.extended("ab")) + Word("ba", TERNARY.extended("ab"))).text == "abba"


@pytest.mark.parametrize("text, expected", [("abc", "cba"), ("", ""), ("aa", "aa")])
def test_reverse(text, expected):
    assert reverse(Word(text, Alphabet("abc"))).text == expected


@given(st.text(alphabet="012", max_size=20))
def test_reverse_is_an_involution(text):
    w = Word(text, TERNARY)
    assert reverse(reverse(w)) == w


def test_factor_positions():
    ab = Alphabet("ab")
    assert factor_positions(Word("ba", ab), Word("abab", ab)) == [1]
    assert factor_positions(Word("aa", ab), Word("aaaa", ab)) == [0, 1, 2]
    assert factor_positions(Word("", ab), Word("ab", ab)) == [0, 1, 2]
    assert not is_factor(Word("aa", ab), Word("aba", ab))


def test_is_factor_needs_same_alphabet():
    with pytest.raises(AlphabetError):
        is_factor(Word.parse("a"), Word.parse("ab"))


@pytest.mark.parametrize(
    "text, square",
    [("010", None), ("0110", (1, 1)), ("0120212", None), ("abcbc", (1, 2)), ("aa", (0, 1))],
)
def test_find_square(text, square):
    assert find_square(Word.parse(text)) == square
    assert is_square_free(Word.parse(text)) == (square is None)


def _brute_square_free(text: str) -> bool:
    return not any(
        text[i : i + h] == text[i + h : i + 2 * h]
        for h in range(1, len(text) // 2 + 1)
        for i in range(len(text) - 2 * h + 1)
    )


@given(TERNARY_TEXT)
def test_find_square_matches_brute_force(text):
    assert is_square_free(Word(text, TERNARY)) == _brute_square_free(text)


@st.composite
def _nested_factors(draw):
    z = draw(st.text(alphabet="012", min_size=1, max_size=16))
    i = draw(st.integers(0, len(z)))
    j = draw(st.integers(i, len(z)))
    w = z[i:j]
    a = draw(st.integers(0, len(w)))
    b = draw(st.integers(a, len(w)))
    return w[a:b], w, z


@given(_nested_factors())
def test_is_factor_is_transitive(triple):
    u, w, z = (Word(text, TERNARY) for text in triple)
    assert is_factor(u, w)
    assert is_factor(w, z)
    assert is_factor(u, z)


@given(st.integers(0, 200), st.integers(1, 24))
def test_factors_of_square_free_words_are_square_free(start, length):
    text = square_free_stream(start + length).text[start:]
    assert is_square_free(Word(text, TERNARY))
    for i in range(len(text)):
        for j in range(i + 1, len(text) + 1):
            assert is_square_free(Word(text[i:j], TERNARY))


def test_square_free_stream_prefixes():
    assert square_free_stream(1).text == "0"
    assert square_free_stream(12).text == "012021012102"
    assert square_free_stream(5).text == square_free_stream(12).text[:5]


def test_square_free_stream_is_square_free():
    assert is_square_free(square_free_stream(200))


@pytest.mark.slow
def test_long_square_free_stream():
    stream = square_free_stream(5000)
    # prefixes of a square-free word are square-free
    assert is_square_free(stream)
    assert square_free_stream(4999).text == stream.text[:4999]


def test_square_free_stream_rejects_zero():
    with pytest.raises(InputError):
        square_free_stream(0)


def test_apply_morphism_examples():
    rho = morphism({"1": "22", "2": "21"}, Alphabet("12"))
    assert apply_morphism(rho, Word("2", Alphabet("12"))).text == "21"
    g = morphism({"0": "0ab", "1": "1ab", "2": "2ab"}, Alphabet("012ab"))
    assert apply_morphism(g, Word("01", TERNARY)).text == "0ab1ab"
    assert iterate_morphism(rho, Word("2", Alphabet("12")), 3).text == "21222121"


def test_apply_morphism_identity():
    identity = morphism({char: char for char in "012"}, TERNARY)
    assert apply_morphism(identity, Word("2101", TERNARY)) == Word("2101", TERNARY)


def test_apply_morphism_names_missing_letter():
    rules = morphism({"0": "1"}, TERNARY)
    with pytest.raises(MorphismError, match="'2'"):
        apply_morphism(rules, Word("02", TERNARY))


def test_apply_morphism_rejects_bad_rules():
    with pytest.raises(MorphismError):
        apply_morphism({}, Word("0", TERNARY))
    with pytest.raises(MorphismError):
        apply_morphism({"0": Word("", TERNARY)}, Word("0", TERNARY))
    mixed = {"0": Word("0", TERNARY), "1": Word("a", Alphabet("a"))}
    with pytest.raises(MorphismError):
        apply_morphism(mixed, Word("01", TERNARY))


@pytest.mark.parametrize(
    "u, w, expected",
    [("01", "0110", True), ("0", "012", True), ("01", "0101", True), ("02", "012", False)],
)
def test_is_reversible_in(u, w, expected):
    assert is_reversible_in(Word(u, TERNARY), Word(w, TERNARY)) is expected


def test_is_reversible_in_rejects_empty_word():
    with pytest.raises(InputError):
        is_reversible_in(Word("", TERNARY), Word("01", TERNARY))


def test_run_length_encode():
    assert run_length_encode(Word.parse("aabccc")) == [
        (Letter(0, "a"), 2),
        (Letter(1, "b"), 1),
        (Letter(2, "c"), 3),
    ]


def test_canonical_relabel():
    assert canonical_relabel(Word("2201", TERNARY)).text == "0012"
