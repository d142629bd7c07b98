import logging
import math
import random
from dataclasses import dataclass
from itertools import combinations

from src.config_settings import MUTATION_SAMPLE_CAP, RANDOM_SEED
from src.errors import AlphabetError, ConstructionVerificationError, InputError
from src.helpers.cyclic import ExponentWord, build_cyclic
from src.helpers.encounter import encounters
from src.helpers.formulas import Formula, known_index_bounds, make_phi
from src.helpers.words import (
    TERNARY,
    Alphabet,
    Word,
    apply_morphism,
    is_square_free,
    iterate_morphism,
    morphism,
    square_free_stream,
)

logger = logging.getLogger(__name__)

F_PHI1 = {"0": "11112122", "1": "12112222", "2": "21111222"}
RHO = {"1": "22", "2": "21"}

EXPONENT_DIGITS = Alphabet("12")
MUTATED_DIGITS = Alphabet("123")
G_ALPHABET = Alphabet("012ab")
G_PRIME_ALPHABET = Alphabet("012abcd")
CODE_WORD_LENGTH = 8


@dataclass(frozen=True)
class Provenance:
    base_word: str
    steps: tuple[str, ...]


@dataclass(frozen=True)
class ConstructionOutput:
    k: int
    word: Word
    target_formula: Formula
    alphabet_size: int
    provenance: Provenance


def _require_ternary(v: Word) -> None:
    stray = set(v.text) - set(TERNARY.chars)
    if stray:
        raise AlphabetError(f"Expected a word over 012, found {''.join(sorted(stray))!r}")


def _require_ternary_square_free(v: Word) -> None:
    _require_ternary(v)
    if not is_square_free(v):
        raise InputError(f"Base word {v.text!r} is not square-free")


def f_phi1(v: Word) -> Word:
    _require_ternary_square_free(v)
    return apply_morphism(morphism(F_PHI1, EXPONENT_DIGITS), v)


def code_words(fv: Word) -> list[str]:
    text = fv.text
    return [text[i : i + CODE_WORD_LENGTH] for i in range(0, len(text), CODE_WORD_LENGTH)]


def f_code_word_report(v: Word) -> list[str]:
    """
    Code words of f(v), checked to read ??11??22. Raises when one does not,
    or when the images of f lose distinct prefixes or distinct 5th/6th pairs.
    """
    images = list(F_PHI1.values())
    if len({image[:2] for image in images}) != len(images) or len(
        {image[4:6] for image in images}
    ) != len(images):
        raise ConstructionVerificationError("Code words of f are not distinguishable")
    fv = f_phi1(v)
    words = code_words(fv)
    for index, code in enumerate(words):
        if len(code) != CODE_WORD_LENGTH or code[2:4] != "11" or code[6:8] != "22":
            raise ConstructionVerificationError(
                f"Code word {index} ({code!r}) breaks the ??11??22 shape"
            )
    return words


def rho_prefix(iterations: int) -> Word:
    if iterations < 0:
        raise InputError(f"Iterations must be non-negative, got {iterations}")
    return iterate_morphism(
        morphism(RHO, EXPONENT_DIGITS), Word("2", EXPONENT_DIGITS), iterations
    )


def _d(w: Word, power: int) -> Word:
    return apply_morphism(
        morphism({char: char * power for char in w.alphabet.chars}, w.alphabet), w
    )


def gdk(w: Word, k: int) -> Word:
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    _require_ternary(w)
    g = morphism({char: char + "ab" for char in TERNARY.chars}, G_ALPHABET)
    return apply_morphism(g, _d(Word(w.text, TERNARY), k + 1))


def g_prime_dk(w: Word, k: int = 1) -> Word:
    """g'(d_k(w)) with g': i -> iabcd. build_avoider uses k=1."""
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    _require_ternary(w)
    g_prime = morphism({char: char + "abcd" for char in TERNARY.chars}, G_PRIME_ALPHABET)
    return apply_morphism(g_prime, _d(Word(w.text, TERNARY), k + 1))


def g_prime_d2(w: Word) -> Word:
    # d_2 = i -> iii; the output encounters phi_5 through x -> 0abcd
    return g_prime_dk(w, 2)


def _fresh(u: Word, c: str) -> Alphabet:
    if len(c) != 1 or c in u.alphabet:
        raise AlphabetError(f"Inserted letter {c!r} must be a new single letter")
    return u.alphabet.extended(c)


def insert_periodic(u: Word, period: int, c: str) -> Word:
    if period < 1:
        raise InputError(f"Period must be positive, got {period}")
    alphabet = _fresh(u, c)
    pieces = []
    for start in range(0, len(u), period):
        block = u.text[start : start + period]
        pieces.append(block + c if len(block) == period else block)
    return Word("".join(pieces), alphabet)


def insert_after_b(u: Word, k: int, c: str, b: str = "b") -> Word:
    """Insert c after the t-th b whenever t mod k is 0 or 1."""
    if k < 2:
        raise InputError(f"k must be at least 2, got {k}")
    alphabet = _fresh(u, c)
    pieces = []
    seen = 0
    for char in u.text:
        pieces.append(char)
        if char == b:
            seen += 1
            if seen % k in (0, 1):
                pieces.append(c)
    return Word("".join(pieces), alphabet)


def c_window_counts(u: Word, window: int, c: str = "c") -> list[int]:
    """Count c in every window that stays `window` letters away from both ends."""
    if window < 1:
        raise InputError(f"Window must be positive, got {window}")
    text = u.text
    return [
        text[start : start + window].count(c)
        for start in range(window, len(text) - 2 * window + 1)
    ]


def mutate_2to3(
    u: Word,
    count: int,
    cap: int = MUTATION_SAMPLE_CAP,
    seed: int = RANDOM_SEED,
) -> tuple[Word, ...]:
    """
    Words obtained by turning `count` of the letters 2 in u into 3.

    All subsets in lexicographic order when there are at most `cap`,
    otherwise `cap` distinct subsets drawn with a seeded generator.
    """
    stray = set(u.text) - set(EXPONENT_DIGITS.chars)
    if stray:
        raise AlphabetError(f"Expected a word over 12, found {''.join(sorted(stray))!r}")
    positions = [index for index, char in enumerate(u.text) if char == "2"]
    if count < 0 or count > len(positions):
        raise InputError(f"Cannot mutate {count} of {len(positions)} letters 2")
    if cap < 1:
        raise InputError(f"Sample cap must be positive, got {cap}")

    if math.comb(len(positions), count) <= cap:
        subsets = list(combinations(positions, count))
    else:
        rng = random.Random(seed)
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < cap:
            chosen.add(tuple(sorted(rng.sample(positions, count))))
        subsets = sorted(chosen)
        logger.info("Sampled %d of %d mutations", cap, math.comb(len(positions), count))

    words = []
    for subset in subsets:
        chars = list(u.text)
        for index in subset:
            chars[index] = "3"
        words.append(Word("".join(chars), MUTATED_DIGITS))
    return tuple(words)


def _rho_exponents(base_len: int) -> tuple[Word, int]:
    iterations = 0
    word = rho_prefix(0)
    while len(word) < base_len:
        iterations += 1
        word = rho_prefix(iterations)
    return word[:base_len], iterations


def build_avoider(k: int, base_len: int) -> ConstructionOutput:
    """
    Build a word that avoids make_phi(k) over the smallest proven alphabet.

    1. It picks the construction for k and builds it from a base word of
       length `base_len`.
    2. It checks the word avoids the formula with the encounter engine.
    """
    if base_len < 1:
        raise InputError(f"Base length must be positive, got {base_len}")
    phi = make_phi(k)

    if k == 2:
        base, iterations = _rho_exponents(base_len)
        word = build_cyclic(5, ExponentWord.from_word(base, bound=3))
        steps = (f"rho^{iterations}(2)", f"prefix {base_len}", "cyclic m=5")
    else:
        base = square_free_stream(base_len)
        if k == 1:
            fv = f_phi1(base)
            f_code_word_report(base)
            word = build_cyclic(4, ExponentWord.from_word(fv, bound=2))
            steps = ("f", "cyclic m=4")
        elif k == 5:
            word = g_prime_dk(base, 1)
            steps = ("d1", "g'")
        elif k % 3 == 0:
            word = gdk(base, k // 3)
            steps = (f"d{k // 3}", "g")
        elif k % 3 == 1:
            inner = (k - 1) // 3
            word = insert_periodic(gdk(base, inner), 3 * inner, "c")
            steps = (f"d{inner}", "g", f"insert c every {3 * inner}")
        else:
            inner = (k - 2) // 3
            word = insert_after_b(gdk(base, inner), inner, "c")
            steps = (f"d{inner}", "g", f"insert c after b, period {inner}")

    expected = known_index_bounds(k).upper
    if word.alphabet.size != expected:
        raise ConstructionVerificationError(
            f"Construction for k={k} uses {word.alphabet.size} letters, expected {expected}"
        )
    witness = encounters(word, phi)
    if witness is not None:
        raise ConstructionVerificationError(
            f"Constructed word for k={k} encounters {phi} at {dict(witness.placements)}"
        )
    logger.info("Built avoider for k=%d, length %d", k, len(word))
    return ConstructionOutput(
        k=k,
        word=word,
        target_formula=phi,
        alphabet_size=word.alphabet.size,
        provenance=Provenance(base.text, steps),
    )
