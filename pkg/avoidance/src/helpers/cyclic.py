import logging
import multiprocessing
from dataclasses import dataclass
from enum import Enum
from functools import partial
from itertools import product
from typing import Iterable, Iterator

from src.errors import ExponentError
from src.helpers.encounter import Witness, encounters
from src.helpers.formulas import make_phi
from src.helpers.words import Alphabet, Word, run_length_encode

logger = logging.getLogger(__name__)

CYCLIC_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class ExponentWord:
    """Block lengths of a cyclic word. `bound` of None means no upper bound."""

    exponents: tuple[int, ...]
    bound: int | None = None

    def __post_init__(self):
        if not self.exponents:
            raise ExponentError("An exponent word needs at least one exponent")
        for exponent in self.exponents:
            if exponent < 1:
                raise ExponentError(f"Exponents must be positive, got {exponent}")
            if self.bound is not None and exponent > self.bound:
                raise ExponentError(
                    f"Exponent {exponent} exceeds the bound {self.bound}"
                )

    @classmethod
    def parse(cls, text: str, bound: int | None = None) -> "ExponentWord":
        try:
            exponents = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ExponentError(f"Exponents must be comma-separated integers: {text!r}")
        return cls(exponents, bound)

    @classmethod
    def from_word(cls, w: Word, bound: int | None = None) -> "ExponentWord":
        """Read a word over digit letters (such as f(v) or a rho prefix) as exponents."""
        if not w.text.isdigit():
            raise ExponentError(f"Only digit letters can be exponents: {w.text!r}")
        return cls(tuple(int(char) for char in w.text), bound)

    def __len__(self) -> int:
        return len(self.exponents)

    def __str__(self) -> str:
        return ",".join(str(exponent) for exponent in self.exponents)


@dataclass(frozen=True)
class BadFactorWitness:
    start: int
    n: int
    j: int
    alphas: tuple[int, ...]


class InteriorRange(str, Enum):
    # x'_i = x''_i for i in {2, ..., n-1}
    PROOF = "proof"
    # x'_i = x''_i for i in {2, ..., n-2}
    STATEMENT = "statement"


class LemmaStatus(str, Enum):
    AGREE_AVOID = "agree_avoid"
    AGREE_ENCOUNTER = "agree_encounter"
    HARD_FAILURE = "hard_failure"
    BOUNDARY_INCONCLUSIVE = "boundary_inconclusive"


@dataclass(frozen=True)
class LemmaRow:
    word: ExponentWord
    bad_factor: BadFactorWitness | None
    encounter: Witness | None
    status: LemmaStatus


@dataclass(frozen=True)
class LemmaReport:
    k: int
    m: int
    rows: tuple[LemmaRow, ...]

    def count(self, status: LemmaStatus) -> int:
        return sum(1 for row in self.rows if row.status is status)

    @property
    def hard_failures(self) -> tuple[LemmaRow, ...]:
        return tuple(row for row in self.rows if row.status is LemmaStatus.HARD_FAILURE)

    def minimal_counterexample(self, status: LemmaStatus) -> LemmaRow | None:
        """Shortest, then lexicographically smallest, word with this status."""
        rows = [row for row in self.rows if row.status is status]
        if not rows:
            return None
        return min(rows, key=lambda row: (len(row.word), row.word.exponents))


def default_cyclic_alphabet(m: int) -> Alphabet:
    return Alphabet(CYCLIC_LETTERS[:m])


def build_cyclic(m: int, w: ExponentWord, alphabet: Alphabet | str | None = None) -> Word:
    if m < 2:
        raise ExponentError(f"A cyclic word needs m >= 2, got {m}")
    if alphabet is None:
        alphabet = default_cyclic_alphabet(m)
    elif isinstance(alphabet, str):
        alphabet = Alphabet(alphabet)
    if alphabet.size != m:
        raise ExponentError(f"Need {m} distinct letters, got {alphabet.chars!r}")
    chars = alphabet.chars
    text = "".join(chars[i % m] * exponent for i, exponent in enumerate(w.exponents))
    return Word(text, alphabet)


def block_offsets(w: ExponentWord) -> list[int]:
    offsets = [0]
    for exponent in w.exponents:
        offsets.append(offsets[-1] + exponent)
    return offsets


def recover_exponents(w: Word, bound: int | None = None) -> ExponentWord:
    return ExponentWord(tuple(length for _, length in run_length_encode(w)), bound)


def _check_lemma_arguments(w: ExponentWord, k: int, m: int) -> None:
    if k < 1:
        raise ExponentError(f"k must be positive, got {k}")
    if m < k + 2:
        raise ExponentError(f"The lemma needs m >= k + 2, got m={m}, k={k}")
    largest = max(w.exponents)
    if largest > k + 1:
        raise ExponentError(f"Exponent {largest} exceeds k + 1 = {k + 1}")


def find_bad_factor(
    w: ExponentWord,
    k: int,
    m: int,
    js: Iterable[int] | None = None,
    interior: InteriorRange = InteriorRange.PROOF,
) -> BadFactorWitness | None:
    """
    First factor x' a_1..a_j x'' of w, in (start, n, j) order, such that
    |x'| = |x''| = n with n = m - j (mod m), sum(a) >= k, x'_1 >= x''_1,
    x'_n <= x''_n and x' = x'' on the interior indices.
    """
    _check_lemma_arguments(w, k, m)
    middles = sorted(set(js)) if js is not None else list(range(1, k + 1))
    if not middles or middles[0] < 1 or middles[-1] > k:
        raise ExponentError(f"Middle lengths must lie in 1..{k}, got {middles}")
    trim = 1 if interior is InteriorRange.PROOF else 2

    exponents = w.exponents
    length = len(exponents)
    for start in range(length):
        n = 1
        while start + 2 * n + middles[0] <= length:
            for j in middles:
                stop = start + 2 * n + j
                if (n + j) % m or stop > length:
                    continue
                left = exponents[start : start + n]
                alphas = exponents[start + n : start + n + j]
                right = exponents[start + n + j : stop]
                if sum(alphas) < k:
                    continue
                if left[0] < right[0] or left[-1] > right[-1]:
                    continue
                if left[1 : n - trim] != right[1 : n - trim]:
                    continue
                return BadFactorWitness(start, n, j, alphas)
            n += 1
    return None


def all_exponent_words(bound: int, max_len: int) -> Iterator[ExponentWord]:
    for length in range(1, max_len + 1):
        for exponents in product(range(1, bound + 1), repeat=length):
            yield ExponentWord(exponents, bound)


def _report_row(w: ExponentWord, k: int, m: int) -> LemmaRow:
    bad_factor = find_bad_factor(w, k, m)
    encounter = encounters(build_cyclic(m, w), make_phi(k))
    if bad_factor and encounter:
        status = LemmaStatus.AGREE_ENCOUNTER
    elif bad_factor:
        status = LemmaStatus.HARD_FAILURE
    elif encounter:
        status = LemmaStatus.BOUNDARY_INCONCLUSIVE
    else:
        status = LemmaStatus.AGREE_AVOID
    return LemmaRow(w, bad_factor, encounter, status)


def lemma_equivalence_report(
    k: int, m: int, words: Iterable[ExponentWord], jobs: int = 1
) -> LemmaReport:
    """
    Compare the exponent-word criterion with a direct encounter search.

    1. It looks for a bad factor in every exponent word.
    2. It searches the finite cyclic word for an encounter of the formula.
    3. A bad factor without an encounter is a hard failure.
    """
    words = list(words)
    for w in words:
        _check_lemma_arguments(w, k, m)
    worker = partial(_report_row, k=k, m=m)
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            rows = pool.map(worker, words)
    else:
        rows = [worker(w) for w in words]
    report = LemmaReport(k, m, tuple(rows))
    logger.info(
        "Lemma report k=%d m=%d: %d words, %d hard failures",
        k,
        m,
        len(rows),
        len(report.hard_failures),
    )
    return report
