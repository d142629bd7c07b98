from dataclasses import dataclass
from itertools import groupby
from typing import Mapping

from src.errors import AlphabetError, InputError, MorphismError


@dataclass(frozen=True)
class Letter:
    id: int
    display: str


@dataclass(frozen=True)
class Alphabet:
    """
    Ordered set of single printable characters.

    A letter's id is its index in `chars`, so two alphabets with the same
    characters in a different order are different alphabets.
    """

    chars: str

    def __post_init__(self):
        if len(set(self.chars)) != len(self.chars):
            raise AlphabetError(f"Duplicate letters in alphabet: {self.chars!r}")
        for char in self.chars:
            if not char.isprintable() or char.isspace():
                raise AlphabetError(f"Unusable alphabet letter: {char!r}")

    @classmethod
    def infer(cls, text: str) -> "Alphabet":
        return cls("".join(sorted(set(text))))

    @property
    def size(self) -> int:
        return len(self.chars)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(index, char) for index, char in enumerate(self.chars))

    def letter(self, char: str) -> Letter:
        index = self.chars.find(char)
        if len(char) != 1 or index < 0:
            raise AlphabetError(f"Letter {char!r} is not in alphabet {self.chars!r}")
        return Letter(index, char)

    def extended(self, chars: str) -> "Alphabet":
        return Alphabet(self.chars + chars)

    def __contains__(self, char: object) -> bool:
        return isinstance(char, str) and len(char) == 1 and char in self.chars

    def __str__(self) -> str:
        return self.chars


@dataclass(frozen=True)
class Word:
    text: str
    alphabet: Alphabet

    def __post_init__(self):
        stray = set(self.text) - set(self.alphabet.chars)
        if stray:
            raise AlphabetError(
                f"Letters {''.join(sorted(stray))!r} are not in alphabet "
                f"{self.alphabet.chars!r}"
            )

    @classmethod
    def parse(cls, text: str, alphabet: "Alphabet | str | None" = None) -> "Word":
        if alphabet is None:
            alphabet = Alphabet.infer(text)
        elif isinstance(alphabet, str):
            alphabet = Alphabet(alphabet)
        return cls(text, alphabet)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(self.alphabet.letter(char) for char in self.text)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(self.alphabet.chars.index(char) for char in self.text)

    def __len__(self) -> int:
        return len(self.text)

    def __str__(self) -> str:
        return self.text

    def __getitem__(self, index: slice) -> "Word":
        if not isinstance(index, slice):
            raise TypeError("Words are sliced, single letters come from .letters")
        return Word(self.text[index], self.alphabet)

    def __add__(self, other: "Word") -> "Word":
        _require_same_alphabet(self, other)
        return Word(self.text + other.text, self.alphabet)


TERNARY = Alphabet("012")

# fixed point of this morphism starting from 0 is square-free
_SQUARE_FREE_RULES = {"0": "012", "1": "02", "2": "1"}


def _require_same_alphabet(u: Word, w: Word) -> None:
    if u.alphabet != w.alphabet:
        raise AlphabetError(
            f"Words over different alphabets: {u.alphabet.chars!r} and "
            f"{w.alphabet.chars!r}"
        )


def reverse(w: Word) -> Word:
    return Word(w.text[::-1], w.alphabet)


def factor_positions(u: Word, w: Word) -> list[int]:
    """All start positions of u in w, ascending, overlaps included."""
    _require_same_alphabet(u, w)
    if not u.text:
        return list(range(len(w) + 1))
    positions = []
    position = w.text.find(u.text)
    while position >= 0:
        positions.append(position)
        position = w.text.find(u.text, position + 1)
    return positions


def is_factor(u: Word, w: Word) -> bool:
    _require_same_alphabet(u, w)
    return u.text in w.text


def find_square(w: Word) -> tuple[int, int] | None:
    """
    Return (start, half length) of the shortest, then leftmost, square in w.

    For each half length the letters w[i] and w[i + half] are compared once;
    a square is a run of `half` consecutive matches.
    """
    text = w.text
    for half in range(1, len(text) // 2 + 1):
        matches = "".join("1" if a == b else "0" for a, b in zip(text, text[half:]))
        start = matches.find("1" * half)
        if start >= 0:
            return start, half
    return None


def is_square_free(w: Word) -> bool:
    return find_square(w) is None


def square_free_stream(n: int) -> Word:
    if n < 1:
        raise InputError(f"Length must be positive, got {n}")
    text = "0"
    while len(text) < n:
        text = "".join(_SQUARE_FREE_RULES[char] for char in text)
    return Word(text[:n], TERNARY)


def morphism(rules: Mapping[str, str], target: Alphabet) -> dict[str, Word]:
    return {char: Word(image, target) for char, image in rules.items()}


def apply_morphism(rules: Mapping[str, Word], w: Word) -> Word:
    if not rules:
        raise MorphismError("Morphism has no rules")
    targets = {image.alphabet for image in rules.values()}
    if len(targets) != 1:
        raise MorphismError("Morphism images use more than one alphabet")
    for char, image in rules.items():
        if not image.text:
            raise MorphismError(f"Image of letter {char!r} is empty")
    pieces = []
    for char in w.text:
        image = rules.get(char)
        if image is None:
            raise MorphismError(f"No rule for letter {char!r}")
        pieces.append(image.text)
    return Word("".join(pieces), targets.pop())


def iterate_morphism(rules: Mapping[str, Word], w: Word, times: int) -> Word:
    for _ in range(times):
        w = apply_morphism(rules, w)
    return w


def is_reversible_in(u: Word, w: Word) -> bool:
    if not u.text:
        raise InputError("Reversibility is defined for nonempty words")
    return is_factor(u, w) and is_factor(reverse(u), w)


def run_length_encode(w: Word) -> list[tuple[Letter, int]]:
    return [
        (w.alphabet.letter(char), len(list(run))) for char, run in groupby(w.text)
    ]


def canonical_relabel(w: Word) -> Word:
    """Rename letters so they first occur in alphabet order (0, 1, 2, ...)."""
    mapping: dict[str, str] = {}
    for char in w.text:
        if char not in mapping:
            mapping[char] = w.alphabet.chars[len(mapping)]
    return Word("".join(mapping[char] for char in w.text), w.alphabet)
