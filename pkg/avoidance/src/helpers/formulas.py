import re
from dataclasses import dataclass
from enum import Enum

from src.errors import FormulaParseError, InputError

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_SYMBOL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(\^R)?")
REVERSAL_MARK = "^R"


class Polarity(str, Enum):
    PLAIN = "plain"
    REVERSED = "reversed"


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        if not _IDENTIFIER.fullmatch(self.name):
            raise InputError(f"Invalid variable name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FragmentSymbol:
    var: Variable
    polarity: Polarity = Polarity.PLAIN

    @property
    def reversed(self) -> bool:
        return self.polarity is Polarity.REVERSED

    def flipped(self) -> "FragmentSymbol":
        polarity = Polarity.PLAIN if self.reversed else Polarity.REVERSED
        return FragmentSymbol(self.var, polarity)

    def __str__(self) -> str:
        return self.var.name + (REVERSAL_MARK if self.reversed else "")


@dataclass(frozen=True)
class Pattern:
    symbols: tuple[FragmentSymbol, ...]

    def __post_init__(self):
        if not self.symbols:
            raise InputError("A pattern needs at least one symbol")

    @property
    def variables(self) -> tuple[Variable, ...]:
        """Variables in order of first occurrence."""
        return tuple(dict.fromkeys(symbol.var for symbol in self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return " ".join(str(symbol) for symbol in self.symbols)


def _natural_key(name: str) -> tuple:
    # y2 sorts before y10
    return tuple(
        int(part) if index % 2 else part
        for index, part in enumerate(re.split(r"(\d+)", name))
    )


def _fragment_key(pattern: Pattern) -> tuple:
    return (
        -len(pattern),
        tuple((_natural_key(s.var.name), s.reversed) for s in pattern.symbols),
    )


@dataclass(frozen=True)
class Formula:
    fragments: frozenset[Pattern]

    def __post_init__(self):
        if not self.fragments:
            raise InputError("A formula needs at least one fragment")

    @classmethod
    def of(cls, *fragments: Pattern) -> "Formula":
        return cls(frozenset(fragments))

    @property
    def ordered_fragments(self) -> tuple[Pattern, ...]:
        """Longest first, then by variable names in natural order."""
        return tuple(sorted(self.fragments, key=_fragment_key))

    @property
    def variables(self) -> frozenset[Variable]:
        return frozenset(
            symbol.var for fragment in self.fragments for symbol in fragment.symbols
        )

    @property
    def reversed_variables(self) -> frozenset[Variable]:
        seen = {
            (symbol.var, symbol.reversed)
            for fragment in self.fragments
            for symbol in fragment.symbols
        }
        return frozenset(var for var, is_reversed in seen if is_reversed) & frozenset(
            var for var, is_reversed in seen if not is_reversed
        )

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class IndexBounds:
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def make_phi(k: int) -> Formula:
    if k < 1:
        raise InputError(f"The family starts at k = 1, got {k}")
    x = FragmentSymbol(Variable("x"))
    ys = [Variable(f"y{i}") for i in range(1, k + 1)]
    long_fragment = Pattern((x, *(FragmentSymbol(y) for y in ys), x))
    singletons = [Pattern((FragmentSymbol(y, Polarity.REVERSED),)) for y in ys]
    return Formula.of(long_fragment, *singletons)


def _parse_symbol(token: str, position: int) -> FragmentSymbol:
    match = _SYMBOL.fullmatch(token)
    if match:
        polarity = Polarity.REVERSED if match.group(2) else Polarity.PLAIN
        return FragmentSymbol(Variable(match.group(1)), polarity)
    name = _IDENTIFIER.match(token)
    if name and token[name.end()] == "^":
        raise FormulaParseError("Malformed reversal suffix", position + name.end())
    raise FormulaParseError(f"Invalid symbol {token!r}", position)


def parse_formula(text: str) -> Formula:
    """
    Parse dot notation: fragments separated by `.`, symbols by whitespace,
    a trailing `^R` marks a reversed symbol.
    """
    if not text.strip():
        raise FormulaParseError("Empty formula", 0)
    fragments = []
    offset = 0
    for chunk in text.split("."):
        symbols = [
            _parse_symbol(match.group(), offset + match.start())
            for match in re.finditer(r"\S+", chunk)
        ]
        if not symbols:
            raise FormulaParseError("Empty fragment", offset)
        fragments.append(Pattern(tuple(symbols)))
        offset += len(chunk) + 1
    return Formula(frozenset(fragments))


def format_formula(f: Formula) -> str:
    return " . ".join(str(fragment) for fragment in f.ordered_fragments)


def reverse_pattern(p: Pattern) -> Pattern:
    return Pattern(tuple(symbol.flipped() for symbol in reversed(p.symbols)))


def reverse_formula(f: Formula) -> Formula:
    """Mirror every fragment; w encounters f iff reverse(w) encounters this."""
    return Formula(frozenset(reverse_pattern(fragment) for fragment in f.fragments))


def associated_pattern(f: Formula) -> Pattern:
    used = {var.name for var in f.variables}
    fresh = (f"z{i}" for i in range(1, len(used) + len(f.fragments) + 1))
    separators = [name for name in fresh if name not in used]
    symbols: list[FragmentSymbol] = []
    for index, fragment in enumerate(f.ordered_fragments):
        if index:
            symbols.append(FragmentSymbol(Variable(separators[index - 1])))
        symbols.extend(fragment.symbols)
    return Pattern(tuple(symbols))


def known_index_bounds(k: int) -> IndexBounds:
    """Proven bounds on the avoidability index of make_phi(k)."""
    if k < 1:
        raise InputError(f"The family starts at k = 1, got {k}")
    if k == 1:
        return IndexBounds(4, 4)
    if k == 2:
        return IndexBounds(5, 5)
    lower = 5 if k <= 6 else 4
    if k % 3 == 0:
        upper = 5
    elif k == 5:
        upper = 7
    else:
        upper = 6
    return IndexBounds(lower, upper)
