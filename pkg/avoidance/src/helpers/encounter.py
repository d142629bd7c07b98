import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping

from src.errors import InputError, MissingVariableError
from src.helpers.formulas import (
    Formula,
    FragmentSymbol,
    Pattern,
    Variable,
    reverse_formula,
    reverse_pattern,
)
from src.helpers.words import Word, reverse

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Assignment:
    """
    Non-erasing morphism on variables. Images of reversed symbols are never
    stored, they are computed from the plain image.
    """

    images: Mapping[Variable, Word]

    def __post_init__(self):
        for var, image in self.images.items():
            if not image.text:
                raise InputError(f"Image of variable {var.name!r} is empty")

    def image(self, symbol: FragmentSymbol) -> Word:
        image = self.images.get(symbol.var)
        if image is None:
            raise MissingVariableError(f"No image for variable {symbol.var.name!r}")
        return reverse(image) if symbol.reversed else image


@dataclass(frozen=True)
class Witness:
    assignment: Assignment
    placements: Mapping[Pattern, int]


def instantiate(p: Pattern, a: Assignment) -> Word:
    pieces = [a.image(symbol) for symbol in p.symbols]
    result = pieces[0]
    for piece in pieces[1:]:
        result = result + piece
    return result


def validate_witness(w: Word, f: Formula, witness: Witness) -> bool:
    for fragment in f.fragments:
        position = witness.placements.get(fragment)
        if position is None or position < 0:
            return False
        try:
            image = instantiate(fragment, witness.assignment)
        except MissingVariableError:
            return False
        if w.text[position : position + len(image)] != image.text:
            return False
    return True


# A run is a contiguous slice (fragment index, start, stop) of a fragment.
Run = tuple[int, int, int]


@dataclass(frozen=True)
class _Plan:
    """Search order and precomputed pruning runs for one formula."""

    fragments: tuple[Pattern, ...]
    symbols: tuple[tuple[tuple[int, bool], ...], ...]
    order: tuple[Variable, ...]
    anchors: tuple[tuple[int, int], ...]
    # runs whose image only grows when the candidate is extended to the right
    monotone_runs: tuple[tuple[Run, ...], ...]
    # maximal runs made only of bound symbols, once variable i is bound
    bound_runs: tuple[tuple[Run, ...], ...]


def _maximal_runs(symbols: tuple[tuple[int, bool], ...], bound: int) -> list:
    runs = []
    start = None
    for index, (var, _) in enumerate(symbols):
        if var <= bound and start is None:
            start = index
        elif var > bound and start is not None:
            runs.append((start, index))
            start = None
    if start is not None:
        runs.append((start, len(symbols)))
    return runs


@lru_cache(maxsize=256)
def _compile(f: Formula, pinned: Pattern | None = None) -> _Plan:
    fragments = list(f.ordered_fragments)
    if pinned is not None:
        fragments.remove(pinned)
        fragments.insert(0, pinned)

    order: dict[Variable, int] = {}
    anchors = []
    for fragment_index, fragment in enumerate(fragments):
        for position, symbol in enumerate(fragment.symbols):
            if symbol.var not in order:
                order[symbol.var] = len(order)
                anchors.append((fragment_index, position))
    symbols = tuple(
        tuple((order[s.var], s.reversed) for s in fragment.symbols)
        for fragment in fragments
    )

    monotone_runs = []
    bound_runs = []
    for var in range(len(order)):
        anchor_fragment, anchor_position = anchors[var]
        anchor_reversed = symbols[anchor_fragment][anchor_position][1]
        runs: list[Run] = []
        for fragment_index, fragment_symbols in enumerate(symbols):
            for index, (other, is_reversed) in enumerate(fragment_symbols):
                if other != var:
                    continue
                if is_reversed == anchor_reversed:
                    start = index
                    while start > 0 and fragment_symbols[start - 1][0] < var:
                        start -= 1
                    runs.append((fragment_index, start, index + 1))
                else:
                    stop = index + 1
                    while (
                        stop < len(fragment_symbols)
                        and fragment_symbols[stop][0] < var
                    ):
                        stop += 1
                    runs.append((fragment_index, index, stop))
        monotone_runs.append(tuple(runs))
        bound_runs.append(
            tuple(
                (fragment_index, start, stop)
                for fragment_index, fragment_symbols in enumerate(symbols)
                for start, stop in _maximal_runs(fragment_symbols, var)
            )
        )

    return _Plan(
        fragments=tuple(fragments),
        symbols=symbols,
        order=tuple(order),
        anchors=tuple(anchors),
        monotone_runs=tuple(monotone_runs),
        bound_runs=tuple(bound_runs),
    )


def _occurrences(text: str, factor: str) -> list[int]:
    if not factor:
        return list(range(len(text)))
    positions = []
    position = text.find(factor)
    while position >= 0:
        positions.append(position)
        position = text.find(factor, position + 1)
    return positions


class _Search:
    """
    Depth-first search binding variables in plan order.

    Candidates for a variable are the factors that follow an occurrence of
    the already-bound prefix of its anchor fragment, shortest first, then
    leftmost. With `pinned` set, the first fragment must occur at position 0.
    """

    def __init__(self, text: str, plan: _Plan, pinned: bool):
        self.text = text
        self.plan = plan
        self.pinned = pinned
        self.images = [""] * len(plan.order)
        self.reversed_images = [""] * len(plan.order)

    def _bind(self, var: int, image: str) -> None:
        self.images[var] = image
        self.reversed_images[var] = image[::-1]

    def _run_image(self, fragment: int, start: int, stop: int) -> str:
        symbols = self.plan.symbols[fragment]
        return "".join(
            self.reversed_images[var] if is_reversed else self.images[var]
            for var, is_reversed in symbols[start:stop]
        )

    def _runs_occur(self, runs: tuple[Run, ...]) -> bool:
        return all(self._run_image(*run) in self.text for run in runs)

    def _lengths_fit(self, var: int) -> bool:
        n = len(self.text)
        for symbols in self.plan.symbols:
            total = sum(
                len(self.images[other]) if other <= var else 1 for other, _ in symbols
            )
            if total > n:
                return False
        return True

    def _candidates(self, var: int) -> list[str]:
        fragment, position = self.plan.anchors[var]
        symbols = self.plan.symbols[fragment]
        prefix = self._run_image(fragment, 0, position)
        anchor_reversed = symbols[position][1]

        repeats = 1
        rest = 0
        for other, _ in symbols[position + 1 :]:
            if other == var:
                repeats += 1
            else:
                rest += len(self.images[other]) if other < var else 1

        if self.pinned and fragment == 0:
            starts = [0] if self.text.startswith(prefix) else []
        else:
            starts = _occurrences(self.text, prefix)

        n = len(self.text)
        found: dict[str, int] = {}
        for start in starts:
            begin = start + len(prefix)
            for length in range(1, (n - begin - rest) // repeats + 1):
                factor = self.text[begin : begin + length]
                self._bind(var, factor[::-1] if anchor_reversed else factor)
                if not self._runs_occur(self.plan.monotone_runs[var]):
                    break
                found.setdefault(self.images[var], begin)
        self._bind(var, "")
        return sorted(found, key=lambda image: (len(image), found[image]))

    def run(self, var: int = 0) -> bool:
        if var == len(self.plan.order):
            if self.pinned:
                first = self._run_image(0, 0, len(self.plan.symbols[0]))
                return self.text.startswith(first)
            return True
        for image in self._candidates(var):
            self._bind(var, image)
            if (
                self._lengths_fit(var)
                and self._runs_occur(self.plan.bound_runs[var])
                and self.run(var + 1)
            ):
                return True
        self._bind(var, "")
        return False


def _witness(
    w: Word, plan: _Plan, images: list[str], suffix_fragment: Pattern | None = None
) -> Witness:
    assignment = Assignment(
        {var: Word(images[index], w.alphabet) for index, var in enumerate(plan.order)}
    )
    placements = {}
    for fragment in plan.fragments:
        image = instantiate(fragment, assignment).text
        if fragment == suffix_fragment:
            placements[fragment] = len(w) - len(image)
        else:
            placements[fragment] = w.text.find(image)
    return Witness(assignment, placements)


def encounters(w: Word, f: Formula) -> Witness | None:
    """
    Return a witness that w encounters f, or None when w avoids f.

    1. It orders variables by first occurrence, longest fragment first.
    2. It binds them depth-first, pruning with the bound runs of every fragment.
    3. It returns the first complete assignment, re-validated.
    """
    plan = _compile(f)
    search = _Search(w.text, plan, pinned=False)
    if not search.run():
        return None
    witness = _witness(w, plan, search.images)
    if not validate_witness(w, f, witness):
        raise RuntimeError(f"Invalid witness for {f} in {w.text!r}")
    return witness


def avoids(w: Word, f: Formula) -> bool:
    return encounters(w, f) is None


def encounters_at_end(w: Word, f: Formula) -> Witness | None:
    """
    Witness in which at least one fragment's image is a suffix of w.

    If u avoids f, then u + a encounters f exactly when this finds a witness
    for u + a. Each fragment is tried as the suffix by searching the reversed
    formula in the reversed word with that fragment pinned at position 0.
    """
    mirrored = reverse_formula(f)
    forward = _compile(f)
    text = w.text[::-1]
    for fragment in f.ordered_fragments:
        plan = _compile(mirrored, reverse_pattern(fragment))
        search = _Search(text, plan, pinned=True)
        if not search.run():
            continue
        # h(reverse(p)) = reverse(h(p)), so the same images serve the forward word
        images = dict(zip(plan.order, search.images))
        witness = _witness(
            w, forward, [images[var] for var in forward.order], suffix_fragment=fragment
        )
        if not validate_witness(w, f, witness):
            raise RuntimeError(f"Invalid suffix witness for {f} in {w.text!r}")
        return witness
    return None


def oracle_encounters(w: Word, f: Formula) -> bool:
    """Brute force over every assignment of factors to variables. Tests only."""
    n = len(w.text)
    factors = sorted({w.text[i:j] for i in range(n) for j in range(i + 1, n + 1)})
    factor_set = set(factors)
    variables = sorted(f.variables, key=lambda var: var.name)
    index = {var: position for position, var in enumerate(variables)}
    fragments = [
        [(index[symbol.var], symbol.reversed) for symbol in fragment.symbols]
        for fragment in f.fragments
    ]
    for images in product(factors, repeat=len(variables)):
        if all(
            "".join(images[var][::-1] if rev else images[var] for var, rev in fragment)
            in factor_set
            for fragment in fragments
        ):
            return True
    return False
