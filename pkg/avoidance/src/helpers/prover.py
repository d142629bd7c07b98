import logging
import math
import multiprocessing
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from typing import Iterable, Iterator

from src.config_settings import DEFAULT_JOBS, INCREMENTAL_CHECK, SPLIT_DEPTH
from src.errors import BudgetError, ExponentError, InputError
from src.helpers.cyclic import ExponentWord, block_offsets, build_cyclic
from src.helpers.encounter import (
    Assignment,
    Witness,
    encounters,
    encounters_at_end,
    validate_witness,
)
from src.helpers.formulas import Formula, make_phi
from src.helpers.words import Alphabet, Word

logger = logging.getLogger(__name__)

SEARCH_LETTERS = "0123456789abcdefghijklmnopqrstuvwxyz"


class VerdictKind(str, Enum):
    UNAVOIDABLE = "unavoidable"
    AVOIDER_EVIDENCE = "avoider_evidence"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    max_depth: int
    nodes_visited: int
    example: str


@dataclass(frozen=True)
class CensusTable:
    k: int
    counts: tuple[int, ...]

    @property
    def rows(self) -> dict[int, int]:
        return dict(enumerate(self.counts))


def search_alphabet(k: int) -> Alphabet:
    if k < 1 or k > len(SEARCH_LETTERS):
        raise InputError(f"Alphabet size must lie in 1..{len(SEARCH_LETTERS)}, got {k}")
    return Alphabet(SEARCH_LETTERS[:k])


@dataclass(frozen=True)
class _SearchConfig:
    formula: Formula
    alphabet: Alphabet
    limit: int
    # reaching `limit` ends the whole search (prove) or just stops descending (census)
    stop_at_limit: bool
    node_budget: int | None = None
    frontier_depth: int | None = None
    symmetry: bool = True
    incremental: bool = False


@dataclass
class _Tally:
    best: str
    nodes: int = 0
    reached: str | None = None
    exhausted: bool = False
    levels: list[int] = field(default_factory=list)
    frontier: list[str] = field(default_factory=list)

    def count(self, text: str, weight: int) -> None:
        while len(self.levels) <= len(text):
            self.levels.append(0)
        self.levels[len(text)] += weight


def _children(text: str, config: _SearchConfig) -> str:
    chars = config.alphabet.chars
    if not config.symmetry:
        return chars
    # words are kept canonical: letters first occur in alphabet order
    return chars[: min(len(chars), len(set(text)) + 1)]


def _still_avoids(text: str, config: _SearchConfig) -> bool:
    word = Word(text, config.alphabet)
    if config.incremental:
        return encounters_at_end(word, config.formula) is None
    return encounters(word, config.formula) is None


def _weight(text: str, config: _SearchConfig) -> int:
    if not config.symmetry:
        return 1
    return math.perm(config.alphabet.size, len(set(text)))


def _explore(root: str, config: _SearchConfig) -> _Tally:
    """Depth-first search below `root`; the root itself is not counted."""
    tally = _Tally(best=root)

    def visit(text: str) -> bool:
        if len(text) > len(tally.best):
            tally.best = text
        if len(text) >= config.limit:
            if config.stop_at_limit:
                tally.reached = text
                return True
            return False
        if config.frontier_depth is not None and len(text) == config.frontier_depth:
            tally.frontier.append(text)
            return False
        for letter in _children(text, config):
            if config.node_budget is not None and tally.nodes >= config.node_budget:
                tally.exhausted = True
                return True
            tally.nodes += 1
            child = text + letter
            if _still_avoids(child, config):
                tally.count(child, _weight(child, config))
                if visit(child):
                    return True
        return False

    visit(root)
    return tally


def _subtrees(
    frontier: list[str], config: _SearchConfig, jobs: int
) -> Iterator[tuple[str, _Tally]]:
    worker = partial(_explore, config=config)
    if jobs > 1 and len(frontier) > 1:
        with multiprocessing.Pool(jobs) as pool:
            yield from zip(frontier, pool.imap(worker, frontier))
    else:
        yield from zip(frontier, map(worker, frontier))


def _resolve(jobs: int | None, split_depth: int | None, incremental: bool | None):
    jobs = DEFAULT_JOBS if jobs is None else jobs
    split_depth = SPLIT_DEPTH if split_depth is None else split_depth
    incremental = INCREMENTAL_CHECK if incremental is None else incremental
    if jobs < 1:
        raise InputError(f"jobs must be positive, got {jobs}")
    if split_depth < 0:
        raise InputError(f"split depth must be non-negative, got {split_depth}")
    return jobs, split_depth, incremental


def prove_unavoidable(
    formula: Formula,
    k: int,
    depth_budget: int,
    node_budget: int,
    *,
    jobs: int | None = None,
    split_depth: int | None = None,
    incremental: bool | None = None,
) -> Verdict:
    """
    Backtrack over canonical words on k letters that avoid `formula`.

    1. A serial pass collects the canonical words of length `split_depth`.
    2. Their subtrees are searched in order, on `jobs` workers when asked.
    3. A subtree that overruns the remaining node budget is searched again
       serially with exactly that budget, so the verdict does not depend on
       `jobs`.
    """
    if depth_budget < 1 or node_budget < 1:
        raise BudgetError(
            f"Budgets must be positive, got depth={depth_budget} nodes={node_budget}"
        )
    jobs, split_depth, incremental = _resolve(jobs, split_depth, incremental)
    alphabet = search_alphabet(k)
    frontier_depth = split_depth if split_depth < depth_budget else None
    config = _SearchConfig(
        formula=formula,
        alphabet=alphabet,
        limit=depth_budget,
        stop_at_limit=True,
        node_budget=node_budget - 1,
        frontier_depth=frontier_depth,
        incremental=incremental,
    )

    # the empty word is the root and always avoids
    top = _explore("", config)
    nodes = top.nodes + 1
    best = top.best
    reached = top.reached
    exhausted = top.exhausted

    if not (reached or exhausted) and top.frontier:
        inner = _SearchConfig(
            formula=formula,
            alphabet=alphabet,
            limit=depth_budget,
            stop_at_limit=True,
            node_budget=node_budget - nodes,
            incremental=incremental,
        )
        for root, tally in _subtrees(top.frontier, inner, jobs):
            remaining = node_budget - nodes
            if tally.exhausted or tally.nodes > remaining:
                exact = _SearchConfig(
                    formula=formula,
                    alphabet=alphabet,
                    limit=depth_budget,
                    stop_at_limit=True,
                    node_budget=remaining,
                    incremental=incremental,
                )
                tally = _explore(root, exact)
            nodes += tally.nodes
            if len(tally.best) > len(best):
                best = tally.best
            if tally.reached or tally.exhausted:
                reached = tally.reached
                exhausted = tally.exhausted
                break

    if reached:
        verdict = Verdict(VerdictKind.AVOIDER_EVIDENCE, len(reached), nodes, reached)
    elif exhausted:
        verdict = Verdict(VerdictKind.BUDGET_EXHAUSTED, len(best), nodes, best)
    else:
        verdict = Verdict(VerdictKind.UNAVOIDABLE, len(best), nodes, best)
    logger.info(
        "%s on %d letters: %s, depth %d, %d nodes",
        formula,
        k,
        verdict.kind.value,
        verdict.max_depth,
        verdict.nodes_visited,
    )
    return verdict


def census(
    formula: Formula,
    k: int,
    max_len: int,
    *,
    symmetry: bool = True,
    jobs: int | None = None,
    split_depth: int | None = None,
    incremental: bool | None = None,
) -> CensusTable:
    """Number of words of each length 0..max_len on k letters that avoid `formula`."""
    if max_len < 0:
        raise BudgetError(f"Length must be non-negative, got {max_len}")
    jobs, split_depth, incremental = _resolve(jobs, split_depth, incremental)
    config = _SearchConfig(
        formula=formula,
        alphabet=search_alphabet(k),
        limit=max_len,
        stop_at_limit=False,
        frontier_depth=split_depth if split_depth < max_len else None,
        symmetry=symmetry,
        incremental=incremental,
    )
    top = _explore("", config)
    counts = [0] * (max_len + 1)
    counts[0] = 1
    for length, count in enumerate(top.levels):
        if length:
            counts[length] += count

    inner = _SearchConfig(
        formula=formula,
        alphabet=config.alphabet,
        limit=max_len,
        stop_at_limit=False,
        symmetry=symmetry,
        incremental=incremental,
    )
    for _, tally in _subtrees(top.frontier, inner, jobs):
        for length, count in enumerate(tally.levels):
            counts[length] += count
    logger.info("Census of %s on %d letters: %s", formula, k, counts)
    return CensusTable(k, tuple(counts))


def growth_ratios(table: CensusTable) -> list[float | None]:
    """Ratio count(n) / count(n - 1) for n >= 1, None once a count is zero."""
    counts = table.counts
    return [
        counts[n] / counts[n - 1] if counts[n - 1] else None
        for n in range(1, len(counts))
    ]


# (start, length) of a slice of the cyclic word
Span = tuple[int, int]


def _shapes(k: int, exponents: tuple[int, ...], offsets: list[int]) -> Iterable:
    """Candidate (x, ys, closing x) spans for each known encounter shape."""
    blocks = len(exponents)
    e = exponents
    o = offsets

    def block(t: int) -> Span:
        return o[t], e[t]

    if k % 3 == 2:
        for t in range(blocks - k - 1):
            yield (o[t + 1] - 1, 1), [block(t + i) for i in range(1, k + 1)], (
                o[t + k + 1],
                1,
            )
    elif k % 3 == 0:
        for t in range(blocks - k - 5):
            if all(value == 1 for value in e[t : t + k + 6]):
                yield (o[t], 3), [block(t + 2 + i) for i in range(1, k + 1)], (
                    o[t + k + 3],
                    3,
                )
        for t in range(1, blocks - k + 1):
            if e[t] > 1:
                ys = [(o[t], 1), (o[t] + 1, e[t] - 1)]
                ys += [block(t + i - 2) for i in range(3, k + 1)]
                yield (o[t] - 1, 1), ys, (o[t + k - 1], 1)
    elif k >= 4:
        for t in range(blocks - k - 3):
            if all(value == 1 for value in e[t : t + k + 4]):
                yield (o[t], 2), [block(t + 1 + i) for i in range(1, k + 1)], (
                    o[t + k + 2],
                    2,
                )
        for t in range(1, blocks - k + 2):
            if e[t] > 2:
                ys = [(o[t], 1), (o[t] + 1, 1), (o[t] + 2, e[t] - 2)]
                ys += [block(t + i - 3) for i in range(4, k + 1)]
                yield (o[t] - 1, 1), ys, (o[t + k - 2], 1)
        for t in range(1, blocks - k + 2):
            if e[t] == 2 and e[t + 1] == 2:
                ys = [(o[t], 1), (o[t] + 1, 1), (o[t + 1], 1), (o[t + 1] + 1, 1)]
                ys += [block(t + i - 3) for i in range(5, k + 1)]
                yield (o[t] - 1, 1), ys, (o[t + k - 2], 1)
        for t in range(blocks - k - 3):
            r = e[t + k + 2]
            if e[t] == 2 and e[t + 1] == 1 and r <= 2:
                yield (o[t + 1] - r, r + 1), [
                    block(t + 1 + i) for i in range(1, k + 1)
                ], (o[t + k + 2], r + 1)


def cyclic3_scan(k: int, w: ExponentWord, prefix_cap: int) -> Witness | None:
    """
    Find an encounter of make_phi(k) in a prefix of the 3-cyclic word of w.

    The known encounter shapes for k mod 3 are tried first, in order of
    their starting block; the encounter engine is the fallback.
    """
    if prefix_cap < 1:
        raise ExponentError(f"Prefix cap must be positive, got {prefix_cap}")
    exponents = w.exponents[:prefix_cap]
    prefix = ExponentWord(exponents)
    word = build_cyclic(3, prefix, "012")
    phi = make_phi(k)
    long_fragment, *singletons = phi.ordered_fragments
    x, *ys = long_fragment.variables
    text = word.text

    for x_span, y_spans, _ in _shapes(k, exponents, block_offsets(prefix)):
        images = {x: Word(text[x_span[0] : x_span[0] + x_span[1]], word.alphabet)}
        for y, (start, length) in zip(ys, y_spans):
            images[y] = Word(text[start : start + length], word.alphabet)
        placements = {long_fragment: x_span[0]}
        placements.update(
            (singleton, start) for singleton, (start, _) in zip(singletons, y_spans)
        )
        witness = Witness(Assignment(images), placements)
        if validate_witness(word, phi, witness):
            logger.debug("Shape encounter at %d for k=%d", x_span[0], k)
            return witness
    return encounters(word, phi)
