import click
from src.commands.common import (
    emit,
    finish,
    formula_option,
    golden_option,
    jobs_option,
    reports_errors,
    split_depth_option,
)
from src.helpers.encounter import encounters
from src.helpers.formulas import format_formula, parse_formula
from src.helpers.golden import (
    GoldenStatus,
    record_or_compare_census,
    record_or_compare_verdict,
)
from src.helpers.prover import VerdictKind, census, growth_ratios, prove_unavoidable
from src.helpers.words import Word
from src.schemas.cli_search import (
    CensusPayload,
    EncounterPayload,
    GoldenPayload,
    VerdictPayload,
    WitnessPayload,
)


def _golden_payload(comparison) -> GoldenPayload:
    return GoldenPayload(
        status=comparison.status.value,
        id=comparison.record["id"],
        differences=list(comparison.differences),
    )


@click.command("encounter")
@click.option("--word", required=True, help="Word as a string of letters.")
@formula_option
@click.option("--alphabet-chars", default=None, help="Alphabet, in letter order.")
@click.option(
    "--expect",
    type=click.Choice(["avoid", "encounter"]),
    default=None,
    help="Exit 1 when the result differs.",
)
@reports_errors
def encounter_command(word, formula_text, alphabet_chars, expect):
    """
    Search for an encounter of a formula in a word.

    1. It parses the word and the formula.
    2. It prints the witness, or null when the word avoids the formula.
    """
    w = Word.parse(word, alphabet_chars)
    formula = parse_formula(formula_text)
    witness = encounters(w, formula)
    emit(
        EncounterPayload(
            word=w.text,
            formula=format_formula(formula),
            witness=WitnessPayload.from_witness(witness) if witness else None,
        )
    )
    if expect is not None:
        finish((witness is None) != (expect == "avoid"))


@click.command("prove")
@formula_option
@click.option("--alphabet", "k", type=int, required=True, help="Alphabet size.")
@click.option("--depth", type=int, required=True, help="Depth budget.")
@click.option("--nodes", type=int, required=True, help="Node budget.")
@jobs_option
@split_depth_option
@click.option(
    "--incremental/--full-check",
    default=None,
    help="Check only encounters ending at the last letter.",
)
@golden_option
@reports_errors
def prove_command(formula_text, k, depth, nodes, jobs, split_depth, incremental, golden):
    """
    Backtracking search for an infinite avoider.

    1. It runs the search with the given budgets.
    2. With --golden it records the verdict, or compares it with the record.
    3. It exits 1 when the budget ran out or the golden record differs.
    """
    formula = parse_formula(formula_text)
    verdict = prove_unavoidable(
        formula,
        k,
        depth,
        nodes,
        jobs=jobs,
        split_depth=split_depth,
        incremental=incremental,
    )
    payload = VerdictPayload.from_verdict(format_formula(formula), k, verdict)
    mismatch = False
    if golden:
        comparison = record_or_compare_verdict(formula, k, depth, nodes, verdict)
        payload.golden = _golden_payload(comparison)
        mismatch = comparison.status is GoldenStatus.MISMATCH
    emit(payload)
    finish(verdict.kind is VerdictKind.BUDGET_EXHAUSTED or mismatch)


@click.command("census")
@formula_option
@click.option("--alphabet", "k", type=int, required=True, help="Alphabet size.")
@click.option("--max-len", type=int, required=True, help="Longest length counted.")
@click.option(
    "--symmetry/--no-symmetry",
    default=True,
    help="Count canonical words and multiply by relabelings.",
)
@jobs_option
@split_depth_option
@golden_option
@reports_errors
def census_command(formula_text, k, max_len, symmetry, jobs, split_depth, golden):
    """Count the avoiding words of each length."""
    formula = parse_formula(formula_text)
    table = census(
        formula, k, max_len, symmetry=symmetry, jobs=jobs, split_depth=split_depth
    )
    payload = CensusPayload.from_table(
        format_formula(formula), table, symmetry, growth_ratios(table)
    )
    mismatch = False
    if golden:
        comparison = record_or_compare_census(formula, k, max_len, table, symmetry)
        payload.golden = _golden_payload(comparison)
        mismatch = comparison.status is GoldenStatus.MISMATCH
    emit(payload)
    finish(mismatch)
