import click
from src.commands.common import emit, finish, jobs_option, reports_errors
from src.helpers.constructions import build_avoider
from src.helpers.cyclic import (
    ExponentWord,
    InteriorRange,
    all_exponent_words,
    build_cyclic,
    find_bad_factor,
    lemma_equivalence_report,
)
from src.helpers.encounter import encounters
from src.helpers.formulas import format_formula, known_index_bounds, make_phi
from src.helpers.prover import cyclic3_scan
from src.helpers.words import Word, find_square, square_free_stream
from src.schemas.cli_search import WitnessPayload
from src.schemas.cli_words import (
    BadFactorPayload,
    BoundsPayload,
    ConstructionPayload,
    CyclicPayload,
    Lemma1Payload,
    LemmaReportPayload,
    SquareFreePayload,
)


@click.command("construct")
@click.option("--k", type=int, required=True, help="Index of the formula.")
@click.option("--base-len", type=int, required=True, help="Length of the base word.")
@reports_errors
def construct_command(k, base_len):
    """Build a finite word that avoids the k-th formula, and verify it."""
    emit(ConstructionPayload.from_output(build_avoider(k, base_len)))


@click.command("cyclic")
@click.option("--m", type=int, required=True, help="Number of cyclic letters.")
@click.option("--exponents", required=True, help="Comma-separated block lengths.")
@click.option("--scan-k", type=int, default=None, help="Search an encounter of phi_k.")
@click.option(
    "--prefix-cap", type=int, default=None, help="Blocks used by --scan-k (m = 3)."
)
@reports_errors
def cyclic_command(m, exponents, scan_k, prefix_cap):
    """
    Build the m-cyclic word of an exponent word.

    1. It builds the word over the first m lowercase letters.
    2. With --scan-k it searches an encounter of phi_k, exiting 1 without one.
    """
    w = ExponentWord.parse(exponents)
    word = build_cyclic(m, w)
    payload = CyclicPayload(m=m, exponents=list(w.exponents), word=word.text)
    if scan_k is None:
        emit(payload)
        return
    if m == 3:
        witness = cyclic3_scan(scan_k, w, prefix_cap or len(w))
    else:
        witness = encounters(word, make_phi(scan_k))
    payload.scan_k = scan_k
    payload.witness = WitnessPayload.from_witness(witness) if witness else None
    emit(payload)
    finish(witness is None)


@click.command("lemma1")
@click.option("--k", type=int, required=True, help="Index of the formula.")
@click.option("--m", type=int, required=True, help="Number of cyclic letters.")
@click.option("--exponents", required=True, help="Comma-separated block lengths.")
@click.option("--j", "js", type=int, multiple=True, help="Allowed middle lengths.")
@click.option(
    "--interior",
    type=click.Choice([choice.value for choice in InteriorRange]),
    default=InteriorRange.PROOF.value,
    help="Indices on which both outer blocks must agree.",
)
@reports_errors
def lemma1_command(k, m, exponents, js, interior):
    """Look for a bad factor; exit 1 when there is one."""
    w = ExponentWord.parse(exponents)
    witness = find_bad_factor(w, k, m, js or None, InteriorRange(interior))
    emit(
        Lemma1Payload(
            k=k,
            m=m,
            exponents=list(w.exponents),
            interior=interior,
            bad_factor=BadFactorPayload.from_witness(witness),
        )
    )
    finish(witness is not None)


@click.command("lemma-report")
@click.option("--k", type=int, required=True, help="Index of the formula.")
@click.option("--m", type=int, required=True, help="Number of cyclic letters.")
@click.option("--max-len", type=int, required=True, help="Longest exponent word.")
@jobs_option
@reports_errors
def lemma_report_command(k, m, max_len, jobs):
    """
    Compare bad factors with encounters over every exponent word.

    1. It enumerates all words over 1..k+1 up to --max-len.
    2. It exits 1 when any word has a bad factor but no encounter.
    """
    report = lemma_equivalence_report(
        k, m, all_exponent_words(k + 1, max_len), jobs=jobs or 1
    )
    emit(LemmaReportPayload.from_report(report))
    finish(bool(report.hard_failures))


@click.command("squarefree")
@click.option("--len", "length", type=int, required=True, help="Prefix length.")
@click.option("--check", "checked", default=None, help="Word to test instead.")
@reports_errors
def squarefree_command(length, checked):
    """Print a square-free ternary prefix, or test a word with --check."""
    word = square_free_stream(length)
    payload = SquareFreePayload(length=length, word=word.text)
    if checked is None:
        emit(payload)
        return
    square = find_square(Word.parse(checked))
    payload.checked = checked
    payload.square_free = square is None
    payload.square = list(square) if square else None
    emit(payload)
    finish(square is not None)


@click.command("phi")
@click.option("--k", type=int, required=True, help="Index of the formula.")
@reports_errors
def phi_command(k):
    """Print the k-th formula in dot notation."""
    click.echo(format_formula(make_phi(k)))


@click.command("bounds")
@click.option("--k", type=int, required=True, help="Index of the formula.")
@reports_errors
def bounds_command(k):
    """Print the known bounds on the avoidability index of phi_k."""
    bounds = known_index_bounds(k)
    emit(
        BoundsPayload(
            k=k,
            formula=format_formula(make_phi(k)),
            lower=bounds.lower,
            upper=bounds.upper,
            exact=bounds.exact,
        )
    )
