import logging
import sys

import click
from src.commands import formula_search, golden_crud, word_building
from src.config_settings import LOG_LEVEL


@click.group()
@click.option("--log-level", default=LOG_LEVEL, show_default=True, help="stderr log level.")
def cli(log_level):
    """Encounters, avoiders and backtracking proofs for formulas with reversal."""
    logging.basicConfig(
        level=log_level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


# Register commands
cli.add_command(formula_search.encounter_command)
cli.add_command(formula_search.prove_command)
cli.add_command(formula_search.census_command)
cli.add_command(word_building.construct_command)
cli.add_command(word_building.cyclic_command)
cli.add_command(word_building.lemma1_command)
cli.add_command(word_building.lemma_report_command)
cli.add_command(word_building.squarefree_command)
cli.add_command(word_building.phi_command)
cli.add_command(word_building.bounds_command)
cli.add_command(golden_crud.golden_group)


if __name__ == "__main__":
    cli()
