import json
import logging
import sys

import click

from app.commands import COMMANDS
from app.core.config import LOG_LEVEL
from app.core.errors import ResponseError
from app.services.continuation_service import ContinuationService

# Exit codes: 0 success, 1 verification failure, 2 domain error, 3 usage error
EXIT_USAGE = 3


def _error_message(error: ResponseError) -> str:
    """Error text naming omega and the nearest intermediate resonance"""
    message = error.message
    omega = error.context.get("omega")
    if isinstance(omega, float) and omega > 0 and "nearest_n" not in error.context:
        n, omega_n = ContinuationService.nearest_resonance(omega)
        message += f" (nearest resonance n={n}, omega_n={omega_n:.12g})"
    return message


class ResponseGroup(click.Group):
    """click group mapping usage errors to exit 3 and calculator errors to their own exit codes"""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args=args, prog_name=prog_name, complete_var=complete_var,
                              standalone_mode=False, **extra)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)
        except ResponseError as e:
            click.echo(f"error: {_error_message(e)}", err=True)
            click.echo(json.dumps(e.detail, default=str), err=True)
            sys.exit(e.exit_code)
        sys.exit(rv if isinstance(rv, int) else 0)


@click.group(cls=ResponseGroup)
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG")
def cli(verbose):
    """Hydrogen 1s dynamic polarizability and Kramers-Heisenberg matrix element"""
    level = {0: LOG_LEVEL, 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


for command in COMMANDS:
    cli.add_command(command)


if __name__ == "__main__":
    cli()
