"""Main CLI application: app setup, error mapping and entry point."""

import sys
from typing import List, Optional

import typer

from rcdkit.commands.analyze_cmd import analyze_app
from rcdkit.commands.falsify_cmd import falsify_app
from rcdkit.commands.gen_cmd import gen_app
from rcdkit.commands.rcd_cmd import rcd_app
from rcdkit.core.errors import RcdkitError
from rcdkit.ui.display import KernelUI

# ---------------------------------------------------------------------------
# Typer app: register all command groups
# ---------------------------------------------------------------------------
app = typer.Typer(
    name="rcdkit",
    help="Exact analysis of probability kernels and regular conditional distributions",
    add_completion=False,
    no_args_is_help=True,
)

for _sub_app in (analyze_app, rcd_app, falsify_app, gen_app):
    for cmd_info in _sub_app.registered_commands:
        app.registered_commands.append(cmd_info)


@app.command("version")
def version():
    """Show the rcdkit version."""
    from rcdkit import __version__

    typer.echo(f"rcdkit {__version__}")


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------
USAGE_EXIT = 2  # click's exit status for usage errors


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code.

    0 holds / positive, 3 fails / negative / counterexample, 1 usage or input
    error, 2 refused work.
    """
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        app(args=args, prog_name="rcdkit")
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
        return 1 if code == USAGE_EXIT else code
    except RcdkitError as e:
        KernelUI.show_error(str(e))
        return e.exit_code
    return 0


def main_entry():
    sys.exit(main())
