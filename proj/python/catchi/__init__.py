"""CAT(k) comparison geometry and the lattice computations around cusp singularities."""

import json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run as _run


def report(command, *args, **options):
    """Run a subcommand, e.g. report("singularities", "dual-cycle", "3", "2", "2")."""
    return json.loads(_run(command.split(), list(args), **options))
