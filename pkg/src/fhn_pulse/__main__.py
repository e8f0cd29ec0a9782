"""Module entry point: python -m fhn_pulse <subcommand> ..."""

import sys

from .cli import main

sys.exit(main())
