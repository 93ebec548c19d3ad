#!/usr/bin/env python3
"""Full theory verification with CSV output for the figure pipeline.

Thin wrapper over the verify-theory CLI subcommand with the default
budgets used in the acceptance suite.
"""

from pathlib import Path
import sys

from swathnn.cli import main as cli_main

if __name__ == "__main__":
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out/theory")
    out_dir.mkdir(parents=True, exist_ok=True)
    raise SystemExit(
        cli_main(
            [
                "verify-theory",
                "--d", "2", "3", "5", "8",
                "--samples", "1000000",
                "--scaling-d", "2", "3",
                "--scaling-nmax", "20000",
                "--scaling-seeds", "30",
                "--dominance-n", "5000",
                "--dominance-seeds", "50",
                "--out", str(out_dir / "scaling_curve.csv"),
            ]
        )
    )
