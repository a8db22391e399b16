#!/usr/bin/env python3
"""Full bounded-entropy sweep: writes sweep.csv and a JSON report."""

import sys

from luxglue.cli import main

if __name__ == "__main__":
    args = ["counterexample", "--n", "2", "--kmin", "5", "--kmax", "40",
            "--table", "sweep.csv", "--out", "counterexample_report.json"]
    sys.exit(main(args + sys.argv[1:]))
