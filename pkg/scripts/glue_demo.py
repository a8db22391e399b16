#!/usr/bin/env python3
"""Radial glue of the quadruple-log piece into the reference potential at
eps = 2^-10; emits sampled t,h,h1,h2 and prints the certified bounds."""

import sys

from luxglue.cli import main

if __name__ == "__main__":
    args = ["glue", "--mode", "radial", "--eps", str(2.0**-10),
            "--left-fn", "feps", "--left-interval", f"{1 / 64},{1 / 16}",
            "--right-fn", "log1p", "--right-interval", "1,4", "--n", "2",
            "--h-csv", "glue_samples.csv"]
    sys.exit(main(args + sys.argv[1:]))
