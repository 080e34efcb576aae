#!/usr/bin/env python3
"""Run the full identity suites over the default corpus and print the report.

Usage: python scripts/run_verify.py [--quick] [--seed N]
"""

import argparse
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from g2kummer.corpus import default_corpus
from g2kummer.verify import DEFAULT_SUITE_SIZES, proposition_suites, report_lines


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--seed", type=int, default=20260808)
    args = ap.parse_args()
    print(f"seed {args.seed}")
    sizes = None
    if args.quick:
        sizes = {k: max(4, v // 10) for k, v in DEFAULT_SUITE_SIZES.items()}
    report = proposition_suites(default_corpus(), random.Random(args.seed), sizes=sizes)
    for line in report_lines(report):
        print(line)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
