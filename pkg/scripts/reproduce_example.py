"""Run every check on the shipped five-dimensional example and print a summary.

    python scripts/reproduce_example.py [--set p=2 --set q=-1] [--json out.json]
"""

import argparse
import json
import sys
from fractions import Fraction

from pisoliton.fixtures import example_spec_path
from pisoliton.report import SuiteOptions, emit, run_suite
from pisoliton.specfile import load_spec

SUMMARY_KEYS = [
    "ricci.nonzero",
    "scalar_curvature.tau",
    "scalar_curvature.tau_tilde",
    "associated_metric.signature",
    "para_sasaki.holds",
    "einstein_like.a", "einstein_like.b", "einstein_like.c", "einstein_like.kind",
    "soliton_reeb.lambda", "soliton_reeb.mu", "soliton_reeb.nu",
    "soliton_collinear.family.mu", "soliton_collinear.family.nu", "soliton_collinear.k",
    "nabla_rho.nonzero",
    "recurrence.result",
    "h_tensor.parallel", "h_tensor.lambda",
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--set", action="append", default=[], metavar="NAME=Q")
    ap.add_argument("--json", help="also write the structured report here")
    args = ap.parse_args(argv)
    subs = {}
    for item in args.set:
        name, _, value = item.partition("=")
        subs[name.strip()] = Fraction(value)

    report = run_suite(load_spec(example_spec_path()), SuiteOptions(substitutions=subs))
    doc = report.flat()
    width = max(len(k) for k in SUMMARY_KEYS)
    for key in SUMMARY_KEYS:
        print(f"{key:<{width}}  {json.dumps(doc.get(key))}")
    print()
    for entry in report.checks:
        print(f"{entry.name:<18} {entry.status}")
    if args.json:
        with open(args.json, "wb") as fh:
            fh.write(emit(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
