"""List failing relation checks and whether each one holds modulo inner automorphisms."""
import argparse
import json

from pgaut.modarith import GroupParams
from pgaut.verify import verify

DEFAULT = ["3,4,2:aut-high", "3,3,1:aut-low", "3,4,1:aut-low", "5,4,2:aut-high"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("runs", nargs="*", default=DEFAULT, help="p,n,i:suite")
    args = ap.parse_args()
    for run in args.runs:
        triple, suite = run.split(":")
        params = GroupParams.canonical(*map(int, triple.split(",")))
        report = verify(params, suite)
        for c in report.checks:
            if c.status != "fail":
                continue
            w = c.witness if isinstance(c.witness, dict) else {}
            print(f"{triple} {c.id}: {w.get('relation', c.anchor)}")
            print(f"    modulo inner: {w.get('holds_modulo_inner')}  "
                  f"conjugator: {json.dumps(w.get('lhs_equals_inner_times_rhs'))}")


if __name__ == "__main__":
    main()
