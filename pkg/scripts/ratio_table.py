"""Tabulate the p-part of |Aut| divided by the group order, for S and U."""
import argparse

from pgaut.modarith import GroupParams
from pgaut.verify import ratio_report

DEFAULT = ["3,3,1", "3,3,2", "3,4,1", "3,4,2", "3,4,3"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("params", nargs="*", default=DEFAULT, help="p,n,i triples")
    args = ap.parse_args()
    for triple in args.params:
        rep = ratio_report(GroupParams.canonical(*map(int, triple.split(","))))
        cells = "  ".join(f"{k}: {v['ratio']} = {v['value']}" for k, v in rep.items())
        print(f"{triple}  {cells}")


if __name__ == "__main__":
    main()
