"""Run every verification suite over a parameter grid and write one JSON summary."""
import argparse
import json
import time

from pgaut.errors import ParameterError
from pgaut.modarith import GroupParams
from pgaut.verify import VerifyConfig, verify

GRID = [(3, 2, 1), (3, 3, 1), (3, 3, 2), (3, 4, 1), (3, 4, 2), (3, 4, 3), (5, 3, 1), (5, 3, 2)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="verify_grid.json")
    ap.add_argument("--seed", type=int, default=1729)
    args = ap.parse_args()
    rows = []
    for p, n, i in GRID:
        try:
            params = GroupParams.canonical(p, n, i)
        except ParameterError as exc:
            print(f"({p},{n},{i}) skipped: {exc}")
            continue
        t0 = time.perf_counter()
        report = verify(params, "all", VerifyConfig(seed=args.seed))
        failed = [c.id for c in report.checks if c.status == "fail"]
        rows.append({"params": [p, n, i], "stats": report.stats, "failed": failed,
                     "seconds": round(time.perf_counter() - t0, 2)})
        print(f"({p},{n},{i}) {report.stats} failed={failed}")
    with open(args.out, "w") as fh:
        json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
