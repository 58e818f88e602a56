"""Compare brute-force automorphism groups with closures of the named generators."""
import argparse
import time

import numpy as np

from pgaut import automorphism as A
from pgaut import groups as G
from pgaut import oracle as O
from pgaut.modarith import GroupParams

DEFAULT = ["3,3,1", "3,3,2", "3,4,2", "3,4,3"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("params", nargs="*", default=DEFAULT, help="p,n,i triples")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    for triple in args.params:
        params = GroupParams.canonical(*map(int, triple.split(",")))
        t0 = time.perf_counter()
        brute, stats = O.brute_force_aut(G.s_group(params), threads=args.threads)
        t1 = time.perf_counter()
        gens = A.named_generators(params, A.family_for(params))
        closure = A.aut_closure(list(gens.values()))
        t2 = time.perf_counter()
        same = np.array_equal(brute.codes, closure.codes)
        print(f"{triple}: brute {len(brute)} ({t1 - t0:.1f}s)  closure {len(closure)} ({t2 - t1:.1f}s)  equal={same}")


if __name__ == "__main__":
    main()
