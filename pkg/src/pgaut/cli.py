"""Command-line front end: ``pgaut info|verify|aut|oracle|ratio``.

Exit codes: 0 pass, 1 check failure, 2 invalid parameters, 3 resource guard.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from . import automorphism as A
from . import groups as G
from . import modarith as M
from . import oracle as O
from .errors import ParameterError, ResourceGuardError
from .verify import SUITES, VerifyConfig, ratio_report, verify

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_GUARD = 0, 1, 2, 3
CACHE_ENV = "PGAUT_CACHE"
DEFAULT_CACHE = Path.home() / ".cache" / "pgaut"


@dataclass
class RunConfig:
    command: str
    p: int
    n: int
    i: int
    d: int | None = None
    e: int | None = None
    suite: str = "all"
    mode: str = "closure"
    out: str | None = None
    cache: str | None = None
    threads: int = 1
    seed: int = 1729
    aut_cap: int = A.DEFAULT_AUT_CAP
    max_group: int = O.MAX_GROUP_ORDER

    def __post_init__(self) -> None:
        if self.threads < 1 or self.aut_cap < 1 or self.max_group < 1:
            raise ParameterError("threads and caps must be positive")

    def params(self) -> M.GroupParams:
        if (self.d is None) != (self.e is None):
            raise ParameterError("give both --d and --e or neither")
        if self.d is None:
            return M.GroupParams.canonical(self.p, self.n, self.i)
        return M.GroupParams(self.p, self.n, self.i, self.d, self.e)

    def cache_dir(self) -> Path | None:
        if self.cache == "none":
            return None
        return Path(self.cache or os.environ.get(CACHE_ENV) or DEFAULT_CACHE)


def expected_aut_order(params: M.GroupParams) -> int:
    p, n, i = params.p, params.n, params.i
    if params.top:
        return p ** (n + 1) * (p - 1) ** 2 * (p + 1)
    if 2 * i >= n:
        return 2 * p ** (3 * n - 2 * i + 1) * (p - 1)
    return p ** (2 * n + 2) * (p - 1)


def _center_generators(params: M.GroupParams) -> list[str]:
    p, n, i = params.p, params.n, params.i
    if 2 * i >= n:
        return [f"c^{p ** (n - i - 1)}"]
    return [f"c^{params.comm_step}", f"b^{p ** (n - i - 1)}"]


def info_record(params: M.GroupParams) -> dict:
    consts = M.derive_appendix_constants(params.p, params.n, params.i)
    regime = params.regime.value + (" (i = n-1)" if params.top else "")
    notes = []
    if params.n == 2:
        notes.append("n = 2: S = T is a Heisenberg group of order p^3 needing only 2 generators")
    if params.regime is M.Regime.LOW and params.n == 2 * params.i + 1:
        notes.append("n = 2i+1: listed relations are not claimed to be defining")
    return {
        "params": params.as_dict(),
        "regime": regime,
        "constants": consts.as_dict(),
        "orders": {k: G.group_order(params, k) for k in ("S", "T", "U")},
        "center_generators": _center_generators(params),
        "expected_aut_S": expected_aut_order(params),
        "family": A.family_for(params),
        "notes": notes,
    }


def _cache_path(cfg: RunConfig, params: M.GroupParams, which: str) -> Path | None:
    root = cfg.cache_dir()
    if root is None:
        return None
    name = f"aut-{which}-{cfg.mode}-p{params.p}-n{params.n}-i{params.i}-d{params.d}-e{params.e}.json"
    return root / name


def compute_aut(cfg: RunConfig, params: M.GroupParams, which: str = "S") -> tuple[A.AutSet, bool]:
    """Automorphism set of S or U in the configured mode, through the cache."""
    path = _cache_path(cfg, params, which)
    if path is not None and path.exists():
        return A.autset_from_json(path.read_text()), True
    group = G.s_group(params) if which == "S" else G.u_group(params)
    if cfg.mode == "brute":
        auts, _ = O.brute_force_aut(group, threads=cfg.threads, max_group=cfg.max_group, max_aut=cfg.aut_cap)
    elif cfg.mode == "closure":
        if which == "S":
            gens = list(A.named_generators(params, A.family_for(params)).values())
        else:
            app = A.appendix_generators(params)
            gens = [app["alpha"], app["delta_x"], app["mu"]]
        auts = A.aut_closure(gens, cfg.aut_cap)
    else:
        raise ParameterError(f"unknown mode {cfg.mode!r}")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        A.write_atomic(path, A.autset_to_json(auts))
    return auts, False


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        A.write_atomic(out, text + "\n")
    else:
        print(text)


def cmd_info(cfg: RunConfig) -> int:
    rec = info_record(cfg.params())
    if cfg.out:
        _emit(rec, cfg.out)
    print(f"p={cfg.p} n={cfg.n} i={cfg.i}  regime {rec['regime']}")
    print(f"|S|={rec['orders']['S']}  |T|={rec['orders']['T']}  |U|={rec['orders']['U']}")
    print(f"Z(S) generated by {', '.join(rec['center_generators'])}")
    print(f"expected |Aut(S)|={rec['expected_aut_S']}")
    print("constants " + " ".join(f"{k}={v}" for k, v in rec["constants"].items()))
    for note in rec["notes"]:
        print(f"note: {note}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite != "all" and cfg.suite not in SUITES:
        raise ParameterError(f"unknown suite {cfg.suite!r}")
    vcfg = VerifyConfig(seed=cfg.seed, threads=cfg.threads, aut_cap=cfg.aut_cap, oracle_max_group=cfg.max_group)
    report = verify(cfg.params(), cfg.suite, vcfg)
    _emit(report.as_dict(), cfg.out)
    st = report.stats
    for c in report.checks:
        if c.status == "fail":
            print(f"FAIL {c.id}: {c.anchor}", file=sys.stderr)
    print(f"{st['pass']} passed, {st['fail']} failed, {st['skipped']} skipped", file=sys.stderr)
    return EXIT_FAIL if st["fail"] else EXIT_OK


def cmd_aut(cfg: RunConfig) -> int:
    params = cfg.params()
    t0 = time.perf_counter()
    auts, cached = compute_aut(cfg, params, "S")
    print(len(auts))
    print(f"provenance: {auts.provenance}{' (cache)' if cached else ''}; "
          f"{time.perf_counter() - t0:.2f}s", file=sys.stderr)
    if cfg.out:
        A.write_atomic(cfg.out, A.autset_to_json(auts))
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    """Brute force next to closure, for S and U."""
    params = cfg.params()
    out = {}
    status = EXIT_OK
    for which in ("S", "U"):
        brute, _ = compute_aut(RunConfig(**{**cfg.__dict__, "mode": "brute"}), params, which)
        closure, _ = compute_aut(RunConfig(**{**cfg.__dict__, "mode": "closure"}), params, which)
        same = brute.same_elements(closure)
        out[which] = {"brute_force": len(brute), "closure": len(closure), "equal": same}
        status = status if same else EXIT_FAIL
    _emit(out, cfg.out)
    return status


def cmd_ratio(cfg: RunConfig) -> int:
    vcfg = VerifyConfig(seed=cfg.seed, aut_cap=cfg.aut_cap)
    _emit(ratio_report(cfg.params(), vcfg), cfg.out)
    return EXIT_OK


COMMANDS = {"info": cmd_info, "verify": cmd_verify, "aut": cmd_aut, "oracle": cmd_oracle, "ratio": cmd_ratio}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgaut", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("pos", nargs="*", type=int, metavar="p n i", help="parameters, as an alternative to flags")
    ap.add_argument("--p", type=int)
    ap.add_argument("--n", type=int)
    ap.add_argument("--i", type=int)
    ap.add_argument("--d", type=int)
    ap.add_argument("--e", type=int)
    ap.add_argument("--suite", default="all", help="s2, aut-high, aut-lindop, aut-low, appendix or all")
    ap.add_argument("--mode", default="closure", choices=["closure", "brute"])
    ap.add_argument("--out")
    ap.add_argument("--cache", help=f"cache directory ('none' disables; default ${CACHE_ENV} or {DEFAULT_CACHE})")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=1729)
    ap.add_argument("--aut-cap", type=int, default=A.DEFAULT_AUT_CAP)
    ap.add_argument("--max-group", type=int, default=O.MAX_GROUP_ORDER)
    return ap


def parse_config(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_intermixed_args(argv)
    pos = list(args.pos)
    if pos and len(pos) != 3:
        raise ParameterError("positional parameters must be exactly p n i")
    p, n, i = (pos or [args.p, args.n, args.i])
    if args.p is not None and pos and (args.p, args.n, args.i) != tuple(pos):
        raise ParameterError("conflicting positional and flag parameters")
    if None in (p, n, i):
        raise ParameterError("p, n and i are required")
    return RunConfig(args.command, p, n, i, args.d, args.e, args.suite, args.mode, args.out, args.cache,
                     args.threads, args.seed, args.aut_cap, args.max_group)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
        cfg.params()
        return COMMANDS[cfg.command](cfg)
    except ParameterError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
