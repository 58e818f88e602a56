"""Brute-force group computations used as independent cross-checks.

Nothing here uses the named automorphisms or any structure result about S, T
or U.  ``brute_force_aut`` prunes only by element order (automorphisms preserve
it) and by the defining relations of the group, then keeps the homomorphisms
that are bijective.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import groups as G
from .automorphism import AutSet, aut_group, from_keys
from .errors import ParameterError, ResourceGuardError

MAX_GROUP_ORDER = 10**4
MAX_AUT_ORDER = 2 * 10**5
# rows * |G| per vectorised generation-check batch
BATCH_ELEMENTS = 1 << 22


@dataclass
class SearchStats:
    candidates: int = 0
    relation_failures: dict = field(default_factory=dict)
    generation_failures: int = 0
    found: int = 0
    elapsed: float = 0.0
    partition: int | None = None

    def merge(self, other: "SearchStats") -> "SearchStats":
        fails = dict(self.relation_failures)
        for k, v in other.relation_failures.items():
            fails[k] = fails.get(k, 0) + v
        return SearchStats(self.candidates + other.candidates, fails,
                           self.generation_failures + other.generation_failures,
                           self.found + other.found, self.elapsed + other.elapsed, None)

    def as_dict(self) -> dict:
        return {"candidates": self.candidates, "relation_failures": dict(sorted(self.relation_failures.items())),
                "generation_failures": self.generation_failures, "found": self.found,
                "elapsed": round(self.elapsed, 3)}


# --- generation checks ------------------------------------------------------------------

def _bijective_rows(group: G.ExponentGroup, keys: np.ndarray) -> np.ndarray:
    """For homomorphisms given by ``keys``, whether each is a bijection of the group."""
    n, k = group.order, len(group.moduli)
    cols = group.decode(np.arange(n, dtype=np.int64))
    out = np.zeros(len(keys), dtype=bool)
    step = max(1, BATCH_ELEMENTS // max(n, 1))
    for lo in range(0, len(keys), step):
        batch = keys[lo:lo + step]
        img = np.zeros((len(batch), n), dtype=np.int64)
        for j in range(k):
            m = group.moduli[j]
            pw = np.zeros((len(batch), m), dtype=np.int64)
            for e in range(1, m):
                pw[:, e] = group.mul_idx(pw[:, e - 1], batch[:, j])
            img = group.mul_idx(img, pw[:, cols[j]])
        hit = np.zeros((len(batch), n), dtype=bool)
        hit[np.arange(len(batch))[:, None], img] = True
        out[lo:lo + step] = hit.all(axis=1)
    return out


def _generates_by_closure(group: G.ExponentGroup, key: Sequence[int]) -> bool:
    """Closure of the images, stopping once it is larger than |G| / p."""
    bound = group.order // _smallest_prime(group.order)
    gens = np.unique(np.asarray(key, dtype=np.int64))
    seen = np.zeros(group.order, dtype=bool)
    seen[0] = True
    count, frontier = 1, np.zeros(1, dtype=np.int64)
    while frontier.size:
        nxt = np.unique(group.mul_idx(frontier[:, None], gens[None, :]).ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        count += nxt.size
        if count > bound:
            return True
        frontier = nxt
    return count == group.order


def _smallest_prime(m: int) -> int:
    if m == 1:
        return 1
    q = 2
    while m % q:
        q += 1
    return q


# --- the search ----------------------------------------------------------------------------

@dataclass
class _Plan:
    order: tuple
    candidates: list                 # per generator position
    level_rels: list                 # per level: list of (rel_id, label, relation, other positions)


def _plan(group: G.ExponentGroup) -> _Plan:
    k = len(group.moduli)
    order = tuple(group.search_order or range(k))
    orders = group.orders_idx()
    gens = group.gen_indices()
    candidates = [np.flatnonzero(orders == orders[g]) for g in gens]
    level_of = {pos: lvl for lvl, pos in enumerate(order)}
    level_rels: list = [[] for _ in range(k)]
    for rid, rel in enumerate(group.relations()):
        involved = {pos for pos, _ in rel.lhs + rel.rhs}
        if not involved:
            continue
        last = max(involved, key=level_of.__getitem__)
        others = tuple(sorted(involved - {last}))
        level_rels[level_of[last]].append((rid, rel.label, rel, last, others))
    return _Plan(order, candidates, level_rels)


FLUSH_ROWS = 1 << 16


def _generation_filter(group: G.ExponentGroup, keys: np.ndarray, generation: str) -> np.ndarray:
    if generation == "bijection":
        return _bijective_rows(group, keys)
    if generation == "closure":
        return np.array([_generates_by_closure(group, row) for row in keys], dtype=bool)
    raise ParameterError(f"unknown generation check {generation!r}")


def _search_partition(group: G.ExponentGroup, plan: _Plan, first_values: np.ndarray,
                      partition: int, generation: str,
                      max_aut: int | None = None) -> tuple[np.ndarray, SearchStats]:
    start = time.perf_counter()
    stats = SearchStats(partition=partition)
    k = len(plan.order)
    memo: dict = {}
    rows: list = []
    kept: list = []
    pending = [0, 0]  # rows awaiting the generation check, rows kept so far

    def flush() -> None:
        if not rows:
            return
        block = np.concatenate(rows)
        rows.clear()
        pending[0] = 0
        ok = _generation_filter(group, block, generation)
        stats.generation_failures += int(np.count_nonzero(~ok))
        kept.append(block[ok])
        pending[1] += int(np.count_nonzero(ok))
        if max_aut is not None and pending[1] > max_aut:
            raise ResourceGuardError(f"|Aut| exceeds the cap {max_aut}")

    def level_mask(level: int, assigned: dict, cand: np.ndarray) -> np.ndarray:
        mask = np.ones(cand.size, dtype=bool)
        for rid, label, rel, pos, others in plan.level_rels[level]:
            mkey = (rid, tuple(assigned[q] for q in others))
            m = memo.get(mkey)
            if m is None:
                values: list = [None] * k
                for q in others:
                    values[q] = assigned[q]
                values[pos] = cand
                m = G.eval_word_idx(group, rel.lhs, values) == G.eval_word_idx(group, rel.rhs, values)
                m = np.broadcast_to(m, cand.shape)
                memo[mkey] = m
            fails = int(cand.size - np.count_nonzero(m))
            if fails:
                stats.relation_failures[label] = stats.relation_failures.get(label, 0) + fails
            mask &= m
        return mask

    def rec(level: int, assigned: dict, cand: np.ndarray) -> None:
        stats.candidates += int(cand.size)
        surv = cand[level_mask(level, assigned, cand)]
        pos = plan.order[level]
        if level == k - 1:
            if surv.size:
                block = np.empty((surv.size, k), dtype=np.int64)
                for q, v in assigned.items():
                    block[:, q] = v
                block[:, pos] = surv
                rows.append(block)
                pending[0] += surv.size
                if pending[0] >= FLUSH_ROWS:
                    flush()
            return
        nxt = plan.candidates[plan.order[level + 1]]
        for v in surv:
            assigned[pos] = int(v)
            rec(level + 1, assigned, nxt)
        assigned.pop(pos, None)

    if generation not in ("bijection", "closure"):
        raise ParameterError(f"unknown generation check {generation!r}")
    if k:
        rec(0, {}, np.asarray(first_values, dtype=np.int64))
        flush()
        keys = np.concatenate(kept) if kept else np.zeros((0, k), dtype=np.int64)
    else:
        keys = np.zeros((1, 0), dtype=np.int64)
    stats.found = len(keys)
    stats.elapsed = time.perf_counter() - start
    return keys, stats


def _worker(args):
    group, chunk, part, generation, max_aut = args
    plan = _plan(group)
    return _search_partition(group, plan, chunk, part, generation, max_aut)


def brute_force_aut(group: G.ExponentGroup, params=None, *, threads: int = 1,
                    generation: str = "bijection", max_group: int = MAX_GROUP_ORDER,
                    max_aut: int = MAX_AUT_ORDER) -> tuple[AutSet, SearchStats]:
    """Every automorphism of ``group``, by backtracking over generator images.

    Work is partitioned by the image of the first generator in the search
    order; partitions are merged by sorting codes, so the result does not
    depend on ``threads``.
    """
    if group.order > max_group:
        raise ResourceGuardError(f"|G| = {group.order} exceeds the brute-force guard {max_group}")
    ag = aut_group(group)
    plan = _plan(group)
    k = len(plan.order)
    firsts = plan.candidates[plan.order[0]] if k else np.zeros(0, dtype=np.int64)
    nparts = max(1, min(threads, len(firsts))) if k else 1
    chunks = np.array_split(firsts, nparts) if k else [firsts]
    if threads > 1 and nparts > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_worker, [(group, ch, j, generation, max_aut) for j, ch in enumerate(chunks)]))
    else:
        results = [_search_partition(group, plan, ch, j, generation, max_aut) for j, ch in enumerate(chunks)]
    stats = SearchStats()
    parts = []
    for keys, st in results:
        stats = stats.merge(st)
        parts.append(keys)
    keys = np.concatenate(parts) if parts else np.zeros((0, k), dtype=np.int64)
    if len(keys) > max_aut:
        raise ResourceGuardError(f"|Aut| = {len(keys)} exceeds the cap {max_aut}")
    return from_keys(ag, keys, "brute-force"), stats


# --- subgroup scans ---------------------------------------------------------------------------

def _pairs(group: G.ExponentGroup, fn, chunk: int = 1 << 22) -> list:
    n = group.order
    allx = np.arange(n, dtype=np.int64)
    step = max(1, chunk // n)
    out = []
    for lo in range(0, n, step):
        xs = allx[lo:lo + step, None]
        out.append(fn(xs, allx[None, :]))
    return out


def brute_force_center(group: G.ExponentGroup) -> np.ndarray:
    """Indices of elements commuting with every element."""
    if group.order > MAX_GROUP_ORDER:
        raise ResourceGuardError("group too large for a full commuting scan")
    parts = _pairs(group, lambda x, y: (group.mul_idx(x, y) == group.mul_idx(y, x)).all(axis=1))
    return np.flatnonzero(np.concatenate(parts))


def brute_force_derived(group: G.ExponentGroup) -> np.ndarray:
    """Closure of all commutators [x, y]."""
    if group.order > MAX_GROUP_ORDER:
        raise ResourceGuardError("group too large for an all-pairs commutator scan")
    parts = _pairs(group, lambda x, y: np.unique(G.comm_idx(group, x, y)))
    comms = np.unique(np.concatenate(parts))
    return G.closure_idx(group, [int(c) for c in comms if c != 0])


def complement_search(group: G.ExponentGroup, normal_idx: np.ndarray):
    """An element u with G = N<u> and N cap <u> = 1, or None."""
    normal_idx = np.asarray(normal_idx, dtype=np.int64)
    mask = np.zeros(group.order, dtype=bool)
    mask[normal_idx] = True
    gens = group.gen_indices()
    conj = group.mul_idx(group.mul_idx(gens[:, None], normal_idx[None, :]), group.inv_idx(gens)[:, None])
    if not mask[conj].all():
        raise ParameterError("the given subgroup is not normal")
    q, rem = divmod(group.order, normal_idx.size)
    if rem:
        raise ParameterError("subgroup order does not divide the group order")
    cands = np.flatnonzero(group.orders_idx() == q)
    cur = cands.copy()
    ok = np.ones(cands.size, dtype=bool)
    for _ in range(1, q):
        ok &= ~mask[cur]
        cur = group.mul_idx(cur, cands)
    hits = cands[ok]
    return group.element(int(hits[0])) if hits.size else None


def characteristic_check(auts: AutSet, subgroup_idx: np.ndarray) -> tuple[bool, dict | None]:
    """Whether every automorphism maps the subgroup into itself, with a witness otherwise."""
    base = auts.base
    sub = np.asarray(subgroup_idx, dtype=np.int64)
    mask = np.zeros(base.order, dtype=bool)
    mask[sub] = True
    # a generating set of the subgroup, chosen greedily
    gens: list[int] = []
    current = np.zeros(1, dtype=np.int64)
    for x in sub:
        if current.size == sub.size:
            break
        if not np.isin(x, current):
            gens.append(int(x))
            current = G.closure_idx(base, gens)
    keys = auts.keys()
    for g in gens:
        img = auts.group.apply_rows(keys, g)
        bad = ~mask[img]
        if bad.any():
            j = int(np.flatnonzero(bad)[0])
            return False, {"automorphism": [list(base.element(int(v))) for v in keys[j]],
                           "element": list(base.element(g)),
                           "image": list(base.element(int(img[j])))}
    return True, None
