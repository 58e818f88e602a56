"""Per-claim verification checks grouped into suites.

Each check returns a record with status ``pass``, ``fail`` or ``skipped``; a
failure always carries a witness.  Check ids are stable for given parameters:
gated checks are reported as skipped rather than dropped.

Suites: ``s2`` (S and T themselves), ``aut-high`` (2i >= n, i != n-1),
``aut-lindop`` (i = n-1), ``aut-low`` (2i < n) and ``appendix`` (Aut(U)).
"""
from __future__ import annotations

import functools
import itertools
import time
import zlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import __version__
from . import automorphism as A
from . import groups as G
from . import modarith as M
from . import oracle as O
from .errors import ContractError, HypothesisFailure, ParameterError, ResourceGuardError

SUITES = ("s2", "aut-high", "aut-lindop", "aut-low", "appendix")


@dataclass
class VerifyConfig:
    seed: int = 1729
    assoc_samples: int = 100_000
    power_samples: int = 1000
    omega_samples: int = 64
    exhaustive_assoc: int = 243
    oracle_max_group: int = O.MAX_GROUP_ORDER
    aut_cap: int = A.DEFAULT_AUT_CAP
    threads: int = 1
    run_oracle: bool = True


@dataclass
class CheckRecord:
    id: str
    anchor: str
    status: str
    witness: Any = None
    ms: float = 0.0

    def as_dict(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": self.status, "ms": round(self.ms, 3)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    params: dict
    constants: dict
    checks: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    version: str = __version__
    seed: int = 0

    @property
    def failed(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    def record(self, cid: str) -> CheckRecord:
        return next(c for c in self.checks if c.id == cid)

    def as_dict(self) -> dict:
        return {"params": self.params, "constants": self.constants,
                "checks": [c.as_dict() for c in self.checks], "stats": self.stats,
                "version": self.version, "seed": self.seed}


class Skip(Exception):
    """Raised by a check that does not apply to the current parameters."""


def _fmt_key(base: G.ExponentGroup, key) -> list:
    return [list(base.element(int(k))) for k in key]


# --- shared lazily computed objects ------------------------------------------------------

class Context:
    """Lazily computed groups and automorphism sets for one parameter set."""

    def __init__(self, params: M.GroupParams, cfg: VerifyConfig | None = None) -> None:
        self.params = params
        self.cfg = cfg or VerifyConfig()
        self.consts = M.derive_appendix_constants(params.p, params.n, params.i)
        self.S = G.s_group(params)
        self.T = G.t_group(params)
        self.U = G.u_group(params)
        self.search_stats: dict = {}
        self._subs: dict = {}

    def rng(self, cid: str) -> np.random.Generator:
        return np.random.default_rng([self.cfg.seed, zlib.crc32(cid.encode())])

    # S side
    @functools.cached_property
    def t_in_s(self) -> np.ndarray:
        p = self.params
        gens = [self.S.index(x) for x in (self.S.make(1, 0, 0), self.S.make(0, 1, 0),
                                           self.S.make(0, 0, p.comm_step))]
        return G.closure_idx(self.S, gens)

    @functools.cached_property
    def family(self) -> str:
        return A.family_for(self.params)

    @functools.cached_property
    def named(self) -> dict:
        return A.named_generators(self.params, self.family)

    @functools.cached_property
    def ag(self) -> A.AutGroup:
        return A.aut_group(self.S)

    def key(self, label: str) -> tuple:
        return self.named[label].key

    def sub(self, labels: str) -> A.AutSet:
        if labels not in self._subs:
            try:
                self._subs[labels] = A.closure_keys(self.ag, [self.key(c) for c in labels], self.cfg.aut_cap,
                                                    f"closure<{labels}>")
            except ResourceGuardError as exc:
                self._subs[labels] = exc
        out = self._subs[labels]
        if isinstance(out, ResourceGuardError):
            raise out
        return out

    @functools.cached_property
    def aut(self) -> A.AutSet:
        return self.sub("".join(self.named))

    @property
    def brute(self) -> A.AutSet:
        return self._brute(self.S, "S")

    def _brute(self, group: G.ExponentGroup, tag: str) -> A.AutSet:
        cached = self._subs.get(("brute", tag))
        if cached is None:
            try:
                cached = self._brute_run(group, tag)
            except ResourceGuardError as exc:
                cached = exc
            self._subs[("brute", tag)] = cached
        if isinstance(cached, ResourceGuardError):
            raise cached
        return cached

    def _brute_run(self, group: G.ExponentGroup, tag: str) -> A.AutSet:
        if not self.cfg.run_oracle:
            raise ResourceGuardError("oracle runs disabled by configuration")
        if group.order > self.cfg.oracle_max_group:
            raise ResourceGuardError(f"|{tag}| = {group.order} is above the oracle guard")
        auts, stats = O.brute_force_aut(group, threads=self.cfg.threads,
                                        max_group=self.cfg.oracle_max_group, max_aut=self.cfg.aut_cap)
        self.search_stats[tag] = stats.as_dict()
        return auts

    @functools.cached_property
    def inn(self) -> A.AutSet:
        return A.closure_keys(self.ag, [A.inner(self.S, g).key for g in self.S.gens()], self.cfg.aut_cap, "Inn")

    # U side
    @functools.cached_property
    def app(self) -> dict:
        return A.appendix_generators(self.params, self.consts)

    @functools.cached_property
    def uag(self) -> A.AutGroup:
        return A.aut_group(self.U)

    def ukey(self, label: str) -> tuple:
        return self.app[label].key

    @functools.cached_property
    def u_aut(self) -> A.AutSet:
        return A.closure_keys(self.uag, [self.ukey(k) for k in ("alpha", "delta_x", "mu")], self.cfg.aut_cap,
                              "closure<alpha,delta_x,mu>")

    @functools.cached_property
    def u_inn(self) -> A.AutSet:
        return A.closure_keys(self.uag, [self.ukey("delta_x"), self.ukey("delta_y")], self.cfg.aut_cap, "Inn(U)")

    @property
    def u_brute(self) -> A.AutSet:
        return self._brute(self.U, "U")

    @functools.cached_property
    def s0(self) -> A.AutSet:
        return A.closure_keys(self.uag, [self.ukey(k) for k in ("alpha", "delta_x", "nu")], self.cfg.aut_cap,
                              "closure<alpha,delta_x,nu>")


# --- small helpers -------------------------------------------------------------------------

def _rel(ag: A.AutGroup, names: str | tuple, keys: dict, text: str, **vals) -> tuple[bool, Any]:
    names = tuple(names.split()) if isinstance(names, str) else names
    rel = G.parse_relation(text, names, **vals)
    values = [keys[nm] for nm in names]
    lhs, rhs = G.eval_word(ag, rel.lhs, values), G.eval_word(ag, rel.rhs, values)
    if lhs == rhs:
        return True, None
    witness = {"relation": text, "exponents": vals, "lhs": _fmt_key(ag.base, lhs),
               "rhs": _fmt_key(ag.base, rhs)}
    # lhs = inner(g) rhs for some g?  Then the relation still holds in Out.
    g = _conjugator(ag.base, ag.mul(lhs, ag.inv(rhs)))
    witness["holds_modulo_inner"] = g is not None
    if g is not None:
        witness["lhs_equals_inner_times_rhs"] = list(ag.base.element(g))
    return False, witness


def _conjugator(group: G.ExponentGroup, key) -> int | None:
    """Index of some g with g x g^-1 = key[j](x) on every generator, or None."""
    allg = np.arange(group.order, dtype=np.int64)
    ginv = group.inv_idx(allg)
    ok = np.ones(group.order, dtype=bool)
    for gen, img in zip(group.gen_indices(), key):
        ok &= group.mul_idx(group.mul_idx(allg, int(gen)), ginv) == int(img)
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None


def _readings(ag: A.AutGroup, names, keys: dict, readings: dict) -> tuple[bool, Any]:
    verdicts = {}
    for label, (text, vals) in readings.items():
        verdicts[label] = _rel(ag, names, keys, text, **vals)[0]
    passing = [k for k, v in verdicts.items() if v]
    return bool(passing), {"readings": verdicts, "passing": passing}


def _eq_sets(a: np.ndarray, b: np.ndarray) -> bool:
    return np.array_equal(np.unique(a), np.unique(b))


def _elements(group: G.ExponentGroup, idx) -> list:
    return [list(group.element(int(k))) for k in idx]


def _assoc(group: G.ExponentGroup, cfg: VerifyConfig, rng: np.random.Generator) -> tuple[bool, Any]:
    n = group.order
    if n <= cfg.exhaustive_assoc:
        x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        x, y, z = x.ravel(), y.ravel(), z.ravel()
    else:
        x, y, z = (rng.integers(0, n, cfg.assoc_samples) for _ in range(3))
    lhs = group.mul_idx(group.mul_idx(x, y), z)
    rhs = group.mul_idx(x, group.mul_idx(y, z))
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        j = bad[0]
        return False, {"triple": _elements(group, (x[j], y[j], z[j]))}
    # scalar and vectorised products must agree as well
    for j in range(min(200, x.size)):
        a, b = group.element(int(x[j])), group.element(int(y[j]))
        if group.index(group.mul(a, b)) != int(group.mul_idx(x[j], y[j])):
            return False, {"scalar_vs_vector": [list(a), list(b)]}
    return True, {"triples": int(x.size), "exhaustive": n <= cfg.exhaustive_assoc}


# --- suite: S and T --------------------------------------------------------------------------

def _s2_checks(ctx: Context) -> list:
    P, S, T, U = ctx.params, ctx.S, ctx.T, ctx.U
    p, n, i = P.p, P.n, P.i

    def orders():
        got = {"S": len(S.elements()), "T": len(T.elements()), "U": len(U.elements())}
        distinct = {k: len(set(g.elements())) for k, g in (("S", S), ("T", T), ("U", U))}
        want = {k: G.group_order(P, k) for k in got}
        closure = {"S": G.closure_idx(S, S.gen_indices()).size, "T": ctx.t_in_s.size}
        ok = got == want == distinct and closure["S"] == want["S"] and closure["T"] == want["T"]
        return ok, {"normal_forms": got, "formula": want, "closure": closure}

    def relations():
        bad = [(g.tag, r.label) for g in (S, T, U, G.heis_group(P))
               for r in g.relations() if not G.relation_holds(g, r, g.gens())]
        return not bad, {"failing": bad} if bad else None

    def assoc():
        out = {}
        for g in (S, T, U):
            ok, w = _assoc(g, ctx.cfg, ctx.rng(f"assoc-{g.tag}"))
            if not ok:
                return False, {g.tag: w}
            out[g.tag] = w
        return True, out

    def rank():
        z = G.frattini_rank(S, p)
        if n == 2:
            return z == 2 and S.order == p**3, {"z": z, "branch": "n=2: S is Heisenberg of order p^3"}
        return z == 3, {"z": z}

    def derived():
        oracle = O.brute_force_derived(S)
        closure = G.derived_subgroup_idx(S)
        el = S.make
        cl = lambda *xs: G.closure_idx(S, [S.index(x) for x in xs])
        witness: dict = {"order": int(oracle.size), "normal_closure_agrees": _eq_sets(oracle, closure)}
        ok = witness["normal_closure_agrees"]
        if 2 * i <= n:
            low = _eq_sets(cl(el(p, 0, 0), el(0, p, 0), el(0, 0, p ** (n - i - 1))), oracle)
            witness["low_formula"] = low
            ok &= low
        if 2 * i >= n:
            readings = {
                "a^p, c^p, c^(p^(i-1)) (as printed)": cl(el(p, 0, 0), el(0, 0, p), el(0, 0, p ** (i - 1))),
                "a^p, b^p, c^(p^(i-1))": cl(el(p, 0, 0), el(0, p, 0), el(0, 0, p ** (i - 1))),
            }
            verdicts = {k: _eq_sets(v, oracle) for k, v in readings.items()}
            witness["high_readings"] = verdicts
            witness["passing"] = [k for k, v in verdicts.items() if v]
            ok &= bool(witness["passing"])
        return ok, witness

    def heisenberg():
        H = G.heis_group(P)
        img = np.array([H.index(G.t_to_heisenberg(t, P)) for t in T.elements()], dtype=np.int64)
        x, y = np.meshgrid(np.arange(T.order), np.arange(T.order), indexing="ij")
        hom = np.array_equal(img[T.mul_idx(x, y)], H.mul_idx(img[x], img[y]))
        bij = np.unique(img).size == H.order == T.order
        return hom and bij, {"homomorphism": hom, "bijective": bij, "pairs": int(x.size)}

    def embed():
        img = np.array([S.index(G.t_embed(t, P)) for t in T.elements()], dtype=np.int64)
        x, y = np.meshgrid(np.arange(T.order), np.arange(T.order), indexing="ij")
        hom = np.array_equal(img[T.mul_idx(x, y)], S.mul_idx(img[x], img[y]))
        inj = np.unique(img).size == T.order
        image_is_t = _eq_sets(img, ctx.t_in_s)
        return hom and inj and image_is_t, {"homomorphism": hom, "injective": inj, "image": image_is_t}

    def commutator_central():
        d = S.index(S.commutator_element())
        z = O.brute_force_center(S)
        ok = bool(np.isin(d, z)) and S.comm(*S.gens()[:2]) == S.commutator_element()
        return ok, None if ok else {"commutator": list(S.commutator_element())}

    def binomial_grid():
        bad = []
        for q, a, c, b, ell in itertools.product((3, 5, 7), range(1, 5), range(1, 5), range(0, 4),
                                                  [x for x in range(-5, 6) if x]):
            if not M.check_lemma_uno(ell, a, c, b, q):
                bad.append((ell, a, c, b, q))
        return not bad, {"failures": bad[:10]} if bad else {"cases": 3 * 4 * 4 * 4 * 10}

    def power_shape():
        rng = ctx.rng("power-shape")
        step = P.comm_step
        k = ctx.cfg.power_samples
        ea = rng.integers(0, P.a_mod, k)
        eb = rng.integers(0, P.b_mod, k)
        ed = rng.integers(0, P.d_mod, k)
        ec = rng.integers(0, P.c_mod, k)
        bad = []
        for x, y, w, z in zip(ea, eb, ed, ec):
            v = S.make(int(x), int(y), int(w) * step)
            v = S.mul(v, S.make(0, 0, int(z)))
            a0, b0, c0 = S.pow(v, p)
            # A0 B0 D0 C^p with D0 and C^p both powers of c
            if a0 % p or b0 % p or (c0 - p * int(z)) % (p * step):
                bad.append([int(x), int(y), int(w), int(z)])
        return not bad, {"failures": bad[:5]} if bad else {"samples": k}

    def pth_powers():
        if n == 2:
            raise Skip("n = 2 is excluded")
        sp = G.pth_power_subgroup_idx(S, p)
        cols = S.decode(np.arange(S.order))
        form = np.flatnonzero((cols[0] % p == 0) & (cols[1] % p == 0) & (cols[2] % p == 0))
        ok = _eq_sets(sp, form)
        return ok, {"order": int(sp.size), "expected": int(form.size)}

    def characteristic():
        auts = ctx.brute
        ell = i if 2 * i <= n else n - i
        t = ctx.t_in_s
        tp = t[S.pow_idx(t, p**ell) == 0]
        keys = auts.keys()
        mask = np.zeros(S.order, dtype=bool)
        mask[t] = True
        for x in tp:
            img = ctx.ag.apply_rows(keys, int(x))
            if not mask[img].all():
                j = int(np.flatnonzero(~mask[img])[0])
                return False, {"element": list(S.element(int(x))), "automorphism": _fmt_key(S, keys[j])}
        char, witness = O.characteristic_check(auts, t)
        expected = 2 * i >= n
        out = {"small_elements_preserved": True, "characteristic": char, "expected": expected}
        if witness:
            out["witness"] = witness
        return char == expected, out

    def nonsplit():
        if n == 2:
            return ctx.t_in_s.size == S.order, {"branch": "n=2: T = S"}
        u = O.complement_search(S, ctx.t_in_s)
        return u is None, {"complement": list(u)} if u is not None else {"complement": None}

    def cross_de():
        d0 = next(x for x in range(2, p**n) if x % p and x != P.d)
        inv = M.inverse_mod(1 + d0 * p, p**n)
        e0 = (inv - 1) // p
        P0 = M.GroupParams(p, n, i, d0, e0)
        S0 = G.s_group(P0)
        r = next(r for r in range(1, p ** (n - 1) + 1) if r % p
                 and pow(1 + P.e * p, r, p ** (n - 1)) == (1 + e0 * p) % p ** (n - 1))
        f = A.make_map(S0, (S.make(r, 0, 0), S.make(0, 1, 0), S.make(0, 0, r)), "cross", target=S)
        hom = A.is_homomorphism(f)
        onto = G.closure_idx(S, [S.index(x) for x in f.images]).size == S.order
        return hom and onto and S0.order == S.order, {"d0": d0, "e0": e0, "r": r, "homomorphism": hom,
                                                      "surjective": onto}

    def center():
        z = O.brute_force_center(S)
        el = S.make
        if 2 * i >= n:
            gens = [el(0, 0, p ** (n - i - 1))]
            form = "<c^(p^(n-i-1))>"
        else:
            gens = [el(0, 0, P.comm_step), el(0, p ** (n - i - 1), 0)]
            form = "<d, b^(p^(n-i-1))>"
        want = G.closure_idx(S, [S.index(x) for x in gens])
        gm = G.center_idx(S)
        ok = _eq_sets(z, want) and _eq_sets(z, gm)
        return ok, {"order": int(z.size), "formula": form}

    def coincide():
        if 2 * i != n:
            raise Skip("only meaningful when 2i = n")
        same = (p**i == p ** (n - i)) and (p ** (n - i - 1) == p ** (i - 1))
        return same, {"a_order": P.a_mod, "commutator_exponent": P.comm_step}

    def constants():
        de = M.derive_de(p, n)
        c = ctx.consts
        ok = all(c.checks.values()) and de[0] == 1 and (1 + p) * (1 + de[1] * p) % p**n == 1 \
            and (de[1] - de[0]) % p != 0
        return ok, {"derive_de": list(de), **c.as_dict()}

    return [
        ("s2.constants", "canonical (d, e) and the existence constants satisfy their congruences", constants),
        ("s2.orders", "|S| = p^(2n-1) or p^(3n-2i-1); |T| = p^(n+i) or p^(3(n-i)); |U| = p^(2n-i)", orders),
        ("s2.relations", "normal-form arithmetic satisfies every defining relation of S, T, U, Heis", relations),
        ("s2.associativity", "multiplication is associative", assoc),
        ("s2.commutator-central", "[a, b] is central in S", commutator_central),
        ("s2.generator-count", "S needs 3 generators unless n = 2", rank),
        ("s2.derived-subgroup", "derived subgroup generated by a^p, b^p and a power of c", derived),
        ("s2.heisenberg", "T is isomorphic to a Heisenberg group", heisenberg),
        ("s2.t-embedding", "T embeds in S with d -> c^k", embed),
        ("s2.binomial-congruence", "(1 + l p^a)^(c p^b) = 1 + c l p^(a+b) mod p^(2a+b)", binomial_grid),
        ("s2.power-shape", "(ABDC)^p = A0 B0 D0 C^p with A0, B0, D0 in the p-th power subgroups", power_shape),
        ("s2.pth-power-subgroup", "S^p = {a^(pa) b^(pb) c^(pc)} for n != 2", pth_powers),
        ("s2.characteristic", "T characteristic iff 2i >= n; small elements of T map into T", characteristic),
        ("s2.nonsplit", "S is a nonsplit extension of T unless n = 2", nonsplit),
        ("s2.cross-de", "different admissible (d, e) give isomorphic groups", cross_de),
        ("s2.center", "center of S: <c^(p^(n-i-1))> if 2i >= n, <d, b^(p^(n-i-1))> if 2i < n", center),
        ("s2.presentations-coincide", "the two presentations agree when 2i = n", coincide),
    ]


# --- suite: Aut(S) for 2i >= n, i != n-1 ----------------------------------------------------------

def _high_relations(P: M.GroupParams, c: M.AppendixConstants) -> list:
    p, n, i, d, e = P.p, P.n, P.i, P.d, P.e
    q = p ** (n - i - 1)
    v = M.inverse_mod(d, p)
    return [
        ("A^x = 1", {"x": p ** (n - i)}), ("B^x = 1", {"x": p ** (n - i)}), ("C^x = 1", {"x": q}),
        ("C A C^-1 = A^x", {"x": 1 + e * p}), ("C B C^-1 = B^x", {"x": 1 + d * p}), ("A B = B A", {}),
        ("D^x = 1", {"x": p**i}), ("E^p = 1", {"p": p}), ("F^p = 1", {"p": p}), ("G^x = 1", {"x": p - 1}),
        ("H^2 = 1", {}), ("D E = E D", {}), ("D F = F D", {}), ("D G = G D", {}), ("E F = F E", {}),
        ("G E G^-1 = E^x", {"x": c.h0**2}), ("G F G^-1 = F^x", {"x": c.g0**2}),
        ("H E H^-1 = A^-q F", {"q": q}), ("H F H^-1 = B^q E", {"q": q}), ("H G H^-1 = G^-1", {}),
        ("D A D^-1 = A^x", {"x": 1 + q}), ("D B = B D", {}), ("D C = C D", {}),
        ("E A E^-1 = A B^q", {"q": q}), ("E B = B E", {}), ("E C = C E", {}),
        ("F A = A F", {}), ("F B F^-1 = A^q B", {"q": q}), ("F C = C F", {}),
        ("G A G^-1 = A^x", {"x": c.g0}), ("G B G^-1 = B^x", {"x": c.h0}), ("G C = C G", {}),
        ("H A H^-1 = B", {}), ("H B H^-1 = A", {}), ("H C H^-1 = C^-1", {}),
        ("H D H^-1 = D C^x", {"x": v * p ** (n - i - 2)}),
    ]


def _gate(ctx: Context, suite: str) -> str | None:
    P = ctx.params
    if suite == "aut-high" and (P.regime is not M.Regime.HIGH or P.top):
        return "regime mismatch: needs 2i >= n and i != n-1"
    if suite == "aut-lindop" and not P.top:
        return "regime mismatch: needs i = n-1"
    if suite == "aut-low" and P.regime is not M.Regime.LOW:
        return "regime mismatch: needs 2i < n"
    return None


def _relation_entries(suite: str, ctx: Context, rels: list, names: str, keys: Callable[[], dict],
                      ag: Callable[[], A.AutGroup], gates: dict | None = None) -> list:
    out = []
    gates = gates or {}
    for j, (text, vals) in enumerate(rels, 1):
        def fn(text=text, vals=vals, j=j):
            reason = gates.get(j)
            if reason:
                raise Skip(reason)
            return _rel(ag(), names, keys(), text, **vals)
        out.append((f"{suite}.rel{j:02d}", text, fn))
    return out


def _high_checks(ctx: Context) -> list:
    P = ctx.params
    p, n, i = P.p, P.n, P.i
    names = "A B C D E F G H"
    keys = lambda: {k: ctx.key(k) for k in names.split()}
    rels = _high_relations(P, ctx.consts) if not _gate(ctx, "aut-high") else []
    expected = 2 * p ** (3 * n - 2 * i + 1) * (p - 1)

    def generators():
        return True, {k: _fmt_key(ctx.S, f.key) for k, f in ctx.named.items()}

    def order():
        return len(ctx.aut) == expected, {"closure": len(ctx.aut), "formula": expected}

    def oracle():
        same = ctx.brute.same_elements(ctx.aut)
        return same, {"brute_force": len(ctx.brute), "closure": len(ctx.aut)}

    def delta():
        # automorphisms w with w(c) c^-1 in T
        mask = np.zeros(ctx.S.order, dtype=bool)
        mask[ctx.t_in_s] = True
        keys_ = ctx.aut.keys()
        cinv = int(ctx.S.inv_idx(np.array([ctx.S.strides[2]]))[0])
        in_delta = mask[ctx.S.mul_idx(keys_[:, 2], cinv)]
        delta_ = ctx.aut.filter(in_delta, "ker lambda")
        gen7 = ctx.sub("ABCDEFG")
        normal, _ = A.is_normal(ctx.aut, delta_)
        h_out = ctx.key("H") not in delta_
        ok = delta_.same_elements(gen7) and len(ctx.aut) == 2 * len(delta_) and normal and h_out
        return ok, {"delta": len(delta_), "index": len(ctx.aut) // max(len(delta_), 1), "normal": normal,
                    "equals_ABCDEFG": delta_.same_elements(gen7)}

    def delta_semidirect():
        delta_, inn, k = ctx.sub("ABCDEFG"), ctx.inn, ctx.sub("DEFG")
        normal, _ = A.is_normal(delta_, inn)
        meet = len(A.intersection(inn, k))
        cover = np.array_equal(A.product_codes(ctx.ag, inn, k), delta_.codes)
        return normal and meet == 1 and cover, {"normal": normal, "intersection": meet, "product_covers": cover,
                                                "DEFG_order": len(k)}

    def inn_order():
        want = p ** (3 * (n - i) - 1)
        z = O.brute_force_center(ctx.S).size
        same = ctx.inn.same_elements(ctx.sub("ABC"))
        return len(ctx.inn) == want == ctx.S.order // z and same, {"inn": len(ctx.inn), "formula": want,
                                                                   "S/Z": ctx.S.order // z}

    def defg_order():
        want = p ** (i + 2) * (p - 1)
        return len(ctx.sub("DEFG")) == want, {"order": len(ctx.sub("DEFG")), "formula": want}

    def sylow():
        pi = ctx.sub("ABCDEF")
        want = p ** (3 * n - 2 * i + 1)
        index = len(ctx.aut) // len(pi)
        normal, _ = A.is_normal(ctx.aut, pi)
        kg = A.kernel_gamma(ctx.aut)
        ok = len(pi) == want and index == 2 * (p - 1) and index % p and normal and kg.same_elements(pi)
        return bool(ok), {"order": len(pi), "index": index, "normal": normal, "kernel_gamma": len(kg)}

    def frattini():
        pi = ctx.sub("ABCDEF")
        z = A.frattini_rank_autgroup(pi)
        out: dict = {"z": z, "order": len(pi)}
        if z < 6:
            out["generating_subsets"] = ["".join(c) for c in itertools.combinations("ABCDEF", z)
                                         if ctx.sub("".join(c)).same_elements(pi)]
        return z == 6, out

    def out_order():
        want = 2 * p ** (i + 2) * (p - 1)
        got = A.quotient_order(ctx.aut, ctx.inn)
        return got == want, {"out": got, "formula": want}

    def ker_lambda():
        kl = A.kernel_lambda_pointwise(ctx.aut)
        S = ctx.S
        gen = A.checked(A.make_map(S, (S.make(1, 0, 0), S.make(0, 1, 0), S.make(0, 0, 1 + p ** (n - i))), "K"))
        cyc = A.closure_keys(ctx.ag, [gen.key])
        dp = A.closure_keys(ctx.ag, [ctx.ag.pow(ctx.key("D"), p)])
        ok = len(kl) == p ** (i - 1) and kl.same_elements(cyc) and kl.same_elements(dp)
        return ok, {"order": len(kl), "formula": p ** (i - 1), "generated_by_c_map": kl.same_elements(cyc),
                    "equals_Dp": kl.same_elements(dp)}

    def complete():
        failing = [t for t, v in rels if not _rel(ctx.ag, names, keys(), t, **v)[0]]
        return not failing and len(ctx.aut) == expected, {"failing": failing, "order": len(ctx.aut)}

    entries = [
        ("aut-high.generators", "A..H are automorphisms", generators),
        ("aut-high.order", "|Aut(S)| = 2 p^(3n-2i+1) (p-1)", order),
        ("aut-high.oracle", "brute-force Aut(S) equals the closure of A..H", oracle),
        ("aut-high.delta", "ker(lambda) = <A..G> has index 2 and Aut = Delta x| <H>", delta),
        ("aut-high.delta-semidirect", "Delta = Inn x| <D, E, F, G>", delta_semidirect),
        ("aut-high.inn-order", "|Inn(S)| = p^(3(n-i)-1) = |S / Z(S)|", inn_order),
        ("aut-high.defg-order", "|<D, E, F, G>| = p^(i+2) (p-1)", defg_order),
        ("aut-high.sylow", "Pi = <A..F> is a normal Sylow p-subgroup equal to ker(Gamma)", sylow),
        ("aut-high.frattini", "Pi cannot be generated by fewer than 6 elements", frattini),
        ("aut-high.out-order", "|Out(S)| = 2 p^(i+2) (p-1)", out_order),
        ("aut-high.ker-lambda", "ker(Lambda) is cyclic of order p^(i-1), generated by c -> c^(1+p^(n-i)), = <D^p>",
         ker_lambda),
        ("aut-high.presentation-complete", "listed relations hold and the group has the bound order", complete),
    ]
    return entries + _relation_entries("aut-high", ctx, rels, names, keys, lambda: ctx.ag)


# --- suite: i = n - 1 ---------------------------------------------------------------------------------

def _top_relations(P: M.GroupParams, c: M.AppendixConstants, with_g: bool = True) -> list:
    p, n = P.p, P.n
    r, s, t = c.r, c.s, c.t_lindop
    rels = [
        ("A^p = 1", {"p": p}), ("B^p = 1", {"p": p}), ("A B = B A", {}),
        ("C^p = 1", {"p": p}), ("D^2 = E^x", {"x": (p - 1) // 2}), ("E^x = 1", {"x": p - 1}),
        ("F^x = 1", {"x": p - 1}), ("D E D^-1 = E^-1", {}), ("D F D^-1 = E^-1 F", {}),
        ("E F = F E", {}), ("E C E^-1 = A^-t C^x", {"t": t, "x": r * r}), ("F C F^-1 = C^r", {"r": r}),
    ]
    for k in range(p - 1):
        rels.append(("A^x B^-y D C^z D = E^k C^-z D C^-w",
                     {"x": (r**k - 1) // 2, "y": (s**k + 1) // 2, "z": s**k, "w": r**k, "k": k}))
    rels += [
        ("C A C^-1 = A", {}), ("C B C^-1 = A B", {}), ("D A D^-1 = B", {}), ("D B D^-1 = A^-1", {}),
        ("E A E^-1 = A^r", {"r": r}), ("E B E^-1 = B^s", {"s": s}), ("F A F^-1 = A^r", {"r": r}),
        ("F B F^-1 = B", {}),
    ]
    if with_g:
        rels.insert(7, ("G^x = 1", {"x": p ** (n - 2)}))
        rels += [(f"{x} G = G {x}", {}) for x in "ABCDEF"]
    return rels


def _top_checks(ctx: Context) -> list:
    P = ctx.params
    p, n = P.p, P.n
    names = "A B C D E F G"
    keys = lambda: {k: ctx.key(k) for k in names.split()}
    gated = _gate(ctx, "aut-lindop")
    rels = _top_relations(P, ctx.consts) if not gated else []
    expected = p ** (n + 1) * (p - 1) ** 2 * (p + 1)
    t_expected = p**3 * (p - 1) ** 2 * (p + 1)

    @functools.lru_cache(maxsize=None)
    def restricted() -> dict:
        return {k: A.restrict_to_t(ctx.named[k]) for k in "ABCDEF"}

    def generators():
        return True, {k: _fmt_key(ctx.S, f.key) for k, f in ctx.named.items()}

    def order():
        return len(ctx.aut) == expected, {"closure": len(ctx.aut), "formula": expected}

    def oracle():
        return ctx.brute.same_elements(ctx.aut), {"brute_force": len(ctx.brute), "closure": len(ctx.aut)}

    def ker_lambda():
        kl = A.kernel_lambda_pointwise(ctx.aut)
        g = ctx.sub("G")
        return kl.same_elements(g) and len(g) == p ** (n - 2), {"order": len(kl), "formula": p ** (n - 2)}

    def direct():
        g, rest = ctx.sub("G"), ctx.sub("ABCDEF")
        central = all(ctx.ag.mul(ctx.key("G"), ctx.key(k)) == ctx.ag.mul(ctx.key(k), ctx.key("G"))
                      for k in "ABCDEF")
        meet = len(A.intersection(g, rest))
        cover = np.array_equal(A.product_codes(ctx.ag, g, rest), ctx.aut.codes)
        return central and meet == 1 and cover, {"central": central, "intersection": meet, "product_covers": cover,
                                                 "image_order": len(rest)}

    def aut_t():
        res = restricted()
        tag = A.aut_group(ctx.T)
        closure = A.closure_keys(tag, [f.key for f in res.values()])
        rels0 = _top_relations(P, ctx.consts, with_g=False)
        k0 = {k: f.key for k, f in res.items()}
        failing = [t for t, v in rels0 if not _rel(tag, "A B C D E F", k0, t, **v)[0]]
        out = {"closure": len(closure), "formula": t_expected, "failing_relations": failing}
        ok = len(closure) == t_expected and not failing
        if ctx.cfg.run_oracle:
            brute, st = O.brute_force_aut(ctx.T)
            out["brute_force"] = len(brute)
            ok &= brute.same_elements(closure)
        return ok, out

    def complete():
        failing = [t for t, v in rels if not _rel(ctx.ag, names, keys(), t, **v)[0]]
        return not failing and len(ctx.aut) == expected, {"failing": failing, "order": len(ctx.aut)}

    entries = [
        ("aut-lindop.generators", "A..G are automorphisms", generators),
        ("aut-lindop.order", "|Aut(S)| = p^(n+1) (p-1)^2 (p+1)", order),
        ("aut-lindop.oracle", "brute-force Aut(S) equals the closure of A..G", oracle),
        ("aut-lindop.ker-lambda", "ker(Lambda) = <G> is cyclic of order p^(n-2)", ker_lambda),
        ("aut-lindop.direct-product", "Aut(S) = ker(Lambda) x Im(Lambda)", direct),
        ("aut-lindop.aut-t", "|Aut(T)| = p^3 (p-1)^2 (p+1), generated by the restrictions of A..F", aut_t),
        ("aut-lindop.presentation-complete", "listed relations hold and the group has the stated order", complete),
    ]
    return entries + _relation_entries("aut-lindop", ctx, rels, names, keys, lambda: ctx.ag)


# --- suite: Aut(S) for 2i < n ----------------------------------------------------------------------------

def _low_relations(P: M.GroupParams, c: M.AppendixConstants) -> tuple[list, dict]:
    """The listed relations with their side conditions (index -> skip reason)."""
    p, n, i, d, e = P.p, P.n, P.i, P.d, P.e
    g0, h0 = c.g0, c.h0
    q2 = p ** (n - i - 2)
    rels = [
        ("L^x = 1", {"x": p**i}), ("M^x = 1", {"x": p ** (n - i - 1)}), ("N^x = 1", {"x": p ** (n - i - 1)}),
        ("N L N^-1 = L^x", {"x": 1 + e * p}), ("N M N^-1 = M^x", {"x": 1 + d * p}), ("L M = M L", {}),
        ("U^p = L", {"p": p}), ("V^x = 1", {"x": p**i}), ("W^p = 1", {"p": p}), ("X^p = 1", {"p": p}),
        ("Y^p = 1", {"p": p}), ("Z^x = 1", {"x": p - 1}),
        ("V W = W V", {}), ("V Y = Y V", {}), ("V Z = Z V", {}), ("V X = X V", {}),
        ("Z L Z^-1 = L^x", {"x": g0}),
        None,  # Z M Z^-1, adjudicated separately
        ("Z N = N Z", {}), ("Y L Y^-1 = L", {}), ("Y M Y^-1 = M", {}), ("Y N = N Y", {}),
        ("X L X^-1 = L", {}), ("X M X^-1 = L^x M", {"x": p ** (i - 1)}), ("X N = N X", {}),
        ("W L W^-1 = L", {}), ("W M W^-1 = M", {}), ("W N = N W", {}),
        ("V L V^-1 = L", {}), ("V M V^-1 = M", {}), ("V N V^-1 = N", {}),
        ("U L U^-1 = L", {}), ("U M U^-1 = M N^x", {"x": q2}), ("U N U^-1 = L^-e N", {"e": e}),
        ("W X = X W", {}), ("Y X Y^-1 = X", {}), ("Y X Y^-1 = L X", {}), ("W Y = Y W", {}),
        ("Z W Z^-1 = W^x", {"x": h0 * h0}), ("Z X Z^-1 = X^x", {"x": g0 * g0}), ("Z Y Z^-1 = Y^x", {"x": h0}),
        ("U Y U^-1 = V^x Y", {"x": e * p ** (i - 1)}),
        None,  # U Y U^-1 for i = 1, adjudicated separately
        ("U W U^-1 = M^x W", {"x": q2}), ("U V U^-1 = V", {}), ("U X U^-1 = X", {}),
        ("U Z U^-1 = Z N^x U^y", {"x": q2 * (h0 - 1) // 2, "y": h0 - 1}),
    ]
    gates: dict = {}
    pos = {text: j for j, item in enumerate(rels, 1) if item for text in [item[0]]}
    if i == 1:
        gates[pos["Y X Y^-1 = X"]] = "stated for i > 1"
        gates[pos["U Y U^-1 = V^x Y"]] = "stated for i > 1"
    else:
        gates[pos["Y X Y^-1 = L X"]] = "stated for i = 1"
    if n <= 2 * i + 1:
        for t in ("U W U^-1 = M^x W", "U V U^-1 = V", "U X U^-1 = X", "U Z U^-1 = Z N^x U^y"):
            gates[pos[t]] = "stated for n > 2i+1"
    return rels, gates


def _low_checks(ctx: Context) -> list:
    P = ctx.params
    p, n, i, e = P.p, P.n, P.i, P.e
    names = "L M N U V W X Y Z"
    keys = lambda: {k: ctx.key(k) for k in names.split()}
    gated = _gate(ctx, "aut-low")
    rels, gates = _low_relations(P, ctx.consts) if not gated else ([], {})
    expected = p ** (2 * n + 2) * (p - 1)
    boundary = n == 2 * i + 1
    S = ctx.S

    def t_preserving(auts: A.AutSet) -> A.AutSet:
        gens = [S.index(S.make(1, 0, 0)), S.index(S.make(0, 1, 0)), S.index(S.make(0, 0, P.comm_step))]
        return A.preserving(auts, ctx.t_in_s, gens)

    def generators():
        return True, {k: _fmt_key(S, f.key) for k, f in ctx.named.items()}

    def g_preserves():
        g = ctx.sub("LMNVWXYZ")
        pres = t_preserving(ctx.aut)
        ok = len(t_preserving(g)) == len(g) and pres.same_elements(g)
        return ok, {"G": len(g), "preserving_T": len(pres)}

    def aut_gu():
        g, u = ctx.sub("LMNVWXYZ"), ctx.sub("U")
        gu = A.product_codes(ctx.ag, g, u)
        ug = A.product_codes(ctx.ag, u, g)
        ok = np.array_equal(gu, ctx.aut.codes) and np.array_equal(ug, ctx.aut.codes)
        return ok, {"GU": int(gu.size), "UG": int(ug.size), "Aut": len(ctx.aut)}

    def order():
        g = ctx.sub("LMNVWXYZ")
        ok = len(ctx.aut) == expected and len(ctx.aut) == p * len(g)
        return ok, {"closure": len(ctx.aut), "formula": expected, "index_G": len(ctx.aut) // len(g)}

    def oracle():
        return ctx.brute.same_elements(ctx.aut), {"brute_force": len(ctx.brute), "closure": len(ctx.aut)}

    def inn():
        want = p ** (2 * n - i - 2)
        z = O.brute_force_center(S).size
        return len(ctx.inn) == want == S.order // z, {"inn": len(ctx.inn), "formula": want}

    def g_mod_inn():
        want = p ** (i + 3) * (p - 1)
        got = A.quotient_order(ctx.sub("LMNVWXYZ"), ctx.inn)
        return got == want, {"order": got, "formula": want}

    def g_semidirect():
        if i == 1:
            raise Skip("stated for i > 1")
        g, k = ctx.sub("LMNVWXYZ"), ctx.sub("VWXYZ")
        meet = len(A.intersection(ctx.inn, k))
        cover = np.array_equal(A.product_codes(ctx.ag, ctx.inn, k), g.codes)
        normal, _ = A.is_normal(g, ctx.inn)
        return meet == 1 and cover and normal, {"intersection": meet, "product_covers": cover, "normal": normal}

    def phi():
        f = ctx.sub("LMNVWXY")
        kg = A.kernel_gamma(ctx.aut)
        normal, _ = A.is_normal(ctx.aut, f)
        outside = [x for x in "LMNVWXY" if ctx.key(x) not in kg]
        return kg.same_elements(f) and normal, {"Phi": len(f), "kernel_gamma": len(kg), "normal": normal,
                                                "generators_outside_kernel_gamma": outside}

    def pi():
        full, short, f, u = ctx.sub("LMNUVWXY"), ctx.sub("MNUVWXY"), ctx.sub("LMNVWXY"), ctx.sub("U")
        prod = A.product_codes(ctx.ag, f, u)
        normal, _ = A.is_normal(ctx.aut, full)
        z = ctx.sub("Z")
        meet = len(A.intersection(full, z))
        cover = np.array_equal(A.product_codes(ctx.ag, full, z), ctx.aut.codes)
        mz = ctx.sub("MNUVWXYZ").same_elements(ctx.aut)
        ok = (full.same_elements(short) and np.array_equal(prod, full.codes) and normal
              and len(full) == p ** (2 * n + 2) and meet == 1 and cover and mz)
        return ok, {"order": len(full), "normal": normal, "Pi_cap_Z": meet, "product_covers": cover,
                    "MNUVWXYZ_is_Aut": mz}

    def frattini():
        if boundary:
            raise Skip("stated for n != 2i+1")
        pi = ctx.sub("LMNUVWXY")
        z = A.frattini_rank_autgroup(pi)
        out: dict = {"z": z, "order": len(pi)}
        if z < 7:
            # direct evidence independent of the Frattini computation
            out["generating_subsets"] = ["".join(c) for c in itertools.combinations("MNUVWXY", z)
                                         if ctx.sub("".join(c)).same_elements(pi)]
        return z == 7, out

    def not_normal():
        if boundary:
            raise Skip("stated for n != 2i+1")
        g = ctx.sub("LMNVWXYZ")
        normal, witness = A.is_normal(ctx.aut, g)
        ag = ctx.ag
        uzu = ag.mul(ag.mul(ctx.key("U"), ctx.key("Z")), ag.inv(ctx.key("U")))
        outside = uzu not in g
        return (not normal) and outside, {"normal": normal, "UZU^-1_in_G": not outside, "witness": witness}

    def complete():
        if boundary:
            raise Skip("the listed relations are not claimed to be complete when n = 2i+1")
        failing = []
        for j, item in enumerate(rels, 1):
            if item is None or j in gates:
                continue
            if not _rel(ctx.ag, names, keys(), item[0], **item[1])[0]:
                failing.append(item[0])
        return not failing and len(ctx.aut) == expected, {"failing": failing, "order": len(ctx.aut)}

    def u_inverse():
        q2 = p ** (n - i - 2)
        b_img = S.mul(S.mul(S.make(0, 1, 0), S.make(-e * q2, 0, 0)), S.make(0, 0, -q2))
        f = A.checked(A.make_map(S, (S.make(1, 0, 0), b_img, S.mul(S.make(e, 0, 0), S.make(0, 0, 1))), "U'"))
        inv = ctx.ag.inv(ctx.key("U"))
        return f.key == inv, {"computed": _fmt_key(S, inv)}

    def sum_grid():
        bad, tried, premise = [], 0, 0
        for q in (3, 5, 7):
            for a in range(0, 3):
                for b in range(1, 5):
                    for z in range(-30, 31):
                        tried += 1
                        try:
                            if not M.check_lemma_sumalinda(z, a, b, q):
                                bad.append((z, a, b, q))
                        except HypothesisFailure:
                            premise += 1
        return not bad, {"cases": tried, "premise_holds": tried - premise, "failures": bad[:5]}

    def zm():
        if gated:
            raise Skip(gated)
        c = ctx.consts
        return _readings(ctx.ag, names, keys(), {
            "M^h0": ("Z M Z^-1 = M^x", {"x": c.h0}),
            "M^g0": ("Z M Z^-1 = M^x", {"x": c.g0}),
        })

    def uy():
        if gated:
            raise Skip(gated)
        if not (i == 1 and n > 3):
            raise Skip("stated for i = 1, n > 3")
        x = p ** (n - 3)
        ok, witness = _readings(ctx.ag, names, keys(), {
            "N^(p^(n-3)) V^e Y (as printed)": ("U Y U^-1 = N^x V^e Y", {"x": x, "e": e}),
            "V^e Y": ("U Y U^-1 = V^e Y", {"e": e}),
        })
        # every exponent pair (s, t) with U Y U^-1 = N^s V^t Y, for the record
        ag, k = ctx.ag, keys()
        target = ag.mul(ag.mul(k["U"], k["Y"]), ag.inv(k["U"]))
        sols = [[s, t] for s in range(p ** (n - i - 1)) for t in range(p**i)
                if ag.mul(ag.mul(ag.pow(k["N"], s), ag.pow(k["V"], t)), k["Y"]) == target]
        witness["solutions_N^s_V^t_Y"] = sols
        return ok, witness

    entries = [
        ("aut-low.generators", "U, V, W, X, Y, Z are automorphisms", generators),
        ("aut-low.g-preserves-t", "G = <L,M,N,V,W,X,Y,Z> is the stabiliser of T", g_preserves),
        ("aut-low.aut-gu", "Aut(S) = G<U> = <U>G", aut_gu),
        ("aut-low.order", "|Aut(S)| = p^(2n+2) (p-1) and [Aut(S) : G] = p", order),
        ("aut-low.oracle", "brute-force Aut(S) equals the closure of L..Z", oracle),
        ("aut-low.inn", "|Inn(S)| = p^(2n-i-2)", inn),
        ("aut-low.g-mod-inn", "|G / Inn(S)| = p^(i+3) (p-1)", g_mod_inn),
        ("aut-low.g-semidirect", "G = Inn(S) x| <V, W, X, Y, Z> for i > 1", g_semidirect),
        ("aut-low.phi", "Phi = <L,M,N,V,W,X,Y> is ker(Gamma) and normal", phi),
        ("aut-low.pi", "Pi = <L..Y> = <M..Y> = Phi<U> is a normal Sylow subgroup; Aut = Pi x| <Z>", pi),
        ("aut-low.frattini", "Pi cannot be generated by fewer than 7 elements (n != 2i+1)", frattini),
        ("aut-low.g-not-normal", "G is not normal and U Z U^-1 is not in G (n != 2i+1)", not_normal),
        ("aut-low.presentation-complete", "listed relations hold and the group has the bound order (n != 2i+1)",
         complete),
        ("aut-low.u-inverse", "U^-1: b -> b a^(-e p^(n-i-2)) c^(-p^(n-i-2)), c -> a^e c", u_inverse),
        ("aut-low.geometric-sum", "z^(p^a) = 1 mod p^b implies 1 + z + ... + z^(p^a-1) = p^a mod p^b", sum_grid),
        ("aut-low.rel-zm", "Z M Z^-1, printed with an undefined symbol: readings M^h0 and M^g0", zm),
        ("aut-low.rel-uy", "U Y U^-1 = N^(p^(n-3)) V^e Y for i = 1, n > 3", uy),
    ]
    plain = [(t if t is not None else None) for t in rels]
    rel_entries = []
    for j, item in enumerate(plain, 1):
        if item is None:
            continue
        text, vals = item

        def fn(text=text, vals=vals, j=j):
            if j in gates:
                raise Skip(gates[j])
            return _rel(ctx.ag, names, keys(), text, **vals)
        rel_entries.append((f"aut-low.rel{j:02d}", text, fn))
    return entries + rel_entries


# --- suite: Aut(U) ------------------------------------------------------------------------------------------

def _app_relations(P: M.GroupParams, c: M.AppendixConstants) -> tuple[list, list]:
    p, n, i = P.p, P.n, P.i
    low = 2 * i <= n
    j = i if low else n - i
    comm = p ** (n - i - 1) * (p - 1) * c.t if low else p ** (i - 1) * (p - 1) * c.t
    main = [
        ("alpha^x = 1", {"x": p**j}), ("dx^x = 1", {"x": p ** (n - i)}), ("mu^x = 1", {"x": p ** (n - 1) * (p - 1)}),
        ("alpha dx alpha^-1 = dx mu^x", {"x": comm}), ("mu dx mu^-1 = dx^g", {"g": c.g}),
        ("mu alpha mu^-1 = alpha^h", {"h": c.h}),
    ]
    sylow = [
        ("alpha^x = 1", {"x": p**j}), ("nu^x = 1", {"x": p ** (n - 1)}), ("dx^x = 1", {"x": p ** (n - i)}),
        ("alpha dx alpha^-1 = dx nu^x", {"x": p ** (n - i - 1) if low else p ** (i - 1)}),
        ("nu dx nu^-1 = dx^x", {"x": 1 + c.d * p}), ("nu alpha nu^-1 = alpha^x", {"x": 1 + c.e * p}),
    ]
    return main, sylow


def _app_checks(ctx: Context) -> list:
    P, U = ctx.params, ctx.U
    p, n, i = P.p, P.n, P.i
    c = ctx.consts
    low = 2 * i <= n
    j = i if low else n - i
    k_shift = p ** (n - 2 * i) if low else 1
    names = "alpha dx mu nu dy beta"

    def keys() -> dict:
        return {"alpha": ctx.ukey("alpha"), "dx": ctx.ukey("delta_x"), "mu": ctx.ukey("mu"),
                "nu": ctx.ukey("nu"), "dy": ctx.ukey("delta_y"), "beta": ctx.ukey("beta")}

    main, sylow_rels = _app_relations(P, c)
    aut_order = p ** (2 * n - 1) * (p - 1) if low else p ** (3 * n - 2 * i - 1) * (p - 1)
    uag = lambda: ctx.uag

    def valuation_grid():
        bad, cases = [], 0
        for q in (3, 5, 7):
            for r in [x * q**a for a in range(1, 4) for x in range(-4, 5) if x and x % q]:
                for s in range(1, 3 * q * q + 1):
                    cases += 1
                    if not M.check_lemma_cuno(r, s, q):
                        bad.append((r, s, q))
        return not bad, {"cases": cases, "failures": bad[:5]}

    def order_formula():
        orders = U.orders_idx()
        formula = np.array([G.u_order(U.element(k), P) for k in range(U.order)])
        bad = np.flatnonzero(orders != formula)
        return not bad.size, {"elements": U.order} if not bad.size else {"element": list(U.element(int(bad[0])))}

    def normal_cyclic():
        bad, tried = [], 0
        xp = U.make(p**i, 0)
        for a in range(1, p**n + 1):
            if a % p == 0:
                continue
            for b in range(1, p ** (n - i) + 1):
                z = U.make(a, b)
                normal = G.u_normal_cyclic(z, P)
                crit = M.vp(b, p) >= n - 2 * i
                contains = xp in set(G.cyclic_subgroup(U, z))
                tried += 1
                if normal != crit or normal != contains:
                    bad.append([a, b])
        return not bad, {"cases": tried, "failures": bad[:5]}

    def alpha_order():
        got = A.aut_order(ctx.app["alpha"])
        want = p**i if low else p ** (n - i)
        img = ctx.app["alpha"].images[0]
        return got == want and img == U.make(1, k_shift), {"order": got, "formula": want, "alpha(x)": list(img)}

    def conj_formula():
        rng = ctx.rng("omega")
        units = [r for r in range(1, p**n) if r % p]
        if len(units) > ctx.cfg.omega_samples:
            units = sorted(rng.choice(units, ctx.cfg.omega_samples, replace=False).tolist())
        ag, k = ctx.uag, keys()
        bad = []
        for r in units:
            gamma = A.omega(P, int(r)).key
            s = M.odd_representative(M.inverse_mod(int(r), p**n), p**n)
            f = k_shift * (s - 1) // 2
            lhs = ag.mul(ag.mul(gamma, k["alpha"]), ag.inv(gamma))
            rhs = ag.mul(ag.pow(k["dy"], f), ag.pow(k["alpha"], s))
            if lhs != rhs:
                bad.append(int(r))
        return not bad, {"r_values": len(units), "failures": bad[:5]}

    def beta_power():
        ag, k = ctx.uag, keys()
        ok1 = ag.pow(k["beta"], p ** (i - 1) * (p - 1) * c.t) == k["dy"]
        lhs = ag.mul(ag.mul(k["beta"], k["alpha"]), ag.inv(k["beta"]))
        rhs = ag.mul(ag.pow(k["dy"], k_shift * (c.h - 1) // 2), ag.pow(k["alpha"], c.h))
        return ok1 and lhs == rhs, {"beta_power_is_delta_y": ok1, "beta_alpha_conjugate": lhs == rhs}

    def generation():
        gen = A.closure_keys(ctx.uag, [ctx.ukey(x) for x in ("delta_x", "delta_y", "alpha", "beta")], ctx.cfg.aut_cap)
        ok = gen.same_elements(ctx.u_aut)
        out = {"Inn<alpha,beta>": len(gen)}
        if ctx.cfg.run_oracle:
            ok &= gen.same_elements(ctx.u_brute)
            out["brute_force"] = len(ctx.u_brute)
        return ok, out

    def order():
        out = {"closure": len(ctx.u_aut), "formula": aut_order}
        ok = len(ctx.u_aut) == aut_order
        return ok, out

    def oracle():
        return ctx.u_brute.same_elements(ctx.u_aut), {"brute_force": len(ctx.u_brute), "closure": len(ctx.u_aut)}

    def inn():
        want = p ** (2 * (n - i))
        ag, k = ctx.uag, keys()
        rels_ok = (ag.pow(k["dx"], p ** (n - i)) == ag.identity() and ag.pow(k["dy"], p ** (n - i)) == ag.identity()
                   and ag.mul(ag.mul(k["dy"], k["dx"]), ag.inv(k["dy"])) == ag.pow(k["dx"], 1 + p**i))
        abelian = all(ag.mul(x, y) == ag.mul(y, x) for x, y in [(k["dx"], k["dy"])])
        return len(ctx.u_inn) == want and rels_ok and abelian == (2 * i >= n), \
            {"inn": len(ctx.u_inn), "formula": want, "relations": rels_ok, "abelian": abelian}

    def center():
        z = O.brute_force_center(U)
        want = G.closure_idx(U, [U.index(U.make(p ** (n - i), 0))])
        return _eq_sets(z, want), {"order": int(z.size)}

    def beta_bar():
        inn = ctx.u_inn
        ag, b = ctx.uag, ctx.ukey("beta")
        k, cur = 1, b
        while cur not in inn:
            cur = ag.mul(b, cur)
            k += 1
        want = p ** (i - 1) * (p - 1)
        return k == want, {"order": k, "formula": want}

    def out():
        want = p ** (i + j - 1) * (p - 1)
        got = A.quotient_order(ctx.u_aut, ctx.u_inn)
        ag, k = ctx.uag, keys()
        inn = ctx.u_inn
        r1 = ag.pow(k["alpha"], p**j) in inn
        r2 = ag.pow(k["beta"], p ** (i - 1) * (p - 1)) in inn
        r3 = ag.mul(ag.mul(ag.mul(k["beta"], k["alpha"]), ag.inv(k["beta"])), ag.pow(k["alpha"], -c.h)) in inn
        # alpha and its image in Out have the same order
        a_bar = next(m for m in range(1, p**j + 1) if ag.pow(k["alpha"], m) in inn)
        ok = got == want and r1 and r2 and r3 and a_bar == p**j
        return ok, {"out": got, "formula": want, "relations_mod_inn": [r1, r2, r3], "alpha_bar_order": a_bar}

    def abc():
        ag = ctx.uag
        subs = [A.closure_keys(ag, [ctx.ukey(x)]) for x in ("alpha", "delta_x", "mu")]
        a, b, m = (s.keys() for s in subs)
        ab = np.repeat(a, len(b), axis=0), np.tile(b, (len(a), 1))
        abk = ag.compose_rows(*ab)
        f = np.repeat(abk, len(m), axis=0)
        g = np.tile(m, (len(abk), 1))
        codes = ag.encode(ag.compose_rows(f, g))
        unique = np.unique(codes).size == codes.size
        covers = np.array_equal(np.unique(codes), ctx.u_aut.codes)
        return unique and covers, {"factor_orders": [len(s) for s in subs], "products": int(codes.size),
                                   "distinct": int(np.unique(codes).size)}

    def s0():
        grp = ctx.s0
        normal, _ = A.is_normal(ctx.u_aut, grp)
        S = G.s_group(M.GroupParams(p, n, i, c.d, c.e))
        index = len(ctx.u_aut) // len(grp)
        return len(grp) == S.order and normal and index == p - 1, {"order": len(grp), "S_order": S.order,
                                                                  "normal": normal, "index": index}

    def s0_iso():
        S = G.s_group(M.GroupParams(p, n, i, c.d, c.e))
        k = keys()
        f = A.make_map(S, (k["alpha"], k["dx"], k["nu"]), "iota", target=ctx.uag)
        hom = A.is_homomorphism(f)
        # image of every normal form, as automorphism codes
        ag = ctx.uag
        cols = S.decode(np.arange(S.order))
        pw = []
        for key, m in zip((k["alpha"], k["dx"], k["nu"]), S.moduli):
            arr = [ag.identity()]
            for _ in range(1, m):
                arr.append(ag.mul(arr[-1], key))
            pw.append(np.array(arr, dtype=np.int64))
        img = ag.compose_rows(ag.compose_rows(pw[0][cols[0]], pw[1][cols[1]]), pw[2][cols[2]])
        codes = ag.encode(img)
        bij = np.unique(codes).size == S.order and np.array_equal(np.unique(codes), ctx.s0.codes)
        return hom and bij, {"homomorphism": hom, "bijective_onto_S0": bij, "d": c.d, "e": c.e}

    entries = [
        ("appendix.valuation", "vp((1+r)^s - 1) = vp(r) + vp(s) when p | r", valuation_grid),
        ("appendix.element-order", "order of x^a y^b is p^max(n-vp(a), n-i-vp(b), 0)", order_formula),
        ("appendix.normal-cyclic", "<x^a y^b> normal iff vp(b) >= n-2i iff x^(p^i) in <x^a y^b>", normal_cyclic),
        ("appendix.alpha", "alpha is an automorphism of order p^i (2i <= n) or p^(n-i)", alpha_order),
        ("appendix.omega-conjugation", "Omega_r alpha Omega_r^-1 = delta_y^f alpha^s", conj_formula),
        ("appendix.beta", "beta^(p^(i-1)(p-1)t) = delta_y and beta alpha beta^-1 = delta_y^(k(h-1)/2) alpha^h",
         beta_power),
        ("appendix.generation", "Aut(U) = Inn(U) <alpha, beta>", generation),
        ("appendix.order", "|Aut(U)| = p^(2n-1)(p-1) or p^(3n-2i-1)(p-1)", order),
        ("appendix.oracle", "brute-force Aut(U) equals the closure of alpha, delta_x, mu", oracle),
        ("appendix.inn", "|Inn(U)| = p^(2(n-i)) with the stated presentation", inn),
        ("appendix.center", "Z(U) = <x^(p^(n-i))>", center),
        ("appendix.beta-bar", "the image of beta in Out(U) has order p^(i-1)(p-1)", beta_bar),
        ("appendix.out", "|Out(U)| = p^(i+j-1)(p-1) with the stated presentation", out),
        ("appendix.abc", "every automorphism is uniquely A B C with A, B, C in <alpha>, <delta_x>, <mu>", abc),
        ("appendix.sylow", "<alpha, delta_x, nu> is a normal Sylow p-subgroup of order |S|", s0),
        ("appendix.sylow-iso", "a -> alpha, b -> delta_x, c -> nu is an isomorphism S -> S0", s0_iso),
    ]
    entries += _relation_entries("appendix", ctx, main, names, keys, uag)
    entries += [(f"appendix.sylow-rel{j:02d}", t, fn) for j, (t, fn) in
                enumerate([(t, (lambda t=t, v=v: _rel(ctx.uag, names, keys(), t, **v))) for t, v in sylow_rels], 1)]
    return entries


_BUILDERS = {"s2": _s2_checks, "aut-high": _high_checks, "aut-lindop": _top_checks,
             "aut-low": _low_checks, "appendix": _app_checks}


# --- running -------------------------------------------------------------------------------------------------

def _run_entry(cid: str, anchor: str, fn: Callable, skip_reason: str | None) -> CheckRecord:
    t0 = time.perf_counter()
    if skip_reason:
        return CheckRecord(cid, anchor, "skipped", {"reason": skip_reason}, 0.0)
    try:
        ok, witness = fn()
        status = "pass" if ok else "fail"
        if not ok and witness is None:
            witness = {"detail": "check returned false"}
    except Skip as exc:
        status, witness = "skipped", {"reason": str(exc)}
    except ResourceGuardError as exc:
        status, witness = "skipped", {"reason": f"resource guard: {exc}"}
    except (ContractError, ParameterError, AssertionError) as exc:
        status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    return CheckRecord(cid, anchor, status, _jsonable(witness), (time.perf_counter() - t0) * 1000)


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x


def run_suite(ctx: Context, suite: str) -> list[CheckRecord]:
    if suite not in _BUILDERS:
        raise ParameterError(f"unknown suite {suite!r}")
    gate = _gate(ctx, suite)
    records = []
    for cid, anchor, fn in _BUILDERS[suite](ctx):
        records.append(_run_entry(cid, anchor, fn, gate))
    ids = [r.id for r in records]
    if len(ids) != len(set(ids)):
        raise AssertionError(f"duplicate check ids in suite {suite}")
    return records


def verify(params: M.GroupParams, suites: str | list = "all", cfg: VerifyConfig | None = None) -> VerificationReport:
    cfg = cfg or VerifyConfig()
    if suites == "all":
        suites = list(SUITES)
    elif isinstance(suites, str):
        suites = [suites]
    ctx = Context(params, cfg)
    t0 = time.perf_counter()
    checks = []
    for s in suites:
        checks += run_suite(ctx, s)
    checks.sort(key=lambda r: r.id)
    counts = {k: sum(1 for c in checks if c.status == k) for k in ("pass", "fail", "skipped")}
    stats = {**counts, "total": len(checks), "elapsed_ms": round((time.perf_counter() - t0) * 1000, 1),
             "suites": suites, "search": ctx.search_stats}
    return VerificationReport(params.as_dict(), ctx.consts.as_dict(), checks, stats, __version__, cfg.seed)


# per-suite entry points
def verify_section2(params: M.GroupParams, cfg: VerifyConfig | None = None) -> list[CheckRecord]:
    return run_suite(Context(params, cfg), "s2")


def verify_theorem_high(params: M.GroupParams, cfg: VerifyConfig | None = None) -> list[CheckRecord]:
    return run_suite(Context(params, cfg), "aut-high")


def verify_theorem_top(params: M.GroupParams, cfg: VerifyConfig | None = None) -> list[CheckRecord]:
    return run_suite(Context(params, cfg), "aut-lindop")


def verify_theorem_low(params: M.GroupParams, cfg: VerifyConfig | None = None) -> list[CheckRecord]:
    return run_suite(Context(params, cfg), "aut-low")


def verify_appendix(params: M.GroupParams, cfg: VerifyConfig | None = None) -> list[CheckRecord]:
    return run_suite(Context(params, cfg), "appendix")


# --- ratios ---------------------------------------------------------------------------------------------------

def ratio_report(params: M.GroupParams, cfg: VerifyConfig | None = None) -> dict:
    """z(Sylow(Aut G)) / z(G) for G = S and G = U."""
    ctx = Context(params, cfg)
    p = params.p
    fam = ctx.family
    sylow_labels = {"high": "ABCDEF", "low": "LMNUVWXY", "top": "ABCG"}[fam]
    pi = ctx.sub(sylow_labels)
    sylow_order = _p_part(len(ctx.aut), p)
    z_pi = A.frattini_rank_autgroup(pi) if len(pi) == sylow_order else None
    z_s = G.frattini_rank(ctx.S, p)
    z_s0 = A.frattini_rank_autgroup(ctx.s0)
    z_u = G.frattini_rank(ctx.U, p)
    out = {
        "S": {"sylow_generators": sylow_labels, "sylow_order": len(pi), "z_sylow": z_pi, "z_group": z_s,
              "ratio": f"{z_pi}/{z_s}" if z_pi is not None else None,
              "value": str(Fraction(z_pi, z_s)) if z_pi is not None else None},
        "U": {"sylow_order": len(ctx.s0), "z_sylow": z_s0, "z_group": z_u, "ratio": f"{z_s0}/{z_u}",
              "value": str(Fraction(z_s0, z_u))},
    }
    return out


def _p_part(m: int, p: int) -> int:
    out = 1
    while m % p == 0:
        m //= p
        out *= p
    return out
