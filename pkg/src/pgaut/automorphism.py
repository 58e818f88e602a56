"""Endomorphisms recorded by generator images, and sets of automorphisms.

An automorphism of an ``ExponentGroup`` is stored as its *key*: the tuple of
element indices of the images of the canonical generators.  Two homomorphisms
with the same key agree everywhere, so keys are a faithful identity.  For bulk
work a key is packed into a single integer code ``sum(k_j * |G|^j)``.

``AutGroup`` supplies group arithmetic on keys (so the word helpers in
``groups`` evaluate relations among automorphisms), ``AutSet`` is an immutable
sorted array of codes with a little provenance.
"""
from __future__ import annotations

import json
import os
import tempfile
from collections import OrderedDict
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Sequence

import numpy as np

from . import groups as G
from .errors import ContractError, ParameterError, ResourceGuardError
from .modarith import AppendixConstants, GroupParams, derive_appendix_constants

DEFAULT_AUT_CAP = 2 * 10**5
NORMALITY_EXHAUSTIVE_LIMIT = 10**5
FORMAT_VERSION = 1


# --- generator-image maps --------------------------------------------------------

@dataclass(frozen=True)
class GenMap:
    """A map given by the images of the canonical generators of ``group``.

    ``status`` is ``"unchecked"``, ``"hom"`` or ``"aut"``; a map only becomes
    usable by ``apply`` once it has been checked.  ``target`` defaults to
    ``group`` and may be any object with ``identity/mul/pow``.
    """

    group: G.ExponentGroup
    images: tuple
    label: str = ""
    status: str = "unchecked"
    target: Any = None

    @property
    def codomain(self) -> Any:
        return self.group if self.target is None else self.target

    @property
    def key(self) -> tuple:
        if self.target is not None and self.target != self.group:
            raise ContractError("keys are only defined for endomorphisms")
        return tuple(self.group.index(x) for x in self.images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenMap):
            return NotImplemented
        return self.group == other.group and self.codomain == other.codomain \
            and tuple(self.images) == tuple(other.images)

    def __hash__(self) -> int:
        return hash((self.group, tuple(self.images)))

    def __repr__(self) -> str:
        name = self.label or "map"
        return f"GenMap({name}: {', '.join(map(str, self.images))} [{self.status}])"


def make_map(group: G.ExponentGroup, images: Sequence, label: str = "", target: Any = None) -> GenMap:
    if len(images) != len(group.moduli):
        raise ParameterError(f"need {len(group.moduli)} images, got {len(images)}")
    dest = group if target is None else target
    if isinstance(dest, G.ExponentGroup):
        for x in images:
            dest.validate(x)
    return GenMap(group, tuple(images), label, "unchecked", target)


def map_from_key(group: G.ExponentGroup, key: Sequence[int], label: str = "",
                 status: str = "aut") -> GenMap:
    return GenMap(group, tuple(group.element(int(k)) for k in key), label, status)


def is_homomorphism(f: GenMap) -> bool:
    """Every defining relation of the source holds on the images."""
    return all(G.relation_holds(f.codomain, rel, f.images) for rel in f.group.relations())


def is_automorphism(f: GenMap) -> bool:
    """Homomorphism into the same group whose images generate the whole group."""
    if f.target is not None and f.target != f.group:
        return False
    if not is_homomorphism(f):
        return False
    gens = [f.group.index(x) for x in f.images]
    return G.closure_idx(f.group, gens).size == f.group.order


def checked(f: GenMap, require: str = "aut") -> GenMap:
    """Return ``f`` marked as verified, or raise ``ContractError``."""
    ok = is_automorphism(f) if require == "aut" else is_homomorphism(f)
    if not ok:
        raise ContractError(f"{f.label or f!r} is not a {'n automorphism' if require == 'aut' else ' homomorphism'}")
    return replace(f, status=require)


def apply(f: GenMap, x) -> Any:
    """Image of ``x = g0^e0 g1^e1 ...`` under ``f``."""
    if f.status not in ("hom", "aut"):
        raise ContractError(f"{f.label or 'map'} has not been verified")
    f.group.validate(x)
    tgt = f.codomain
    acc = tgt.identity()
    for img, e in zip(f.images, x if not isinstance(x, G.ZElement) else x.coords):
        acc = tgt.mul(acc, tgt.pow(img, e))
    return acc


def identity_map(group: G.ExponentGroup) -> GenMap:
    return GenMap(group, group.gens(), "id", "aut")


def inner(group: G.ExponentGroup, g, label: str = "") -> GenMap:
    """Conjugation x -> g x g^-1 (always an automorphism)."""
    group.validate(g)
    return GenMap(group, tuple(group.conj(g, s) for s in group.gens()), label or f"inner{tuple(g)}", "aut")


def _require_aut(*fs: GenMap) -> None:
    for f in fs:
        if f.status != "aut":
            raise ContractError(f"{f.label or 'map'} is not a verified automorphism")


def compose(f: GenMap, g: GenMap) -> GenMap:
    """f o g, recorded by applying f to the images of g."""
    _require_aut(f, g)
    if f.group != g.group:
        raise ParameterError("maps act on different groups")
    return GenMap(f.group, tuple(apply(f, y) for y in g.images), "", "aut")


def aut_group(group: G.ExponentGroup) -> "AutGroup":
    return _aut_group_cached(group)


_AUT_GROUPS: dict = {}


def _aut_group_cached(group: G.ExponentGroup) -> "AutGroup":
    ag = _AUT_GROUPS.get(group)
    if ag is None:
        ag = _AUT_GROUPS[group] = AutGroup(group)
    return ag


def inverse(f: GenMap) -> GenMap:
    _require_aut(f)
    ag = aut_group(f.group)
    return map_from_key(f.group, ag.inv(f.key), f"{f.label}^-1" if f.label else "")


def aut_order(f: GenMap) -> int:
    _require_aut(f)
    return aut_group(f.group).element_order(f.key)


def power(f: GenMap, k: int) -> GenMap:
    _require_aut(f)
    return map_from_key(f.group, aut_group(f.group).pow(f.key, k))


# --- automorphism arithmetic on keys ----------------------------------------------

class AutGroup:
    """Arithmetic on automorphism keys of a fixed ``ExponentGroup``.

    Composition uses full image tables (cached), inversion inverts the table.
    Multiplication is composition: ``mul(f, g) = f o g``.
    """

    TABLE_CACHE = 4096

    def __init__(self, base: G.ExponentGroup) -> None:
        self.base = base
        self.k = len(base.moduli)
        self.n = base.order
        self.id_key = tuple(int(s) for s in base.strides)
        self._gen_arr = np.array(self.id_key, dtype=np.int64)
        self._tables: OrderedDict = OrderedDict()
        self.radix = np.array([self.n**j for j in range(self.k)], dtype=np.int64)
        if self.n**self.k >= 2**62:
            raise ResourceGuardError("automorphism codes would overflow int64")

    def __repr__(self) -> str:
        return f"AutGroup({self.base!r})"

    # group-like API on keys
    def identity(self) -> tuple:
        return self.id_key

    def table(self, key: Sequence[int]) -> np.ndarray:
        key = tuple(int(k) for k in key)
        tab = self._tables.get(key)
        if tab is None:
            tab = self.base.image_table(key)
            self._tables[key] = tab
            if len(self._tables) > self.TABLE_CACHE:
                self._tables.popitem(last=False)
        else:
            self._tables.move_to_end(key)
        return tab

    def mul(self, f: Sequence[int], g: Sequence[int]) -> tuple:
        return tuple(int(v) for v in self.table(f)[np.asarray(g, dtype=np.int64)])

    def inv(self, f: Sequence[int]) -> tuple:
        tab = self.table(f)
        inv = np.empty_like(tab)
        inv[tab] = np.arange(self.n, dtype=np.int64)
        return tuple(int(v) for v in inv[self._gen_arr])

    def pow(self, f: Sequence[int], k: int) -> tuple:
        if k < 0:
            f, k = self.inv(f), -k
        result = self.id_key
        f = tuple(f)
        while k:
            if k & 1:
                result = self.mul(f, result)
            k >>= 1
            if k:
                f = self.mul(f, f)
        return result

    def element_order(self, f: Sequence[int]) -> int:
        f = tuple(f)
        g, k = f, 1
        while g != self.id_key:
            g = self.mul(f, g)
            k += 1
        return k

    def is_bijective(self, key: Sequence[int]) -> bool:
        return np.unique(self.table(key)).size == self.n

    # vectorised helpers
    def encode(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        if self.k == 0:
            return np.zeros(keys.shape[0] if keys.ndim > 1 else 1, dtype=np.int64)
        return keys.reshape(-1, self.k) @ self.radix

    def decode(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.k == 0:
            return np.zeros(codes.shape + (0,), dtype=np.int64)
        return np.stack([codes // r % self.n for r in self.radix], axis=-1)

    def _pow_var(self, x: np.ndarray, e: np.ndarray) -> np.ndarray:
        result = np.zeros_like(x)
        e = e.copy()
        while True:
            bit = (e & 1).astype(bool)
            if bit.any():
                result = np.where(bit, self.base.mul_idx(result, x), result)
            e >>= 1
            if not e.any():
                return result
            x = self.base.mul_idx(x, x)

    def apply_rows(self, keys: np.ndarray, x) -> np.ndarray:
        """Row-wise image of element(s) ``x`` under the automorphisms ``keys``."""
        keys = np.asarray(keys, dtype=np.int64)
        x = np.broadcast_to(np.asarray(x, dtype=np.int64), keys.shape[:1])
        cols = self.base.decode(x)
        acc = np.zeros(keys.shape[0], dtype=np.int64)
        for j in range(self.k):
            acc = self.base.mul_idx(acc, self._pow_var(keys[:, j], cols[j]))
        return acc

    def compose_rows(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Row-wise f o g for key arrays of equal length."""
        return np.stack([self.apply_rows(f, g[:, j]) for j in range(self.k)], axis=1)

    def left_mul(self, f: Sequence[int], keys: np.ndarray) -> np.ndarray:
        """f o g for every row g."""
        return self.table(f)[np.asarray(keys, dtype=np.int64)].astype(np.int64)

    def conj_rows(self, a: Sequence[int], keys: np.ndarray) -> np.ndarray:
        """a o g o a^-1 for every row g."""
        ainv = self.inv(a)
        inner_imgs = np.stack([self.apply_rows(keys, ainv[j]) for j in range(self.k)], axis=1)
        return self.left_mul(a, inner_imgs)


# --- sets of automorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class AutSet:
    """A set of automorphisms of one group, stored as sorted unique codes."""

    group: AutGroup
    codes: np.ndarray
    provenance: str = ""
    generators: tuple = field(default=(), compare=False)

    def __post_init__(self) -> None:
        self.codes.setflags(write=False)

    def __len__(self) -> int:
        return int(self.codes.size)

    @property
    def base(self) -> G.ExponentGroup:
        return self.group.base

    def keys(self) -> np.ndarray:
        return self.group.decode(self.codes)

    def contains_keys(self, keys: np.ndarray) -> np.ndarray:
        codes = self.group.encode(keys)
        if self.codes.size == 0:
            return np.zeros(codes.shape, dtype=bool)
        pos = np.minimum(np.searchsorted(self.codes, codes), self.codes.size - 1)
        return self.codes[pos] == codes

    def __contains__(self, f) -> bool:
        key = f.key if isinstance(f, GenMap) else tuple(f)
        return bool(self.contains_keys(np.array([key]))[0])

    def maps(self) -> Iterable[GenMap]:
        for key in self.keys():
            yield map_from_key(self.base, key)

    def same_elements(self, other: "AutSet") -> bool:
        return self.group.base == other.group.base and np.array_equal(self.codes, other.codes)

    def issubset(self, other: "AutSet") -> bool:
        return bool(other.contains_keys(self.keys()).all())

    def filter(self, mask: np.ndarray, provenance: str) -> "AutSet":
        return AutSet(self.group, self.codes[mask].copy(), provenance)

    def generator_keys(self) -> list[tuple]:
        if self.generators:
            return [tuple(g) for g in self.generators]
        return generating_set(self)


def _sorted_codes(codes: np.ndarray) -> np.ndarray:
    return np.unique(np.asarray(codes, dtype=np.int64))


def from_keys(ag: AutGroup, keys: np.ndarray, provenance: str, generators: Sequence = ()) -> AutSet:
    return AutSet(ag, _sorted_codes(ag.encode(keys)), provenance,
                  tuple(tuple(int(v) for v in g) for g in generators))


def closure_keys(ag: AutGroup, gen_keys: Sequence[Sequence[int]], cap: int = DEFAULT_AUT_CAP,
                 provenance: str = "closure") -> AutSet:
    """Subgroup generated by ``gen_keys``: breadth-first left multiplication."""
    gen_keys = [tuple(int(v) for v in g) for g in gen_keys]
    tables = [ag.table(g) for g in gen_keys if g != ag.id_key]
    frontier = np.array([ag.id_key], dtype=np.int64)
    seen = ag.encode(frontier)
    while frontier.size and tables:
        cand = np.concatenate([t[frontier] for t in tables]).astype(np.int64)
        codes, first = np.unique(ag.encode(cand), return_index=True)
        new = ~np.isin(codes, seen, assume_unique=True)
        if not new.any():
            break
        seen = np.union1d(seen, codes[new])
        if seen.size > cap:
            raise ResourceGuardError(f"automorphism closure exceeded cap {cap}")
        frontier = cand[first[new]]
    return AutSet(ag, seen, provenance, tuple(gen_keys))


def aut_closure(generators: Sequence[GenMap], cap: int = DEFAULT_AUT_CAP) -> AutSet:
    """The subgroup of Aut generated by verified automorphisms."""
    if not generators:
        raise ParameterError("need at least one generator")
    _require_aut(*generators)
    base = generators[0].group
    if any(f.group != base for f in generators):
        raise ParameterError("generators act on different groups")
    labels = "".join(f.label for f in generators)
    return closure_keys(aut_group(base), [f.key for f in generators], cap,
                        f"closure<{labels}>" if labels else "closure")


def generating_set(auts: AutSet, seed: int = 0) -> list[tuple]:
    """A (small, not minimal) generating set, chosen greedily in seeded order."""
    ag = auts.group
    keys = auts.keys()
    order = np.random.default_rng(seed).permutation(len(auts))
    gens: list[tuple] = []
    current = closure_keys(ag, [ag.id_key])
    for pos in order:
        if len(current) == len(auts):
            break
        key = tuple(int(v) for v in keys[pos])
        if key in current:
            continue
        gens.append(key)
        current = closure_keys(ag, gens, cap=max(len(auts), 1))
    return gens


def is_normal(ambient: AutSet, sub: AutSet, seed: int = 0,
              sample: int = 1000) -> tuple[bool, Any]:
    """Whether ``sub`` is normalised by ``ambient``; returns a witness on failure.

    Conjugates every element of ``sub`` by each ambient generator when
    ``|ambient| <= 10^5``, otherwise a seeded sample of ``sample`` elements.
    """
    if not sub.issubset(ambient):
        return False, "not a subset"
    ag = ambient.group
    keys = sub.keys()
    if len(ambient) > NORMALITY_EXHAUSTIVE_LIMIT and len(sub) > sample:
        rows = np.random.default_rng(seed).choice(len(sub), size=sample, replace=False)
        keys = keys[np.sort(rows)]
    for a in ambient.generator_keys():
        conj = ag.conj_rows(a, keys)
        bad = ~sub.contains_keys(conj)
        if bad.any():
            j = int(np.flatnonzero(bad)[0])
            return False, {"conjugator": list(a), "element": keys[j].tolist()}
    return True, None


def quotient_order(auts: AutSet, normal: AutSet) -> int:
    ok, witness = is_normal(auts, normal)
    if not ok:
        raise ContractError(f"subgroup is not normal: {witness}")
    if len(auts) % len(normal):
        raise ContractError("subgroup order does not divide group order")
    return len(auts) // len(normal)


def kernel_gamma(auts: AutSet) -> AutSet:
    """Automorphisms inducing the identity on G / G^p."""
    base = auts.base
    p = _prime_of(base)
    gp = G.pth_power_subgroup_idx(base, p)
    mask_gp = np.zeros(base.order, dtype=bool)
    mask_gp[gp] = True
    derived = G.derived_subgroup_idx(base)
    if not mask_gp[derived].all():
        raise ContractError("[G, G] is not contained in G^p; the generator test would be unsound")
    keys = auts.keys()
    ok = np.ones(len(auts), dtype=bool)
    for j, g in enumerate(auts.group.id_key):
        ginv = int(base.inv_idx(np.array([g]))[0])
        ok &= mask_gp[base.mul_idx(keys[:, j], ginv)]
    return auts.filter(ok, "kernel_gamma")


def kernel_lambda_pointwise(auts: AutSet) -> AutSet:
    """Automorphisms fixing the first two generators (a and b of S)."""
    keys = auts.keys()
    ida = auts.group.id_key
    ok = (keys[:, 0] == ida[0]) & (keys[:, 1] == ida[1])
    return auts.filter(ok, "kernel_lambda")


def preserving(auts: AutSet, subgroup_idx: np.ndarray, gens_idx: Sequence[int]) -> AutSet:
    """Automorphisms mapping each of ``gens_idx`` (generators of the subgroup) into it."""
    mask = np.zeros(auts.base.order, dtype=bool)
    mask[np.asarray(subgroup_idx)] = True
    keys = auts.keys()
    ok = np.ones(len(auts), dtype=bool)
    for g in gens_idx:
        ok &= mask[auts.group.apply_rows(keys, int(g))]
    return auts.filter(ok, "preserving")


def _prime_of(base: G.ExponentGroup) -> int:
    params = getattr(base, "params", None)
    if params is not None:
        return params.p
    m = min(x for x in base.moduli if x > 1)
    from .modarith import factorize
    return min(factorize(m))


def pth_powers(auts: AutSet, p: int) -> np.ndarray:
    keys = auts.keys()
    out = keys
    for _ in range(p - 1):
        out = auts.group.compose_rows(keys, out)
    return out


def normal_closure_keys(ag: AutGroup, seeds: Sequence[tuple], ambient: Sequence[tuple],
                        cap: int = DEFAULT_AUT_CAP) -> AutSet:
    gens = [tuple(s) for s in seeds]
    current = closure_keys(ag, gens or [ag.id_key], cap)
    while True:
        added = False
        for a in ambient:
            conj = ag.conj_rows(a, np.array(gens or [ag.id_key], dtype=np.int64))
            miss = ~current.contains_keys(conj)
            if miss.any():
                gens.append(tuple(int(v) for v in conj[np.flatnonzero(miss)[0]]))
                added = True
                break
        if not added:
            return current
        current = closure_keys(ag, gens, cap)


def frattini_subgroup(auts: AutSet, p: int) -> AutSet:
    """P^p [P, P] for a p-group P of automorphisms."""
    ag = auts.group
    gens = auts.generator_keys()
    comms = []
    for x in range(len(gens)):
        for y in range(x + 1, len(gens)):
            a, b = gens[x], gens[y]
            c = ag.mul(ag.mul(a, b), ag.mul(ag.inv(a), ag.inv(b)))
            if c != ag.id_key:
                comms.append(c)
    derived = normal_closure_keys(ag, comms, gens)
    powers = np.unique(ag.encode(pth_powers(auts, p)))
    seeds = [tuple(int(v) for v in k) for k in ag.decode(np.union1d(powers, derived.codes))]
    # grow greedily: most seeds are already in the closure of earlier ones
    current_gens: list[tuple] = []
    current = closure_keys(ag, [ag.id_key])
    for s in seeds:
        if s not in current:
            current_gens.append(s)
            current = closure_keys(ag, current_gens)
    return current


def frattini_rank_autgroup(auts: AutSet) -> int:
    """Minimal number of generators of a p-group of automorphisms."""
    if len(auts) == 1:
        return 0
    p = _prime_of(auts.base)
    if G.log_p(len(auts), p) < 0:  # pragma: no cover - log_p raises instead
        raise ParameterError("not a p-group")
    phi = frattini_subgroup(auts, p)
    return G.log_p(len(auts) // len(phi), p)


def product_codes(ag: AutGroup, xs: AutSet, ys: AutSet) -> np.ndarray:
    """Codes of all x o y."""
    kx, ky = xs.keys(), ys.keys()
    f = np.repeat(kx, len(ys), axis=0)
    g = np.tile(ky, (len(xs), 1))
    return _sorted_codes(ag.encode(ag.compose_rows(f, g)))


def intersection(xs: AutSet, ys: AutSet) -> AutSet:
    return AutSet(xs.group, np.intersect1d(xs.codes, ys.codes), "intersection")


# --- serialization -------------------------------------------------------------------

def _group_header(base: G.ExponentGroup) -> dict:
    params = getattr(base, "params", None)
    if params is None:
        raise ParameterError("only S, T and U automorphism sets can be serialized")
    return {"group": base.tag, "params": {k: params.as_dict()[k] for k in ("p", "n", "i", "d", "e")}}


def _group_from_header(header: dict) -> G.ExponentGroup:
    params = GroupParams(**header["params"])
    maker = {"S": G.s_group, "T": G.t_group, "U": G.u_group}[header["group"]]
    return maker(params)


def autset_to_json(auts: AutSet) -> str:
    base = auts.base
    cols = [base.decode(col) for col in auts.keys().T]
    records = np.stack([c for col in cols for c in col], axis=1) if len(auts) else np.zeros((0, 0))
    doc = {
        "format_version": FORMAT_VERSION,
        **_group_header(base),
        "count": len(auts),
        "provenance": auts.provenance,
        "generators": [list(g) for g in auts.generators],
        "records": records.tolist(),
    }
    return json.dumps(doc, separators=(",", ":"), sort_keys=True) + "\n"


def autset_from_json(text: str) -> AutSet:
    doc = json.loads(text)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParameterError(f"unsupported cache format {doc.get('format_version')!r}")
    base = _group_from_header(doc)
    ag = aut_group(base)
    width = len(base.moduli)
    rec = np.asarray(doc["records"], dtype=np.int64).reshape(-1, width * width)
    keys = np.stack([base.encode([rec[:, j * width + k] for k in range(width)])
                     for j in range(width)], axis=1) if rec.size else np.zeros((0, width), np.int64)
    auts = from_keys(ag, keys, doc["provenance"], [tuple(g) for g in doc["generators"]])
    if len(auts) != doc["count"]:
        raise ParameterError("cache record count mismatch")
    return auts


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = os.fspath(path)
    folder = os.path.dirname(path) or "."
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- the named automorphisms ---------------------------------------------------------

FAMILIES = ("high", "top", "low", "appendix")


def _s_words(params: GroupParams):
    S = G.s_group(params)

    def el(a=0, b=0, c=0):
        return S.make(a, b, c)

    return S, el


def high_generators(params: GroupParams, consts: AppendixConstants | None = None) -> dict[str, GenMap]:
    """A..H for 2i >= n, i != n - 1."""
    if params.regime.value != "HIGH" or params.top:
        raise ParameterError("this family needs 2i >= n and i != n-1")
    c0 = consts or derive_appendix_constants(params.p, params.n, params.i)
    S, el = _s_words(params)
    p, n, i = params.p, params.n, params.i
    q = p ** (n - i - 1)
    a, b, c = S.gens()
    raw = {
        "A": inner(S, a, "A"),
        "B": inner(S, b, "B"),
        "C": inner(S, c, "C"),
        "D": make_map(S, (el(a=1 + q), b, el(c=1 + q)), "D"),
        "E": make_map(S, (el(a=1, b=q), b, c), "E"),
        "F": make_map(S, (a, S.mul(el(a=q), b), c), "F"),
        "G": make_map(S, (el(a=c0.g0), el(b=c0.h0), c), "G"),
        "H": make_map(S, (b, a, el(c=-1)), "H"),
    }
    return {k: checked(f) for k, f in raw.items()}


def top_generators(params: GroupParams, consts: AppendixConstants | None = None) -> dict[str, GenMap]:
    """A..G for i = n - 1."""
    if not params.top:
        raise ParameterError("this family needs i = n-1")
    c0 = consts or derive_appendix_constants(params.p, params.n, params.i)
    S, el = _s_words(params)
    a, b, c = S.gens()
    r, s = c0.r, c0.s
    raw = {
        "A": inner(S, a, "A"),
        "B": inner(S, b, "B"),
        "C": make_map(S, (a, S.mul(a, b), c), "C"),
        "D": make_map(S, (b, el(a=-1), c), "D"),
        "E": make_map(S, (el(a=r), el(b=s), c), "E"),
        "F": make_map(S, (el(a=r), b, el(c=r)), "F"),
        "G": make_map(S, (a, b, el(c=1 + params.p)), "G"),
    }
    return {k: checked(f) for k, f in raw.items()}


def low_generators(params: GroupParams, consts: AppendixConstants | None = None) -> dict[str, GenMap]:
    """L..Z for 2i < n."""
    if params.regime.value != "LOW":
        raise ParameterError("this family needs 2i < n")
    c0 = consts or derive_appendix_constants(params.p, params.n, params.i)
    S, el = _s_words(params)
    p, n, i, e = params.p, params.n, params.i, params.e
    a, b, c = S.gens()
    raw = {
        "L": inner(S, a, "L"),
        "M": inner(S, b, "M"),
        "N": inner(S, c, "N"),
        "U": make_map(S, (a, el(b=1, c=p ** (n - i - 2)), S.mul(el(a=-e), c)), "U"),
        "V": make_map(S, (a, el(b=1 + p ** (n - i - 1)), el(c=1 + p ** (n - i - 1))), "V"),
        "W": make_map(S, (el(a=1, b=p ** (n - i - 1)), b, c), "W"),
        "X": make_map(S, (a, S.mul(el(a=p ** (i - 1)), b), c), "X"),
        "Y": make_map(S, (el(a=1, c=p ** (n - 2)), b, c), "Y"),
        "Z": make_map(S, (el(a=c0.g0), el(b=c0.h0), c), "Z"),
    }
    return {k: checked(f) for k, f in raw.items()}


def omega(params: GroupParams, r: int, label: str = "") -> GenMap:
    """x -> x^r, y -> y on U (r prime to p)."""
    U = G.u_group(params)
    return checked(make_map(U, (U.make(r, 0), U.make(0, 1)), label or f"Omega_{r}"))


def appendix_generators(params: GroupParams, consts: AppendixConstants | None = None) -> dict[str, GenMap]:
    """alpha, beta, delta_x, delta_y, mu, nu on U."""
    c0 = consts or derive_appendix_constants(params.p, params.n, params.i)
    U = G.u_group(params)
    p, n, i = params.p, params.n, params.i
    x, y = U.gens()
    shift = p ** (n - 2 * i) if 2 * i <= n else 1
    alpha = checked(make_map(U, (U.make(1, shift), y), "alpha"))
    beta = omega(params, c0.g, "beta")
    dx, dy = inner(U, x, "delta_x"), inner(U, y, "delta_y")
    ag = aut_group(U)
    mu_key = ag.mul(ag.mul(ag.pow(dx.key, c0.ell), beta.key), ag.pow(dx.key, -c0.ell))
    mu = checked(replace(map_from_key(U, mu_key, "mu"), status="unchecked"))
    nu = checked(replace(map_from_key(U, ag.pow(mu_key, (p - 1) * c0.t), "nu"), status="unchecked"))
    return {"alpha": alpha, "beta": beta, "delta_x": dx, "delta_y": dy, "mu": mu, "nu": nu}


def named_generators(params: GroupParams, family: str) -> dict[str, GenMap]:
    """Labeled, verified generator maps of one family."""
    makers = {"high": high_generators, "top": top_generators, "low": low_generators,
              "appendix": appendix_generators}
    if family not in makers:
        raise ParameterError(f"unknown family {family!r}")
    return makers[family](params)


def family_for(params: GroupParams) -> str:
    if params.top:
        return "top"
    return "high" if params.regime.value == "HIGH" else "low"


def restrict_to_t(f: GenMap) -> GenMap:
    """Restriction of an automorphism of S preserving T, as an automorphism of T."""
    _require_aut(f)
    params = f.group.params
    T = G.t_group(params)
    S = f.group
    a, b, _ = f.images
    d_img = S.comm(a, b)
    imgs = tuple(G.t_from_s(x, params) for x in (a, b, d_img))
    return checked(make_map(T, imgs, f"{f.label}0" if f.label else ""))
