"""Normal-form arithmetic for the groups S, T, U and the Heisenberg matrix groups.

Every group here is an ``ExponentGroup``: an element is a tuple of exponents
``(e0, e1, ...)`` standing for the ordered product ``g0^e0 g1^e1 ...`` of the
canonical generators, with each ``e_k`` reduced modulo ``moduli[k]``.  Elements
also have an integer index (mixed radix over the exponents) which the
vectorised numpy paths use.

Conventions: ``[x, y] = x y x^-1 y^-1`` and conjugation is ``x -> g x g^-1``.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

from .errors import ParameterError, ResourceGuardError
from .modarith import GroupParams, Regime, vp

# Multiplication tables are built for groups up to this order.
TABLE_LIMIT = 4096
DEFAULT_CLOSURE_CAP = 10**6


class SElement(NamedTuple):
    a: int
    b: int
    c: int


class TElement(NamedTuple):
    a: int
    b: int
    dexp: int


class UElement(NamedTuple):
    xexp: int
    yexp: int


class HeisElement(NamedTuple):
    r: int
    u: int
    v: int


class ZElement(NamedTuple):
    """Element of a finite abelian group given by its coordinates."""
    coords: tuple


# --- words and relations ------------------------------------------------------

Word = tuple  # of (generator position, exponent)


@dataclass(frozen=True)
class Relation:
    label: str
    lhs: Word
    rhs: Word


_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^\(?(-?)([A-Za-z0-9_]+)\)?)?$")


def parse_word(text: str, names: Sequence[str], **values: int) -> Word:
    """Parse a whitespace separated word such as ``"H E H^-1"`` or ``"A^k F"``.

    Exponents are integer literals or names looked up in ``values``; ``"1"``
    denotes the empty word.
    """
    word = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m or m.group(1) not in names:
            raise ParameterError(f"bad token {tok!r} in word {text!r}")
        exp = 1
        if m.group(3) is not None:
            raw = m.group(3)
            exp = int(raw) if raw.isdigit() else int(values[raw])
            if m.group(2):
                exp = -exp
        word.append((names.index(m.group(1)), exp))
    return tuple(word)


def parse_relation(text: str, names: Sequence[str], label: str | None = None,
                   **values: int) -> Relation:
    lhs, rhs = text.split("=")
    return Relation(label or text, parse_word(lhs, names, **values),
                    parse_word(rhs, names, **values))


def eval_word_idx(group: "ExponentGroup", word: Word, values: Sequence) -> np.ndarray:
    """Vectorised ``eval_word`` on element indices; values may be arrays."""
    acc = np.zeros((), dtype=np.int64)
    for pos, exp in word:
        acc = group.mul_idx(acc, group.pow_idx(values[pos], exp))
    return acc


def eval_word(group: Any, word: Word, values: Sequence[Any]) -> Any:
    """Evaluate a word on ``values`` using ``group.mul/pow/identity``."""
    acc = group.identity()
    for pos, exp in word:
        acc = group.mul(acc, group.pow(values[pos], exp))
    return acc


def relation_holds(group: Any, rel: Relation, values: Sequence[Any]) -> bool:
    return eval_word(group, rel.lhs, values) == eval_word(group, rel.rhs, values)


# --- base class ---------------------------------------------------------------

class ExponentGroup:
    """A finite group whose elements have an exponent-vector normal form."""

    tag = "G"
    elem_type: Callable = tuple
    gen_names: tuple = ()
    moduli: tuple = ()
    # order in which a backtracking search assigns generator images
    search_order: tuple | None = None

    def __init__(self) -> None:
        self.order = math.prod(self.moduli)
        strides, s = [], 1
        for m in self.moduli:
            strides.append(s)
            s *= m
        self.strides = tuple(strides)
        self._table: np.ndarray | None = None
        self._inverse_all: np.ndarray | None = None
        self._orders: np.ndarray | None = None

    # identity of the group object itself
    def key(self) -> tuple:
        return (self.tag, self.moduli)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExponentGroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self.key()[1:]}"

    def __getstate__(self) -> dict:
        state = dict(self.__dict__)
        state["_table"] = None
        return state

    # --- scalar API ---------------------------------------------------------
    def make(self, *exps: int):
        return self.elem_type(*(e % m for e, m in zip(exps, self.moduli)))

    def identity(self):
        return self.elem_type(*([0] * len(self.moduli)))

    def gens(self) -> tuple:
        out = []
        for k in range(len(self.moduli)):
            exps = [0] * len(self.moduli)
            exps[k] = 1
            out.append(self.make(*exps))
        return tuple(out)

    def mul(self, x, y):  # pragma: no cover - abstract
        raise NotImplementedError

    def inv(self, x):
        # x = g0^e0 ... gk^ek, so x^-1 = gk^-ek ... g0^-e0
        acc = self.identity()
        for k in reversed(range(len(self.moduli))):
            acc = self.mul(acc, self._gen_power(k, -x[k]))
        return acc

    def _gen_power(self, k: int, e: int):
        exps = [0] * len(self.moduli)
        exps[k] = e
        return self.make(*exps)

    def pow(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        result = self.identity()
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result

    def comm(self, x, y):
        return self.mul(self.mul(self.mul(x, y), self.inv(x)), self.inv(y))

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, x) -> int:
        e = self.identity()
        k, y = 1, x
        while y != e:
            y = self.mul(y, x)
            k += 1
        return k

    def validate(self, x) -> None:
        if len(x) != len(self.moduli) or any(not 0 <= v < m for v, m in zip(x, self.moduli)):
            raise ParameterError(f"{x!r} is not a normal form of {self!r}")

    def index(self, x) -> int:
        return sum(v * s for v, s in zip(x, self.strides))

    def element(self, k: int):
        return self.elem_type(*(int(k) // s % m for s, m in zip(self.strides, self.moduli)))

    def elements(self) -> list:
        return [self.element(k) for k in range(self.order)]

    def relations(self) -> list[Relation]:
        return []

    def gen_indices(self) -> np.ndarray:
        return np.array(self.strides, dtype=np.int64)

    # --- vectorised index API ----------------------------------------------
    def decode(self, idx) -> list[np.ndarray]:
        idx = np.asarray(idx, dtype=np.int64)
        return [idx // s % m for s, m in zip(self.strides, self.moduli)]

    def encode(self, cols: Sequence[np.ndarray]) -> np.ndarray:
        out = np.zeros(np.broadcast(*cols).shape, dtype=np.int64)
        for c, s, m in zip(cols, self.strides, self.moduli):
            out += (c % m) * s
        return out

    def _mul_cols(self, xs: list, ys: list) -> list:  # pragma: no cover - abstract
        raise NotImplementedError

    def _check_enumerable(self) -> None:
        if max(self.moduli, default=1) > 2**31:
            raise ResourceGuardError("vectorised arithmetic needs moduli below 2^31")

    def table(self) -> np.ndarray | None:
        if self._table is None and self.order <= TABLE_LIMIT:
            self._check_enumerable()
            n = self.order
            dtype = np.int16 if n <= 2**15 else np.int32
            tab = np.empty((n, n), dtype=dtype)
            ys = self.decode(np.arange(n))
            step = max(1, 2**20 // n)
            for lo in range(0, n, step):
                xs = self.decode(np.arange(lo, min(n, lo + step))[:, None])
                tab[lo:lo + step] = self.encode(self._mul_cols(xs, [y[None, :] for y in ys]))
            self._table = tab
        return self._table

    def mul_idx(self, x, y) -> np.ndarray:
        tab = self.table()
        if tab is not None:
            return tab[np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)].astype(np.int64)
        self._check_enumerable()
        return self.encode(self._mul_cols(self.decode(x), self.decode(y)))

    def inv_idx(self, x) -> np.ndarray:
        if self._inverse_all is None and self.order <= 10**7:
            self._inverse_all = self._inv_vec(np.arange(self.order, dtype=np.int64))
        if self._inverse_all is not None:
            return self._inverse_all[np.asarray(x, dtype=np.int64)]
        return self._inv_vec(np.asarray(x, dtype=np.int64))

    def _inv_vec(self, x: np.ndarray) -> np.ndarray:
        cols = self.decode(x)
        acc = np.zeros_like(x)
        for k in reversed(range(len(self.moduli))):
            acc = self.mul_idx(acc, ((-cols[k]) % self.moduli[k]) * self.strides[k])
        return acc

    def pow_idx(self, x, k: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if k < 0:
            x, k = self.inv_idx(x), -k
        result = np.zeros_like(x)
        while k:
            if k & 1:
                result = self.mul_idx(result, x)
            k >>= 1
            if k:
                x = self.mul_idx(x, x)
        return result

    def orders_idx(self) -> np.ndarray:
        """Order of every element, indexed by element index."""
        if self._orders is None:
            allx = np.arange(self.order, dtype=np.int64)
            orders = np.ones(self.order, dtype=np.int64)
            cur = allx.copy()
            k = 1
            while True:
                pending = cur != 0
                if not pending.any():
                    break
                k += 1
                cur = np.where(pending, self.mul_idx(cur, allx), 0)
                orders[pending] = k
            self._orders = orders
        return self._orders

    def image_table(self, images: Sequence[int], target: "ExponentGroup | None" = None) -> np.ndarray:
        """Index table of the map ``g0^e0 g1^e1 ... -> img0^e0 img1^e1 ...``.

        This is the homomorphism determined by the generator images whenever the
        images satisfy the defining relations.
        """
        target = target or self
        cols = self.decode(np.arange(self.order, dtype=np.int64))
        acc = np.zeros(self.order, dtype=np.int64)
        for k, (img, m) in enumerate(zip(images, self.moduli)):
            acc = target.mul_idx(acc, target.powers_idx(int(img), m)[cols[k]])
        return acc

    def powers_idx(self, x: int, m: int) -> np.ndarray:
        """Indices of x^0, x^1, ..., x^(m-1)."""
        out = np.zeros(m, dtype=np.int64)
        filled = 1
        # doubling: out[filled:2*filled] = out[:filled] * x^filled
        if m > 1:
            out[1] = x
            filled = 2
        while filled < m:
            step = min(filled, m - filled)
            xf = int(self.pow_idx(np.array([x]), filled)[0])
            out[filled:filled + step] = self.mul_idx(out[:step], xf)
            filled += step
        return out

    def element_from_index(self, k) -> Any:
        return self.element(int(k))


# --- concrete groups ------------------------------------------------------------

class SGroup(ExponentGroup):
    """Normal forms a^a b^b c^c.

    Relations: c a c^-1 = a^(1+ep), c b c^-1 = b^(1+dp), [a, b] = c^k with k the
    commutator step.  Collection moves c^c1 right across a^a2 b^b2, then swaps
    b^b1 past a^a2' using b a = a b c^-k (the commutator is central).
    """

    tag = "S"
    elem_type = SElement
    gen_names = ("a", "b", "c")
    search_order = (2, 0, 1)

    def __init__(self, params: GroupParams) -> None:
        self.params = params
        self.moduli = (params.a_mod, params.b_mod, params.c_mod)
        super().__init__()
        p = params.p
        self.conj_a = (1 + params.e * p) % params.a_mod
        self.conj_b = (1 + params.d * p) % params.b_mod
        self.step = params.comm_step
        self._apow = [pow(self.conj_a, k, params.a_mod) for k in range(params.c_mod)]
        self._bpow = [pow(self.conj_b, k, params.b_mod) for k in range(params.c_mod)]
        self._apow_np = np.array(self._apow, dtype=np.int64)
        self._bpow_np = np.array(self._bpow, dtype=np.int64)

    def key(self) -> tuple:
        return (self.tag, self.params)

    def mul(self, x, y) -> SElement:
        ma, mb, mc = self.moduli
        a1, b1, c1 = x
        a2, b2, c2 = y
        a2 = a2 * self._apow[c1] % ma
        b2 = b2 * self._bpow[c1] % mb
        return SElement((a1 + a2) % ma, (b1 + b2) % mb, (c1 + c2 - b1 * a2 * self.step) % mc)

    def _mul_cols(self, xs, ys):
        ma, mb, mc = self.moduli
        a1, b1, c1 = xs
        a2, b2, c2 = ys
        a2 = a2 * self._apow_np[c1] % ma
        b2 = b2 * self._bpow_np[c1] % mb
        dm = self.params.d_mod
        return [a1 + a2, b1 + b2, c1 + c2 - (b1 * a2 % dm) * self.step]

    def relations(self) -> list[Relation]:
        ma, mb, mc = self.moduli
        p = self.params.p
        n = self.gen_names
        return [
            parse_relation("a^ma = 1", n, "a order", ma=ma),
            parse_relation("b^mb = 1", n, "b order", mb=mb),
            parse_relation("c^mc = 1", n, "c order", mc=mc),
            parse_relation("a b a^-1 b^-1 = c^k", n, "[a,b] = c^k", k=self.step),
            parse_relation("c a c^-1 = a^x", n, "c a c^-1 = a^(1+ep)", x=1 + self.params.e * p),
            parse_relation("c b c^-1 = b^x", n, "c b c^-1 = b^(1+dp)", x=1 + self.params.d * p),
        ]

    def commutator_element(self) -> SElement:
        """[a, b] as an element of S."""
        return self.make(0, 0, self.step)


class TGroup(ExponentGroup):
    """Heisenberg type group with normal forms a^a b^b d^d and d = [a, b] central."""

    tag = "T"
    elem_type = TElement
    gen_names = ("a", "b", "d")
    search_order = (2, 0, 1)

    def __init__(self, params: GroupParams) -> None:
        self.params = params
        self.moduli = (params.a_mod, params.b_mod, params.d_mod)
        super().__init__()

    def key(self) -> tuple:
        return (self.tag, self.params)

    def mul(self, x, y) -> TElement:
        ma, mb, md = self.moduli
        return TElement((x[0] + y[0]) % ma, (x[1] + y[1]) % mb,
                        (x[2] + y[2] - x[1] * y[0]) % md)

    def _mul_cols(self, xs, ys):
        md = self.moduli[2]
        return [xs[0] + ys[0], xs[1] + ys[1], xs[2] + ys[2] - (xs[1] * ys[0] % md)]

    def relations(self) -> list[Relation]:
        ma, mb, md = self.moduli
        n = self.gen_names
        return [
            parse_relation("a^ma = 1", n, "a order", ma=ma),
            parse_relation("b^mb = 1", n, "b order", mb=mb),
            parse_relation("d^md = 1", n, "d order", md=md),
            parse_relation("a b a^-1 b^-1 = d", n, "[a,b] = d"),
            parse_relation("a d = d a", n, "ad = da"),
            parse_relation("b d = d b", n, "bd = db"),
        ]


class UGroup(ExponentGroup):
    """Metacyclic group x^a y^b with y x y^-1 = x^(1+p^i)."""

    tag = "U"
    elem_type = UElement
    gen_names = ("x", "y")
    search_order = (1, 0)

    def __init__(self, params: GroupParams) -> None:
        self.params = params
        p, n, i = params.p, params.n, params.i
        self.moduli = (p**n, p ** (n - i))
        super().__init__()
        self.twist = 1 + p**i
        self._xpow = [pow(self.twist, k, p**n) for k in range(p ** (n - i))]
        self._xpow_np = np.array(self._xpow, dtype=np.int64)

    def key(self) -> tuple:
        p = self.params
        return (self.tag, p.p, p.n, p.i)

    def mul(self, x, y) -> UElement:
        mx, my = self.moduli
        return UElement((x[0] + y[0] * self._xpow[x[1]]) % mx, (x[1] + y[1]) % my)

    def _mul_cols(self, xs, ys):
        mx = self.moduli[0]
        return [xs[0] + ys[0] * self._xpow_np[xs[1]] % mx, xs[1] + ys[1]]

    def relations(self) -> list[Relation]:
        mx, my = self.moduli
        n = self.gen_names
        return [
            parse_relation("x^mx = 1", n, "x order", mx=mx),
            parse_relation("y^my = 1", n, "y order", my=my),
            parse_relation("y x y^-1 = x^k", n, "y x y^-1 = x^(1+p^i)", k=self.twist),
        ]


class HeisGroup(ExponentGroup):
    """Upper unitriangular matrices [[1, u, v], [0, 1, r], [0, 0, 1]].

    ``r`` lives in Z/R and ``u, v`` in the module Z/M (M divides R).  The
    generators, in field order, are the elementary matrices at (2,3), (1,2) and
    (1,3); with that order the exponent vector of an element is (r, u, v).
    """

    tag = "Heis"
    elem_type = HeisElement
    gen_names = ("e23", "e12", "e13")

    def __init__(self, ring_mod: int, module_mod: int) -> None:
        if ring_mod % module_mod:
            raise ParameterError("module modulus must divide the ring modulus")
        self.moduli = (ring_mod, module_mod, module_mod)
        super().__init__()

    def mul(self, x, y) -> HeisElement:
        mr, mm, _ = self.moduli
        return HeisElement((x[0] + y[0]) % mr, (x[1] + y[1]) % mm,
                           (x[2] + y[2] + x[1] * y[0]) % mm)

    def _mul_cols(self, xs, ys):
        mm = self.moduli[1]
        return [xs[0] + ys[0], xs[1] + ys[1], xs[2] + ys[2] + (xs[1] * ys[0] % mm)]

    def relations(self) -> list[Relation]:
        mr, mm, _ = self.moduli
        n = self.gen_names
        return [
            parse_relation("e23^mr = 1", n, "e23 order", mr=mr),
            parse_relation("e12^mm = 1", n, "e12 order", mm=mm),
            parse_relation("e13^mm = 1", n, "e13 order", mm=mm),
            parse_relation("e12 e23 e12^-1 e23^-1 = e13", n, "[e12,e23] = e13"),
            parse_relation("e12 e13 = e13 e12", n, "e12 e13 commute"),
            parse_relation("e23 e13 = e13 e23", n, "e23 e13 commute"),
        ]

    @staticmethod
    def matrix(x: HeisElement) -> list[list[int]]:
        return [[1, x.u, x.v], [0, 1, x.r], [0, 0, 1]]


class AbelianGroup(ExponentGroup):
    """Z/m0 x Z/m1 x ...; the empty product is the trivial group."""

    tag = "Ab"

    def __init__(self, moduli: Sequence[int]) -> None:
        self.moduli = tuple(moduli)
        self.gen_names = tuple(f"z{k}" for k in range(len(self.moduli)))
        super().__init__()

    def elem_type(self, *coords):  # type: ignore[override]
        return ZElement(tuple(coords))

    def make(self, *exps: int):
        return ZElement(tuple(e % m for e, m in zip(exps, self.moduli)))

    def identity(self):
        return ZElement((0,) * len(self.moduli))

    def index(self, x) -> int:
        return sum(v * s for v, s in zip(x.coords, self.strides))

    def element(self, k: int):
        return ZElement(tuple(int(k) // s % m for s, m in zip(self.strides, self.moduli)))

    def validate(self, x) -> None:
        if len(x.coords) != len(self.moduli):
            raise ParameterError(f"{x!r} is not an element of {self!r}")

    def mul(self, x, y):
        return ZElement(tuple((u + v) % m for u, v, m in zip(x.coords, y.coords, self.moduli)))

    def inv(self, x):
        return ZElement(tuple(-u % m for u, m in zip(x.coords, self.moduli)))

    def _mul_cols(self, xs, ys):
        return [x + y for x, y in zip(xs, ys)]

    def relations(self) -> list[Relation]:
        n = self.gen_names
        rels = [parse_relation(f"{g}^m = 1", n, f"{g} order", m=m) for g, m in zip(n, self.moduli)]
        for j in range(len(n)):
            for k in range(j + 1, len(n)):
                rels.append(parse_relation(f"{n[j]} {n[k]} = {n[k]} {n[j]}", n))
        return rels


@functools.lru_cache(maxsize=64)
def s_group(params: GroupParams) -> SGroup:
    return SGroup(params)


@functools.lru_cache(maxsize=64)
def t_group(params: GroupParams) -> TGroup:
    return TGroup(params)


@functools.lru_cache(maxsize=64)
def u_group(params: GroupParams) -> UGroup:
    return UGroup(params)


def heis_group(params: GroupParams) -> HeisGroup:
    """The Heisenberg group isomorphic to T for these parameters."""
    p, n, i = params.p, params.n, params.i
    return HeisGroup(p ** (n - i), p**i if 2 * i <= n else p ** (n - i))


# --- public operations ---------------------------------------------------------

def group_order(params: GroupParams, which: str) -> int:
    """Closed-form order of S, T or U."""
    p, n, i = params.p, params.n, params.i
    if which == "S":
        return p ** (2 * n - 1) if 2 * i <= n else p ** (3 * n - 2 * i - 1)
    if which == "T":
        return p ** (n + i) if 2 * i <= n else p ** (3 * (n - i))
    if which == "U":
        return p**n * p ** (n - i)
    raise ParameterError(f"unknown group {which!r}")


def _checked(group: ExponentGroup, *xs) -> None:
    for x in xs:
        group.validate(x)


def s_mul(x: SElement, y: SElement, params: GroupParams) -> SElement:
    g = s_group(params)
    _checked(g, x, y)
    return g.mul(x, y)


def s_inv(x: SElement, params: GroupParams) -> SElement:
    return s_group(params).inv(x)


def s_pow(x: SElement, k: int, params: GroupParams) -> SElement:
    return s_group(params).pow(x, k)


def s_comm(x: SElement, y: SElement, params: GroupParams) -> SElement:
    return s_group(params).comm(x, y)


def s_conj(g: SElement, x: SElement, params: GroupParams) -> SElement:
    return s_group(params).conj(g, x)


def s_order(x: SElement, params: GroupParams) -> int:
    return s_group(params).element_order(x)


def t_embed(t: TElement, params: GroupParams) -> SElement:
    """T as the subgroup <a, b, c^k> of S (k the commutator step)."""
    t_group(params).validate(t)
    return s_group(params).make(t.a, t.b, t.dexp * params.comm_step)


def t_from_s(x: SElement, params: GroupParams) -> TElement:
    """Inverse of ``t_embed`` on its image."""
    step = params.comm_step
    if x.c % step:
        raise ParameterError(f"{x!r} does not lie in T")
    return t_group(params).make(x.a, x.b, x.c // step)


def t_to_heisenberg(t: TElement, params: GroupParams) -> HeisElement:
    """a -> E12, b -> E23, d -> E13, so a^a b^b d^d -> (r=b, u=a, v=ab+d)."""
    heis = heis_group(params)
    return heis.make(t.b, t.a, t.a * t.b + t.dexp)


def u_mul(x: UElement, y: UElement, params: GroupParams) -> UElement:
    g = u_group(params)
    _checked(g, x, y)
    return g.mul(x, y)


def u_order(z: UElement, params: GroupParams) -> int:
    """Order of x^a y^b as p^max(n - vp(a), n - i - vp(b), 0)."""
    p, n, i = params.p, params.n, params.i
    s = 0
    if z.xexp % p**n:
        s = max(s, n - vp(z.xexp, p))
    if z.yexp % p ** (n - i):
        s = max(s, n - i - vp(z.yexp, p))
    return p**s


def u_normal_cyclic(z: UElement, params: GroupParams) -> bool:
    """Whether <z> is normal in U, by conjugating z with the generators."""
    g = u_group(params)
    cyc = set(cyclic_subgroup(g, z))
    return all(g.conj(s, z) in cyc for s in g.gens())


def cyclic_subgroup(group: ExponentGroup, x) -> list:
    out = [group.identity()]
    y = x
    while y != out[0]:
        out.append(y)
        y = group.mul(y, x)
    return out


# --- subgroups at index level -------------------------------------------------

def closure_idx(group: ExponentGroup, gens: Sequence[int], cap: int | None = None) -> np.ndarray:
    """Sorted indices of the subgroup generated by ``gens`` (breadth-first)."""
    cap = DEFAULT_CLOSURE_CAP if cap is None else cap
    gens_arr = np.unique(np.asarray(list(gens), dtype=np.int64))
    seen = np.zeros(group.order, dtype=bool)
    seen[0] = True
    count = 1
    frontier = np.zeros(1, dtype=np.int64)
    while frontier.size and gens_arr.size:
        nxt = group.mul_idx(frontier[:, None], gens_arr[None, :]).ravel()
        nxt = np.unique(nxt)
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        count += nxt.size
        if count > cap:
            raise ResourceGuardError(f"subgroup closure exceeded cap {cap}")
        frontier = nxt
    return np.flatnonzero(seen)


def normal_closure_idx(group: ExponentGroup, gens: Sequence[int],
                       ambient: Sequence[int] | None = None) -> np.ndarray:
    """Smallest subgroup containing ``gens`` that is normalised by ``ambient``."""
    ambient = np.asarray(list(group.gen_indices() if ambient is None else ambient), dtype=np.int64)
    amb_inv = group.inv_idx(ambient)
    cur = [int(g) for g in gens]
    members = closure_idx(group, cur)
    while True:
        mask = np.zeros(group.order, dtype=bool)
        mask[members] = True
        sub = np.asarray(cur, dtype=np.int64)
        conj = group.mul_idx(group.mul_idx(ambient[:, None], sub[None, :]), amb_inv[:, None]).ravel()
        missing = np.unique(conj[~mask[conj]])
        if missing.size == 0:
            return members
        cur.extend(int(m) for m in missing[:1])
        members = closure_idx(group, cur)


def center_idx(group: ExponentGroup) -> np.ndarray:
    """Elements commuting with every generator."""
    allx = np.arange(group.order, dtype=np.int64)
    ok = np.ones(group.order, dtype=bool)
    for g in group.gen_indices():
        ok &= group.mul_idx(allx, g) == group.mul_idx(g, allx)
    return np.flatnonzero(ok)


def comm_idx(group: ExponentGroup, x, y) -> np.ndarray:
    return group.mul_idx(group.mul_idx(group.mul_idx(x, y), group.inv_idx(x)), group.inv_idx(y))


def derived_subgroup_idx(group: ExponentGroup) -> np.ndarray:
    g = group.gen_indices()
    comms = comm_idx(group, g[:, None], g[None, :]).ravel()
    return normal_closure_idx(group, [int(c) for c in comms if c != 0])


def pth_power_subgroup_idx(group: ExponentGroup, p: int) -> np.ndarray:
    powers = np.unique(group.pow_idx(np.arange(group.order, dtype=np.int64), p))
    return closure_idx(group, [int(x) for x in powers if x != 0])


def frattini_idx(group: ExponentGroup, p: int) -> np.ndarray:
    """G^p [G, G], the Frattini subgroup of a finite p-group."""
    gens = np.union1d(pth_power_subgroup_idx(group, p), derived_subgroup_idx(group))
    return normal_closure_idx(group, [int(x) for x in gens if x != 0])


def log_p(m: int, p: int) -> int:
    k = 0
    while m > 1:
        if m % p:
            raise ParameterError(f"{m} is not a power of {p}")
        m //= p
        k += 1
    return k


# --- public subgroup API on elements --------------------------------------------

def _to_elements(group: ExponentGroup, idx: np.ndarray) -> list:
    return [group.element(int(k)) for k in idx]


def subgroup_closure(group: ExponentGroup, generators: Sequence, cap: int | None = None) -> list:
    """The subgroup generated by ``generators``, sorted by normal-form index."""
    return _to_elements(group, closure_idx(group, [group.index(x) for x in generators], cap))


def center(group: ExponentGroup) -> list:
    return _to_elements(group, center_idx(group))


def derived_subgroup(group: ExponentGroup) -> list:
    return _to_elements(group, derived_subgroup_idx(group))


def pth_power_subgroup(group: ExponentGroup, p: int) -> list:
    return _to_elements(group, pth_power_subgroup_idx(group, p))


def frattini_rank(group: ExponentGroup, p: int) -> int:
    """Minimum number of generators of a finite p-group: log_p |G / G^p[G,G]|."""
    if group.order == 1:
        return 0
    return log_p(group.order // frattini_idx(group, p).size, p)


def regime_of(params: GroupParams) -> Regime:
    return params.regime
