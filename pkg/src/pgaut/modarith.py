"""Exact modular arithmetic and the numeric constants every construction depends on.

All residues are stored as least nonnegative representatives.  Python integers
are unbounded, so intermediate products never overflow; moduli are still
capped at ``MODULUS_CAP`` so that the enumerating code stays at desk scale.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import HypothesisFailure, ParameterError

MODULUS_CAP = 2**40


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    q = 3
    while q * q <= m:
        if m % q == 0:
            return False
        q += 2
    return True


def factorize(m: int) -> dict[int, int]:
    """Prime factorisation by trial division (fine below ``MODULUS_CAP``)."""
    if m < 1:
        raise ParameterError(f"cannot factor {m}")
    out: dict[int, int] = {}
    q = 2
    while q * q <= m:
        while m % q == 0:
            out[q] = out.get(q, 0) + 1
            m //= q
        q += 1 if q == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def vp(m: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if m == 0:
        raise ParameterError("vp(0) is undefined")
    m = abs(m)
    a = 0
    while m % p == 0:
        m //= p
        a += 1
    return a


def pow_mod(b: int, k: int, m: int) -> int:
    if m < 2:
        raise ParameterError(f"modulus must be >= 2, got {m}")
    if k < 0:
        raise ParameterError("pow_mod takes a nonnegative exponent")
    return pow(b, k, m)


def inverse_mod(u: int, m: int) -> int:
    if math.gcd(u, m) != 1:
        raise ParameterError(f"{u} is not a unit modulo {m}")
    return pow(u, -1, m)


def euler_phi(m: int) -> int:
    phi = m
    for q in factorize(m):
        phi = phi // q * (q - 1)
    return phi


def unit_order(u: int, m: int) -> int:
    """Multiplicative order of ``u`` modulo ``m``."""
    if m < 2:
        raise ParameterError(f"modulus must be >= 2, got {m}")
    if math.gcd(u, m) != 1:
        raise ParameterError(f"{u} is not a unit modulo {m}")
    order = euler_phi(m)
    for q in factorize(order):
        while order % q == 0 and pow(u, order // q, m) == 1:
            order //= q
    return order


def odd_representative(x: int, m: int) -> int:
    """Least positive representative of ``x`` mod odd ``m``, shifted by ``m`` if even."""
    x %= m
    if x == 0:
        x = m
    return x if x % 2 else x + m


# --- congruence checks -------------------------------------------------------

def check_lemma_uno(ell: int, a: int, c: int, b: int, p: int) -> bool:
    """(1 + ell p^a)^(c p^b) == 1 + c ell p^(a+b)  (mod p^(2a+b))."""
    if a < 1 or c < 1 or b < 0:
        raise ParameterError("need a, c >= 1 and b >= 0")
    mod = p ** (2 * a + b)
    lhs = pow(1 + ell * p**a, c * p**b, mod)
    rhs = (1 + c * ell * p ** (a + b)) % mod
    return lhs == rhs


def check_lemma_cuno(r: int, s: int, p: int) -> bool:
    """vp((1 + r)^s - 1) == vp(r) + vp(s) for r != 0 with p | r and s >= 1."""
    if s < 1 or r == 0 or r % p:
        raise ParameterError("need s >= 1, r != 0 and p | r")
    return vp((1 + r) ** s - 1, p) == vp(r, p) + vp(s, p)


def check_lemma_sumalinda(z: int, a: int, b: int, p: int) -> bool:
    """If z^(p^a) == 1 (mod p^b), the geometric sum 1 + z + ... + z^(p^a - 1) is p^a mod p^b.

    Raises ``HypothesisFailure`` when the premise does not hold, so that callers can
    tell a violated premise apart from a failed conclusion.
    """
    mod = p**b
    n_terms = p**a
    if pow(z, n_terms, mod) != 1 % mod:
        raise HypothesisFailure(f"{z}^{n_terms} is not 1 mod {mod}")
    total, term = 0, 1
    for _ in range(n_terms):
        total = (total + term) % mod
        term = term * z % mod
    return total == n_terms % mod


# --- parameters ----------------------------------------------------------------

class Regime(enum.Enum):
    LOW = "LOW"    # 2i < n
    HIGH = "HIGH"  # 2i >= n


def derive_de(p: int, n: int) -> tuple[int, int]:
    """Canonical pair: d = 1 and the least e > 0 with (1+p)(1+ep) == 1 mod p^n."""
    mod = p**n
    inv = inverse_mod(1 + p, mod)
    e = (inv - 1) // p
    assert (inv - 1) % p == 0 and e % p != 0
    assert (1 + p) * (1 + e * p) % mod == 1
    return 1, e


@dataclass(frozen=True)
class GroupParams:
    p: int
    n: int
    i: int
    d: int
    e: int

    def __post_init__(self) -> None:
        p, n, i, d, e = self.p, self.n, self.i, self.d, self.e
        if p < 3 or not is_prime(p):
            raise ParameterError(f"p must be an odd prime, got {p}")
        if n < 2:
            raise ParameterError(f"n must be >= 2, got {n}")
        if not 1 <= i <= n - 1:
            raise ParameterError(f"i must lie in [1, n-1], got {i}")
        if p**n > MODULUS_CAP:
            raise ParameterError(f"p^n = {p**n} exceeds the modulus cap")
        if d % p == 0 or e % p == 0:
            raise ParameterError("d and e must be prime to p")
        if (1 + d * p) * (1 + e * p) % p**n != 1:
            raise ParameterError("(1+dp)(1+ep) must be 1 mod p^n")
        # follows from the previous two, kept as an explicit guard
        if (e - d) % p == 0:
            raise ParameterError("e must differ from d mod p")

    @classmethod
    def canonical(cls, p: int, n: int, i: int) -> "GroupParams":
        if p < 3 or not is_prime(p):
            raise ParameterError(f"p must be an odd prime, got {p}")
        if n < 2:
            raise ParameterError(f"n must be >= 2, got {n}")
        d, e = derive_de(p, n)
        return cls(p, n, i, d, e)

    @property
    def regime(self) -> Regime:
        return Regime.LOW if 2 * self.i < self.n else Regime.HIGH

    @property
    def top(self) -> bool:
        """The i = n - 1 subcase."""
        return self.i == self.n - 1

    @property
    def a_mod(self) -> int:
        return self.p ** (self.i if 2 * self.i <= self.n else self.n - self.i)

    @property
    def b_mod(self) -> int:
        return self.p ** (self.n - self.i)

    @property
    def c_mod(self) -> int:
        return self.p ** (self.n - 1)

    @property
    def comm_step(self) -> int:
        """Exponent k with [a, b] = c^k."""
        if 2 * self.i <= self.n:
            return self.p ** (self.n - self.i - 1)
        return self.p ** (self.i - 1)

    @property
    def d_mod(self) -> int:
        """Order of the commutator [a, b]."""
        return self.c_mod // self.comm_step

    def as_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "i": self.i, "d": self.d, "e": self.e,
                "regime": self.regime.value, "top": self.top}


def element_of_order(order: int, m: int, start: int = 2) -> int:
    """Smallest integer >= start whose multiplicative order mod m is ``order``."""
    u = start
    while True:
        if math.gcd(u, m) == 1 and pow(u, order, m) == 1 % m and unit_order(u, m) == order:
            return u
        u += 1


@dataclass(frozen=True)
class AppendixConstants:
    p: int
    n: int
    i: int
    g: int
    h: int
    t: int
    ell: int
    d: int
    e: int
    g0: int
    h0: int
    r: int
    s: int
    t_lindop: int
    v: int
    checks: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        keys = ["g", "h", "t", "ell", "d", "e", "g0", "h0", "r", "s", "t_lindop", "v"]
        return {k: getattr(self, k) for k in keys}


def derive_appendix_constants(p: int, n: int, i: int) -> AppendixConstants:
    """Smallest valid choice of every constant fixed by an existence argument."""
    GroupParams.canonical(p, n, i)  # validates p, n, i
    mod = p**n
    g = element_of_order(p ** (n - 1) * (p - 1), mod)
    h = odd_representative(inverse_mod(g, mod), mod)
    target = (1 + p**i) % mod
    base = pow(g, p ** (i - 1) * (p - 1), mod)
    t = next(t for t in range(1, p ** (n - i) + 1)
             if t % p and pow(base, t, mod) == target)
    ell = (mod + 1) // 2
    gt = pow(g, (p - 1) * t, mod)
    ht = pow(h, (p - 1) * t, mod)
    d, e = (gt - 1) // p, (ht - 1) // p

    mod_low = p ** (n - i)
    g0 = element_of_order(p - 1, mod_low)
    h0 = odd_representative(inverse_mod(g0, mod_low), mod_low)

    mod_top = p ** (n - 1)
    r = odd_representative(element_of_order(p - 1, mod_top), mod_top)
    s = odd_representative(inverse_mod(r, mod_top), mod_top)
    v = inverse_mod(d, p)

    checks = {
        "g_order": unit_order(g, mod) == p ** (n - 1) * (p - 1),
        "gh_inverse": g * h % mod == 1 and h % 2 == 1 and h > 0,
        "t_power": pow(g, p ** (i - 1) * (p - 1) * t, mod) == target and t % p != 0,
        "ell_half": 2 * ell % mod == 1,
        "de_from_g": (gt - 1) % p == 0 and (ht - 1) % p == 0,
        "de_units": d % p != 0 and e % p != 0 and (1 + d * p) * (1 + e * p) % mod == 1,
        "g0_order": unit_order(g0, mod_low) == p - 1,
        "g0h0_inverse": g0 * h0 % mod_low == 1 and h0 % 2 == 1,
        "r_order": unit_order(r, mod_top) == p - 1 and r % 2 == 1,
        "rs_inverse": r * s % mod_top == 1 and s % 2 == 1,
        "dv_inverse": d * v % p == 1,
    }
    if not all(checks.values()):
        bad = [k for k, ok in checks.items() if not ok]
        raise AssertionError(f"constant derivation failed: {bad}")
    return AppendixConstants(p, n, i, g, h, t, ell, d, e, g0, h0, r, s,
                             r * (r - 1) // 2, v, checks)
