"""Modular arithmetic mod p and p^2: Fermat quotients, kappa_p and the
Mirimanoff polynomial gamma_p(t) = sum_{j=1}^{p-1} t^j / j (mod p).

All functions take a :class:`PrimeContext`, which fixes the prime together
with a primitive root ``g`` and the order-(p-1) element ``w = g^p mod p^2``
whose powers enumerate the (p-1)-th roots of unity modulo p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotCoprime, NotOddPrime, OutOfRange, UndefinedAt

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Largest modulus whose residues can be multiplied inside int64.
_INT64_SAFE_MOD = 3_037_000_499


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    for b in _MR_BASES:
        if n == b:
            return True
        if n % b == 0:
            return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Odd primes in the closed interval [lo, hi], ascending."""
    if hi < 3:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    found = np.flatnonzero(sieve)
    return [int(p) for p in found if p >= max(lo, 3)]


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise NotOddPrime(p)


def powmod_array(base, exponent: int, modulus: int) -> np.ndarray:
    """Elementwise ``base ** exponent % modulus`` for an integer array."""
    base = np.asarray(base, dtype=np.int64) % modulus
    if modulus > _INT64_SAFE_MOD:
        return np.array([pow(int(b), exponent, modulus) for b in base], dtype=np.int64)
    result = np.ones_like(base)
    while exponent:
        if exponent & 1:
            result = result * base % modulus
        base = base * base % modulus
        exponent >>= 1
    return result


@dataclass(frozen=True)
class PrimeContext:
    p: int
    p_squared: int
    g: int
    w: int

    @cached_property
    def inverses(self) -> np.ndarray:
        """``inverses[j] = j^{-1} mod p`` for j in [1, p); entry 0 is 0."""
        p = self.p
        inv = np.zeros(p, dtype=np.int64)
        if p > 1:
            inv[1] = 1
        # inv[j] = -(p // j) * inv[p % j]  (mod p), linear-time batch inversion
        for j in range(2, p):
            inv[j] = (p - (p // j)) * int(inv[p % j]) % p
        return inv

    @cached_property
    def quotients(self) -> np.ndarray:
        """``quotients[t] = q_p(t)`` for t in [1, p); entry 0 is 0 (undefined)."""
        p, p2 = self.p, self.p_squared
        t = np.arange(p, dtype=np.int64)
        q = (powmod_array(t, p - 1, p2) - 1) // p
        q[0] = 0
        return q


def make_context(p: int) -> PrimeContext:
    if not is_odd_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    p2 = p * p
    g = smallest_primitive_root(p)
    return PrimeContext(p=p, p_squared=p2, g=g, w=pow(g, p, p2))


def fermat_quotient(ctx: PrimeContext, k: int) -> int:
    """The q in [0, p) with k^(p-1) = 1 + q*p (mod p^2).

    Only the class of ``k`` mod p^2 matters, so negative and large ``k`` are
    reduced first.
    """
    p, p2 = ctx.p, ctx.p_squared
    k %= p2
    if k % p == 0:
        raise NotCoprime(f"{p} divides {k}")
    return (pow(k, p - 1, p2) - 1) // p


def f_map(ctx: PrimeContext, x: int) -> int:
    if not 0 <= x < ctx.p_squared:
        raise OutOfRange(f"x={x} outside [0, {ctx.p_squared})")
    if x % ctx.p == 0:
        return ctx.p
    return fermat_quotient(ctx, x)


def f_map_array(ctx: PrimeContext) -> np.ndarray:
    """``f_map`` evaluated at every x in [0, p^2)."""
    p, p2 = ctx.p, ctx.p_squared
    x = np.arange(p2, dtype=np.int64)
    out = (powmod_array(x, p - 1, p2) - 1) // p
    out[x % p == 0] = p
    return out


def kappa(ctx: PrimeContext) -> int:
    q = 1
    while fermat_quotient(ctx, q) == 0:
        q += 1
    return q


def mirimanoff_eval(ctx: PrimeContext, t: int) -> int:
    """gamma_p(t) mod p from the defining power sum (Horner form)."""
    p = ctx.p
    t %= p
    inv = ctx.inverses
    acc = 0
    for j in range(p - 1, 0, -1):
        acc = (acc * t + int(inv[j])) % p
    return acc * t % p


def mirimanoff_table(ctx: PrimeContext) -> np.ndarray:
    """gamma_p(t) mod p for every t in [0, p), from the power sum."""
    p = ctx.p
    t = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    inv = ctx.inverses
    for j in range(p - 1, 0, -1):
        acc = (acc * t + inv[j]) % p
    return acc * t % p


def mirimanoff_eval_fast(ctx: PrimeContext, t: int) -> int:
    """gamma_p(t) = (t-1) q_p(t-1) - t q_p(t)  (mod p), for t not in {0, 1} mod p."""
    p = ctx.p
    t %= p
    if t in (0, 1):
        raise UndefinedAt(f"quotient form undefined at t={t}")
    return ((t - 1) * fermat_quotient(ctx, t - 1) - t * fermat_quotient(ctx, t)) % p


def mirimanoff_binomial(ctx: PrimeContext, t: int) -> int:
    """gamma_p(t) = (1 - t^p - (1-t)^p) / p  (mod p), exact mod p^2."""
    p, p2 = ctx.p, ctx.p_squared
    t %= p
    num = (1 - pow(t, p, p2) - pow(1 - t, p, p2)) % p2
    if num % p:
        raise ArithmeticError(f"numerator {num} not divisible by {p}")
    return num // p % p


def mirimanoff_fast_table(ctx: PrimeContext) -> np.ndarray:
    """gamma_p(t) for all t in [0, p) via Fermat quotients, O(p log p).

    The quotient form does not cover t = 0, 1; gamma_p(0) = 0 and
    gamma_p(1) is the harmonic sum, taken directly from the inverse table.
    """
    p = ctx.p
    q = ctx.quotients
    t = np.arange(p, dtype=np.int64)
    out = np.zeros(p, dtype=np.int64)
    out[2:] = ((t[2:] - 1) * q[1:-1] - t[2:] * q[2:]) % p
    out[1] = int(ctx.inverses.sum()) % p
    return out


def mirimanoff_zero_count(ctx: PrimeContext, method: str = "fast") -> int:
    """Number of roots of gamma_p in [0, p), counting t = 0 and t = 1."""
    if method == "fast":
        table = mirimanoff_fast_table(ctx)
    elif method == "direct":
        table = mirimanoff_table(ctx)
    else:
        raise ValueError(f"unknown method {method!r}")
    return int(np.count_nonzero(table == 0))


def kappa_via_mirimanoff(ctx: PrimeContext) -> int:
    n = 1
    while mirimanoff_eval(ctx, n) == 0:
        n += 1
    return n


def discrete_log(target: int, base: int, modulus: int, order: int) -> int:
    """Baby-step giant-step: the d in [0, order) with base^d = target."""
    m = math.isqrt(order - 1) + 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = x * base % modulus
    giant = pow(base, -m, modulus)
    y = target % modulus
    for i in range(m):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % order
        y = y * giant % modulus
    raise ValueError(f"{target} not in the subgroup generated by {base}")


def teichmueller_decompose(ctx: PrimeContext, k: int) -> tuple[int, int]:
    """Split k into (d, q) with k = w^d (1 - q p)  (mod p^2)."""
    p = ctx.p
    q = fermat_quotient(ctx, k)
    d = discrete_log(k % p, ctx.w % p, p, p - 1)
    return d, q


def teichmueller_compose(ctx: PrimeContext, d: int, q: int) -> int:
    p2 = ctx.p_squared
    return pow(ctx.w, d, p2) * (1 - q * ctx.p) % p2


def teichmueller_subgroup(ctx: PrimeContext) -> np.ndarray:
    """The p-1 residues w^j mod p^2, j = 0..p-2, i.e. the solutions of u^(p-1) = 1."""
    p, p2 = ctx.p, ctx.p_squared
    out = np.empty(p - 1, dtype=np.int64)
    u = 1
    for j in range(p - 1):
        out[j] = u
        u = u * ctx.w % p2
    return out
