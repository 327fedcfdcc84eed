"""Real Gauss periods Gamma_p and their Galois conjugates.

Gamma_p is the sum of zeta^u over the p-1 residues u with u^(p-1) = 1 mod p^2,
zeta = exp(2 pi i / p^2).  Its conjugates are indexed by a in [0, p) through
``zeta -> zeta^(1 - a p)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateThreshold
from .ntheory import PrimeContext, powmod_array, teichmueller_subgroup

ARGMAX_TOL = 1e-12


@dataclass(frozen=True)
class ConjugateTable:
    p: int
    values: np.ndarray
    gamma_max: float
    argmax: frozenset

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "values": [float(v) for v in self.values],
            "gamma_max": float(self.gamma_max),
            "argmax": sorted(int(a) for a in self.argmax),
        }


def galois_multiplier(p: int, a: int) -> int:
    """Exponent multiplier (1 - a p) mod p^2 of the automorphism j_p(a)."""
    p2 = p * p
    return (1 - a * p) % p2


def conjugate_exponents(ctx: PrimeContext, a: int) -> np.ndarray:
    """Exponents u (1 - a p) mod p^2 for u in the subgroup, sorted ascending."""
    u = teichmueller_subgroup(ctx)
    return np.sort(u * galois_multiplier(ctx.p, a) % ctx.p_squared)


def _values_direct(ctx: PrimeContext, check_imag: bool) -> np.ndarray:
    p, p2 = ctx.p, ctx.p_squared
    values = np.empty(p)
    for a in range(p):
        e = conjugate_exponents(ctx, a)
        angles = 2.0 * np.pi * e / p2
        values[a] = math.fsum(np.cos(angles))
        if check_imag:
            imag = math.fsum(np.sin(angles))
            if abs(imag) >= 1e-9 * (p - 1):
                raise ArithmeticError(f"conjugate a={a} has imaginary part {imag}")
    return values


def _values_dft(ctx: PrimeContext) -> np.ndarray:
    # u (1 - a p) = u - a p (u mod p)  (mod p^2), and u mod p runs over 1..p-1
    # once as u runs over the subgroup, with u = r^p mod p^2 lifting r.  So the
    # conjugates are a length-p DFT of exp(2 pi i r^p / p^2).
    p, p2 = ctx.p, ctx.p_squared
    r = np.arange(p, dtype=np.int64)
    lifts = powmod_array(r, p, p2)
    coeffs = np.exp(2j * np.pi * lifts / p2)
    coeffs[0] = 0.0
    return np.fft.fft(coeffs).real


def gamma_max_of(table_or_values) -> tuple[float, frozenset]:
    values = getattr(table_or_values, "values", table_or_values)
    mags = np.abs(np.asarray(values, dtype=float))
    top = float(mags.max())
    return top, frozenset(int(a) for a in np.flatnonzero(mags >= top - ARGMAX_TOL))


def table_from_values(p: int, values) -> ConjugateTable:
    """Wrap precomputed (or synthetic) conjugate values in a table."""
    values = np.asarray(values, dtype=float)
    if values.shape != (p,):
        raise ValueError(f"expected {p} values, got shape {values.shape}")
    top, argmax = gamma_max_of(values)
    return ConjugateTable(p=p, values=values, gamma_max=top, argmax=argmax)


def gamma_conjugates(
    ctx: PrimeContext, method: str = "dft", check_imag: bool = False
) -> ConjugateTable:
    """Table of Gamma_p^{j_p(a)} for a = 0..p-1.

    ``method="direct"`` sums cosines of the exactly reduced exponents with
    compensated summation, O(p^2).  ``method="dft"`` (default) gets the same
    numbers from one length-p FFT and is what makes scans to p ~ 10^4 cheap.
    """
    if method == "dft":
        values = _values_dft(ctx)
    elif method == "direct":
        values = _values_direct(ctx, check_imag)
    else:
        raise ValueError(f"unknown method {method!r}")
    return table_from_values(ctx.p, values)


def _log(x: float, base: str) -> float:
    if base in ("e", "ln"):
        return math.log(x)
    if base == "2":
        return math.log2(x)
    raise ValueError(f"log base must be 'e' or '2', got {base!r}")


def maxgamma_threshold(p: int, t: int, log_base: str = "e") -> float:
    if t < 1:
        raise ValueError("t must be >= 1")
    return 1.0 - 1.0 / _log(p, log_base) ** t


def maxgamma_set(table: ConjugateTable, t: int, log_base: str = "e") -> frozenset:
    """Indices a with |Gamma^{j_p(a)}| / Gamma_max > 1 - 1/(log p)^t."""
    threshold = maxgamma_threshold(table.p, t, log_base)
    if threshold <= 0:
        warnings.warn(
            f"threshold {threshold:.4g} <= 0 at p={table.p}, t={t}", DegenerateThreshold
        )
    ratios = np.abs(table.values) / table.gamma_max
    members = {int(a) for a in np.flatnonzero(ratios > threshold)}
    return frozenset(members | table.argmax)


def alpha(table: ConjugateTable, a: int) -> float:
    return float(abs(table.values[a]) / table.gamma_max)
