"""Classical simulation of the measurement step of the Fourier-sampling routine.

Two independent routes to the outcome law are provided:

* :func:`build_distribution` uses the closed form, where every recorded
  sigma' has probability (1 - 1/p) (Gamma^sigma / p)^2 and the three
  failure events have fixed rational masses;
* :func:`statevector_distribution` evaluates |sum_{f(x)=s} zeta^{a x}|^2 / p^4
  for every (a, s) by brute force, and :func:`aggregate_statevector` buckets
  it into the same shape.

Sampling uses a Walker/Vose alias table over the p + 3 outcome categories.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import ConjugateTable
from .errors import LeakedMass, NormalizationFailure, TooLarge
from .ntheory import PrimeContext, f_map_array

STATEVECTOR_MAX_P = 101


class FailureKind(enum.Enum):
    SP_MULTIPLE = "s=p, p|a"
    A_ZERO = "s!=p, a=0"
    A_MULTIPLE = "s!=p, a=kp, k!=0"


@dataclass(frozen=True)
class Failure:
    kind: FailureKind


@dataclass(frozen=True)
class Sigma:
    sigma_prime: int


MeasurementOutcome = Failure | Sigma


def failure_probabilities(p: int) -> tuple[Fraction, Fraction, Fraction]:
    """Exact masses of the events (s=p, p|a), (s!=p, a=0), (s!=p, a=kp, k!=0)."""
    p3 = p**3
    return Fraction(1, p), Fraction((p - 1) ** 2, p3), Fraction(p - 1, p3)


@dataclass(frozen=True)
class OutcomeDistribution:
    p: int
    prob_fail_sp: float
    prob_fail_a0: float
    prob_fail_akp: float
    sigma_probs: np.ndarray

    @property
    def failure_total(self) -> float:
        return self.prob_fail_sp + self.prob_fail_a0 + self.prob_fail_akp

    @property
    def total(self) -> float:
        return self.failure_total + float(np.sum(self.sigma_probs))

    def category_probs(self) -> np.ndarray:
        """Probabilities laid out as [sigma'=0..p-1, SP_MULTIPLE, A_ZERO, A_MULTIPLE]."""
        return np.concatenate(
            [self.sigma_probs, [self.prob_fail_sp, self.prob_fail_a0, self.prob_fail_akp]]
        )

    def max_deviation(self, other: "OutcomeDistribution") -> float:
        return float(np.max(np.abs(self.category_probs() - other.category_probs())))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "prob_fail_sp": self.prob_fail_sp,
            "prob_fail_a0": self.prob_fail_a0,
            "prob_fail_akp": self.prob_fail_akp,
            "sigma_probs": [float(x) for x in self.sigma_probs],
        }


def _checked(dist: OutcomeDistribution, tol: float = 1e-9) -> OutcomeDistribution:
    if abs(dist.total - 1.0) > tol:
        raise NormalizationFailure(f"p={dist.p}: total probability {dist.total!r}")
    return dist


def build_distribution(table: ConjugateTable) -> OutcomeDistribution:
    p = table.p
    sp, a0, akp = failure_probabilities(p)
    sigma = (1.0 - 1.0 / p) * (np.asarray(table.values, dtype=float) / p) ** 2
    return _checked(
        OutcomeDistribution(
            p=p,
            prob_fail_sp=float(sp),
            prob_fail_a0=float(a0),
            prob_fail_akp=float(akp),
            sigma_probs=sigma,
        )
    )


@dataclass(frozen=True)
class StatevectorTable:
    """``prob[a, s]`` for a in [0, p^2), s in [0, p]."""

    p: int
    prob: np.ndarray


def statevector_amplitudes(ctx: PrimeContext) -> np.ndarray:
    """Inner sums sum_{x : f(x) = s} zeta^{a x}, shape (p^2, p + 1).

    Each exponent a*x is reduced mod p^2 in integers and looked up in a table
    of p^2-th roots of unity.
    """
    p, p2 = ctx.p, ctx.p_squared
    if p > STATEVECTOR_MAX_P:
        raise TooLarge(f"statevector oracle limited to p <= {STATEVECTOR_MAX_P}, got {p}")
    roots = np.exp(2j * np.pi * np.arange(p2) / p2)
    fx = f_map_array(ctx)
    a = np.arange(p2, dtype=np.int64)[:, None]
    amps = np.zeros((p2, p + 1), dtype=complex)
    for s in range(p + 1):
        xs = np.flatnonzero(fx == s)
        if xs.size:
            amps[:, s] = roots[(a * xs[None, :]) % p2].sum(axis=1)
    return amps


def statevector_distribution(ctx: PrimeContext) -> StatevectorTable:
    amps = statevector_amplitudes(ctx)
    return StatevectorTable(p=ctx.p, prob=np.abs(amps) ** 2 / ctx.p**4)


def aggregate_statevector(sv: StatevectorTable, ctx: PrimeContext) -> OutcomeDistribution:
    """Bucket the (a, s) table into the failure events and sigma' = q_p(a) + s."""
    p = ctx.p
    prob = sv.prob
    a = np.arange(p * p)
    p_divides = a % p == 0

    fail_sp = prob[p_divides, p].sum()
    fail_a0 = prob[0, :p].sum()
    fail_akp = prob[p_divides & (a != 0), :p].sum()

    # (p does not divide a, s = p) is no event at all; its mass must vanish
    leaked = prob[~p_divides, p].sum()
    if leaked > 1e-12:
        raise LeakedMass(f"p={p}: {leaked!r} on (p does not divide a, s=p)")

    units = np.flatnonzero(~p_divides)
    qa = f_map_array(ctx)[units]
    sigma = np.zeros(p)
    for s in range(p):
        np.add.at(sigma, (qa + s) % p, prob[units, s])
    return OutcomeDistribution(
        p=p,
        prob_fail_sp=float(fail_sp),
        prob_fail_a0=float(fail_a0),
        prob_fail_akp=float(fail_akp),
        sigma_probs=sigma,
    )


class AliasSampler:
    """Vose alias table over the categories of an :class:`OutcomeDistribution`."""

    def __init__(self, dist: OutcomeDistribution):
        self.p = dist.p
        probs = dist.category_probs()
        probs = probs / probs.sum()
        n = probs.size
        scaled = probs * n
        self.accept = np.ones(n)
        self.alias = np.arange(n)
        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            g = large.pop()
            self.accept[s] = scaled[s]
            self.alias[s] = g
            scaled[g] = scaled[g] + scaled[s] - 1.0
            if scaled[g] < 1.0:
                small.append(g)
            else:
                large.append(g)
        # leftovers are 1 up to rounding
        for i in small + large:
            self.accept[i] = 1.0

    def draw_categories(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Category indices: sigma' in [0, p), then p, p+1, p+2 for the failures."""
        idx = rng.integers(0, self.accept.size, size=size)
        coin = rng.random(size)
        return np.where(coin < self.accept[idx], idx, self.alias[idx])

    def outcome(self, category: int) -> MeasurementOutcome:
        p = self.p
        if category < p:
            return Sigma(int(category))
        return Failure(list(FailureKind)[category - p])


def sample(dist: OutcomeDistribution, rng: np.random.Generator, size: int | None = None):
    """Draw one outcome, or ``size`` category indices when ``size`` is given."""
    sampler = AliasSampler(dist)
    if size is None:
        return sampler.outcome(int(sampler.draw_categories(rng, 1)[0]))
    return sampler.draw_categories(rng, size)
