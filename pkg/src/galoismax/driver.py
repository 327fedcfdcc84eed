"""Repeated sampling, sigma' tallying and MAXGAMMA verification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import ConjugateTable, alpha, galois_multiplier, maxgamma_set
from .ntheory import PrimeContext
from .qsim import AliasSampler, build_distribution

DEFAULT_CAP = 1_000_000


@dataclass(frozen=True)
class RunConfig:
    t: int = 1
    k: int = 13
    rep_cap: int = DEFAULT_CAP
    seed: int = 0
    log_base: str = "e"

    def __post_init__(self):
        if self.t < 1 or self.k < 1 or self.rep_cap < 1:
            raise ValueError(f"t, k and rep_cap must all be >= 1: {self}")


@dataclass
class RunReport:
    p: int
    repetitions_used: int
    tally: list = field(repr=False)
    winner_sigma_prime: int
    tie_detected: bool
    alpha_winner: float
    in_maxgamma: bool
    seed: int
    capped: bool
    empty_tally: bool = False

    @property
    def galois_multiplier(self) -> int:
        """The winner's automorphism j_p(sigma') as zeta -> zeta^multiplier."""
        return galois_multiplier(self.p, self.winner_sigma_prime)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "repetitions_used": self.repetitions_used,
            "tally": [int(c) for c in self.tally],
            "winner_sigma_prime": self.winner_sigma_prime,
            "tie_detected": self.tie_detected,
            "alpha_winner": self.alpha_winner,
            "in_maxgamma": self.in_maxgamma,
            "seed": self.seed,
            "capped": self.capped,
            "empty_tally": self.empty_tally,
            "galois_multiplier": self.galois_multiplier,
        }


def _uncapped_repetitions(p: int, k: int) -> int:
    return max(1, round(math.log(p) ** k))


def repetitions(p: int, k: int, cap: int = DEFAULT_CAP) -> int:
    """min(cap, round((ln p)^k)), never below one."""
    return max(1, min(cap, _uncapped_repetitions(p, k)))


def pick_winner(tally, rng: np.random.Generator) -> tuple[int, bool]:
    """Index of the largest count, uniform among ties; also reports whether a tie occurred."""
    tally = np.asarray(tally)
    leaders = np.flatnonzero(tally == tally.max())
    if leaders.size == 1:
        return int(leaders[0]), False
    return int(rng.choice(leaders)), True


def run(
    ctx: PrimeContext,
    table: ConjugateTable,
    config: RunConfig,
    rng: np.random.Generator | None = None,
    repetitions_override: int | None = None,
) -> RunReport:
    """One full execution: draw, tally sigma', pick the most frequent.

    Failed draws count against the budget and are discarded.  If every draw
    fails, the winner is a uniform guess and ``empty_tally`` is set.
    """
    if table.p != ctx.p:
        raise ValueError(f"table is for p={table.p}, context for p={ctx.p}")
    p = ctx.p
    if rng is None:
        rng = np.random.default_rng(config.seed)
    if repetitions_override is None:
        reps = repetitions(p, config.k, config.rep_cap)
        capped = _uncapped_repetitions(p, config.k) > config.rep_cap
    else:
        reps = repetitions_override
        capped = False

    sampler = AliasSampler(build_distribution(table))
    draws = sampler.draw_categories(rng, reps)
    tally = np.bincount(draws[draws < p], minlength=p)

    empty = tally.sum() == 0
    if empty:
        winner, tie = int(rng.integers(p)), False
    else:
        winner, tie = pick_winner(tally, rng)

    return RunReport(
        p=p,
        repetitions_used=reps,
        tally=tally.tolist(),
        winner_sigma_prime=winner,
        tie_detected=tie,
        alpha_winner=alpha(table, winner),
        in_maxgamma=winner in maxgamma_set(table, config.t, config.log_base),
        seed=config.seed,
        capped=capped,
        empty_tally=bool(empty),
    )


def success(report: RunReport, table: ConjugateTable, t: int, log_base: str = "e") -> bool:
    return report.winner_sigma_prime in maxgamma_set(table, t, log_base)
