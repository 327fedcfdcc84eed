"""Measurement statistics of the Fourier-sampling step.

The closed-form law (failures 1/p, (p-1)^2/p^3, (p-1)/p^3 and
Pr(sigma') = (1 - 1/p)(Gamma^sigma / p)^2) is compared with the brute-force
statevector oracle, and then sampled.
"""
import numpy as np

from galoismax import aggregate_statevector, build_distribution, gamma_conjugates, make_context
from galoismax.qsim import sample, statevector_distribution

for p in (3, 5, 7, 11, 13):
    ctx = make_context(p)
    closed = build_distribution(gamma_conjugates(ctx))
    brute = aggregate_statevector(statevector_distribution(ctx), ctx)
    print(f"p={p:2d}  failure={closed.failure_total:.6f}  "
          f"(1/p)(2-1/p)={(2 - 1 / p) / p:.6f}  oracle gap={closed.max_deviation(brute):.1e}")

# %% Monte Carlo at p = 3
dist = build_distribution(gamma_conjugates(make_context(3)))
draws = sample(dist, np.random.default_rng(42), 10**6)
print("\nempirical category frequencies:", np.round(np.bincount(draws, minlength=6) / 1e6, 4))
print("exact                          :", np.round(dist.category_probs(), 4))
