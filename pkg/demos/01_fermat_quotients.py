"""Fermat quotients, kappa_p and the Mirimanoff polynomial.

kappa_p is the first base q >= 1 whose Fermat quotient q_p(q) is nonzero.
For a Wieferich prime such as 1093 the quotient of 2 vanishes, pushing
kappa_p past 2.
"""
import math

from galoismax import fermat_quotient, kappa, kappa_via_mirimanoff, make_context
from galoismax.ntheory import mirimanoff_table, mirimanoff_zero_count

for p in (3, 5, 7, 1093, 3511):
    ctx = make_context(p)
    print(f"p={p:5d}  g={ctx.g}  w={ctx.w:8d}  q_p(2)={fermat_quotient(ctx, 2):5d}  "
          f"kappa={kappa(ctx)}  kappa/sqrt(p)={kappa(ctx) / math.sqrt(p):.4f}")

# %% The Mirimanoff polynomial vanishes at t = 0, 1, ..., kappa_p - 1
ctx = make_context(1093)
gamma = mirimanoff_table(ctx)
print("\ngamma_1093(t) for t < 6:", gamma[:6].tolist())
print("kappa via Mirimanoff:", kappa_via_mirimanoff(ctx))
print("number of roots mod 1093 (eta):", mirimanoff_zero_count(ctx))
