"""The p real conjugates of the Gauss period Gamma_p and the MAXGAMMA set."""
import numpy as np

from galoismax import gamma_conjugates, make_context, maxgamma_set

ctx = make_context(3)
table = gamma_conjugates(ctx)
print("p=3 conjugates:", np.round(table.values, 6))
print("Gamma_max =", round(table.gamma_max, 6), "at a =", sorted(table.argmax))
print("sum of squares =", float(np.sum(table.values**2)), "= p(p-1) = 6")

# %% Larger p: the DFT route and the direct cosine sum agree
ctx = make_context(401)
fast = gamma_conjugates(ctx)
slow = gamma_conjugates(ctx, method="direct", check_imag=True)
print(f"\np=401: max |dft - direct| = {np.max(np.abs(fast.values - slow.values)):.2e}")
for t in (1, 2, 3):
    print(f"  |MAXGAMMA_(401,{t})| = {len(maxgamma_set(fast, t))}")
