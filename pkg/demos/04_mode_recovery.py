"""End-to-end runs: tally sigma', take the mode, check MAXGAMMA membership."""
from galoismax import RunConfig, gamma_conjugates, make_context, run

for p in (11, 31, 97, 251):
    ctx = make_context(p)
    table = gamma_conjugates(ctx)
    reports = [run(ctx, table, RunConfig(t=1, k=30, rep_cap=10**5, seed=s)) for s in range(20)]
    hits = sum(r.in_maxgamma for r in reports)
    r = reports[0]
    print(f"p={p:3d}  winner={r.winner_sigma_prime:3d}  alpha={r.alpha_winner:.4f}  "
          f"multiplier={r.galois_multiplier:6d}  in MAXGAMMA: {hits}/20")
