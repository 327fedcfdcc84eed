"""Fourier-sampling search for large Gauss-period conjugates, simulated classically,
with the Fermat-quotient / Mirimanoff-polynomial toolkit it rests on."""

from .cyclotomic import (
    ConjugateTable,
    alpha,
    gamma_conjugates,
    gamma_max_of,
    maxgamma_set,
    table_from_values,
)
from .driver import RunConfig, RunReport, repetitions, run, success
from .ntheory import (
    PrimeContext,
    f_map,
    fermat_quotient,
    is_odd_prime,
    kappa,
    kappa_via_mirimanoff,
    make_context,
    mirimanoff_eval,
    mirimanoff_eval_fast,
    mirimanoff_zero_count,
    teichmueller_decompose,
)
from .qsim import (
    OutcomeDistribution,
    aggregate_statevector,
    build_distribution,
    sample,
    statevector_distribution,
)

__version__ = "0.1.0"
