import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galoismax.errors import NotCoprime, NotOddPrime, OutOfRange, UndefinedAt
from galoismax.ntheory import (
    discrete_log,
    f_map,
    f_map_array,
    fermat_quotient,
    is_odd_prime,
    kappa,
    kappa_via_mirimanoff,
    make_context,
    mirimanoff_binomial,
    mirimanoff_eval,
    mirimanoff_eval_fast,
    mirimanoff_fast_table,
    mirimanoff_table,
    mirimanoff_zero_count,
    powmod_array,
    primes_between,
    teichmueller_compose,
    teichmueller_decompose,
    teichmueller_subgroup,
)

from conftest import SMALL_PRIMES, trial_division_is_prime

primes_st = st.sampled_from(SMALL_PRIMES)


def brute_quotient(p, k):
    # smallest q >= 0 with k^(p-1) = 1 + q p mod p^2, by search
    target = k ** (p - 1) % (p * p)
    return next(q for q in range(p) if (1 + q * p) % (p * p) == target)


def brute_gamma(p, t):
    return sum(t**j * pow(j, -1, p) for j in range(1, p)) % p


class TestPrimality:
    def test_small(self):
        assert not is_odd_prime(2)
        assert not is_odd_prime(9)
        assert is_odd_prime(1093)

    def test_against_trial_division(self):
        for n in range(0, 5000):
            assert is_odd_prime(n) == (trial_division_is_prime(n) and n != 2), n

    def test_large_known(self):
        assert is_odd_prime(2**61 - 1)
        assert not is_odd_prime(3215031751)  # strong pseudoprime to 2, 3, 5, 7
        assert not is_odd_prime((2**32 + 15) * (2**31 - 1))

    def test_primes_between(self):
        assert primes_between(3, 3) == [3]
        assert primes_between(1, 20) == [3, 5, 7, 11, 13, 17, 19]
        assert primes_between(24, 28) == []


class TestContext:
    def test_p3(self, ctx3):
        assert (ctx3.g, ctx3.w, ctx3.p_squared) == (2, 8, 9)

    def test_p5(self, ctx5):
        assert (ctx5.g, ctx5.w) == (2, 7)
        assert pow(7, 4, 25) == 1

    @pytest.mark.parametrize("n", [4, 1, 2, 15, 0])
    def test_rejects(self, n):
        with pytest.raises(NotOddPrime):
            make_context(n)

    @pytest.mark.parametrize("p", SMALL_PRIMES)
    def test_invariants(self, p):
        ctx = make_context(p)
        assert pow(ctx.w, p - 1, p * p) == 1
        assert math.gcd(ctx.w - 1, p) == 1
        orders = [d for d in range(1, p) if pow(ctx.w, d, p) == 1]
        assert orders[0] == p - 1
        u = teichmueller_subgroup(ctx)
        assert len(set(u.tolist())) == p - 1
        assert all(pow(int(x), p - 1, p * p) == 1 for x in u)

    def test_inverse_table(self):
        ctx = make_context(101)
        j = np.arange(1, 101)
        assert np.all(ctx.inverses[1:] * j % 101 == 1)


class TestFermatQuotient:
    def test_examples(self, ctx3):
        assert fermat_quotient(ctx3, 1) == 0
        assert fermat_quotient(ctx3, 2) == 1
        assert fermat_quotient(make_context(1093), 2) == 0
        assert fermat_quotient(make_context(3511), 2) == 0

    def test_not_coprime(self, ctx3):
        with pytest.raises(NotCoprime):
            fermat_quotient(ctx3, 6)

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    def test_brute(self, p):
        ctx = make_context(p)
        for k in range(1, p * p):
            if k % p:
                assert fermat_quotient(ctx, k) == brute_quotient(p, k)

    @settings(max_examples=200)
    @given(primes_st, st.integers(min_value=-(10**12), max_value=10**12))
    def test_depends_on_class_mod_p2(self, p, k):
        ctx = make_context(p)
        if k % p == 0:
            return
        assert fermat_quotient(ctx, k) == fermat_quotient(ctx, k % (p * p))
        assert fermat_quotient(ctx, k) == fermat_quotient(ctx, k + 7 * p * p)

    def test_quotient_cache(self):
        ctx = make_context(97)
        assert [int(q) for q in ctx.quotients[1:]] == [fermat_quotient(ctx, t) for t in range(1, 97)]


class TestFMap:
    def test_examples(self, ctx3):
        assert f_map(ctx3, 6) == 3
        assert f_map(ctx3, 2) == 1
        with pytest.raises(OutOfRange):
            f_map(ctx3, 9)
        with pytest.raises(OutOfRange):
            f_map(ctx3, -1)

    def test_array(self):
        ctx = make_context(11)
        assert f_map_array(ctx).tolist() == [f_map(ctx, x) for x in range(121)]

    def test_class_sizes(self):
        p = 13
        counts = np.bincount(f_map_array(make_context(p)), minlength=p + 1)
        assert counts[p] == p
        assert np.all(counts[:p] == p - 1)


class TestKappa:
    def test_examples(self, ctx3, ctx5):
        assert kappa(ctx3) == 2
        assert kappa(ctx5) == 2
        assert kappa(make_context(1093)) == 3

    @pytest.mark.parametrize("p", SMALL_PRIMES)
    def test_definition(self, p):
        ctx = make_context(p)
        k = kappa(ctx)
        assert all(brute_quotient(p, q) == 0 for q in range(1, k))
        assert brute_quotient(p, k) != 0
        assert kappa_via_mirimanoff(ctx) == k
        assert k < p


class TestMirimanoff:
    def test_examples(self, ctx3):
        assert mirimanoff_eval(ctx3, 0) == 0
        assert mirimanoff_eval(ctx3, 1) == 0
        assert mirimanoff_eval(ctx3, 2) == 1
        assert mirimanoff_eval_fast(ctx3, 2) == 1

    def test_undefined(self, ctx3):
        for t in (0, 1, 3, 4):
            with pytest.raises(UndefinedAt):
                mirimanoff_eval_fast(ctx3, t)

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17])
    def test_brute(self, p):
        ctx = make_context(p)
        for t in range(p):
            assert mirimanoff_eval(ctx, t) == brute_gamma(p, t)

    @settings(max_examples=60, deadline=None)
    @given(primes_st, st.data())
    def test_three_forms_agree(self, p, data):
        ctx = make_context(p)
        t = data.draw(st.integers(min_value=2, max_value=p - 1))
        direct = mirimanoff_eval(ctx, t)
        assert mirimanoff_eval_fast(ctx, t) == direct
        assert mirimanoff_binomial(ctx, t) == direct

    @pytest.mark.parametrize("p", SMALL_PRIMES)
    def test_tables(self, p):
        ctx = make_context(p)
        direct = mirimanoff_table(ctx)
        assert np.array_equal(direct, mirimanoff_fast_table(ctx))
        assert direct[1] == 0  # harmonic sum vanishes mod odd p

    def test_zero_count(self, ctx3, ctx5):
        assert mirimanoff_zero_count(ctx3) == 2
        assert mirimanoff_zero_count(ctx5) == sum(brute_gamma(5, t) == 0 for t in range(5))
        for p in SMALL_PRIMES:
            ctx = make_context(p)
            eta = mirimanoff_zero_count(ctx)
            assert eta == mirimanoff_zero_count(ctx, "direct")
            assert eta >= kappa(ctx)


class TestTeichmueller:
    def test_examples(self, ctx3):
        assert teichmueller_decompose(ctx3, 1) == (0, 0)
        assert teichmueller_decompose(ctx3, 8) == (1, 0)

    def test_not_coprime(self, ctx3):
        with pytest.raises(NotCoprime):
            teichmueller_decompose(ctx3, 3)

    @pytest.mark.parametrize("p", [3, 5, 97, 1093, 7919])
    def test_round_trip(self, p):
        ctx = make_context(p)
        rng = random.Random(p)
        for _ in range(200):
            k = rng.randrange(1, p * p)
            if k % p == 0:
                continue
            d, q = teichmueller_decompose(ctx, k)
            assert 0 <= d < p - 1 and 0 <= q < p
            assert teichmueller_compose(ctx, d, q) == k

    def test_discrete_log_brute(self):
        p, g = 101, 2
        for d in range(p - 1):
            assert discrete_log(pow(g, d, p), g, p, p - 1) == d


def test_powmod_array_large_modulus():
    mod = (2**31 + 11) ** 2
    base = np.array([3, 5, 2**40 + 1], dtype=np.int64)
    assert powmod_array(base, 12345, mod).tolist() == [pow(int(b), 12345, mod) for b in base]
