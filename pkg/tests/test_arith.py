import pytest

from divrec.arith import (
    CapacityError,
    ContractViolation,
    Factorization,
    FactorSieve,
    divisors_sorted,
    factorize,
    input_bound,
    is_prime,
    isqrt_exact,
    primes_upto,
    set_input_bound,
    tau,
)


def naive_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def test_is_prime_examples():
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(2310)  # 2*3*5*7*11


def test_is_prime_agrees_with_trial_division():
    for n in range(0, 5000):
        assert is_prime(n) == naive_is_prime(n), n


def test_is_prime_known_large_values():
    assert is_prime(2**61 - 1)  # Mersenne prime
    assert not is_prime(2**62 - 1)
    assert not is_prime(561)  # Carmichael
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2,3,5,7


def test_is_prime_rejects_negative():
    with pytest.raises(ContractViolation):
        is_prime(-7)


def test_factorize_examples():
    assert factorize(60).factors == ((2, 2), (3, 1), (5, 1))
    assert factorize(1).factors == ()
    assert factorize(512).factors == ((2, 9),)


def test_factorize_invariants_over_range():
    for n in range(1, 4000):
        f = factorize(n)
        prod = 1
        last = 0
        for p, e in f.factors:
            assert p > last and e >= 1
            assert is_prime(p)
            prod *= p**e
            last = p
        assert prod == n == f.n


def test_factorize_rejects_zero():
    with pytest.raises(ContractViolation):
        factorize(0)


def test_factorize_large_semiprime_uses_rho():
    p, q = 1_000_003, 1_000_033
    f = factorize(p * q)
    assert f.factors == ((p, 1), (q, 1))


def test_factorize_repeated_large_prime():
    p = 1_000_003
    assert factorize(p * p).factors == ((p, 2),)


def test_isqrt_exact_examples():
    assert isqrt_exact(1) == (1, True)
    assert isqrt_exact((9 - 8) * (4 - 3)) == (1, True)
    assert isqrt_exact(48) == (6, False)
    assert isqrt_exact(0) == (0, True)


def test_isqrt_exact_bracketing():
    for n in range(0, 10000):
        root, exact = isqrt_exact(n)
        assert root * root <= n < (root + 1) ** 2
        assert exact == (root * root == n)


def test_divisors_sorted_examples():
    assert divisors_sorted(factorize(60)) == [1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]
    assert divisors_sorted(factorize(97)) == [1, 97]
    assert divisors_sorted(factorize(100)) == [1, 2, 4, 5, 10, 20, 25, 50, 100]


def test_divisor_count_and_reflection():
    for n in range(1, 3000):
        f = factorize(n)
        divs = divisors_sorted(f)
        assert len(divs) == tau(f)
        assert all(n % d == 0 for d in divs)
        assert [n // d for d in reversed(divs)] == divs


def test_tau_examples():
    assert tau(factorize(60)) == 12
    assert tau(factorize(1)) == 1
    assert tau(factorize(2 * 2 * 3 * 5)) == 12  # p^2*q*r shape


def test_capacity_guard():
    bound = input_bound()
    assert bound == 1 << 62
    with pytest.raises(CapacityError):
        is_prime((1 << 62) + 1)
    with pytest.raises(CapacityError):
        factorize((1 << 62) + 1)


def test_bound_is_configurable():
    try:
        set_input_bound(None)
        f = factorize(97**20)
        assert f.factors == ((97, 20),)
        # deterministic primality still refuses past the witness limit
        # (square of a Mersenne prime: odd, no small factors, ~5e36)
        with pytest.raises(CapacityError):
            is_prime((2**61 - 1) ** 2)
    finally:
        set_input_bound(1 << 62)


def test_primes_upto():
    assert primes_upto(2) == []
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    ps = primes_upto(10000)
    assert len(ps) == 1229
    assert all(naive_is_prime(p) for p in ps[:100])


def test_factor_sieve_agrees_with_factorize():
    sieve = FactorSieve(6000)
    for n in range(1, 6000):
        assert sieve.factorize(n) == factorize(n)
    with pytest.raises(ContractViolation):
        sieve.factorize(6000)


def test_factorization_value_type():
    f = Factorization(12, ((2, 2), (3, 1)))
    assert f == factorize(12)
