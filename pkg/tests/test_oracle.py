import pytest

from divrec.arith import ContractViolation, primes_upto, set_input_bound
from divrec.fit import FitKind, verify_params
from divrec.oracle import canonical_witness, large_verdict, small_verdict
from divrec.profiles import profile, profiles_in_range


def test_small_60():
    v = small_verdict(60)
    assert v.recurrent and not v.vacuous
    assert v.witness == (2, -1)


def test_small_100_not_recurrent():
    v = small_verdict(100)
    assert not v.recurrent and v.witness is None
    assert v.fit.kind is FitKind.EMPTY


def test_small_6_vacuous():
    v = small_verdict(6)
    assert v.recurrent and v.vacuous and v.witness is None


def test_large_48():
    v = large_verdict(48)
    assert v.recurrent and v.witness == (0, 2)
    seq = profile(48).large_strict
    assert seq == (8, 12, 16, 24)
    assert verify_params(list(seq), 0, 2)


def test_large_100():
    v = large_verdict(100)
    assert v.recurrent and v.witness == (2, 0)


def test_large_42():
    v = large_verdict(42)
    assert v.recurrent and v.witness == (0, 3)
    assert profile(42).large_strict == (7, 14, 21)


def test_rejects_unit():
    with pytest.raises(ContractViolation):
        small_verdict(1)
    with pytest.raises(ContractViolation):
        large_verdict(0)


def test_prime_powers_always_recurrent():
    # needs the bound lifted: 97**20 is far beyond 2**62
    try:
        set_input_bound(None)
        for p in primes_upto(98):
            for k in (1, 2, 3, 5, 9, 14, 20):
                n = p**k
                sv = small_verdict(n)
                lv = large_verdict(n)
                assert sv.recurrent and lv.recurrent, (p, k)
                if sv.witness is not None:
                    assert verify_params(list(profile(n).small_strict), *sv.witness)
                if lv.witness is not None:
                    assert verify_params(list(profile(n).large_strict), *lv.witness)
    finally:
        set_input_bound(1 << 62)


def test_witnesses_verify_over_range():
    for prof in profiles_in_range(2, 3000):
        for verdict, seq in (
            (small_verdict(prof.n, fac=None), prof.small_strict),
            (large_verdict(prof.n, fac=None), prof.large_strict),
        ):
            assert verdict.recurrent == (verdict.fit.kind is not FitKind.EMPTY)
            assert verdict.vacuous == (len(seq) <= 2)
            if verdict.witness is not None:
                assert verify_params(list(seq), *verdict.witness)
            else:
                assert verdict.vacuous or not verdict.recurrent


def test_determinism():
    assert small_verdict(4620) == small_verdict(4620)
    assert large_verdict(4620) == large_verdict(4620)


def test_canonical_witness_prefers_small_a_then_b():
    # line through (2,0) with direction (4,-5): candidates (2,0) and (-2,5)
    v = large_verdict(100)
    assert v.fit.kind is FitKind.LINE
    assert canonical_witness(v.fit) == (2, 0)
