"""Factorization, subgroup generators, divisor search."""

import math
import random

import pytest

from subgroupdlp.factoring import (FactoredInteger, divisors, divisors_near,
                                   factor, find_primitive_root,
                                   pollard_rho_brent,
                                   search_prime_with_divisor,
                                   subgroup_generator)
from subgroupdlp.field import Residue, is_probable_prime


def test_factor_small_values():
    cases = {
        1: [],
        2: [(2, 1)],
        30: [(2, 1), (3, 1), (5, 1)],
        360: [(2, 3), (3, 2), (5, 1)],
        65536: [(2, 16)],
        65537: [(65537, 1)],
        2 ** 31 - 1: [(2 ** 31 - 1, 1)],
        10403: [(101, 1), (103, 1)],
    }
    for n, expected in cases.items():
        got = factor(n)
        assert got.factors == expected, n
        assert got.complete and got.residual == 1
        assert got.verify()


def test_factor_rejects_nonpositive():
    with pytest.raises(ValueError):
        factor(0)
    with pytest.raises(ValueError):
        factor(-6)


def test_factor_random_values_against_product():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randrange(2, 10 ** 9)
        got = factor(n)
        assert got.verify() and got.n == n
        assert got.product() == n


def test_factor_beyond_trial_division():
    # two ~30-bit primes: trial division cannot touch this, rho must split it
    p, q = 1000000007, 1000000009
    got = factor(p * q)
    assert got.factors == [(p, 1), (q, 1)]
    assert got.complete


def test_factor_reports_honest_residual():
    p, q = 1000000007, 1000000009
    got = factor(p * q, rho_budget=0)
    assert not got.complete
    assert got.residual == p * q
    assert got.factors == []
    assert got.verify()
    assert got.product() == p * q
    assert got.format().endswith("= %d" % (p * q))


def test_pollard_rho_splits_semiprime():
    n = 1000003 * 1000033
    g = pollard_rho_brent(n, random.Random(1))
    assert g in (1000003, 1000033)
    assert pollard_rho_brent(2 * 3, random.Random(1)) == 2


def test_pollard_rho_budget_exhaustion_returns_none():
    n = 1000003 * 1000033
    assert pollard_rho_brent(n, random.Random(5), max_iters=4) is None


def test_factored_integer_format_and_parse_round_trip():
    for n in (1, 2, 30, 360, 65536, 10403, 2 * 3 ** 4 * 1009):
        f = factor(n)
        line = f.format()
        back = FactoredInteger.parse(line)
        assert back == f
        assert back.format() == line
    assert factor(30).format() == "30 = 2 * 3 * 5"
    assert factor(360).format() == "360 = 2^3 * 3^2 * 5"
    assert factor(1).format() == "1 = 1"


def test_factored_integer_parse_rejects_bad_lines():
    with pytest.raises(ValueError):
        FactoredInteger.parse("30 = 6 * 5")        # 6 is not prime
    with pytest.raises(ValueError):
        FactoredInteger.parse("30 = 2 * 3")        # product mismatch
    with pytest.raises(ValueError):
        FactoredInteger.parse("just some text")    # no '='
    with pytest.raises(ValueError):
        FactoredInteger.parse("30 = five * 6")     # not integers


def test_factored_integer_verify_negatives():
    assert not FactoredInteger(n=30, factors=[(2, 1), (3, 1)]).verify()
    assert not FactoredInteger(n=12, factors=[(4, 1), (3, 1)]).verify()
    assert not FactoredInteger(n=12, factors=[(3, 1), (2, 2)]).verify()  # unsorted
    assert not FactoredInteger(n=12, factors=[(2, 2), (3, 1)],
                               complete=False).verify()  # flag inconsistent
    assert FactoredInteger(n=12, factors=[(2, 2), (3, 1)]).verify()


def test_divisor_count():
    assert factor(360).divisor_count() == 24
    assert factor(1).divisor_count() == 1


def test_find_primitive_root_small_primes():
    # brute-force the least primitive root by computing element orders
    for p in (3, 7, 11, 13, 31, 227, 65537):
        f = factor(p - 1)
        g = find_primitive_root(p, f)
        assert isinstance(g, Residue) and g.modulus == p
        for h in range(2, g.value):
            order = next(k for k in divisors(f) if pow(h, k, p) == 1)
            assert order < p - 1, "missed a smaller primitive root"
        order = next(k for k in divisors(f) if pow(g.value, k, p) == 1)
        assert order == p - 1


def test_find_primitive_root_requires_complete_factorization():
    partial = FactoredInteger(n=30, factors=[(2, 1), (3, 1)], complete=False,
                              residual=5)
    with pytest.raises(ValueError):
        find_primitive_root(31, partial)
    with pytest.raises(ValueError):
        find_primitive_root(31, factor(28))  # factorization of the wrong n


def test_subgroup_generator_orders():
    p = 31
    for d in (1, 2, 3, 5, 6, 10, 15, 30):
        spec = subgroup_generator(p, d)
        assert spec.d == d and spec.p == p
        assert spec.verify()
        # order exactly d, checked by enumeration
        elems = spec.elements()
        assert len(elems) == d
        assert all(pow(x, d, p) == 1 for x in elems)
    with pytest.raises(ValueError):
        subgroup_generator(31, 7)   # 7 does not divide 30
    with pytest.raises(ValueError):
        subgroup_generator(31, 0)


def test_subgroup_spec_verify_rejects_wrong_order():
    # element of order 5 presented as an order-10 generator
    bad = subgroup_generator(31, 5)
    lying = type(bad)(d=10, zeta=bad.zeta, p=31)
    assert not lying.verify()
    # element whose power is not even 1
    lying2 = type(bad)(d=7, zeta=bad.zeta, p=31)
    assert not lying2.verify()


def test_subgroup_elements_refuses_huge_enumeration():
    spec = subgroup_generator(65537, 65536)
    with pytest.raises(ValueError):
        spec.elements(limit=1000)


def test_divisors_of_30():
    assert divisors(factor(30)) == [1, 2, 3, 5, 6, 10, 15, 30]
    assert divisors(factor(1)) == [1]
    assert divisors(factor(8)) == [1, 2, 4, 8]


def test_divisors_limit_guard():
    with pytest.raises(ValueError):
        divisors(factor(2 ** 40), limit=40)
    with pytest.raises(ValueError):
        divisors(FactoredInteger(n=30, factors=[(2, 1), (3, 1)],
                                 complete=False, residual=5))


def _oracle_near(n, target_bits, count):
    all_divs = divisors(factor(n))
    ranked = sorted(all_divs, key=lambda v: (abs(math.log2(v) - target_bits), v))
    return ranked[:count]


def test_divisors_near_matches_brute_force():
    for n, target in ((30, 2.0), (360, 4.5), (2 * 3 ** 4 * 1009, 9.0),
                      (65537 - 1, 8.0), (9972, 5.3)):
        got = divisors_near(factor(n), target, count=3)
        assert got == _oracle_near(n, target, 3), (n, target)
        assert all(n % v == 0 for v in got)


def test_divisors_near_exact_ties_prefer_smaller():
    # powers of two have exact float logs, so ties are exact: at target 1.5
    # the divisors 2 and 4 are equidistant and 2 must come first
    f = factor(2 ** 6)
    assert divisors_near(f, 1.5, count=2) == [2, 4]
    assert divisors_near(f, 1.5, count=4) == [2, 4, 1, 8]


def test_divisors_near_meet_in_the_middle_path():
    # 10 distinct primes -> 1024 divisors, split 32 x 32
    n = 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29
    f = factor(n)
    got = divisors_near(f, 15.0, count=5)
    assert got == _oracle_near(n, 15.0, 5)
    # asking for more divisors than exist degrades gracefully
    assert divisors_near(factor(6), 1.0, count=10) == _oracle_near(6, 1.0, 10)


def test_divisors_near_half_limit():
    with pytest.raises(ValueError):
        divisors_near(factor(2 ** 100), 50.0, half_limit=50)


def test_search_prime_with_divisor_even_and_odd():
    rng = random.Random(77)
    for d in (1 << 24, 1048583, 256, 3 * 5 * 7):
        p = search_prime_with_divisor(d, 50, rng)
        assert p.bit_length() == 50
        assert (p - 1) % d == 0
        assert is_probable_prime(p)


def test_search_prime_with_divisor_is_deterministic():
    a = search_prime_with_divisor(1 << 20, 40, random.Random(5))
    b = search_prime_with_divisor(1 << 20, 40, random.Random(5))
    assert a == b


def test_search_prime_with_divisor_infeasible_width():
    with pytest.raises(ValueError):
        search_prime_with_divisor(1 << 49, 50, random.Random(0))
    with pytest.raises(ValueError):
        search_prime_with_divisor((1 << 49) + 1, 50, random.Random(0))


def test_factor_p256_order_minus_one():
    # ~256-bit worked example: completes inside the default budgets
    p = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551
    f = factor(p - 1)
    assert f.complete and f.verify()
    assert [q for q, _ in f.factors] == [
        2, 3, 71, 131, 373, 3407, 17449, 38189, 187019741, 622491383,
        1002328039319, 2624747550333869278416773953,
    ]
    assert f.factors[0] == (2, 4)
