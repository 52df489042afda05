"""Modular-arithmetic primitives against stdlib oracles."""

import random

import pytest

from subgroupdlp.field import (MILLER_RABIN_ROUNDS, NonInvertibleError,
                               Residue, derive_seed, is_probable_prime,
                               mod_exp, mod_inverse, mod_mul, parse_int,
                               random_unit, xgcd)

P256_ORDER = 115792089210356248762697446949407573529996955224135760342422259061068512044369


def test_parse_int_decimal_and_hex():
    assert parse_int("30") == 30
    assert parse_int(" 0x1e ") == 30
    assert parse_int("0X1E") == 30
    assert parse_int("-17") == -17
    assert parse_int(str(P256_ORDER)) == P256_ORDER


def test_parse_int_round_trips_canonical_decimal():
    for v in (0, 1, 30, 65537, P256_ORDER):
        assert parse_int(str(v)) == v
        assert str(parse_int(str(v))) == str(v)


def test_parse_int_rejects_garbage():
    for bad in ("", "12m", "0x", "one"):
        with pytest.raises(ValueError):
            parse_int(bad)


def test_primality_small_classified_exhaustively():
    # oracle: sieve of Eratosthenes
    limit = 2000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    for n in range(limit):
        assert is_probable_prime(n) == sieve[n], n


def test_primality_known_large_values():
    assert is_probable_prime(2 ** 127 - 1)          # Mersenne prime
    assert is_probable_prime(P256_ORDER)
    assert not is_probable_prime(2 ** 127 - 3)
    assert not is_probable_prime(P256_ORDER - 1)
    assert not is_probable_prime(561)               # Carmichael
    assert not is_probable_prime(3215031751)        # strong pseudoprime to 2,3,5,7
    assert MILLER_RABIN_ROUNDS >= 40


def test_residue_reduces_and_validates_modulus():
    r = Residue(35, 31)
    assert r.value == 4 and r.modulus == 31
    assert Residue(-1, 31).value == 30
    with pytest.raises(ValueError):
        Residue(3, 30)          # composite
    with pytest.raises(ValueError):
        Residue(3, 2)           # even


def test_residue_equality_and_hash():
    assert Residue(4, 31) == Residue(35, 31)
    assert Residue(4, 31) == 35
    assert Residue(4, 31) != Residue(4, 37)
    assert hash(Residue(4, 31)) == hash(Residue(35, 31))
    assert len({Residue(4, 31), Residue(35, 31), Residue(5, 31)}) == 2


def test_mod_mul_matches_int_arithmetic():
    rng = random.Random(101)
    for _ in range(200):
        a, b = rng.randrange(31), rng.randrange(31)
        assert mod_mul(Residue(a, 31), Residue(b, 31)).value == a * b % 31
    with pytest.raises(ValueError):
        mod_mul(Residue(2, 31), Residue(2, 37))


def test_residue_operators():
    assert (Residue(6, 31) * Residue(7, 31)).value == 11
    assert (Residue(6, 31) * 7).value == 11
    assert (7 * Residue(6, 31)).value == 11
    assert (Residue(3, 31) ** 5).value == pow(3, 5, 31)


def test_mod_exp_against_builtin_pow():
    rng = random.Random(202)
    for p in (31, 65537, P256_ORDER):
        for _ in range(50):
            base = rng.randrange(p)
            e = rng.randrange(1 << 64)
            assert mod_exp(Residue(base, p), e).value == pow(base, e, p)


def test_mod_exp_edges():
    assert mod_exp(Residue(0, 31), 0).value == 1  # 0^0 convention of pow()
    assert mod_exp(Residue(5, 31), 0).value == 1
    with pytest.raises(ValueError):
        mod_exp(Residue(5, 31), -2)


def test_xgcd_bezout_identity():
    rng = random.Random(303)
    for _ in range(300):
        a = rng.randrange(1, 1 << 80)
        b = rng.randrange(1, 1 << 80)
        g, s, t = xgcd(a, b)
        assert a * s + b * t == g
        assert a % g == 0 and b % g == 0


def test_mod_inverse():
    rng = random.Random(404)
    for p in (31, 65537, P256_ORDER):
        for _ in range(40):
            a = Residue(rng.randrange(1, p), p)
            assert (a * mod_inverse(a)).value == 1
            assert a.inverse() == mod_inverse(a)
    with pytest.raises(NonInvertibleError):
        mod_inverse(Residue(0, 31))


def test_random_unit_range_and_determinism():
    rng = random.Random(9)
    values = [random_unit(31, rng).value for _ in range(300)]
    assert all(1 <= v <= 30 for v in values)
    assert set(values) == set(range(1, 31))  # 300 draws cover 30 units whp
    rng = random.Random(9)
    again = [random_unit(31, rng).value for _ in range(300)]
    assert values == again


def test_derive_seed_stable_and_contextual():
    a = derive_seed(7, "multipliers")
    assert a == derive_seed(7, "multipliers")
    assert a != derive_seed(7, "keys")
    assert a != derive_seed(8, "multipliers")
    assert 0 <= a < 1 << 64
