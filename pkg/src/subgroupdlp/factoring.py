"""Integer factorization and multiplicative-subgroup construction.

The solvers need three things from here: the factorization of p-1 (to buy
a primitive root), a generator of the unique order-d subgroup of (Z/pZ)*
for a chosen divisor d | p-1, and divisors of p-1 near a requested bit
size.  Factorization is trial division below a bound plus Pollard rho with
Brent's cycle finding, under an explicit iteration budget: results carry a
`complete` flag and a composite residual instead of pretending to finish.
"""

import heapq
import math
import random
from bisect import bisect_left
from dataclasses import dataclass, field as dataclass_field

from .field import Residue, is_probable_prime

DEFAULT_TRIAL_BOUND = 10 ** 6
DEFAULT_RHO_BUDGET = 1 << 24

_sieve_cache = {}


def _primes_below(bound):
    if bound not in _sieve_cache:
        flags = bytearray([1]) * bound
        flags[0:2] = b"\x00\x00"
        for i in range(2, math.isqrt(bound - 1) + 1):
            if flags[i]:
                flags[i * i::i] = bytearray(len(flags[i * i::i]))
        _sieve_cache[bound] = [i for i in range(bound) if flags[i]]
    return _sieve_cache[bound]


@dataclass
class FactoredInteger:
    """n together with its (possibly partial) prime factorization.

    factors is sorted [(prime, exponent), ...]; when `complete` is False the
    unfactored composite remainder sits in `residual` (1 otherwise), so
    product(p^e) * residual == n always holds.
    """

    n: int
    factors: list = dataclass_field(default_factory=list)
    complete: bool = True
    residual: int = 1

    def product(self):
        out = self.residual
        for p, e in self.factors:
            out *= p ** e
        return out

    def verify(self):
        """Primality of every listed factor plus an exact product check."""
        if self.product() != self.n:
            return False
        if any(not is_probable_prime(p) or e < 1 for p, e in self.factors):
            return False
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            return False
        return self.complete == (self.residual == 1)

    def divisor_count(self):
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out

    def format(self):
        """Exchange format `n = p1^e1 * p2^e2 * ...` (^1 omitted)."""
        if not self.factors and self.residual == 1:
            return "%d = 1" % self.n
        parts = ["%d^%d" % (p, e) if e > 1 else "%d" % p
                 for p, e in self.factors]
        if self.residual != 1:
            parts.append("%d" % self.residual)
        return "%d = %s" % (self.n, " * ".join(parts))

    @classmethod
    def parse(cls, text):
        """Inverse of format(); validates primality and the product."""
        left, _, right = text.partition("=")
        if not _:
            raise ValueError("expected 'n = p1^e1 * ...'")
        n = int(left.strip())
        factors = []
        right = right.strip()
        if right != "1":
            for term in right.split("*"):
                base, caret, exp = term.strip().partition("^")
                factors.append((int(base), int(exp) if caret else 1))
        result = cls(n=n, factors=sorted(factors), complete=True, residual=1)
        if not result.verify():
            raise ValueError("factorization line fails verification: %r" % text)
        return result


def pollard_rho_brent(n, rng, max_iters=1 << 22):
    """A nontrivial factor of composite n, or None if the budget runs out.

    Brent's variant: batched gcd every 128 squarings, restart with a fresh
    polynomial when a cycle closes on a trivial gcd.
    """
    if n % 2 == 0:
        return 2
    budget = max_iters
    while budget > 0:
        c = rng.randrange(1, n)
        y = rng.randrange(0, n)
        m = 128
        r = 1
        q = 1
        g = 1
        x = ys = y
        while g == 1 and budget > 0:
            x = y
            for _ in range(min(r, budget)):
                y = (y * y + c) % n
            budget -= min(r, budget)
            k = 0
            while k < r and g == 1 and budget > 0:
                ys = y
                steps = min(m, r - k, budget)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                g = math.gcd(q, n)
                k += steps
                budget -= steps
            r <<= 1
        if g == n:
            # batched gcd overshot; replay one squaring at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
            if g == n:
                continue
        if 1 < g < n:
            return g
    return None


def factor(n, trial_bound=DEFAULT_TRIAL_BOUND, rho_budget=DEFAULT_RHO_BUDGET,
           rng=None):
    """Factor n >= 1 within a work budget.

    Trial division strips all primes below `trial_bound`; Pollard rho (with
    at most `rho_budget` squarings in total) handles the rest.  A residual
    the budget cannot split is reported honestly via complete=False.
    """
    if n < 1:
        raise ValueError("can only factor positive integers, got %d" % n)
    if rng is None:
        rng = random.Random(n & 0xFFFFFFFF)
    counts = {}
    m = n
    for p in _primes_below(trial_bound):
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    residual = 1
    if m > 1:
        pending = [m]
        budget = [rho_budget]
        while pending:
            chunk = pending.pop()
            if chunk < trial_bound * trial_bound or is_probable_prime(chunk):
                # below the trial bound squared, anything unsplit is prime
                counts[chunk] = counts.get(chunk, 0) + 1
                continue
            split = pollard_rho_brent(chunk, rng, max_iters=budget[0]) \
                if budget[0] > 0 else None
            if split is None:
                residual *= chunk
                continue
            budget[0] >>= 1  # geometric split of the remaining budget
            pending.append(split)
            pending.append(chunk // split)
    return FactoredInteger(n=n, factors=sorted(counts.items()),
                           complete=residual == 1, residual=residual)


def find_primitive_root(p, factored, start=2):
    """Smallest generator of (Z/pZ)* at or above `start`.

    Requires the complete factorization of p-1: g is primitive iff
    g^((p-1)/q) != 1 for every prime q | p-1.
    """
    if not factored.complete or factored.n != p - 1:
        raise ValueError("need the complete factorization of p-1")
    if p == 2:
        return Residue(1, 2)
    exponents = [(p - 1) // q for q, _ in factored.factors]
    g = start
    while g < p:
        if all(pow(g, e, p) != 1 for e in exponents):
            return Residue(g, p)
        g += 1
    raise ValueError("no primitive root found; is %d really prime?" % p)


@dataclass(frozen=True)
class SubgroupSpec:
    """The unique order-d subgroup of (Z/pZ)*, carried by a generator zeta."""

    d: int
    zeta: Residue
    p: int

    def verify(self, factored_d=None):
        """zeta has order exactly d: zeta^d = 1 and zeta^(d/q) != 1 for q | d."""
        z = self.zeta.value
        if pow(z, self.d, self.p) != 1:
            return False
        if factored_d is None:
            factored_d = factor(self.d)
        if not factored_d.complete or factored_d.n != self.d:
            raise ValueError("need the complete factorization of d")
        return all(pow(z, self.d // q, self.p) != 1
                   for q, _ in factored_d.factors)

    def elements(self, limit=1 << 22):
        """Explicit enumeration {zeta^k}; desk scale only."""
        if self.d > limit:
            raise ValueError("refusing to enumerate %d elements" % self.d)
        out = set()
        acc = 1
        for _ in range(self.d):
            out.add(acc)
            acc = acc * self.zeta.value % self.p
        return out


def subgroup_generator(p, d, generator=None, factored=None):
    """SubgroupSpec for the order-d subgroup of (Z/pZ)*, d | p-1.

    `generator` is a primitive root mod p (found via `factored`, the
    factorization of p-1, when omitted -- desk scale only for the latter).
    """
    if d < 1 or (p - 1) % d:
        raise ValueError("d = %d does not divide p-1 = %d" % (d, p - 1))
    if generator is None:
        if factored is None:
            factored = factor(p - 1)
        generator = find_primitive_root(p, factored)
    z = pow(generator.value, (p - 1) // d, p)
    return SubgroupSpec(d=d, zeta=Residue(z, p), p=p)


def divisors(factored, limit=1 << 20):
    """All divisors of a completely factored integer, ascending."""
    if not factored.complete:
        raise ValueError("complete factorization required")
    if factored.divisor_count() > limit:
        raise ValueError("%d divisors exceed the enumeration limit %d"
                         % (factored.divisor_count(), limit))
    out = [1]
    for p, e in factored.factors:
        powers = [p ** i for i in range(e + 1)]
        out = [d * pw for d in out for pw in powers]
    return sorted(out)


def _half_logs(prime_powers):
    logs = [(0.0, 1)]
    for p, e in prime_powers:
        lp = math.log2(p)
        logs = [(lg + i * lp, v * p ** i)
                for lg, v in logs for i in range(e + 1)]
    return logs


def divisors_near(factored, target_bits, count=5, half_limit=1 << 20):
    """The `count` divisors of n whose log2 is closest to target_bits.

    Exact even for factorizations too composite to enumerate outright:
    the factors are split into two balanced halves and the halves are
    matched meet-in-the-middle, so only ~sqrt(#divisors) values are built.
    Ties in distance prefer the smaller divisor.
    """
    if not factored.complete:
        raise ValueError("complete factorization required")
    left, right = [], []
    lcount = rcount = 1
    # balance the per-half divisor counts greedily, largest multiplicity first
    for p, e in sorted(factored.factors, key=lambda t: -t[1]):
        if lcount <= rcount:
            left.append((p, e))
            lcount *= e + 1
        else:
            right.append((p, e))
            rcount *= e + 1
    if max(lcount, rcount) > half_limit:
        raise ValueError("factorization too composite for divisor search "
                         "(half size %d)" % max(lcount, rcount))
    lhs = _half_logs(left)
    rhs = sorted(_half_logs(right))
    rhs_logs = [lg for lg, _ in rhs]
    best = []
    for lg, v in lhs:
        want = target_bits - lg
        i = bisect_left(rhs_logs, want)
        lo = max(0, i - count - 1)
        hi = min(len(rhs), i + count + 1)
        for j in range(lo, hi):
            rlg, rv = rhs[j]
            cand = (abs(lg + rlg - target_bits), v * rv)
            if len(best) < count:
                heapq.heappush(best, (-cand[0], -cand[1]))
            elif (-best[0][0], -best[0][1]) > cand:
                heapq.heapreplace(best, (-cand[0], -cand[1]))
    ordered = sorted((-a, -b) for a, b in best)
    return [v for _, v in ordered]


def search_prime_with_divisor(d, bits, rng, max_tries=100000):
    """A prime p with exactly `bits` bits and d | p-1.

    Draws even cofactors c and tests p = c*d + 1; used to mint desk-scale
    moduli whose unit group has a planted subgroup of known order.
    """
    if d % 2 == 0:
        lo = (1 << bits - 1) // d + 1
        hi = ((1 << bits) - 2) // d
        if lo > hi:
            raise ValueError("no %d-bit prime can satisfy d | p-1" % bits)
        for _ in range(max_tries):
            c = rng.randrange(lo, hi + 1)
            p = c * d + 1
            if p.bit_length() == bits and is_probable_prime(p):
                return p
    else:
        lo = ((1 << bits - 1) // d + 2) // 2
        hi = (((1 << bits) - 2) // d) // 2
        if lo > hi:
            raise ValueError("no %d-bit prime can satisfy d | p-1" % bits)
        for _ in range(max_tries):
            c = 2 * rng.randrange(lo, hi + 1)
            p = c * d + 1
            if p.bit_length() == bits and is_probable_prime(p):
                return p
    raise RuntimeError("no prime found in %d tries" % max_tries)
