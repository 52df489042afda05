"""Baby-step giant-step restricted to a subgroup of the exponent group.

Setting: Q = x*P in a group of prime order p, and H is the order-d
subgroup of (Z/pZ)* generated by zeta, for some divisor d | p-1.  Writing
n = isqrt(d) + 1, any x = zeta^k in H satisfies k = a*n - b with
0 <= a, b <= n, so

    zeta^b * Q  ==  (zeta^n)^a * P     for some a, b in [0, n].

The solver tabulates the left side (baby steps), sweeps the right side
(giant steps), and on a table hit recovers x = zeta^(a*n-b mod d).  Both
phases cost at most n+1 scalar multiplications each, i.e. about 2*sqrt(d)
group operations to decide x in H -- with a certificate when it is, and a
sound "no" when it is not.  Membership of x in H never requires knowing x.
"""

from dataclasses import dataclass
from math import isqrt

from .field import Residue
from .groups import GroupElement

__all__ = [
    "DlpInstance", "Found", "NotInSubgroup", "Undecided",
    "DegenerateKeyError", "solve_in_subgroup", "membership_only",
    "giant_encodings", "theorem_budget",
]


class DegenerateKeyError(ValueError):
    """Q is the identity: x = 0 sits outside the unit group entirely."""


@dataclass(frozen=True)
class DlpInstance:
    """One discrete-log problem: find/classify x with Q = x*P.

    p is the (prime) group order; it is carried explicitly because every
    exponent statement is mod p.
    """

    group: object
    P: GroupElement
    Q: GroupElement
    p: int

    def __post_init__(self):
        if self.p != self.group.order:
            raise ValueError("instance p != group order")
        if not self.group.contains(self.P) or not self.group.contains(self.Q):
            raise ValueError("P and Q must be members of the group")
        if self.P.is_identity():
            raise ValueError("P must generate the group, not be the identity")

    @classmethod
    def from_secret(cls, group, x, base=None):
        """Build an instance with a known exponent (testing/demo helper)."""
        P = base if base is not None else group.generator
        return cls(group=group, P=P, Q=group.scalar_mul(x, P), p=group.order)


@dataclass(frozen=True)
class Found:
    """x recovered and re-verified; (a, b) is the witnessing collision."""

    x: Residue
    a: int
    b: int
    steps: int


@dataclass(frozen=True)
class NotInSubgroup:
    """Both sweeps completed with no collision: x is provably outside H."""

    steps: int


@dataclass(frozen=True)
class Undecided:
    """Search stopped early (step cap or cancellation) before a verdict."""

    steps: int


def theorem_budget(d):
    """Worst-case scalar multiplications for one constrained search."""
    return 2 * (isqrt(d) + 2)


def giant_encodings(group, P, H):
    """Encodings of (zeta^n)^a * P for a = 0..n, plus the step count.

    The giant sweep depends only on (group, P, H), so parallel campaigns
    against re-randomized Q's can compute it once and share it.
    """
    n = isqrt(H.d) + 1
    p = H.p
    step = pow(H.zeta.value, n, p)
    out = []
    t = 1
    for _ in range(n + 1):
        out.append(group.encode(group.scalar_mul(t, P)))
        t = t * step % p
    return out, n + 1


def solve_in_subgroup(instance, H, step_cap=None, should_stop=None,
                      shared_giant=None):
    """Decide whether the hidden exponent lies in H, recovering it if so.

    Returns Found / NotInSubgroup / Undecided.  `step_cap` bounds the
    number of scalar multiplications (the final verification multiply is
    not charged); `should_stop` is polled between steps for cooperative
    cancellation; `shared_giant` supplies precomputed giant encodings whose
    cost was paid elsewhere.
    """
    if H.p != instance.p:
        raise ValueError("subgroup lives mod %d, instance mod %d"
                         % (H.p, instance.p))
    if instance.Q.is_identity():
        raise DegenerateKeyError("Q is the identity; x = 0 is not a unit")
    group = instance.group
    p = instance.p
    zeta = H.zeta.value
    d = H.d
    n = isqrt(d) + 1
    steps = 0

    # baby steps: zeta^b * Q, keyed by encoding, first b wins
    table = {}
    s = 1
    for b in range(n + 1):
        if should_stop is not None and should_stop():
            return Undecided(steps)
        if step_cap is not None and steps >= step_cap:
            return Undecided(steps)
        table.setdefault(group.encode(group.scalar_mul(s, instance.Q)), b)
        steps += 1
        s = s * zeta % p

    def attempt(a, b):
        k = (a * n - b) % d
        x = Residue(pow(zeta, k, p), p)
        # soundness gate: accept only a re-verified exponent
        if group.scalar_mul(x.value, instance.P) == instance.Q:
            return Found(x=x, a=a, b=b, steps=steps)
        return None

    if shared_giant is not None:
        for a, key in enumerate(shared_giant):
            if should_stop is not None and should_stop():
                return Undecided(steps)
            b = table.get(key)
            if b is not None:
                hit = attempt(a, b)
                if hit is not None:
                    return hit
        return NotInSubgroup(steps)

    # giant steps: (zeta^n)^a * P, scanned in increasing a
    zn = pow(zeta, n, p)
    t = 1
    for a in range(n + 1):
        if should_stop is not None and should_stop():
            return Undecided(steps)
        if step_cap is not None and steps >= step_cap:
            return Undecided(steps)
        key = group.encode(group.scalar_mul(t, instance.P))
        steps += 1
        b = table.get(key)
        if b is not None:
            hit = attempt(a, b)
            if hit is not None:
                return hit
        t = t * zn % p
    return NotInSubgroup(steps)


def membership_only(instance, H):
    """True iff the hidden exponent is in H (full-budget run, no cap)."""
    return isinstance(solve_in_subgroup(instance, H), Found)
