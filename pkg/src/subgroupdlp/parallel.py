"""Randomized parallel extension of the constrained search.

One thread decides x in H at cost ~2*sqrt(d).  The campaign runs m threads
against independently re-randomized targets Q_i = y_i * Q for uniform units
y_i: thread i solves for z_i = x * y_i mod p, and any thread that lands in
H yields x = z_i * y_i^{-1} mod p.  Per-thread work never exceeds the
single-search budget, and the campaign succeeds as soon as some x * y_i
falls in H -- which is what the probability model prices.

Worker count is an execution detail: workers=1 replays the same campaign
bit-for-bit (same multipliers, same step counts) for a fixed seed, while
workers>1 shares a stop flag so the first verified hit cancels the rest.
"""

import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field

from .bsgs import (DegenerateKeyError, DlpInstance, Found, giant_encodings,
                   solve_in_subgroup)
from .factoring import factor, find_primitive_root, subgroup_generator
from .field import Residue, derive_seed, mod_inverse
from .groups import AdditiveOracleGroup

__all__ = [
    "CampaignConfig", "CampaignSuccess", "CampaignResult",
    "draw_multipliers", "randomized_solve", "empirical_success_rate",
]


@dataclass(frozen=True)
class CampaignConfig:
    """Knobs for one campaign: m threads, OS-level parallelism, seeding."""

    m: int
    workers: int = 1
    seed: int = 0
    step_cap: int = None
    share_giant: bool = True

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("a campaign needs at least one thread (m >= 1)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class CampaignSuccess:
    """The winning thread: x = z * y^(-1) mod p, re-verified against Q."""

    x: Residue
    index: int
    y: Residue
    z: Residue


@dataclass
class CampaignResult:
    """Outcome plus work accounting for a whole campaign.

    total_steps counts constrained-search scalar multiplications (baby and
    giant steps, including a shared giant precomputation); it respects
    total_steps <= m * theorem_budget(d).  The m re-randomization multiplies
    Q_i = y_i*Q and the final verification are tallied in overhead_muls.
    per_thread_steps has one entry per thread actually run.
    """

    success: object = None
    total_steps: int = 0
    overhead_muls: int = 0
    threads_run: int = 0
    per_thread_steps: list = dataclass_field(default_factory=list)

    @property
    def found(self):
        return self.success is not None


def draw_multipliers(p, m, seed):
    """The campaign's uniform unit multipliers y_1..y_m, as plain ints.

    Drawn from a dedicated stream derived from the seed, so the same
    (p, m, seed) always yields the same list regardless of worker count.
    """
    rng = random.Random(derive_seed(seed, "multipliers", p, m))
    return [rng.randrange(1, p) for _ in range(m)]


def _recover(instance, y, z):
    x = mod_inverse(Residue(y, instance.p)) * z
    if instance.group.scalar_mul(x.value, instance.P) != instance.Q:
        raise AssertionError("verified thread result failed final check")
    return x


def randomized_solve(instance, H, config, progress=None):
    """Run an m-thread campaign; first verified hit wins.

    Returns a CampaignResult whose success is None when every thread
    reported NotInSubgroup (or hit its step cap).  `progress`, if given,
    is called as progress(threads_finished, steps_so_far) after each
    thread completes.
    """
    if H.p != instance.p:
        raise ValueError("subgroup lives mod %d, instance mod %d"
                         % (H.p, instance.p))
    if instance.Q.is_identity():
        raise DegenerateKeyError("Q is the identity; x = 0 is not a unit")
    group = instance.group
    ys = draw_multipliers(instance.p, config.m, config.seed)
    result = CampaignResult()

    shared = None
    if config.share_giant:
        shared, setup_steps = giant_encodings(group, instance.P, H)
        result.total_steps += setup_steps

    def run_thread(i, should_stop=None):
        Q_i = group.scalar_mul(ys[i], instance.Q)
        sub = DlpInstance(group=group, P=instance.P, Q=Q_i, p=instance.p)
        verdict = solve_in_subgroup(sub, H, step_cap=config.step_cap,
                                    should_stop=should_stop,
                                    shared_giant=shared)
        return verdict

    if config.workers == 1:
        for i in range(config.m):
            verdict = run_thread(i)
            result.threads_run += 1
            result.overhead_muls += 1  # forming Q_i
            result.total_steps += verdict.steps
            result.per_thread_steps.append(verdict.steps)
            if progress is not None:
                progress(result.threads_run, result.total_steps)
            if isinstance(verdict, Found):
                result.overhead_muls += 1  # final verification
                result.success = CampaignSuccess(
                    x=_recover(instance, ys[i], verdict.x),
                    index=i, y=Residue(ys[i], instance.p), z=verdict.x)
                break
        return result

    stop = threading.Event()
    lock = threading.Lock()
    winner = [None]

    def worker(i):
        if stop.is_set():
            return None
        verdict = run_thread(i, should_stop=stop.is_set)
        with lock:
            result.threads_run += 1
            result.overhead_muls += 1
            result.total_steps += verdict.steps
            result.per_thread_steps.append(verdict.steps)
            if isinstance(verdict, Found) and winner[0] is None:
                winner[0] = (i, verdict)
                stop.set()
            if progress is not None:
                progress(result.threads_run, result.total_steps)
        return None

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        list(pool.map(worker, range(config.m)))
    if winner[0] is not None:
        i, verdict = winner[0]
        result.overhead_muls += 1
        result.success = CampaignSuccess(
            x=_recover(instance, ys[i], verdict.x),
            index=i, y=Residue(ys[i], instance.p), z=verdict.x)
    return result


def empirical_success_rate(p, d, m, trials, seed, progress=None):
    """Fraction of seeded campaigns that recover a uniform random exponent.

    Runs `trials` independent campaigns on the transparent oracle group
    mod p with fresh x and fresh multipliers each time; the observed rate
    estimates the collision probability that the model predicts.
    """
    group = AdditiveOracleGroup(p)
    factored = factor(p - 1)
    H = subgroup_generator(p, d, factored=factored)
    key_rng = random.Random(derive_seed(seed, "keys", p, d, m))
    hits = 0
    for t in range(trials):
        x = key_rng.randrange(1, p)
        instance = DlpInstance.from_secret(group, x)
        config = CampaignConfig(m=m, seed=derive_seed(seed, "campaign", t))
        outcome = randomized_solve(instance, H, config)
        if outcome.found:
            if outcome.success.x.value != x:
                raise AssertionError("campaign recovered a wrong exponent")
            hits += 1
        if progress is not None:
            progress(t + 1, hits)
    return hits / trials
