"""Seeded microstate sampling, occupation counts, and equilibrium counting.

Microstates are assignments of `total` distinguishable particles to states,
drawn i.i.d. from a distribution. The sampling stream is part of the public
contract so counts freeze across platforms:

  * bit generator: numpy's Philox4x64-10 counter-based generator, keyed
    directly with the user seed (counter starts at zero);
  * one uniform double per particle via the 53-bit conversion of
    ``Generator.random``;
  * each particle is placed by right-bisecting the inclusive cumulative sums
    of the probabilities (the last edge pinned to 1.0).

Regression vectors for this stream live in the test suite and the README.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy

from .errors import InvalidTotal, LengthMismatch
from .gibbs import Distribution
from .state_space import StateSet

GENERATOR_NAME = "philox4x64-10"


@dataclass(frozen=True)
class MicrostateCounts:
    """Occupation numbers of one sampled microstate.

    `total` is the particle number (the counts sum to it); `seed` is the
    stream key that produced the draw; `parent` is the state set the counts
    index, kept so empirical distributions stay tied to their states.
    """

    counts: np.ndarray
    total: int
    seed: int
    parent: StateSet

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.counts, dtype=np.int64))
        if c.ndim != 1 or c.shape[0] != len(self.parent):
            raise LengthMismatch(f"{c.size} counts for {len(self.parent)} states")
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        if int(c.sum()) != self.total:
            raise ValueError(f"counts sum to {int(c.sum())}, expected total {self.total}")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)


def _check_total(total) -> int:
    if isinstance(total, bool) or not isinstance(total, (int, np.integer)) or total < 1:
        raise InvalidTotal(f"total must be a positive integer, got {total!r}")
    return int(total)


def sample_counts(p: Distribution, total: int, seed: int) -> MicrostateCounts:
    """Multinomial occupation counts of `total` i.i.d. draws from p.

    Deterministic in (p, total, seed); see the module docstring for the
    exact stream contract.
    """
    total = _check_total(total)
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    edges = np.cumsum(p.probs)
    edges[-1] = 1.0
    draws = rng.random(total)
    states = np.searchsorted(edges, draws, side="right")
    counts = np.bincount(states, minlength=len(p)).astype(np.int64)
    return MicrostateCounts(counts, total, int(seed), p.parent)


def empirical_distribution(c: MicrostateCounts) -> Distribution:
    """Observed frequencies counts / total as a Distribution."""
    return Distribution(c.counts / c.total, c.parent)


def log_multinomial_measure(p: Distribution, c: MicrostateCounts) -> float:
    """log probability that i.i.d. draws from p produce exactly these counts.

    log Gamma(total+1) - sum log Gamma(counts+1) + sum counts * log p. A
    zero-probability state with a nonzero count makes the measure exactly
    zero; that is reported as -inf, not an error.
    """
    if len(c.counts) != len(p):
        raise LengthMismatch(f"{len(c.counts)} counts for {len(p)} probabilities")
    counts = c.counts
    if np.any((p.probs == 0.0) & (counts > 0)):
        return float("-inf")
    value = gammaln(c.total + 1) - gammaln(counts + 1).sum() + xlogy(counts, p.probs).sum()
    return float(value)


def log_equilibrium_count(p: Distribution, total: int) -> float:
    """log of the number of microstates whose frequencies equal p.

    Gamma-function interpolation log Gamma(total+1) - sum log Gamma(total*p+1),
    valid for non-integer total*p. Divided by total, this converges to the
    entropy of p as total grows.
    """
    total = _check_total(total)
    return float(gammaln(total + 1) - gammaln(total * p.probs + 1.0).sum())
