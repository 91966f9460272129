"""Finite statistical experiments, posterior updating, and the learning benefit.

An experiment maps each of n states to a distribution over m signals.  The
learning benefit of an experiment at a prior is the reduction in the expected
minimum joint state-signal probability it achieves; scaled by the fine, this
is the expected-fine reduction an expert obtains by observing the experiment
before announcing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ZeroProbabilitySignal
from .simplex import SUM_TOL, Belief, PosteriorDistribution, _frozen_array, min_prob


@dataclass(frozen=True, eq=False)
class Experiment:
    """Signal labels plus an n x m likelihood matrix; row i is the signal
    distribution in state i."""

    likelihoods: np.ndarray
    signals: tuple[str, ...]

    def __init__(self, likelihoods, signals=None):
        arr = _frozen_array(likelihoods)
        if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] < 1:
            raise ValueError(f"likelihoods must be n x m with n >= 2, got {arr.shape}")
        if arr.min() < 0:
            raise ValueError("likelihoods must be nonnegative")
        rowsums = arr.sum(axis=1)
        if np.abs(rowsums - 1.0).max() > SUM_TOL:
            raise ValueError(f"rows must sum to 1, got sums {rowsums}")
        if signals is None:
            signals = tuple(f"s{j}" for j in range(arr.shape[1]))
        else:
            signals = tuple(str(s) for s in signals)
            if len(signals) != arr.shape[1]:
                raise ValueError("one label per signal column required")
        object.__setattr__(self, "likelihoods", arr)
        object.__setattr__(self, "signals", signals)

    @property
    def n(self) -> int:
        return self.likelihoods.shape[0]

    @property
    def m(self) -> int:
        return self.likelihoods.shape[1]

    def is_uninformative(self, tol: float = SUM_TOL) -> bool:
        """All rows equal: signals carry no information about the state."""
        return np.abs(self.likelihoods - self.likelihoods[0]).max() <= tol


def null_experiment(n: int) -> Experiment:
    """Single constant signal; observing it never moves the belief."""
    return Experiment(np.ones((n, 1)), signals=("null",))


def fully_informative(n: int) -> Experiment:
    """The identity experiment: the signal reveals the state."""
    return Experiment(np.eye(n))


def symmetric_binary(q: float) -> Experiment:
    """Two-state experiment reporting the true state with probability q."""
    if not 0.5 < q <= 1.0:
        raise ValueError(f"accuracy q must lie in (1/2, 1], got {q}")
    return Experiment([[q, 1.0 - q], [1.0 - q, q]], signals=("h", "l"))


def garble(E: Experiment, mixing: np.ndarray) -> Experiment:
    """Post-process signals through a stochastic matrix (m x m'), producing a
    Blackwell-dominated experiment."""
    M = np.asarray(mixing, dtype=float)
    if M.ndim != 2 or M.shape[0] != E.m:
        raise DimensionMismatch(f"mixing must be {E.m} x m', got {M.shape}")
    if M.min() < 0 or np.abs(M.sum(axis=1) - 1.0).max() > SUM_TOL:
        raise ValueError("mixing rows must be probability vectors")
    return Experiment(E.likelihoods @ M)


def signal_marginal(E: Experiment, mu: Belief) -> np.ndarray:
    """Unconditional signal distribution at prior mu."""
    if E.n != mu.n:
        raise DimensionMismatch(f"experiment has {E.n} states, belief has {mu.n}")
    return mu.probs @ E.likelihoods


def posterior(E: Experiment, mu: Belief, s: int) -> Belief:
    """Bayes update of mu after observing signal index s."""
    marg = signal_marginal(E, mu)
    if marg[s] <= 0.0:
        raise ZeroProbabilitySignal(
            f"signal {E.signals[s]!r} has zero probability at {mu}"
        )
    return Belief(mu.probs * E.likelihoods[:, s] / marg[s])


def induced_posterior_distribution(E: Experiment, mu: Belief) -> PosteriorDistribution:
    """Distribution over posteriors generated by E at mu; zero-probability
    signals are dropped."""
    marg = signal_marginal(E, mu)
    support = []
    weights = []
    for s in range(E.m):
        if marg[s] > 0.0:
            support.append(Belief(mu.probs * E.likelihoods[:, s] / marg[s]))
            weights.append(float(marg[s]))
    return PosteriorDistribution(support, np.array(weights), mu)


def upsilon(E: Experiment, mu: Belief) -> float:
    """Learning benefit of E at mu: min_i mu_i minus the summed per-signal
    minimum joint probabilities min_i mu_i P_i(s).

    Always in [0, min_i mu_i]; zero for uninformative experiments.
    """
    if E.n != mu.n:
        raise DimensionMismatch(f"experiment has {E.n} states, belief has {mu.n}")
    joint = mu.probs[:, None] * E.likelihoods
    return min_prob(mu) - float(joint.min(axis=0).sum())


def is_delta_valuable(E: Experiment, mu: Belief, delta: float) -> bool:
    """Strictly more valuable than the threshold: upsilon(E, mu) > delta."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    return upsilon(E, mu) > delta
