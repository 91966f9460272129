"""Expert payoff functions induced by announcement contracts.

A contract pays ``u`` up front and fines the expert for announcements that
events later contradict.  Each value function here maps a belief to the
expert's expected payoff under the optimal announcement at that belief,
before any learning costs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .simplex import Belief, Contract, GeneralizedContract


def announce(vf, belief: Belief) -> int:
    """Index of the announcement the expert makes, ties to the lowest index.

    Accepts a value function or a bare contract.  Rule-out games name the
    state with the smallest expected fine d_i * x_i; the urn game picks the
    color call with the fewer expected misses (0 red, 1 black).
    """
    if isinstance(vf, UrnDraw):
        if belief.n != 3:
            raise DimensionMismatch("urn game requires exactly 3 states")
        x, y = belief[0], belief[2]
        return 0 if 1.0 + y - x <= 1.0 + x - y else 1
    contract = vf.contract if isinstance(vf, SimpleAnnouncement) else vf
    fines = np.asarray(contract.fines(belief.n), dtype=float)
    return int(np.argmin(fines * belief.probs))


def gross_value(vf, belief: Belief) -> float:
    """Expected payoff at a belief under the optimal announcement.

    Accepts a value function or a bare contract (read as a rule-out game):
    the payment less the cheapest expected fine.
    """
    if isinstance(vf, (SimpleAnnouncement, UrnDraw)):
        return vf.value(belief)
    fines = np.asarray(vf.fines(belief.n), dtype=float)
    return float(vf.u - (fines * belief.probs).min())


@dataclass(frozen=True)
class SimpleAnnouncement:
    """Rule-out-one-state game: payoff u - min_i d_i x_i."""

    contract: Contract | GeneralizedContract

    def value(self, belief: Belief) -> float:
        return gross_value(self.contract, belief)

    def batch(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        fines = np.asarray(self.contract.fines(pts.shape[1]), dtype=float)
        return self.contract.u - (pts * fines).min(axis=1)


@dataclass(frozen=True)
class UrnDraw:
    """Color-calling game over a two-ball urn.

    States order the urn compositions (rr, rb, bb).  The expert commits to a
    color call for each of two draws and forfeits d/2 per miss.  Calling the
    likelier composition's color twice is optimal, so with x = P(rr) and
    y = P(bb) the payoff is u - (d/2) min(1 + x - y, 1 + y - x), kinked
    along x = y.
    """

    contract: Contract

    def value(self, belief: Belief) -> float:
        if belief.n != 3:
            raise DimensionMismatch("urn game requires exactly 3 states")
        x, y = belief[0], belief[2]
        misses = min(1.0 + x - y, 1.0 + y - x)
        return self.contract.u - 0.5 * self.contract.d * misses

    def batch(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if pts.shape[1] != 3:
            raise DimensionMismatch("urn game requires exactly 3 states")
        diff = pts[:, 0] - pts[:, 2]
        misses = 1.0 - np.abs(diff)
        return self.contract.u - 0.5 * self.contract.d * misses


ValueFunction = SimpleAnnouncement | UrnDraw


def as_value_function(vf) -> ValueFunction:
    """Wrap a bare contract as a rule-out game; pass value functions through."""
    if isinstance(vf, (SimpleAnnouncement, UrnDraw)):
        return vf
    return SimpleAnnouncement(vf)
