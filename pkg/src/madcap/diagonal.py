"""The reduced input family diag(alpha, beta x3, gamma, beta x3, delta)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidState

ALPHA_I, GAMMA_I, DELTA_I = 0, 4, 8
BETA_I = (1, 2, 3, 5, 6, 7)


@dataclass(frozen=True)
class DiagonalState:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        vals = (self.alpha, self.beta, self.gamma, self.delta)
        if min(vals) < -1e-12:
            raise InvalidState(f"negative population in {vals}")
        if abs(self.alpha + 6 * self.beta + self.gamma + self.delta - 1.0) > 1e-12:
            raise InvalidState("alpha + 6 beta + gamma + delta must equal 1")

    @classmethod
    def from_free(cls, alpha, gamma, delta):
        """Build from (alpha, gamma, delta); beta takes up the remaining weight."""
        alpha, gamma, delta = (max(float(x), 0.0) for x in (alpha, gamma, delta))
        rest = 1.0 - alpha - gamma - delta
        if rest < -1e-12:
            raise InvalidState("alpha + gamma + delta exceeds 1")
        return cls(alpha, max(rest, 0.0) / 6.0, gamma, delta)

    def as_array(self):
        return np.array([self.alpha, self.beta, self.gamma, self.delta])

    def populations(self):
        p = np.full(9, self.beta)
        p[ALPHA_I], p[GAMMA_I], p[DELTA_I] = self.alpha, self.gamma, self.delta
        return p

    def matrix(self):
        return np.diag(self.populations()).astype(np.complex128)
