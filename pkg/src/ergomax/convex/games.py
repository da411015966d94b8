"""
Bilinear minimax over a polytope S = hull(strategies) and the probability simplex K:

    sup_{mu in K} inf_{xi in S} <xi, mu> + A(mu)    vs    inf_{xi in S} sup_{mu in K} ...

with A(mu) = sum_i mu_i a_i. Writing G[j, i] = xi_j[i] + a_i, both sides are the
two orders of the matrix game G.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict
from scipy.optimize import linprog

from ergomax.core.errors import ConvergenceError, DegenerateInputError, ParseError

logger = logging.getLogger("ergomax.convex")

EXACT_MAX_SIMPLEX_DIM = 3


@dataclass(frozen=True, eq=False)
class BilinearGame:
    strategies: np.ndarray   # (m, simplex_dim): vertices of S
    concave_part: np.ndarray  # (simplex_dim,): A at the simplex vertices

    def __post_init__(self):
        strategies = np.atleast_2d(np.asarray(self.strategies, dtype=float))
        concave = np.asarray(self.concave_part, dtype=float).reshape(-1)
        if strategies.size == 0:
            raise DegenerateInputError("Strategy set is empty")
        if concave.size < 1:
            raise ParseError("simplex_dim must be >= 1")
        if strategies.shape[1] != concave.size:
            raise ParseError(
                f"Strategies have dimension {strategies.shape[1]}, simplex has {concave.size} vertices"
            )
        if not (np.all(np.isfinite(strategies)) and np.all(np.isfinite(concave))):
            raise ParseError("Game data must be finite")
        object.__setattr__(self, "strategies", strategies)
        object.__setattr__(self, "concave_part", concave)

    @property
    def simplex_dim(self) -> int:
        return self.concave_part.size

    @property
    def payoff(self) -> np.ndarray:
        """G[j, i] = xi_j[i] + a_i."""
        return self.strategies + self.concave_part[None, :]

    def value_at(self, mu: ArrayLike) -> float:
        """inf over S of <xi, mu> + A(mu)."""
        return float((self.payoff @ np.asarray(mu, dtype=float)).min())


def _project_simplex_weights(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def maximin_by_vertices(G: np.ndarray) -> tuple[float, np.ndarray]:
    """
    max over p in the simplex of min_j (G p)_j, by enumerating the vertices of
    {(p, t) : sum p = 1, p >= 0, G p >= t}. Returns the value certified at the
    returned p.
    """
    rows, cols = G.shape
    best_value, best_p = -np.inf, None
    for active in combinations(range(rows + cols), cols):
        A = np.zeros((cols + 1, cols + 1))
        b = np.zeros(cols + 1)
        A[0, :cols] = 1.0
        b[0] = 1.0
        for k, c in enumerate(active, start=1):
            if c < rows:
                A[k, :cols] = G[c]
                A[k, cols] = -1.0
            else:
                A[k, c - rows] = 1.0
        if np.linalg.matrix_rank(A) < cols + 1:
            continue
        p = np.linalg.solve(A, b)[:cols]
        if p.min() < -1e-9:
            continue
        p = _project_simplex_weights(p)
        value = float((G @ p).min())
        if value > best_value:
            best_value, best_p = value, p
    if best_p is None:
        raise ConvergenceError("No vertex of the maximin polytope found")
    return best_value, best_p


def maximin_by_linprog(G: np.ndarray) -> tuple[float, np.ndarray]:
    """Same problem through scipy's HiGHS solver; value certified at the returned p."""
    rows, cols = G.shape
    c = np.zeros(cols + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-G, np.ones((rows, 1))])
    A_eq = np.zeros((1, cols + 1))
    A_eq[0, :cols] = 1.0
    bounds = [(0, None)] * cols + [(None, None)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(rows), A_eq=A_eq, b_eq=[1.0], bounds=bounds, method="highs")
    if not res.success:
        raise ConvergenceError(f"Linear program failed: {res.message}")
    p = _project_simplex_weights(res.x[:cols])
    return float((G @ p).min()), p


@dataclass(frozen=True, eq=False)
class BilinearReport:
    sup_inf: float
    inf_sup: float
    gap: float
    regime: Literal["exact", "certified"]
    mu: np.ndarray        # maximiser over K
    xi_weights: np.ndarray  # convex weights on the strategies of a minimiser over S

    def passed(self, tol: float = 1e-6, order_tol: float = 1e-12) -> bool:
        ordered = self.sup_inf <= self.inf_sup + order_tol
        return ordered and (self.regime != "exact" or self.gap <= tol)


def bilinear_minimax(game: BilinearGame, regime: Optional[Literal["exact", "certified"]] = None) -> BilinearReport:
    """
    Both orders of the game. simplex_dim <= 3 uses exact vertex enumeration;
    larger games use linear programs and report the certified bounds
    sup_inf <= value <= inf_sup.
    """
    G = game.payoff
    if regime is None:
        regime = "exact" if game.simplex_dim <= EXACT_MAX_SIMPLEX_DIM else "certified"
    solve = maximin_by_vertices if regime == "exact" else maximin_by_linprog

    sup_inf, mu = solve(G)
    neg_inf_sup, weights = solve(-G.T)
    inf_sup = -neg_inf_sup
    logger.debug("bilinear game %s: sup_inf=%r inf_sup=%r", regime, sup_inf, inf_sup)
    return BilinearReport(
        sup_inf=sup_inf,
        inf_sup=inf_sup,
        gap=inf_sup - sup_inf,
        regime=regime,
        mu=mu,
        xi_weights=weights,
    )


class GameDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    strategies: list[list[float]]
    concave_part: Optional[list[float]] = None
    simplex_dim: Optional[int] = None

    def to_game(self) -> BilinearGame:
        if not self.strategies:
            raise DegenerateInputError("Strategy set is empty")
        dim = self.simplex_dim if self.simplex_dim is not None else len(self.strategies[0])
        if dim < 1:
            raise ParseError("simplex_dim must be >= 1")
        concave = self.concave_part if self.concave_part is not None else [0.0] * dim
        if len(concave) != dim:
            raise ParseError(f"concave_part has {len(concave)} entries, simplex_dim is {dim}")
        if any(len(s) != dim for s in self.strategies):
            raise ParseError(f"Every strategy needs {dim} coordinates")
        return BilinearGame(np.array(self.strategies), np.array(concave))
