"""
Finite-horizon maxima sup_x S_n phi(x) / n and their running infimum.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ergomax.core.errors import ParseError
from ergomax.symbolic.graph import WeightedDigraph

ROUNDING_ULPS = 8


@dataclass(frozen=True)
class HorizonRow:
    n: int
    sup_value: float


@dataclass(frozen=True)
class HorizonTable:
    rows: tuple[HorizonRow, ...]
    running_inf: float
    error_bound: float
    alpha: float

    @property
    def attained_at(self) -> int:
        return min(self.rows, key=lambda r: (r.sup_value, r.n)).n

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "sup_value"])
        for row in self.rows:
            writer.writerow([row.n, repr(row.sup_value)])
        writer.writerow(["inf", repr(self.running_inf)])
        writer.writerow(["error_bound", repr(self.error_bound)])
        return buf.getvalue()


def best_walk_weights(graph: WeightedDigraph, N: int) -> np.ndarray:
    """Entry n-1 is the heaviest total weight of an n-vertex walk, n = 1..N."""
    if N < 1:
        raise ParseError(f"Horizon must be >= 1, got {N}")
    w = graph.weight_array
    src = np.array([u for u, _ in graph.edges], dtype=int)
    dst = np.array([v for _, v in graph.edges], dtype=int)

    out = np.empty(N)
    best = w.copy()  # heaviest walk of the current length starting at each vertex
    out[0] = best.max()
    for n in range(1, N):
        onward = np.full(graph.size, -np.inf)
        np.maximum.at(onward, src, best[dst])
        best = w + onward
        out[n] = best.max()
    return out


def horizon_sup(graph: WeightedDigraph, n: int) -> float:
    return float(best_walk_weights(graph, n)[-1] / n)


def horizon_table(graph: WeightedDigraph, N: int, alpha: Optional[float] = None) -> HorizonTable:
    """
    Rows n = 1..N with running minimum. A walk of N vertices splits into simple
    cycles plus a path of fewer than |V| vertices, which gives the error bound
    |V| (w_max - alpha) / N on running_inf - alpha, widened by a few ulps of
    N max|w| for the rounding in the walk totals.
    """
    if alpha is None:
        from ergomax.averages.alpha import alpha_karp

        alpha = alpha_karp(graph).value
    totals = best_walk_weights(graph, N)
    rows = tuple(HorizonRow(n, float(totals[n - 1] / n)) for n in range(1, N + 1))
    w_max = float(graph.weight_array.max())
    rounding = ROUNDING_ULPS * np.finfo(float).eps * N * float(np.abs(graph.weight_array).max())
    return HorizonTable(
        rows=rows,
        running_inf=min(r.sup_value for r in rows),
        error_bound=graph.size * max(w_max - alpha, 0.0) / N + rounding,
        alpha=alpha,
    )


def limsup_tail(table: HorizonTable) -> float:
    """Last tabulated sup_x S_N phi / N, the finite stand-in for the limsup in N."""
    return table.rows[-1].sup_value
