"""
Higher-block recoding of a subshift into a vertex-weighted digraph.

Vertex = allowed k-word with an infinite forward continuation, edge = two
k-words overlapping in k-1 symbols whose union is an allowed (k+1)-word.
A walk of n vertices is the first n windows of a point, so S_n phi(x) is the
sum of the first n vertex weights along the walk of x.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from ergomax.core.errors import ConvergenceError, EmptySubshiftError, ParseError
from ergomax.symbolic.system import SubshiftSystem, Word

logger = logging.getLogger("ergomax.symbolic")


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    vertices: tuple[Word, ...]
    successors: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges, sorted by (source, target)."""
        return tuple((u, v) for u, succ in enumerate(self.successors) for v in succ)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        preds: list[list[int]] = [[] for _ in self.vertices]
        for u, v in self.edges:
            preds[v].append(u)
        return tuple(tuple(p) for p in preds)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @cached_property
    def vertex_index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.vertices)}

    def label(self, vertex: int) -> str:
        word = self.vertices[vertex]
        if all(len(s) == 1 for s in word):
            return "".join(word)
        return ",".join(word)

    def adjacency(self) -> np.ndarray:
        """0/1 matrix of the recoded graph."""
        adj = np.zeros((self.size, self.size))
        for u, v in self.edges:
            adj[u, v] = 1.0
        return adj

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.size))
        g.add_edges_from(self.edges)
        return g

    def with_weights(self, weights: Sequence[float]) -> "WeightedDigraph":
        if len(weights) != self.size:
            raise ParseError(f"Expected {self.size} vertex weights, got {len(weights)}")
        return WeightedDigraph(self.vertices, self.successors, tuple(float(w) for w in weights))


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]
    total: float
    mean: float

    def __len__(self) -> int:
        return len(self.vertices)

    def rotations(self) -> list[tuple[int, ...]]:
        vs = self.vertices
        return [vs[i:] + vs[:i] for i in range(len(vs))]


def make_cycle(graph: WeightedDigraph, vertices: Sequence[int]) -> Cycle:
    total = math.fsum(graph.weights[v] for v in vertices)
    return Cycle(tuple(vertices), total, total / len(vertices))


def trim_and_recode(system: SubshiftSystem) -> WeightedDigraph:
    """Recode to depth-k words and drop vertices with no infinite forward walk."""
    n_sym = len(system.symbols)
    A = system.transition

    # product order over symbol indices gives lexicographic order for free
    words: list[tuple[int, ...]] = [(s,) for s in range(n_sym)]
    for _ in range(system.depth - 1):
        words = [w + (b,) for w in words for b in range(n_sym) if A[w[-1]][b]]
    position = {w: i for i, w in enumerate(words)}
    succ = [[position[w[1:] + (b,)] for b in range(n_sym) if A[w[-1]][b]] for w in words]

    preds: list[list[int]] = [[] for _ in words]
    for u, targets in enumerate(succ):
        for v in targets:
            preds[v].append(u)

    out_degree = [len(s) for s in succ]
    alive = [True] * len(words)
    dead = deque(i for i, d in enumerate(out_degree) if d == 0)
    while dead:
        v = dead.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for u in preds[v]:
            if alive[u]:
                out_degree[u] -= 1
                if out_degree[u] == 0:
                    dead.append(u)

    kept = [i for i in range(len(words)) if alive[i]]
    if not kept:
        raise EmptySubshiftError("Subshift is empty: every word dies under trimming")
    remap = {old: new for new, old in enumerate(kept)}

    vertices = tuple(tuple(system.symbols[s] for s in words[i]) for i in kept)
    successors = tuple(tuple(remap[v] for v in succ[i] if alive[v]) for i in kept)
    weights = tuple(system.potential.value_of(w) for w in vertices)

    logger.debug("recoded %d words of depth %d, trimmed %d", len(words), system.depth, len(words) - len(kept))
    return WeightedDigraph(vertices, successors, weights)


def edge_graph(graph: WeightedDigraph, edge_values: Sequence[float]) -> WeightedDigraph:
    """
    Recode one level higher: vertices are the edges of ``graph`` (in edge order),
    weighted by ``edge_values``. Lets edge potentials run through every
    vertex-weighted algorithm.
    """
    if len(edge_values) != len(graph.edges):
        raise ParseError(f"Expected {len(graph.edges)} edge values, got {len(edge_values)}")
    index = graph.edge_index
    vertices = tuple(graph.vertices[u] + graph.vertices[v][-1:] for u, v in graph.edges)
    successors = tuple(
        tuple(index[(v, w)] for w in graph.successors[v]) for _, v in graph.edges
    )
    return WeightedDigraph(vertices, successors, tuple(float(x) for x in edge_values))


def cyclic_components(graph: WeightedDigraph) -> list[list[int]]:
    """Strongly connected components that carry at least one cycle, sorted by smallest vertex."""
    g = graph.to_networkx()
    comps = []
    for comp in nx.strongly_connected_components(g):
        members = sorted(comp)
        if len(members) > 1 or g.has_edge(members[0], members[0]):
            comps.append(members)
    return sorted(comps, key=lambda c: c[0])


def is_irreducible(graph: WeightedDigraph) -> bool:
    return nx.is_strongly_connected(graph.to_networkx())


def enumerate_simple_cycles(graph: WeightedDigraph, max_len: int) -> list[Cycle]:
    """
    All simple cycles with at most ``max_len`` vertices, each written from its
    smallest vertex, in lexicographic order of the vertex sequence.
    """
    if max_len < 1:
        raise ParseError(f"max_len must be >= 1, got {max_len}")

    found: list[tuple[int, ...]] = []
    for start in range(graph.size):
        path = [start]
        on_path = {start}
        stack = [iter(graph.successors[start])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if nxt == start:
                found.append(tuple(path))
            elif nxt > start and nxt not in on_path and len(path) < max_len:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter(graph.successors[nxt]))

    return [make_cycle(graph, c) for c in sorted(found)]


def relax_potentials(
    graph: WeightedDigraph,
    t: float,
    max_rounds: Optional[int] = None,
) -> np.ndarray:
    """
    Longest-path potentials for the reduced weights w(u) - t, i.e. the smallest
    psi >= 0 with psi(v) >= psi(u) + w(u) - t on every edge. Starts from psi = 0
    and sweeps the edges in fixed order until nothing moves.

    Requires that no cycle has positive reduced weight (t >= max cycle mean).
    """
    psi = np.zeros(graph.size)
    w = graph.weights
    eps = 1e-12 * (1.0 + max(abs(x) for x in w) + abs(t))
    n_edges = len(graph.edges)
    limit = max_rounds if max_rounds is not None else max(1, graph.size * n_edges)

    for rounds in range(1, limit + 1):
        changed = False
        for u, v in graph.edges:
            candidate = psi[u] + w[u] - t
            if candidate > psi[v] + eps:
                psi[v] = candidate
                changed = True
        if not changed:
            logger.debug("relaxation stable after %d rounds", rounds)
            return psi

    raise ConvergenceError(
        f"Potential relaxation did not stabilise in {limit} rounds (t={t} below the max cycle mean?)",
        iterations=limit,
    )


def edge_slacks(graph: WeightedDigraph, psi: np.ndarray, t: float) -> np.ndarray:
    """t - (w(u) + psi(u) - psi(v)) per edge, in edge order."""
    src = np.fromiter((u for u, _ in graph.edges), dtype=int, count=len(graph.edges))
    dst = np.fromiter((v for _, v in graph.edges), dtype=int, count=len(graph.edges))
    return t - (graph.weight_array[src] + psi[src] - psi[dst])


def tight_cycle(graph: WeightedDigraph, psi: np.ndarray, t: float, tol: float) -> tuple[int, ...]:
    """
    Lexicographically smallest simple cycle made of edges with slack <= tol.
    Every such cycle has mean within tol of t.
    """
    slack = edge_slacks(graph, psi, t)
    tight_succ: list[list[int]] = [[] for _ in graph.vertices]
    for (u, v), s in zip(graph.edges, slack):
        if s <= tol:
            tight_succ[u].append(v)

    tight = WeightedDigraph(graph.vertices, tuple(tuple(s) for s in tight_succ), graph.weights)
    comps = cyclic_components(tight)
    if not comps:
        raise ConvergenceError("No tight cycle found for the optimal value")
    start = comps[0][0]

    def reaches_start(origin: int, blocked: set[int]) -> bool:
        seen = {origin}
        queue = deque([origin])
        while queue:
            x = queue.popleft()
            for y in tight_succ[x]:
                if y == start:
                    return True
                if y not in seen and y not in blocked and y > start:
                    seen.add(y)
                    queue.append(y)
        return False

    path = [start]
    used = {start}
    while True:
        cur = path[-1]
        if start in tight_succ[cur]:
            return tuple(path)
        for nxt in sorted(tight_succ[cur]):
            if nxt > start and nxt not in used and reaches_start(nxt, used):
                path.append(nxt)
                used.add(nxt)
                break
        else:
            raise ConvergenceError("Tight subgraph walk got stuck")
