"""
Convex functions sampled on 1-D or 2-D grids, their Legendre-Fenchel
conjugates, biconjugates and Fenchel-Rockafellar duality.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Literal, Optional, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, model_validator

from ergomax.core.errors import DomainViolationError, ExtendedRealError, ParseError

from .extended import PLUS_INF, ext_add, parse_extended, trapped

logger = logging.getLogger("ergomax.convex")

ConjugateMethod = Literal["llt", "brute"]
DualGrid = Union[ArrayLike, Sequence[ArrayLike]]


@dataclass(frozen=True, eq=False)
class GridConvexFunction:
    """Extended-real values on a tensor grid; +inf marks the outside of the domain."""

    grids: tuple[np.ndarray, ...]
    values: np.ndarray

    def __post_init__(self):
        grids = tuple(np.asarray(g, dtype=float).reshape(-1) for g in self.grids)
        if len(grids) not in (1, 2):
            raise ParseError(f"Grid functions are 1-D or 2-D, got {len(grids)} axes")
        for axis, g in enumerate(grids):
            if g.size < 2:
                raise ParseError(f"Grid axis {axis} needs at least 2 nodes")
            if np.any(np.diff(g) <= 0):
                raise ParseError(f"Grid axis {axis} must be strictly increasing")
        values = np.asarray(self.values, dtype=float)
        shape = tuple(g.size for g in grids)
        if values.shape != shape:
            raise ParseError(f"Values have shape {values.shape}, grid needs {shape}")
        if np.any(np.isnan(values)) or np.any(np.isneginf(values)):
            raise ExtendedRealError("Function values must be real or +inf")
        if not np.any(np.isfinite(values)):
            raise ExtendedRealError("Improper function: +inf at every grid node")
        object.__setattr__(self, "grids", grids)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grids: Sequence[ArrayLike] | ArrayLike, fn: Callable[..., Any]) -> "GridConvexFunction":
        axes = _as_axes(grids)
        mesh = np.meshgrid(*axes, indexing="ij")
        return cls(axes, np.asarray(fn(*mesh), dtype=float))

    @property
    def dim(self) -> int:
        return len(self.grids)

    @property
    def spacing(self) -> float:
        return float(max(np.diff(g).max() for g in self.grids))

    @property
    def finite(self) -> np.ndarray:
        return np.isfinite(self.values)

    def interior_finite(self) -> np.ndarray:
        """Nodes whose grid neighbours along every axis are finite too."""
        mask = self.finite.copy()
        for axis in range(self.dim):
            fin = self.finite
            shifted_fwd = np.zeros_like(fin)
            shifted_bwd = np.zeros_like(fin)
            idx = [slice(None)] * self.dim
            idx_fwd, idx_src = list(idx), list(idx)
            idx_fwd[axis], idx_src[axis] = slice(0, -1), slice(1, None)
            shifted_fwd[tuple(idx_fwd)] = fin[tuple(idx_src)]
            shifted_bwd[tuple(idx_src)] = fin[tuple(idx_fwd)]
            mask &= shifted_fwd & shifted_bwd
        return mask

    def max_slope(self) -> float:
        """Largest |finite difference| between adjacent finite nodes (0 if none)."""
        best = 0.0
        for axis, g in enumerate(self.grids):
            shape = [1] * self.dim
            shape[axis] = -1
            steps = np.diff(g).reshape(shape)
            with np.errstate(invalid="ignore"):
                slopes = np.abs(np.diff(self.values, axis=axis) / steps)
            slopes = slopes[np.isfinite(slopes)]
            if slopes.size:
                best = max(best, float(slopes.max()))
        return best


def _as_axes(grid: DualGrid) -> tuple[np.ndarray, ...]:
    if isinstance(grid, (tuple, list)) and len(grid) > 0 and np.ndim(grid[0]) == 1:
        axes = tuple(np.asarray(g, dtype=float).reshape(-1) for g in grid)
    else:
        axes = (np.asarray(grid, dtype=float).reshape(-1),)
    for axis, g in enumerate(axes):
        if g.size < 2 or np.any(np.diff(g) <= 0):
            raise ParseError(f"Dual grid axis {axis} must be strictly increasing with >= 2 nodes")
    return axes


# ─────────────────────────────────────────────────────────────────────────────
# 1-D KERNELS
# ─────────────────────────────────────────────────────────────────────────────

def _lower_hull(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Indices of the lower convex hull of the finite points, left to right."""
    hull: list[int] = []
    for i in np.flatnonzero(np.isfinite(f)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if (f[b] - f[a]) * (x[i] - x[a]) >= (f[i] - f[a]) * (x[b] - x[a]):
                hull.pop()
            else:
                break
        hull.append(int(i))
    return np.array(hull, dtype=int)


def _conj_1d_brute(x: np.ndarray, f: np.ndarray, y: np.ndarray) -> np.ndarray:
    fin = np.isfinite(f)
    if not fin.any():
        return np.full(y.size, -np.inf)
    return (np.outer(y, x[fin]) - f[fin][None, :]).max(axis=1)


def _conj_1d_llt(x: np.ndarray, f: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Walk the hull once while sweeping the increasing dual grid."""
    hull = _lower_hull(x, f)
    if hull.size == 0:
        return np.full(y.size, -np.inf)
    hx, hf = x[hull], f[hull]
    slopes = np.diff(hf) / np.diff(hx)
    out = np.empty(y.size)
    k = 0
    for j, yj in enumerate(y):
        while k < slopes.size and slopes[k] < yj:
            k += 1
        out[j] = hx[k] * yj - hf[k]
    return out


_KERNELS = {"brute": _conj_1d_brute, "llt": _conj_1d_llt}


def _conjugate_values(f: GridConvexFunction, axes: tuple[np.ndarray, ...], method: ConjugateMethod) -> np.ndarray:
    if method not in _KERNELS:
        raise ParseError(f"Unknown conjugate method: {method}")
    if len(axes) != f.dim:
        raise ParseError(f"Dual grid has {len(axes)} axes, function has {f.dim}")
    kernel = _KERNELS[method]

    if f.dim == 1:
        return kernel(f.grids[0], f.values, axes[0])

    if method == "brute":
        fin = f.finite
        X1, X2 = np.meshgrid(*f.grids, indexing="ij")
        points = np.column_stack([X1[fin], X2[fin]])
        Y1, Y2 = np.meshgrid(*axes, indexing="ij")
        duals = np.column_stack([Y1.ravel(), Y2.ravel()])
        out = (duals @ points.T - f.values[fin][None, :]).max(axis=1)
        return out.reshape(Y1.shape)

    # separable: conjugate along the second axis, then along the first
    x1, x2 = f.grids
    y1, y2 = axes
    inner = np.stack([kernel(x2, row, y2) for row in f.values])
    return np.stack([kernel(x1, -inner[:, b], y1) for b in range(y2.size)], axis=1)


def conjugate(
    f: GridConvexFunction,
    dual_grid: DualGrid,
    method: ConjugateMethod = "llt",
    recession: bool = False,
) -> GridConvexFunction:
    """
    f*(y) = max over grid nodes x of <x, y> - f(x).

    With ``recession=True`` (1-D only) nodes flagged by ``recession_mask`` are
    set to +inf, i.e. f is read as continuing past an open grid end with its
    extreme hull slope.
    """
    axes = _as_axes(dual_grid)
    values = _conjugate_values(f, axes, method)
    if recession:
        values = np.where(recession_mask(f, axes[0]), PLUS_INF, values)
        if not np.any(np.isfinite(values)):
            raise ExtendedRealError("Conjugate is +inf on the whole dual grid")
    return GridConvexFunction(axes, values)


def recession_mask(f: GridConvexFunction, dual_grid: ArrayLike) -> np.ndarray:
    """
    Dual nodes where f* is +inf once f continues past a finite grid end with
    its extreme hull slope. An end where f is +inf is a closed end.
    """
    if f.dim != 1:
        raise DomainViolationError("recession_mask is defined for 1-D grid functions only")
    y = _as_axes(dual_grid)[0]
    x, v = f.grids[0], f.values
    hull = _lower_hull(x, v)
    slopes = np.diff(v[hull]) / np.diff(x[hull])
    mask = np.zeros(y.size, dtype=bool)
    if np.isfinite(v[0]):
        low = slopes[0] if slopes.size else -np.inf
        mask |= y < low
    if np.isfinite(v[-1]):
        high = slopes[-1] if slopes.size else np.inf
        mask |= y > high
    return mask


def lower_convex_envelope(f: GridConvexFunction) -> GridConvexFunction:
    """Largest convex minorant on the grid; +inf outside the hull of the domain."""
    if f.dim != 1:
        raise DomainViolationError("lower_convex_envelope is defined for 1-D grid functions only")
    x = f.grids[0]
    hull = _lower_hull(x, f.values)
    hx, hf = x[hull], f.values[hull]
    inside = (x >= hx[0]) & (x <= hx[-1])
    values = np.where(inside, np.interp(x, hx, hf), PLUS_INF)
    return GridConvexFunction(f.grids, values)


def _hull_dual_grid(f: GridConvexFunction) -> np.ndarray:
    """Hull slopes padded by one unit on both sides: exact dual grid for f** in 1-D."""
    x = f.grids[0]
    hull = _lower_hull(x, f.values)
    slopes = np.unique(np.diff(f.values[hull]) / np.diff(x[hull]))
    if slopes.size == 0:
        return np.array([-1.0, 1.0])
    return np.concatenate([[slopes[0] - 1.0], slopes, [slopes[-1] + 1.0]])


def _default_dual_axes(f: GridConvexFunction) -> tuple[np.ndarray, ...]:
    bound = max(f.max_slope(), 1.0)
    return tuple(np.linspace(-bound, bound, 2 * g.size + 1) for g in f.grids)


def biconjugate(f: GridConvexFunction, method: ConjugateMethod = "llt") -> GridConvexFunction:
    """
    f** on the primal grid. Exact in 1-D (dual grid = hull slopes, +inf
    outside the hull of the domain); in 2-D a refined symmetric dual grid
    gives a minorant of the true f**.
    """
    if f.dim == 1:
        f_star = conjugate(f, _hull_dual_grid(f), method)
        values = _conjugate_values(f_star, f.grids, method)
        x = f.grids[0]
        hull = _lower_hull(x, f.values)
        inside = (x >= x[hull[0]]) & (x <= x[hull[-1]])
        return GridConvexFunction(f.grids, np.where(inside, values, PLUS_INF))
    f_star = conjugate(f, _default_dual_axes(f), method)
    return GridConvexFunction(f.grids, _conjugate_values(f_star, f.grids, method))


@dataclass(frozen=True, eq=False)
class BiconjugateReport:
    biconjugate: GridConvexFunction
    max_deviation: float   # max over finite nodes of f - f**
    below: bool            # f** <= f everywhere
    convex: bool           # f coincides with its convex envelope on the grid
    equal: bool            # f** == f within tol
    idempotence_gap: float  # max |(f**)** - f**| over finite nodes
    exact: bool            # 1-D: computed on the exact hull-slope dual grid
    tol: float


def _finite_gap(a: GridConvexFunction, b: GridConvexFunction) -> np.ndarray:
    """a - b on nodes where a is finite; b may be +inf there only by bug."""
    fin = a.finite
    with trapped():
        return a.values[fin] - b.values[fin]


def biconjugate_check(f: GridConvexFunction, tol: Optional[float] = None) -> BiconjugateReport:
    scale = 1.0 + float(np.abs(f.values[f.finite]).max())
    tol = tol if tol is not None else 1e-12 * scale
    fss = biconjugate(f)

    fin = f.finite
    deviation = _finite_gap(f, fss)
    below = bool(deviation.min() >= -tol)
    max_dev = float(deviation.max())

    if f.dim == 1:
        envelope = lower_convex_envelope(f)
        same_domain = np.array_equal(envelope.finite, fin)
        convex = bool(same_domain and np.abs(_finite_gap(f, envelope)).max() <= tol)
    else:
        convex = max_dev <= tol
    fss_again = biconjugate(fss)
    idem = float(np.abs(_finite_gap(fss, fss_again)).max())

    return BiconjugateReport(
        biconjugate=fss,
        max_deviation=max_dev,
        below=below,
        convex=convex,
        equal=bool(max_dev <= tol and np.array_equal(fss.finite, fin)),
        idempotence_gap=idem,
        exact=f.dim == 1,
        tol=tol,
    )


# ─────────────────────────────────────────────────────────────────────────────
# FENCHEL-ROCKAFELLAR
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FenchelReport:
    primal: float
    dual: float
    gap: float
    qualified: bool
    tol: float
    primal_argmin: tuple[float, ...]
    dual_argmax: tuple[float, ...]

    @property
    def weak_duality(self) -> bool:
        return self.primal >= self.dual - 1e-12 * (1.0 + abs(self.primal))

    @property
    def passed(self) -> bool:
        return self.weak_duality and (not self.qualified or self.gap <= self.tol)


def default_dual_grid(f: GridConvexFunction, g: GridConvexFunction) -> tuple[np.ndarray, ...]:
    """Symmetric grid, spacing = primal spacing, reaching the largest finite-difference slope."""
    h = min(f.spacing, g.spacing)
    bound = max(f.max_slope(), g.max_slope(), h)
    steps = int(np.ceil(bound / h - 1e-9))
    axis = h * np.arange(-steps, steps + 1)
    return tuple(axis for _ in range(f.dim))


def fr_duality_gap(
    f: GridConvexFunction,
    g: GridConvexFunction,
    dual_grid: Optional[DualGrid] = None,
) -> FenchelReport:
    """
    primal = min over nodes of f + g; dual = max over y of -f*(y) - g*(-y).
    """
    if f.dim != g.dim or any(not np.array_equal(a, b) for a, b in zip(f.grids, g.grids)):
        raise ParseError("f and g must live on the same grid")
    axes = _as_axes(dual_grid) if dual_grid is not None else default_dual_grid(f, g)

    total = ext_add(f.values, g.values)
    p_idx = np.unravel_index(int(np.argmin(total)), total.shape)
    primal = float(total[p_idx])

    f_star = _conjugate_values(f, axes, "llt")
    neg_axes = tuple(-a[::-1] for a in axes)
    g_star_neg = _conjugate_values(g, neg_axes, "llt")[(slice(None, None, -1),) * f.dim]
    with trapped():
        dual_values = -f_star - g_star_neg
    d_idx = np.unravel_index(int(np.argmax(dual_values)), dual_values.shape)
    dual = float(dual_values[d_idx])

    qualified = bool(np.any(f.finite & g.finite & (f.interior_finite() | g.interior_finite())))
    y_max = float(max(np.abs(a).max() for a in axes))
    tol = f.spacing * y_max + 1e-9

    with trapped():
        gap = primal - dual
    logger.debug("fenchel primal=%r dual=%r qualified=%s", primal, dual, qualified)
    return FenchelReport(
        primal=primal,
        dual=dual,
        gap=float(gap),
        qualified=qualified,
        tol=tol,
        primal_argmin=tuple(float(fg[i]) for fg, i in zip(f.grids, p_idx)),
        dual_argmax=tuple(float(a[i]) for a, i in zip(axes, d_idx)),
    )


# ─────────────────────────────────────────────────────────────────────────────
# JSON DOCUMENT
# ─────────────────────────────────────────────────────────────────────────────

class GridFunctionDocument(BaseModel):
    """``{"grid": [...], "values": [...]}`` or ``{"grids": [[...], [...]], "values": [[...], ...]}``."""

    model_config = ConfigDict(extra="forbid")

    grid: Optional[list[float]] = None
    grids: Optional[list[list[float]]] = None
    values: list[Any]

    @model_validator(mode="after")
    def _one_grid_form(self):
        if (self.grid is None) == (self.grids is None):
            raise ValueError("give exactly one of 'grid' or 'grids'")
        return self

    def to_function(self) -> GridConvexFunction:
        axes = [self.grid] if self.grid is not None else self.grids
        raw = np.array(self.values, dtype=object)
        values = parse_extended(list(raw.ravel())).reshape(raw.shape)
        return GridConvexFunction(tuple(np.asarray(a, dtype=float) for a in axes), values)
