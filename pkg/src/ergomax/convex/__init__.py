from ergomax.convex.extended import ext_add, ext_sub, parse_extended
from ergomax.convex.grid import (
    BiconjugateReport,
    FenchelReport,
    GridConvexFunction,
    GridFunctionDocument,
    biconjugate,
    biconjugate_check,
    conjugate,
    fr_duality_gap,
    lower_convex_envelope,
    recession_mask,
)
from ergomax.convex.games import (
    BilinearGame,
    BilinearReport,
    GameDocument,
    bilinear_minimax,
)

__all__ = [
    "ext_add",
    "ext_sub",
    "parse_extended",
    "BiconjugateReport",
    "FenchelReport",
    "GridConvexFunction",
    "GridFunctionDocument",
    "biconjugate",
    "biconjugate_check",
    "conjugate",
    "fr_duality_gap",
    "lower_convex_envelope",
    "recession_mask",
    "BilinearGame",
    "BilinearReport",
    "GameDocument",
    "bilinear_minimax",
]
