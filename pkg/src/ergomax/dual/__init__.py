from ergomax.dual.subaction import (
    DualityReport,
    SubActionSolution,
    coboundary_pairing,
    dual_objective,
    invariance_defect,
    solve_subaction,
    verify_duality,
)

__all__ = [
    "DualityReport",
    "SubActionSolution",
    "coboundary_pairing",
    "dual_objective",
    "invariance_defect",
    "solve_subaction",
    "verify_duality",
]
