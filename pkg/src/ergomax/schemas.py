"""
ergomax Command Schemas
Pydantic payloads for every command's ``results`` block, the fenchel instance
documents, and the identity checks a command asserts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ergomax.convex.games import GameDocument
from ergomax.convex.grid import GridFunctionDocument


# ─────────────────────────────────────────────────────────────────────────────
# IDENTITY CHECKS
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class IdentityCheck:
    """One identity a command asserts; a failed one turns into exit code 5."""

    name: str
    observed: float
    expected: float
    tol: float
    holds: bool

    @classmethod
    def equality(cls, name: str, observed: float, expected: float, tol: float) -> "IdentityCheck":
        return cls(name, float(observed), float(expected), tol, abs(observed - expected) <= tol)

    @classmethod
    def at_most(cls, name: str, observed: float, limit: float, tol: float) -> "IdentityCheck":
        return cls(name, float(observed), float(limit), tol, observed <= limit + tol)

    def to_model(self) -> "IdentityModel":
        return IdentityModel(
            name=self.name, observed=self.observed, expected=self.expected, tol=self.tol, holds=self.holds
        )


@dataclass
class CommandResult:
    payload: BaseModel
    echo: dict = field(default_factory=dict)
    checks: list[IdentityCheck] = field(default_factory=list)
    csv: Optional[str] = None


class IdentityModel(BaseModel):
    name: str
    observed: float
    expected: float
    tol: float
    holds: bool


# ─────────────────────────────────────────────────────────────────────────────
# PAYLOADS
# ─────────────────────────────────────────────────────────────────────────────

class AlphaPayload(BaseModel):
    value: float
    method: str
    witness_cycle: list[int]
    witness_labels: list[str]
    witness_mean: float
    vertices: list[str]


class HorizonRowModel(BaseModel):
    n: int
    sup_value: float


class HorizonsPayload(BaseModel):
    rows: list[HorizonRowModel]
    running_inf: float
    attained_at: int
    error_bound: float
    alpha: float
    limsup_tail: float


class PointPayload(BaseModel):
    point: str
    inf_over_n: float
    inf_attained_at: Optional[int]
    liminf: float
    limsup: float
    sup_over_n: float
    sup_attained_at: Optional[int]
    series: list[float] = Field(default_factory=list)


class ThreePointPayload(BaseModel):
    a: float
    horizon: int
    alpha: float
    alpha_witness: list[str]
    points: list[PointPayload]
    horizon_sup: list[HorizonRowModel]
    inf_n_sup_x: float
    inf_n_sup_x_attained_at: Optional[int]
    sup_x_inf_n: float
    sup_sup: float
    inf_inf: float
    identities: list[IdentityModel]


class SubactionPayload(BaseModel):
    dual_value: float
    alpha: float
    gap: float
    violation: float
    psi: dict[str, float]
    min_slack: float
    tight_edges: list[list[str]]
    tight_cycle: list[str]
    tight_cycle_mean: float
    passed: bool


class VP1Payload(BaseModel):
    lhs: float
    rhs: float
    gap: float
    sampled_max_excess: float
    samples: int
    passed: bool


class PressurePayload(BaseModel):
    kind: str
    gamma: float
    axioms: list[str]
    vp1: Optional[VP1Payload] = None


class EntropyPayload(BaseModel):
    measure: str
    entropy_analytic: float
    entropy_vp2: float
    difference: float
    grad_norm: float
    iterations: int
    boundary: bool
    passed: bool


class FrDualityPayload(BaseModel):
    kind: Literal["fr_duality"] = "fr_duality"
    primal: float
    dual: float
    gap: float
    qualified: bool
    weak_duality: bool
    tol: float
    primal_argmin: list[float]
    dual_argmax: list[float]
    passed: bool


class BiconjugatePayload(BaseModel):
    kind: Literal["biconjugate"] = "biconjugate"
    max_deviation: float
    below: bool
    convex: bool
    equal: bool
    idempotence_gap: float
    exact: bool
    tol: float
    biconjugate: list  # nested like the input values; +inf encoded as "+inf"


class BilinearPayload(BaseModel):
    kind: Literal["bilinear"] = "bilinear"
    sup_inf: float
    inf_sup: float
    gap: float
    regime: str
    mu: list[float]
    xi_weights: list[float]
    passed: bool


class AxiomOutcomeModel(BaseModel):
    axiom: str
    sample: int
    excess: float
    detail: str


class AxiomsPayload(BaseModel):
    kind: str
    samples: int
    depth: int
    tol: float
    checked: list[str]
    passed: bool
    failures: list[AxiomOutcomeModel]


class MinimaxPayload(BaseModel):
    shape: list[int]
    inf_of_row_sups: float
    sup_of_col_infs: float
    holds: bool


# ─────────────────────────────────────────────────────────────────────────────
# FENCHEL INSTANCES
# ─────────────────────────────────────────────────────────────────────────────

class FrDualityInstance(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["fr_duality"]
    f: GridFunctionDocument
    g: GridFunctionDocument
    dual_grid: Optional[Union[list[float], list[list[float]]]] = None


class BiconjugateInstance(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["biconjugate"]
    f: GridFunctionDocument


class BilinearInstance(GameDocument):
    kind: Literal["bilinear"]


FenchelInstance = Annotated[
    Union[FrDualityInstance, BiconjugateInstance, BilinearInstance],
    Field(discriminator="kind"),
]


__all__ = [
    "IdentityCheck",
    "CommandResult",
    "IdentityModel",
    "AlphaPayload",
    "HorizonRowModel",
    "HorizonsPayload",
    "PointPayload",
    "ThreePointPayload",
    "SubactionPayload",
    "VP1Payload",
    "PressurePayload",
    "EntropyPayload",
    "FrDualityPayload",
    "BiconjugatePayload",
    "BilinearPayload",
    "AxiomOutcomeModel",
    "AxiomsPayload",
    "MinimaxPayload",
    "FrDualityInstance",
    "BiconjugateInstance",
    "BilinearInstance",
    "FenchelInstance",
]
