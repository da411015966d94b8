"""
Axiom checks and both halves of the variational principle

    Gamma(phi) = sup_mu ( h(mu) + <phi, mu> )          (sup over Markov measures)
    h(mu)      = inf_phi ( Gamma(phi) - <phi, mu> )    (inf over edge potentials)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import optimize

from ergomax.core.errors import ConvergenceError, DegenerateInputError, DomainViolationError

from .base import PotentialVector, PressureAxiom, PressureEvaluation, PressureKind
from .markov import MarkovMeasure, edge_occupation, markov_entropy, pairing, random_markov_measure
from .spectral import gibbs_state

logger = logging.getLogger("ergomax.pressure")

DEFAULT_LAMBDAS = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)
TRANSLATIONS = (-1.5, 0.7, 5.0)
VP2_CAP = 50.0
VP2_STEP = 1.0
VP2_PRECONDITION_FLOOR = 1e-3


# ─────────────────────────────────────────────────────────────────────────────
# AXIOMS
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class AxiomOutcome:
    axiom: PressureAxiom
    sample: int
    passed: bool
    excess: float  # how far the inequality / identity is off; <= tol when passed
    detail: str = ""


@dataclass
class AxiomReport:
    kind: str
    tol: float
    outcomes: list[AxiomOutcome] = field(default_factory=list)

    @property
    def failures(self) -> list[AxiomOutcome]:
        return [o for o in self.outcomes if not o.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def checked(self) -> list[str]:
        return sorted({o.axiom.value for o in self.outcomes})

    def record(self, axiom: PressureAxiom, sample: int, excess: float, detail: str = "") -> None:
        self.outcomes.append(AxiomOutcome(axiom, sample, excess <= self.tol, float(excess), detail))


def _same_depth(gamma: PressureEvaluation, phi: PotentialVector, psi: PotentialVector):
    if phi.depth == psi.depth:
        return phi, psi
    return phi.lift(gamma.graph), psi.lift(gamma.graph)


def axiom_check(
    gamma: PressureEvaluation,
    samples: Sequence[tuple[PotentialVector, PotentialVector]],
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    tol: float = 1e-9,
    seed: int = 0,
) -> AxiomReport:
    """
    Check C1-C3 and the sub-Lipschitz bound on every pair, and C4 where the
    instance claims it. Failures are reported, never raised.
    """
    if len(samples) < 2:
        raise DegenerateInputError("axiom_check needs at least two sample pairs")

    report = AxiomReport(kind=gamma.kind.value, tol=tol)
    rng = np.random.default_rng(seed)
    graph = gamma.graph

    for i, (phi, psi) in enumerate(samples):
        phi, psi = _same_depth(gamma, phi, psi)
        g_phi, g_psi = gamma(phi), gamma(psi)

        low = phi.minimum(psi)
        report.record(PressureAxiom.MONOTONICITY, i, gamma(low) - g_psi, "min(phi, psi) <= psi")
        report.record(PressureAxiom.MONOTONICITY, i, g_phi - gamma(phi.maximum(psi)), "phi <= max(phi, psi)")

        for c in TRANSLATIONS:
            report.record(PressureAxiom.TRANSLATION, i, abs(gamma(phi + c) - g_phi - c), f"c={c}")

        for lam in lambdas:
            mixed = lam * phi + (1.0 - lam) * psi
            excess = gamma(mixed) - (lam * g_phi + (1.0 - lam) * g_psi)
            report.record(PressureAxiom.CONVEXITY, i, excess, f"lambda={lam}")

        report.record(PressureAxiom.LIPSCHITZ, i, (g_phi - g_psi) - (phi - psi).max(), "")

        if PressureAxiom.COHOMOLOGY in gamma.axioms:
            vertex_fn = rng.uniform(-1.0, 1.0, graph.size)
            cob = np.array([vertex_fn[v] - vertex_fn[u] for u, v in graph.edges])
            base = phi.lift(graph)
            for sign in (1.0, -1.0):
                shifted = PotentialVector(2, base.values + sign * cob)
                report.record(PressureAxiom.COHOMOLOGY, i, abs(gamma(shifted) - g_phi), f"sign={sign:+.0f}")

    if report.failures:
        logger.info("axiom check on %s: %d failures", report.kind, len(report.failures))
    return report


def random_potential_pairs(
    gamma: PressureEvaluation,
    count: int,
    seed: int = 0,
    depth: int = 1,
    scale: float = 1.0,
) -> list[tuple[PotentialVector, PotentialVector]]:
    rng = np.random.default_rng(seed)
    size = gamma.graph.size if depth == 1 else len(gamma.graph.edges)
    return [
        (
            PotentialVector(depth, rng.uniform(-scale, scale, size)),
            PotentialVector(depth, rng.uniform(-scale, scale, size)),
        )
        for _ in range(count)
    ]


# ─────────────────────────────────────────────────────────────────────────────
# VARIATIONAL PRINCIPLE
# ─────────────────────────────────────────────────────────────────────────────

def _require_spectral(gamma: PressureEvaluation) -> None:
    if gamma.kind is not PressureKind.SPECTRAL:
        raise DomainViolationError(f"Needs the spectral pressure, got {gamma.kind.value}")


@dataclass(frozen=True)
class VP1Report:
    lhs: float
    rhs: float
    gap: float
    sampled_max_excess: float  # max over random measures of rhs' - lhs
    samples: int

    def passed(self, gap_tol: float = 1e-8, sample_tol: float = 1e-9) -> bool:
        return self.gap <= gap_tol and self.sampled_max_excess <= sample_tol


def vp1_check(
    gamma: PressureEvaluation,
    phi: Optional[PotentialVector] = None,
    samples: int = 20,
    seed: int = 0,
) -> VP1Report:
    """Gamma(phi) against h(Gibbs) + <phi, Gibbs>, and against random Markov measures."""
    _require_spectral(gamma)
    graph = gamma.graph
    phi = phi if phi is not None else gamma.system_potential()

    lhs = gamma(phi)
    state = gibbs_state(graph, phi, gamma.tol)
    rhs = markov_entropy(state.chain) + pairing(graph, phi, state.chain)

    rng = np.random.default_rng(seed)
    excess = -np.inf
    for _ in range(samples):
        mu = random_markov_measure(graph, rng)
        excess = max(excess, markov_entropy(mu) + pairing(graph, phi, mu) - lhs)

    return VP1Report(lhs=lhs, rhs=rhs, gap=abs(lhs - rhs), sampled_max_excess=float(excess), samples=samples)


@dataclass(frozen=True)
class VP2Result:
    value: float
    grad_norm: float
    iterations: int
    boundary: bool  # some edge potential sits on the +-cap


def _projected_grad_norm(phi: np.ndarray, grad: np.ndarray, cap: float) -> float:
    projected = grad.copy()
    projected[(phi >= cap) & (grad < 0)] = 0.0
    projected[(phi <= -cap) & (grad > 0)] = 0.0
    return float(np.abs(projected).max()) if projected.size else 0.0


def entropy_via_vp2(
    gamma: PressureEvaluation,
    target: MarkovMeasure,
    tol: float = 1e-7,
    max_iter: int = 20_000,
    cap: float = VP2_CAP,
) -> VP2Result:
    """
    Minimise g(phi) = Gamma(phi) - <phi, nu_target> over edge potentials.

    grad g = nu_Gibbs(phi) - nu_target. The box-constrained quasi-Newton
    solver (L-BFGS-B on [-cap, cap]) runs first; if its projected gradient is
    still above ``tol`` the remaining budget goes to a halving descent along
    grad / nu_target, which is the Newton step for the diagonal of the Hessian.
    """
    _require_spectral(gamma)
    graph = gamma.graph
    target.validate(graph)
    nu = edge_occupation(graph, target)
    power_tol = gamma.tol
    n_edges = len(graph.edges)

    phi = np.zeros(n_edges)
    state = gibbs_state(graph, PotentialVector(2, phi), power_tol)
    g = state.log_root - float(phi @ nu)
    grad_norm = _projected_grad_norm(phi, state.occupation - nu, cap)
    if grad_norm <= tol:
        return VP2Result(value=g, grad_norm=grad_norm, iterations=0, boundary=False)

    cache = {"state": state}

    def objective(x: np.ndarray) -> tuple[float, np.ndarray]:
        current = gibbs_state(graph, PotentialVector(2, x), power_tol, warm=cache["state"])
        cache["state"] = current
        return current.log_root - float(x @ nu), current.occupation - nu

    result = optimize.minimize(
        objective,
        phi,
        jac=True,
        method="L-BFGS-B",
        bounds=[(-cap, cap)] * n_edges,
        options={"gtol": tol, "ftol": 0.0, "maxiter": max_iter, "maxcor": 20},
    )
    used = int(result.nit)
    phi = np.clip(result.x, -cap, cap)
    state = gibbs_state(graph, PotentialVector(2, phi), power_tol, warm=cache["state"])
    g = state.log_root - float(phi @ nu)
    logger.debug("vp2 quasi-Newton stage: %d steps, status %s (%s)", used, result.status, result.message)

    scale = np.maximum(nu, VP2_PRECONDITION_FLOOR)
    for it in range(used, max_iter + 1):
        grad = state.occupation - nu
        grad_norm = _projected_grad_norm(phi, grad, cap)
        if grad_norm <= tol:
            boundary = bool(np.any(np.abs(phi) >= cap))
            logger.debug("vp2 converged in %d steps (g=%r, boundary=%s)", it, g, boundary)
            return VP2Result(value=g, grad_norm=grad_norm, iterations=it, boundary=boundary)
        if it == max_iter:
            break

        direction = grad / scale
        step = VP2_STEP
        # Perron roots carry relative error ~power_tol, so g is only that accurate
        slack = 10 * power_tol * (1.0 + abs(g))
        while True:
            trial = np.clip(phi - step * direction, -cap, cap)
            trial_state = gibbs_state(graph, PotentialVector(2, trial), power_tol, warm=state)
            g_trial = trial_state.log_root - float(trial @ nu)
            if g_trial <= g + slack:
                break
            step /= 2.0
            if step < 1e-12:
                raise ConvergenceError(
                    "VP2 descent cannot decrease the objective", iterations=it, residual=grad_norm
                )
        phi, g, state = trial, g_trial, trial_state

    raise ConvergenceError(
        f"VP2 descent did not reach gradient norm {tol} in {max_iter} steps",
        iterations=max_iter,
        residual=grad_norm,
    )


def in_A_Gamma(gamma: PressureEvaluation, xi: PotentialVector, tol: float = 1e-9) -> bool:
    """xi belongs to A_Gamma = {xi : Gamma(-xi) <= 0}."""
    return gamma(-xi) <= tol


def entropy_upper_envelope(
    gamma: PressureEvaluation,
    target: MarkovMeasure,
    samples: Iterable[PotentialVector],
) -> float:
    """
    inf over sampled xi = Gamma(phi) - phi (each in A_Gamma) of <xi, target>.
    Upper-bounds h(target) and approaches it as the samples improve.
    """
    graph = gamma.graph
    best = np.inf
    for phi in samples:
        xi = gamma(phi) - phi
        best = min(best, pairing(graph, xi, target))
    if not np.isfinite(best):
        raise DegenerateInputError("entropy_upper_envelope needs at least one sample")
    return float(best)
