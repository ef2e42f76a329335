"""Objective terms, partial gradients and block Lipschitz constants."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from src.cross_entropy_loss import CrossEntropyLoss
from src.problem import ClassWeights, Problem, Variant
from src.protocols import ClassificationLoss
from src.quadratic_loss import QuadraticLoss
from src.state import State, check_feasible
from src.utils import SPECTRAL_NORM_FLOOR, spectral_norm
from src.vtv import vtv_grad, vtv_lipschitz, vtv_value


class Block(enum.Enum):
    H = "H"
    B = "B"
    Z = "Z"
    Q = "Q"
    CU = "CU"


_LOSSES: dict[Variant, type[ClassificationLoss]] = {
    Variant.QUADRATIC: QuadraticLoss,
    Variant.CROSS_ENTROPY: CrossEntropyLoss,
}


def make_loss(variant: Variant) -> ClassificationLoss:
    try:
        return _LOSSES[variant]()
    except KeyError:
        raise ValueError(f"Unsupported variant: {variant}") from None


@dataclass(frozen=True)
class ObjectiveBreakdown:
    term_repr: float
    term_l1: float
    term_clust: float
    term_classif: float
    term_weight_decay: float
    term_vtv: float
    total: float

    @classmethod
    def from_terms(cls, **terms: float) -> "ObjectiveBreakdown":
        return cls(total=float(sum(terms.values())), **terms)

    @property
    def smooth(self) -> float:
        """Everything except the nonsmooth l1 penalty."""
        return self.total - self.term_l1

    @property
    def term_penalties(self) -> float:
        return self.term_l1 + self.term_weight_decay


def objective_value(
    problem: Problem,
    state: State,
    weights: ClassWeights,
    check_feasibility: bool = True,
) -> ObjectiveBreakdown:
    """Evaluate every term of the selected variant's objective."""
    if check_feasibility:
        check_feasible(problem, state)
    hyper = problem.hyper
    loss = make_loss(problem.variant)
    d2 = weights.d_squared
    reconstruction = problem.observations - problem.dictionary @ state.H
    coupling = state.H - state.B @ state.Z
    return ObjectiveBreakdown.from_terms(
        term_repr=0.5 * hyper.lambda0 * float(np.sum(reconstruction**2)),
        term_l1=hyper.lambda_h * float(np.sum(np.abs(state.H))),
        term_clust=0.5 * hyper.lambda2 * float(np.sum(coupling**2)),
        term_classif=loss.value(state, d2, hyper),
        term_weight_decay=loss.weight_decay(state, hyper),
        term_vtv=hyper.lambda_c * vtv_value(state.C, problem.grid, hyper.epsilon_tv),
    )


def smooth_objective(problem: Problem, state: State, weights: ClassWeights) -> float:
    """Smooth coupling part of the objective, evaluated without feasibility checks."""
    return objective_value(problem, state, weights, check_feasibility=False).smooth


def grad_H(problem: Problem, state: State) -> np.ndarray:
    hyper = problem.hyper
    W = problem.dictionary
    return hyper.lambda0 * (W.T @ (W @ state.H - problem.observations)) + hyper.lambda2 * (
        state.H - state.B @ state.Z
    )


def grad_B(problem: Problem, state: State) -> np.ndarray:
    return problem.hyper.lambda2 * ((state.B @ state.Z - state.H) @ state.Z.T)


def grad_Z(problem: Problem, state: State, weights: ClassWeights) -> np.ndarray:
    hyper = problem.hyper
    coupling = hyper.lambda2 * (state.B.T @ (state.B @ state.Z - state.H))
    loss = make_loss(problem.variant)
    return coupling + loss.grad_z(state, weights.d_squared, hyper)


def grad_Q(problem: Problem, state: State, weights: ClassWeights) -> np.ndarray:
    loss = make_loss(problem.variant)
    return loss.grad_q(state, weights.d_squared, problem.hyper)


def grad_CU(problem: Problem, state: State, weights: ClassWeights) -> np.ndarray:
    """Gradient with respect to the unlabeled columns of C only."""
    hyper = problem.hyper
    loss = make_loss(problem.variant)
    full = loss.grad_c(state, weights.d_squared, hyper)
    if hyper.lambda_c > 0:
        full = full + hyper.lambda_c * vtv_grad(state.C, problem.grid, hyper.epsilon_tv)
    return full[:, problem.unlabeled_indices]


def lipschitz_constant(
    problem: Problem, state: State, block: Block, weights: ClassWeights
) -> float:
    """Lipschitz constant of the block's partial gradient, floored at 1e-12."""
    hyper = problem.hyper
    loss = make_loss(problem.variant)
    d2 = weights.d_squared
    match block:
        case Block.H:
            W = problem.dictionary
            value = spectral_norm(
                hyper.lambda0 * (W.T @ W) + hyper.lambda2 * np.eye(W.shape[1])
            )
        case Block.B:
            value = hyper.lambda2 * spectral_norm(state.Z @ state.Z.T)
        case Block.Z:
            value = loss.lipschitz_z(state, d2, hyper)
        case Block.Q:
            value = loss.lipschitz_q(state, d2, hyper)
        case Block.CU:
            value = loss.lipschitz_c(d2[problem.unlabeled_indices], hyper)
            if hyper.lambda_c > 0:
                value += hyper.lambda_c * vtv_lipschitz(problem.grid, hyper.epsilon_tv)
        case _:
            raise ValueError(f"Unknown block: {block}")
    return max(float(value), SPECTRAL_NORM_FLOOR)


def predict_classes(state: State) -> np.ndarray:
    """Most probable class per pixel (0-based); ties go to the smallest index."""
    return np.argmax(state.C, axis=0)
