"""Proximal alternating linearized minimization over the blocks H, B, Z, Q, C_U."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from tqdm import tqdm

from src.config import AppConfig
from src.errors import ConfigError, NonFiniteIterateError
from src.objective import (
    Block,
    ObjectiveBreakdown,
    grad_B,
    grad_CU,
    grad_H,
    grad_Q,
    grad_Z,
    lipschitz_constant,
    objective_value,
)
from src.problem import ClassWeights, Hyperparameters, Problem
from src.prox import (
    project_nonneg,
    project_simplex_columns,
    prox_nonneg_l1,
)
from src.solve_report import IterationRecord, SolveReport, StopReason
from src.state import State, check_feasible

# Get the dedicated logger for tqdm output
tqdm_logger = logging.getLogger("tqdm_logger")


@dataclass(frozen=True)
class SolverConfig:
    alpha: float = AppConfig.DEFAULT_ALPHA
    stop_tol: float = AppConfig.DEFAULT_STOP_TOL
    max_iters: int = AppConfig.DEFAULT_MAX_ITERS
    monitor_every: int = AppConfig.DEFAULT_MONITOR_EVERY
    backtracking_enabled: bool = AppConfig.DEFAULT_BACKTRACKING
    show_progress: bool = False

    def __post_init__(self):
        if not self.alpha > 1:
            raise ConfigError(f"alpha must be > 1, got {self.alpha}")
        if not self.stop_tol > 0:
            raise ConfigError(f"stop_tol must be positive, got {self.stop_tol}")
        if self.max_iters < 0:
            raise ConfigError(f"max_iters must be >= 0, got {self.max_iters}")
        if self.monitor_every < 1:
            raise ConfigError(f"monitor_every must be >= 1, got {self.monitor_every}")

    @classmethod
    def from_hyperparameters(cls, hyper: Hyperparameters, **overrides) -> "SolverConfig":
        config = cls(alpha=hyper.alpha, stop_tol=hyper.stop_tol, max_iters=hyper.max_iters)
        return replace(config, **overrides) if overrides else config


# State blocks each Lipschitz constant is a function of
LIPSCHITZ_DEPENDENCIES: dict[Block, tuple[str, ...]] = {
    Block.H: (),
    Block.B: ("Z",),
    Block.Z: ("B", "Q", "C"),
    Block.Q: ("Z",),
    Block.CU: (),
}


class LipschitzCache:
    """Block Lipschitz constants, recomputed only when a block they depend on changed."""

    def __init__(self, problem: Problem, weights: ClassWeights):
        self.problem = problem
        self.weights = weights
        self.computed = 0
        self._entries: dict[Block, tuple[tuple[np.ndarray, ...], float]] = {}

    def get(self, state: State, block: Block) -> float:
        inputs = tuple(getattr(state, name) for name in LIPSCHITZ_DEPENDENCIES[block])
        entry = self._entries.get(block)
        if entry is not None and all(
            old is new or np.array_equal(old, new) for old, new in zip(entry[0], inputs)
        ):
            return entry[1]
        value = lipschitz_constant(self.problem, state, block, self.weights)
        self._entries[block] = (inputs, value)
        self.computed += 1
        return value


@dataclass
class _StepInfo:
    lipschitz: dict[str, float] = field(default_factory=dict)
    backtracks: int = 0
    objective: ObjectiveBreakdown | None = None


def _evaluate(problem: Problem, state: State, weights: ClassWeights) -> ObjectiveBreakdown:
    return objective_value(problem, state, weights, check_feasibility=False)


def _update_block(
    problem: Problem,
    state: State,
    weights: ClassWeights,
    config: SolverConfig,
    block: Block,
    lipschitz: float,
    candidate: Callable[[float], State],
    info: _StepInfo,
    iteration: int,
) -> State:
    """One prox-gradient update with step 1 / (alpha L), halved while the objective rises."""
    info.lipschitz[block.value] = lipschitz
    step = 1.0 / (config.alpha * lipschitz)
    updated = candidate(step)
    if not updated.is_finite():
        raise NonFiniteIterateError(block.value, iteration)
    if not config.backtracking_enabled:
        return updated

    before = info.objective if info.objective is not None else _evaluate(problem, state, weights)
    after = _evaluate(problem, updated, weights)
    halvings = 0
    while after.total > before.total + AppConfig.BACKTRACK_SLACK:
        if halvings == AppConfig.BACKTRACK_MAX_HALVINGS:
            tqdm_logger.warning(
                f"Block {block.value} still increases the objective after "
                f"{halvings} halvings at iteration {iteration}; keeping previous value"
            )
            info.objective = before
            return state
        halvings += 1
        info.backtracks += 1
        step *= 0.5
        updated = candidate(step)
        if not updated.is_finite():
            raise NonFiniteIterateError(block.value, iteration)
        after = _evaluate(problem, updated, weights)
    if halvings:
        tqdm_logger.warning(
            f"Backtracking on block {block.value} at iteration {iteration}: "
            f"{halvings} halving(s), L = {lipschitz:.6e}"
        )
    info.objective = after
    return updated


def _palm_step(
    problem: Problem,
    state: State,
    weights: ClassWeights,
    config: SolverConfig,
    cache: LipschitzCache | None = None,
    iteration: int = 0,
) -> tuple[State, _StepInfo]:
    hyper = problem.hyper
    info = _StepInfo()
    unlabeled = problem.unlabeled_indices
    if cache is None:
        cache = LipschitzCache(problem, weights)

    def update_h(s: State) -> Callable[[float], State]:
        gradient = grad_H(problem, s)
        return lambda step: s.with_block(
            "H", prox_nonneg_l1(s.H - step * gradient, hyper.lambda_h * step)
        )

    def update_b(s: State) -> Callable[[float], State]:
        gradient = grad_B(problem, s)
        return lambda step: s.with_block("B", project_nonneg(s.B - step * gradient))

    def update_z(s: State) -> Callable[[float], State]:
        gradient = grad_Z(problem, s, weights)
        return lambda step: s.with_block("Z", project_simplex_columns(s.Z - step * gradient))

    def update_q(s: State) -> Callable[[float], State]:
        gradient = grad_Q(problem, s, weights)
        return lambda step: s.with_block("Q", s.Q - step * gradient)

    def update_cu(s: State) -> Callable[[float], State]:
        gradient = grad_CU(problem, s, weights)

        def candidate(step: float) -> State:
            C = np.array(s.C)
            C[:, unlabeled] = project_simplex_columns(s.C[:, unlabeled] - step * gradient)
            return s.with_block("C", C)

        return candidate

    # Gauss-Seidel sweep in the order H, B, Z, Q, C_U
    state = _update_block(
        problem, state, weights, config, Block.H, cache.get(state, Block.H),
        update_h(state), info, iteration,
    )
    for block, make_candidate in (
        (Block.B, update_b),
        (Block.Z, update_z),
        (Block.Q, update_q),
    ):
        lipschitz = cache.get(state, block)
        state = _update_block(
            problem, state, weights, config, block, lipschitz,
            make_candidate(state), info, iteration,
        )
    if unlabeled.size:
        lipschitz = cache.get(state, Block.CU)
        state = _update_block(
            problem, state, weights, config, Block.CU, lipschitz,
            update_cu(state), info, iteration,
        )
    return state, info


def palm_step(
    problem: Problem, state: State, weights: ClassWeights, config: SolverConfig
) -> State:
    """One PALM sweep: prox-gradient updates of H, B, Z, Q and C_U in that order."""
    new_state, _ = _palm_step(problem, state, weights, config)
    return new_state


def _relative_change(current: float, previous: float) -> float:
    if previous == 0.0:
        return 0.0 if current == 0.0 else math.inf
    return abs(current - previous) / abs(previous)


def solve(
    problem: Problem, initial: State, weights: ClassWeights, config: SolverConfig
) -> tuple[State, SolveReport]:
    """
    Iterate PALM sweeps until the relative objective change drops below
    `config.stop_tol` or `config.max_iters` sweeps have run.

    A non-finite iterate stops the run; the last finite state is returned
    with a report whose stop reason is NON_FINITE.
    """
    start = time.perf_counter()
    state = check_feasible(problem, initial)
    cache = LipschitzCache(problem, weights)

    current = objective_value(problem, state, weights)
    records = [IterationRecord(iteration=0, objective=current)]
    backtracks = 0
    stop_reason = StopReason.MAX_ITERS
    tqdm_logger.info(
        f"PALM ({problem.variant.value}) starting: objective {current.total:.6e}, "
        f"max_iters {config.max_iters}"
    )

    progress = tqdm(
        range(1, config.max_iters + 1),
        desc="PALM",
        unit="it",
        dynamic_ncols=True,
        leave=False,
        disable=not config.show_progress,
    )
    try:
        for iteration in progress:
            try:
                candidate, info = _palm_step(
                    problem, state, weights, config, cache, iteration
                )
            except NonFiniteIterateError as e:
                tqdm_logger.warning(f"Aborting solve: {e}")
                stop_reason = StopReason.NON_FINITE
                break
            state = candidate
            backtracks += info.backtracks

            if iteration % config.monitor_every and iteration != config.max_iters:
                continue
            breakdown = objective_value(problem, state, weights)
            rel_change = _relative_change(breakdown.total, current.total)
            records.append(
                IterationRecord(
                    iteration=iteration,
                    objective=breakdown,
                    rel_change=rel_change,
                    lipschitz=dict(info.lipschitz),
                )
            )
            current = breakdown
            progress.set_postfix(objective=f"{breakdown.total:.4e}", rel=f"{rel_change:.1e}")
            tqdm_logger.debug(
                f"iter {iteration}: objective {breakdown.total:.10e} (rel change {rel_change:.3e})"
            )
            if rel_change < config.stop_tol:
                stop_reason = StopReason.CONVERGED
                break
    finally:
        progress.close()

    report = SolveReport(
        records=tuple(records),
        stop_reason=stop_reason,
        wall_time=time.perf_counter() - start,
        backtracks=backtracks,
    )
    tqdm_logger.info(
        f"PALM stopped ({stop_reason.value}) after {report.iterations} iteration(s): "
        f"objective {report.final_objective.total:.6e}, {backtracks} backtrack(s), "
        f"{cache.computed} Lipschitz evaluation(s), {report.wall_time:.2f}s"
    )
    return state, report
