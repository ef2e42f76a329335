"""Convergence report produced by the PALM solver."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from src.objective import ObjectiveBreakdown

TRACE_COLUMNS = (
    "iteration",
    "total",
    "repr",
    "l1",
    "clust",
    "classif",
    "weight_decay",
    "vtv",
    "rel_change",
)


class StopReason(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    NON_FINITE = "non_finite"


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    objective: ObjectiveBreakdown
    rel_change: float = math.nan
    lipschitz: dict[str, float] = field(default_factory=dict)

    @property
    def objective_total(self) -> float:
        return self.objective.total

    @property
    def term_repr(self) -> float:
        return self.objective.term_repr

    @property
    def term_clust(self) -> float:
        return self.objective.term_clust

    @property
    def term_classif(self) -> float:
        return self.objective.term_classif

    @property
    def term_vtv(self) -> float:
        return self.objective.term_vtv

    @property
    def term_penalties(self) -> float:
        return self.objective.term_penalties

    def as_row(self) -> list[str]:
        values = [
            self.objective.total,
            self.objective.term_repr,
            self.objective.term_l1,
            self.objective.term_clust,
            self.objective.term_classif,
            self.objective.term_weight_decay,
            self.objective.term_vtv,
            self.rel_change,
        ]
        return [str(self.iteration)] + [repr(float(v)) for v in values]


@dataclass(frozen=True)
class SolveReport:
    records: tuple[IterationRecord, ...]
    stop_reason: StopReason
    wall_time: float
    backtracks: int = 0

    @property
    def flagged(self) -> bool:
        """True when the solver aborted on a non-finite iterate."""
        return self.stop_reason is StopReason.NON_FINITE

    @property
    def iterations(self) -> int:
        return self.records[-1].iteration if self.records else 0

    @property
    def objective_trace(self) -> list[float]:
        return [record.objective_total for record in self.records]

    @property
    def final_objective(self) -> ObjectiveBreakdown:
        return self.records[-1].objective

    def to_csv_rows(self) -> list[list[str]]:
        return [list(TRACE_COLUMNS)] + [record.as_row() for record in self.records]
