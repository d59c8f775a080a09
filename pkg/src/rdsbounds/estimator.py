"""Scikit-learn style front end for interval identification.

``IdentificationBounds`` follows the estimator protocol: hyperparameters
are constructor arguments stored verbatim, ``fit`` validates the data and
computes fitted attributes with trailing underscores, and
``get_params``/``set_params``/``clone`` come from ``BaseEstimator``.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator

from .annealing import IdentifyConfig, identify
from .compatibility import EnumerationCaps
from .graphs import StudyData
from .validation import check_study_data


class IdentificationBounds(BaseEstimator):
    """Identification intervals for subgraph homophily and preferential
    recruitment, fitted to observed RDS study data.

    Parameters
    ----------
    budget : steps per annealing chain.
    epsilon : objective/schedule constant; every objective is bounded by
        ``1/epsilon``.
    kernel_mix : probability that a step proposes a trait flip rather
        than an edge rewire.
    chains : independent chains per objective (multi-start).
    schedule : "logarithmic" (convergence-backed default) or "geometric"
        (diagnostic).
    exact : replace annealing with exhaustive enumeration; refuses when
        the instance exceeds the enumeration caps.
    max_enum_n, max_enum_residual : enumeration caps.
    stall_window : flag chains whose best value stopped improving for
        this many steps (diagnostic only).
    random_state : root seed for all chains.

    Attributes
    ----------
    interval_h_, interval_p_ : (low, high) identification intervals.
    rectangle_ : Cartesian product of the two intervals.
    witnesses_ : compatible subgraphs attaining each endpoint.
    diagnostics_ : per-objective convergence diagnostics.
    result_ : the full :class:`~rdsbounds.annealing.IdentificationResult`.
    """

    def __init__(
        self,
        budget: int = 10_000,
        epsilon: float = 0.05,
        kernel_mix: float = 0.5,
        chains: int = 4,
        schedule: str = "logarithmic",
        exact: bool = False,
        max_enum_n: int = 8,
        max_enum_residual: int = 8,
        stall_window: int | None = None,
        record_traces: bool = True,
        random_state: int | None = None,
    ):
        self.budget = budget
        self.epsilon = epsilon
        self.kernel_mix = kernel_mix
        self.chains = chains
        self.schedule = schedule
        self.exact = exact
        self.max_enum_n = max_enum_n
        self.max_enum_residual = max_enum_residual
        self.stall_window = stall_window
        self.record_traces = record_traces
        self.random_state = random_state

    def _config(self) -> IdentifyConfig:
        return IdentifyConfig(
            budget=self.budget,
            epsilon=self.epsilon,
            kernel_mix=self.kernel_mix,
            chains=self.chains,
            schedule_kind=self.schedule,
            exact=self.exact,
            caps=EnumerationCaps(max_n=self.max_enum_n, max_residual=self.max_enum_residual),
            stall_window=self.stall_window,
            record_traces=self.record_traces,
            seed=self.random_state,
        )

    def fit(self, X: StudyData, y=None):
        """Compute identification intervals for the observed study data."""
        study = check_study_data(X)
        result = identify(study, self._config())
        self.result_ = result
        self.interval_h_ = result.interval_h
        self.interval_p_ = result.interval_p
        self.rectangle_ = result.rectangle
        self.witnesses_ = result.witnesses
        self.diagnostics_ = result.diagnostics
        self.method_ = result.method
        return self
