"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes; see ``cli.EXIT_CODES``.
"""

from __future__ import annotations


class RdsBoundsError(Exception):
    """Base class for errors raised by this package."""


class StudyParseError(RdsBoundsError):
    """A study file is structurally malformed (bad header, bad token, ...)."""


class StudyValidationError(RdsBoundsError):
    """Parsed data violates the recruitment-data or compatibility contract."""

    def __init__(self, violations, message: str = "invalid study data"):
        self.violations = list(violations)
        detail = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{message}: {detail}" if detail else message)


class InconsistentInputError(RdsBoundsError):
    """Two inputs that must agree (e.g. population graph vs. recruitment
    graph) do not."""


class UndefinedEstimandError(RdsBoundsError):
    """The requested quantity does not exist for this input (e.g.
    preferential recruitment on a seeds-only sample)."""


class DegenerateCorrelationError(UndefinedEstimandError):
    """Homophily is undefined because the adjacency or trait-agreement
    indicator is constant over all potential edges."""


class MissingTraitError(RdsBoundsError):
    """A computation reached a vertex whose trait is missing; callers must
    drop such vertices beforehand."""


class CapExceededError(RdsBoundsError):
    """Exhaustive enumeration was refused because the instance exceeds the
    configured size caps."""
