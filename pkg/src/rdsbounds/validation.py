"""Input validation helpers, in the spirit of ``sklearn.utils.validation``.

``check_*`` functions raise :class:`StudyValidationError` carrying every
violation; they are the gate between parsed files (or user-built objects)
and the computational core.
"""

from __future__ import annotations

from .compatibility import is_compatible
from .errors import StudyValidationError
from .graphs import OTHER, AugmentedSubgraph, StudyData, Violation, validate_recruitment_graph

_TRAIT_VALUES = (0, 1, OTHER)


def check_study_data(study: StudyData) -> StudyData:
    """Validate observed RDS data: the recruitment-graph invariants plus
    known binary-or-other traits for every sampled vertex."""
    violations = validate_recruitment_graph(study.graph)
    for v in study.graph.vertices:
        z = study.traits.get(v)
        if z is None:
            violations.append(Violation("missing-trait", f"sampled vertex {v} has no trait"))
        elif z not in _TRAIT_VALUES:
            violations.append(Violation("bad-trait", f"sampled vertex {v} has trait {z!r}"))
    if violations:
        raise StudyValidationError(violations)
    return study


def check_compatible(candidate: AugmentedSubgraph, observed: StudyData) -> AugmentedSubgraph:
    """Validate that a known subgraph is compatible with the observed data."""
    violations = is_compatible(candidate, observed)
    if violations:
        raise StudyValidationError(violations, "subgraph incompatible with observed data")
    return candidate


def drop_missing_traits(g_su: AugmentedSubgraph) -> tuple[AugmentedSubgraph, int, int]:
    """Remove unsampled vertices with missing traits and their incident
    edges; returns (reduced subgraph, dropped vertices, dropped edges).

    Sampled vertices may not have missing traits; that is a validation
    error, not something to silently drop.
    """
    bad_sampled = [v for v in g_su.sampled.vertices if g_su.traits.get(v) is None]
    if bad_sampled:
        raise StudyValidationError(
            [Violation("missing-trait", f"sampled vertex {v} has no trait") for v in bad_sampled]
        )
    drop = {u for u in g_su.unsampled if g_su.traits.get(u) is None}
    if not drop:
        return g_su, 0, 0
    reduced = g_su.drop_vertices(drop)
    return reduced, len(drop), len(g_su.edges) - len(reduced.edges)
