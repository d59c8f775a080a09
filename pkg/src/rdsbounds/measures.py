"""Point computation of subgraph homophily and preferential recruitment.

Both quantities are exact functions of a known augmented subgraph and its
traits. Homophily is the Pearson correlation between edge presence and
trait agreement over every potential edge of the subgraph: each unordered
sampled-sampled pair once, plus each sampled-unsampled pair. Preferential
recruitment averages, over non-seed recruits, the deviation of the
same-trait recruitment indicator from its expectation under uniform
choice among the recruiter's susceptible neighbors.

Missing traits are not handled here: drop those vertices (and their
incident edges) first. See ``validation.drop_missing_traits``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import DegenerateCorrelationError, MissingTraitError, UndefinedEstimandError
from .graphs import NEVER, AugmentedSubgraph, traits_match, susceptible_set, undirected


@dataclass(frozen=True)
class HomophilyValue:
    """Subgraph homophily with the ingredients of its correlation."""

    value: float
    pair_count: int
    mean_adjacency: float
    mean_same: float
    sd_adjacency: float
    sd_same: float


class RecruitTerm(NamedTuple):
    """One non-seed recruitment's contribution to preferential recruitment."""

    recruitee: int
    recruiter: int
    same_trait: int          # Y_j: recruitee shares the recruiter's trait
    same_count: int          # same-trait members of the susceptible set
    susceptible_count: int


@dataclass(frozen=True)
class PrefRecruitValue:
    """Subgraph preferential recruitment with its per-recruitment terms."""

    value: float
    terms: tuple[RecruitTerm, ...]


def same_count(i: int, s: Iterable[int], traits: Mapping[int, object]) -> int:
    """Number of members of ``s`` sharing vertex ``i``'s trait.

    ``i`` must not be in ``s`` and every trait involved must be known.
    """
    zi = traits.get(i)
    if zi is None:
        raise MissingTraitError(f"vertex {i} has a missing trait")
    count = 0
    for k in s:
        if k == i:
            raise ValueError(f"vertex {i} may not be a member of its own comparison set")
        zk = traits.get(k)
        if zk is None:
            raise MissingTraitError(f"vertex {k} has a missing trait")
        if traits_match(zi, zk):
            count += 1
    return count


def _require_known_traits(g_su: AugmentedSubgraph) -> None:
    for v in g_su.vertex_ids:
        if g_su.traits.get(v) is None:
            raise MissingTraitError(
                f"vertex {v} has a missing trait; drop it before computing estimands"
            )


def homophily(g_su: AugmentedSubgraph) -> HomophilyValue:
    """Pearson correlation between adjacency and trait agreement over all
    potential edges of the augmented subgraph.

    Raises :class:`DegenerateCorrelationError` when either indicator is
    constant over the potential edges, and
    :class:`UndefinedEstimandError` when fewer than two vertices are
    sampled.
    """
    _require_known_traits(g_su)
    sampled = g_su.sampled.vertices
    n_r = len(sampled)
    if n_r < 2:
        raise UndefinedEstimandError("homophily needs at least two sampled vertices")
    unsampled = sorted(g_su.unsampled)
    n_u = len(unsampled)
    pair_count = n_r * (n_r - 1) // 2 + n_r * n_u

    edges = g_su.edges
    traits = g_su.traits

    def pairs():
        for a_idx in range(n_r):
            i = sampled[a_idx]
            for b_idx in range(a_idx + 1, n_r):
                yield i, sampled[b_idx]
            for u in unsampled:
                yield i, u

    sum_a = 0
    sum_i = 0
    for i, j in pairs():
        sum_a += 1 if undirected(i, j) in edges else 0
        sum_i += 1 if traits_match(traits[i], traits[j]) else 0

    mean_a = sum_a / pair_count
    mean_i = sum_i / pair_count
    if sum_a in (0, pair_count) or sum_i in (0, pair_count):
        raise DegenerateCorrelationError(
            "adjacency or trait-agreement indicator is constant over potential edges"
        )

    num = 0.0
    ss_a = 0.0
    ss_i = 0.0
    for i, j in pairs():
        a = 1.0 if undirected(i, j) in edges else 0.0
        z = 1.0 if traits_match(traits[i], traits[j]) else 0.0
        num += (a - mean_a) * (z - mean_i)
        ss_a += (a - mean_a) ** 2
        ss_i += (z - mean_i) ** 2
    sd_a = math.sqrt(ss_a / pair_count)
    sd_i = math.sqrt(ss_i / pair_count)

    return HomophilyValue(
        value=num / (pair_count * sd_a * sd_i),
        pair_count=pair_count,
        mean_adjacency=mean_a,
        mean_same=mean_i,
        sd_adjacency=sd_a,
        sd_same=sd_i,
    )


def pref_recruitment(g_su: AugmentedSubgraph) -> PrefRecruitValue:
    """Average deviation of same-trait recruitment from its proportional
    expectation, over non-seed recruits.

    Raises :class:`UndefinedEstimandError` when the sample contains only
    seeds.
    """
    g = g_su.sampled
    recruits = [v for v in g.vertices if v not in g.seeds]
    if not recruits:
        raise UndefinedEstimandError("preferential recruitment needs at least one non-seed recruit")

    traits = g_su.traits
    terms = []
    total = 0.0
    for j in recruits:
        r = g.recruiter_of[j]
        s = susceptible_set(g_su, r, g.times[j])
        same = same_count(r, s, traits)
        zr, zj = traits.get(r), traits.get(j)
        if zr is None or zj is None:
            raise MissingTraitError(f"recruitment ({r}, {j}) involves a missing trait")
        y = 1 if traits_match(zr, zj) else 0
        total += y - same / len(s)
        terms.append(RecruitTerm(j, r, y, same, len(s)))
    return PrefRecruitValue(value=total / len(recruits), terms=tuple(terms))
