"""Data model for RDS recruitment data and the network subgraphs around it.

Vertices are integer ids. Sampled vertices are labelled ``1..n`` in the
order they entered the study; unsampled vertices carry labels above ``n``.
Recruitment times are strictly ordered integer ranks (only the order ever
matters); vertices outside the sample have no rank and are treated as
entering at infinity. Trait values are ``0``, ``1``, the reserved token
:data:`OTHER` (compares unequal to everything, itself included), or
``None`` for missing.

All types are immutable after construction and safe to share between
threads; derived views are cached lazily. None of the constructors
validate: invalid recruitment data is data, not an exception, and is
reported by :func:`validate_recruitment_graph`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InconsistentInputError

#: Reserved trait token: a category that matches nothing, itself included.
OTHER = "other"

#: Entry time of vertices that never join the sample.
NEVER = math.inf


def undirected(a: int, b: int) -> tuple[int, int]:
    """Canonical (sorted) form of an undirected edge."""
    return (a, b) if a < b else (b, a)


def traits_match(a, b) -> bool:
    """Trait-agreement indicator. ``OTHER`` agrees with nothing, itself
    included; both arguments must be known (not ``None``)."""
    return a == b and a != OTHER


@dataclass(frozen=True)
class Violation:
    """One violated invariant, reported as data rather than an exception."""

    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


@dataclass(frozen=True)
class RecruitmentGraph:
    """The directed who-recruited-whom forest plus reported degrees and
    recruitment ranks.

    ``edges`` holds directed ``(recruiter, recruitee)`` pairs. ``times``
    maps every sampled vertex (seeds included) to its integer entry rank;
    ``degrees`` maps every sampled vertex to its reported total degree in
    the population network.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    seeds: frozenset[int]
    times: Mapping[int, int]
    degrees: Mapping[int, int]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def undirected_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(undirected(a, b) for a, b in self.edges)

    @cached_property
    def recruit_degree(self) -> dict[int, int]:
        """Per-vertex count of incident recruitment edges (undirected)."""
        deg = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            if a in deg:
                deg[a] += 1
            if b in deg:
                deg[b] += 1
        return deg

    @cached_property
    def recruiter_of(self) -> dict[int, int]:
        """Map recruitee -> recruiter (first in-edge wins on invalid data)."""
        out: dict[int, int] = {}
        for a, b in self.edges:
            out.setdefault(b, a)
        return out

    @cached_property
    def recruits_of(self) -> dict[int, tuple[int, ...]]:
        """Map recruiter -> its recruits in recruitment order."""
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            if a in out:
                out[a].append(b)
        return {
            v: tuple(sorted(js, key=lambda j: self.times.get(j, NEVER)))
            for v, js in out.items()
        }

    def entry_time(self, v: int) -> float:
        """Rank at which ``v`` joined the study; ``NEVER`` if unsampled."""
        return self.times.get(v, NEVER)


@dataclass(frozen=True)
class StudyData:
    """Everything an RDS study observes: the recruitment graph with degrees
    and ranks, plus the sampled vertices' traits."""

    graph: RecruitmentGraph
    traits: Mapping[int, object]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def n_seeds(self) -> int:
        return len(self.graph.seeds)

    @cached_property
    def residual_degree(self) -> dict[int, int]:
        """Pendant-edge count per sampled vertex: reported degree minus
        recruitment degree."""
        rdeg = self.graph.recruit_degree
        return {v: self.graph.degrees[v] - rdeg[v] for v in self.graph.vertices}


@dataclass(frozen=True)
class PopulationGraph:
    """A simple undirected social network with one trait per vertex."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    traits: Mapping[int, object]

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class AugmentedSubgraph:
    """A recruitment-induced subgraph augmented with the unsampled
    neighbors of sampled vertices.

    ``edges`` is the full undirected edge set (a superset of the
    undirected recruitment edges); it never joins two unsampled vertices.
    ``traits`` covers every vertex, sampled and unsampled.
    """

    sampled: RecruitmentGraph
    unsampled: frozenset[int]
    edges: frozenset[tuple[int, int]]
    traits: Mapping[int, object]

    @property
    def n_sampled(self) -> int:
        return self.sampled.n

    @cached_property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(self.sampled.vertices) + tuple(sorted(self.unsampled))

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertex_ids}
        for a, b in self.edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency.get(v, ()))

    def replace_trait(self, v: int, value) -> "AugmentedSubgraph":
        traits = dict(self.traits)
        traits[v] = value
        return replace(self, traits=traits)

    def drop_vertices(self, drop: Iterable[int]) -> "AugmentedSubgraph":
        """Copy with the given (unsampled) vertices and their incident
        edges removed."""
        drop = set(drop)
        return replace(
            self,
            unsampled=frozenset(self.unsampled - drop),
            edges=frozenset(e for e in self.edges if not (e[0] in drop or e[1] in drop)),
            traits={v: z for v, z in self.traits.items() if v not in drop},
        )


def validate_recruitment_graph(g: RecruitmentGraph) -> list[Violation]:
    """Check every recruitment-data invariant and return all violations.

    An empty list means the data is consistent: sampled labels are
    ``1..n``, the undirected recruitment edges form a forest, each
    non-seed has exactly one recruiter and seeds none, nobody is recruited
    twice, entry ranks strictly increase with label, seeds enter before
    all non-seeds, and no vertex has more recruitment edges than its
    reported degree.
    """
    out: list[Violation] = []
    n = g.n
    vset = g.vertex_set

    if len(vset) != n:
        out.append(Violation("labels", "duplicate vertex ids"))
    if sorted(vset) != list(range(1, n + 1)):
        out.append(Violation("labels", f"sampled ids must be 1..{n} in recruitment order"))

    for v in g.vertices:
        if v not in g.times:
            out.append(Violation("missing-time", f"vertex {v} has no entry rank"))
        if v not in g.degrees:
            out.append(Violation("missing-degree", f"vertex {v} has no reported degree"))
        elif g.degrees[v] < 0:
            out.append(Violation("negative-degree", f"vertex {v} reports degree {g.degrees[v]}"))

    seen_pairs: set[tuple[int, int]] = set()
    indeg: dict[int, int] = {v: 0 for v in g.vertices}
    for a, b in g.edges:
        if a not in vset or b not in vset:
            out.append(Violation("unknown-endpoint", f"edge ({a}, {b}) leaves the sample"))
            continue
        if a == b:
            out.append(Violation("self-recruitment", f"vertex {a} recruits itself"))
            continue
        pair = undirected(a, b)
        if pair in seen_pairs:
            out.append(Violation("duplicate-edge", f"recruitment edge {pair} repeated"))
        seen_pairs.add(pair)
        indeg[b] += 1

    for v in g.vertices:
        if v in g.seeds:
            if indeg[v] > 0:
                out.append(Violation("seed-recruited", f"seed {v} has a recruiter"))
        elif indeg[v] == 0:
            out.append(Violation("orphan", f"non-seed {v} has no recruiter"))
        elif indeg[v] > 1:
            out.append(Violation("repeat-recruitment", f"vertex {v} recruited {indeg[v]} times"))

    # Forest check on the undirected edge set (union-find).
    parent = {v: v for v in g.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in seen_pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            out.append(Violation("not-forest", f"edge {undirected(a, b)} closes a cycle"))
        else:
            parent[ra] = rb

    # Entry ranks: strict total order aligned with labels; seeds first.
    ranked = [v for v in g.vertices if v in g.times]
    times = [g.times[v] for v in sorted(ranked)]
    if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
        out.append(Violation("time-order", "entry ranks must strictly increase with label"))
    seed_times = [g.times[v] for v in g.seeds if v in g.times]
    nonseed_times = [g.times[v] for v in ranked if v not in g.seeds]
    if seed_times and nonseed_times and max(seed_times) >= min(nonseed_times):
        out.append(Violation("late-seed", "every seed must enter before the first recruit"))
    for j, r in g.recruiter_of.items():
        if j in g.times and r in g.times and g.times[r] >= g.times[j]:
            out.append(Violation("time-order", f"recruiter {r} does not precede recruit {j}"))

    rdeg = g.recruit_degree
    for v in g.vertices:
        if v in g.degrees and g.degrees[v] >= 0 and rdeg[v] > g.degrees[v]:
            out.append(
                Violation(
                    "degree-deficit",
                    f"vertex {v} reports degree {g.degrees[v]} but has {rdeg[v]} recruitment edges",
                )
            )
    return out


def extract_augmented_subgraph(pop: PopulationGraph, g: RecruitmentGraph) -> AugmentedSubgraph:
    """Project a known population graph onto the sample: keep every edge
    with at least one sampled endpoint, the unsampled endpoints of those
    edges, and all their traits. Edges between two unsampled vertices are
    excluded by construction.
    """
    vset = g.vertex_set
    missing = vset - set(pop.vertices)
    if missing:
        raise InconsistentInputError(f"sampled vertices {sorted(missing)} not in population graph")
    absent = g.undirected_edges - pop.edges
    if absent:
        raise InconsistentInputError(f"recruitment edges {sorted(absent)} not in population graph")

    edges = set()
    unsampled = set()
    for a, b in pop.edges:
        a_in, b_in = a in vset, b in vset
        if not (a_in or b_in):
            continue
        edges.add(undirected(a, b))
        if not a_in:
            unsampled.add(a)
        if not b_in:
            unsampled.add(b)
    traits = {v: pop.traits[v] for v in vset | unsampled}
    return AugmentedSubgraph(
        sampled=g,
        unsampled=frozenset(unsampled),
        edges=frozenset(edges),
        traits=traits,
    )


def susceptible_set(g_su: AugmentedSubgraph, i: int, t: float) -> set[int]:
    """Neighbors of ``i`` still available for recruitment just before
    time ``t``.

    A neighbor is susceptible when it has not entered the study strictly
    before ``t``: unsampled neighbors always qualify, and by
    left-continuity a vertex recruited exactly at ``t`` still counts.
    ``i`` must be sampled (and in the study before ``t``).
    """
    if i not in g_su.sampled.vertex_set:
        raise ValueError(f"vertex {i} is not sampled")
    times = g_su.sampled.times
    return {k for k in g_su.neighbors(i) if times.get(k, NEVER) >= t}
