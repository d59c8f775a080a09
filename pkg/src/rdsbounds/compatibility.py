"""The space of augmented subgraphs compatible with observed RDS data.

A candidate ``(G_SU, Z_SU)`` is compatible with observed data when it
keeps every sampled vertex, every recruitment edge, and every sampled
trait; attaches each unsampled vertex to at least one sampled vertex; and
gives every sampled vertex exactly its reported degree.

This module provides the membership test, a random initializer over the
space, and an exhaustive enumerator for small instances. The enumerator
yields one representative per equivalence class, where two compatible
subgraphs are equivalent when they share the sampled-sampled edge set and
the multiset of (sampled-neighborhood, trait) pairs over unsampled
vertices; both estimands are constant on such classes, so extrema taken
over representatives are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import CapExceededError
from .graphs import AugmentedSubgraph, StudyData, Violation, undirected
from .rng import as_rng


@dataclass(frozen=True)
class EnumerationCaps:
    """Hard instance-size limits for exhaustive enumeration."""

    max_n: int = 8
    max_residual: int = 8


@dataclass(frozen=True)
class CompatibleSpace:
    """Implicit description of the compatible set for one observed study."""

    observed: StudyData

    @property
    def residual_degree(self) -> dict[int, int]:
        return self.observed.residual_degree

    @property
    def total_residual(self) -> int:
        return sum(self.residual_degree.values())

    @property
    def saturated(self) -> bool:
        """True when reported degrees leave no pendant edges, so the
        recruitment tree itself is the only compatible subgraph."""
        return self.total_residual == 0

    def within_caps(self, caps: EnumerationCaps) -> bool:
        return self.observed.n <= caps.max_n and self.total_residual <= caps.max_residual


def is_compatible(candidate: AugmentedSubgraph, observed: StudyData) -> list[Violation]:
    """Check the five compatibility conditions plus structural sanity of
    the candidate; returns every violation (empty list means compatible).
    """
    out: list[Violation] = []
    g = observed.graph
    n = g.n

    canonical: set[tuple[int, int]] = set()
    adjacency: dict[int, set[int]] = {}
    for a, b in candidate.edges:
        if a == b:
            out.append(Violation("self-loop", f"edge ({a}, {a})"))
            continue
        pair = undirected(a, b)
        if pair in canonical:
            out.append(Violation("duplicate-edge", f"edge {pair} listed twice"))
        canonical.add(pair)
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)

    sampled_set = g.vertex_set
    if set(candidate.sampled.vertices) != set(sampled_set):
        out.append(Violation("sampled-missing", "candidate does not carry the observed sample"))
    for u in candidate.unsampled:
        if u <= n:
            out.append(Violation("unsampled-label", f"unsampled vertex {u} inside sampled range"))

    for pair in g.undirected_edges:
        if pair not in canonical:
            out.append(Violation("recruitment-edge-missing", f"edge {pair} dropped"))

    for v in g.vertices:
        zc = candidate.traits.get(v)
        if zc != observed.traits.get(v):
            out.append(Violation("trait-changed", f"sampled vertex {v} trait {zc!r}"))

    known = sampled_set | candidate.unsampled
    for pair in canonical:
        a, b = pair
        a_s, b_s = a in sampled_set, b in sampled_set
        if not a_s and not b_s:
            out.append(Violation("unsampled-edge", f"edge {pair} joins two unsampled vertices"))
        if a not in known or b not in known:
            out.append(Violation("unknown-endpoint", f"edge {pair} uses an undeclared vertex"))

    for u in candidate.unsampled:
        nbrs = adjacency.get(u, set())
        if not any(k in sampled_set for k in nbrs):
            out.append(Violation("orphan-unsampled", f"unsampled vertex {u} touches no sampled vertex"))

    for v in g.vertices:
        d = len(adjacency.get(v, ()))
        if d != g.degrees[v]:
            out.append(Violation("degree-mismatch", f"vertex {v} has degree {d}, reported {g.degrees[v]}"))

    return out


def random_compatible(observed: StudyData, rng=None) -> AugmentedSubgraph:
    """Draw a compatible subgraph by randomly wiring pendant edges.

    Each pendant stub flips a fair coin to try pairing with another
    remaining stub (uniformly chosen); pairings that would create a
    self-loop or parallel edge fall through, and every unpaired stub is
    attached to a fresh unsampled vertex with a uniform random trait.
    Bit-for-bit reproducible for a fixed seed.
    """
    gen = as_rng(rng)
    g = observed.graph
    residual = observed.residual_degree
    stubs = [v for v in g.vertices for _ in range(residual[v])]
    stubs = [stubs[k] for k in gen.permutation(len(stubs))]

    edges = set(g.undirected_edges)
    traits = {v: observed.traits[v] for v in g.vertices}
    unsampled: list[int] = []
    next_id = g.n + 1

    while stubs:
        i = stubs.pop()
        if stubs and gen.random() < 0.5:
            k = int(gen.integers(len(stubs)))
            j = stubs[k]
            if j != i and undirected(i, j) not in edges:
                stubs.pop(k)
                edges.add(undirected(i, j))
                continue
        u = next_id
        next_id += 1
        traits[u] = int(gen.integers(2))
        edges.add(undirected(i, u))
        unsampled.append(u)

    return AugmentedSubgraph(
        sampled=g,
        unsampled=frozenset(unsampled),
        edges=frozenset(edges),
        traits=traits,
    )


def _bell_polynomial_two(r: int) -> float:
    # B_r(2) = number of set partitions of r items weighted 2^blocks:
    # upper bound on stub partitions with binary traits.
    values = [1.0]
    for m in range(r):
        values.append(2.0 * sum(math.comb(m, k) * values[k] for k in range(m + 1)))
    return values[r]


def _refuse(space: CompatibleSpace, caps: EnumerationCaps) -> CapExceededError:
    n = space.observed.n
    r = space.total_residual
    pair_budget = n * (n - 1) // 2
    extensions = sum(math.comb(pair_budget, k) for k in range(r // 2 + 1))
    estimate = extensions * _bell_polynomial_two(r)
    return CapExceededError(
        f"enumeration refused: n={n} (cap {caps.max_n}), total residual degree={r} "
        f"(cap {caps.max_residual}); up to ~{estimate:.3g} equivalence classes"
    )


def enumerate_compatible(
    observed: StudyData, caps: EnumerationCaps = EnumerationCaps()
) -> Iterator[AugmentedSubgraph]:
    """Yield one representative per equivalence class of compatible
    subgraphs, exactly once each.

    Enumeration runs in two stages: every simple-graph extension of the
    recruitment edges on the sampled vertices that respects the degree
    budget, crossed with every way of grouping the leftover stubs into
    unsampled vertices (no unsampled vertex takes two stubs from the same
    sampled vertex) and every binary trait assignment to those groups.
    Refuses with a size estimate when the instance exceeds ``caps``.
    """
    space = CompatibleSpace(observed)
    if not space.within_caps(caps):
        raise _refuse(space, caps)

    g = observed.graph
    n = g.n
    base_edges = g.undirected_edges
    sampled_traits = {v: observed.traits[v] for v in g.vertices}
    candidates = [
        (i, j)
        for i, j in combinations(g.vertices, 2)
        if (i, j) not in base_edges
    ]
    residual0 = observed.residual_degree

    def assemble(extra: list[tuple[int, int]], groups: list[tuple[tuple[int, ...], int, int]]):
        edges = set(base_edges)
        edges.update(extra)
        traits = dict(sampled_traits)
        unsampled = []
        uid = n
        for block, z, count in groups:
            for _ in range(count):
                uid += 1
                unsampled.append(uid)
                traits[uid] = z
                for i in block:
                    edges.add((i, uid))
        return AugmentedSubgraph(
            sampled=g,
            unsampled=frozenset(unsampled),
            edges=frozenset(edges),
            traits=traits,
        )

    def stub_groupings(residual: dict[int, int]):
        support = sorted(v for v, s in residual.items() if s > 0)
        if not support:
            yield []
            return
        # Group types ordered largest first so each vertex's singleton
        # comes last; one pass per type with a chosen multiplicity yields
        # every multiset exactly once.
        types = [
            (block, z)
            for size in range(len(support), 0, -1)
            for block in combinations(support, size)
            for z in (0, 1)
        ]
        last_type = {v: max(t for t, (block, _) in enumerate(types) if v in block) for v in support}
        counts = dict(residual)
        chosen: list[tuple[tuple[int, ...], int, int]] = []

        def rec(t_idx: int, left: int):
            if left == 0:
                yield list(chosen)
                return
            if t_idx == len(types):
                return
            block, z = types[t_idx]
            if any(counts[v] > 0 and last_type[v] < t_idx for v in support):
                return
            cap = min(counts[v] for v in block)
            for c in range(cap, 0, -1):
                for v in block:
                    counts[v] -= c
                chosen.append((block, z, c))
                yield from rec(t_idx + 1, left - c * len(block))
                chosen.pop()
                for v in block:
                    counts[v] += c
            yield from rec(t_idx + 1, left)

        yield from rec(0, sum(residual.values()))

    extra: list[tuple[int, int]] = []

    def extend(idx: int, residual: dict[int, int]) -> Iterator[AugmentedSubgraph]:
        if idx == len(candidates):
            for groups in stub_groupings(residual):
                yield assemble(extra, groups)
            return
        yield from extend(idx + 1, residual)
        i, j = candidates[idx]
        if residual[i] > 0 and residual[j] > 0:
            residual[i] -= 1
            residual[j] -= 1
            extra.append((i, j))
            yield from extend(idx + 1, residual)
            extra.pop()
            residual[i] += 1
            residual[j] += 1

    yield from extend(0, dict(residual0))
