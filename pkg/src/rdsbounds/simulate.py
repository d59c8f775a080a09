"""Synthetic populations and coupon-driven recruitment processes.

Populations come from a two-block stochastic block model over the binary
trait, so trait assortativity (and hence homophily) is controlled by the
within/between edge probabilities. Recruitment walks the population
graph: a global queue of (recruiter, coupon) tokens is consumed in
uniform random order, each redemption recruiting one susceptible neighbor
of the token's owner. The recruitment-bias knob ``beta`` tilts that
choice by a factor ``exp(beta)`` per same-trait candidate; ``beta = 0``
is uniform choice, i.e. proportional recruitment.

Everything is a pure function of (configuration, seed); fixtures are
reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import (
    AugmentedSubgraph,
    PopulationGraph,
    RecruitmentGraph,
    StudyData,
    extract_augmented_subgraph,
    traits_match,
    undirected,
)
from .rng import as_rng


@dataclass(frozen=True)
class PopulationConfig:
    """Two-block stochastic block model over the binary trait."""

    n_vertices: int
    trait_prevalence: float = 0.5
    p_within: float = 0.1
    p_between: float = 0.1

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("n_vertices must be positive")
        for name in ("trait_prevalence", "p_within", "p_between"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class RdsProcessConfig:
    """Coupon-driven recruitment process parameters.

    ``beta`` tilts each recruitment toward same-trait susceptible
    neighbors with weight ``exp(beta)`` each; zero recovers uniform
    (proportional) recruitment. ``seed_trait`` restricts seed selection
    to one trait block when set.
    """

    n_seeds: int = 1
    coupons: int = 3
    sample_size: int = 50
    beta: float = 0.0
    seed_trait: int | None = None

    def __post_init__(self):
        if self.n_seeds < 1:
            raise ValueError("n_seeds must be positive")
        if self.coupons < 0:
            raise ValueError("coupons must be non-negative")
        if self.sample_size < self.n_seeds:
            raise ValueError("sample_size must cover the seeds")


@dataclass(frozen=True)
class RdsSample:
    """One simulated study: the observable record, the true augmented
    subgraph, and the population relabelled to match the study labels."""

    study: StudyData
    truth: AugmentedSubgraph
    population: PopulationGraph
    labels: dict[int, int]


def generate_population(cfg: PopulationConfig, rng=None) -> PopulationGraph:
    """Draw a simple undirected graph with planted trait assortativity."""
    gen = as_rng(rng)
    vertices = tuple(range(1, cfg.n_vertices + 1))
    traits = {v: int(gen.random() < cfg.trait_prevalence) for v in vertices}
    edges = set()
    for a in vertices:
        for b in range(a + 1, cfg.n_vertices + 1):
            prob = cfg.p_within if traits[a] == traits[b] else cfg.p_between
            if gen.random() < prob:
                edges.add((a, b))
    return PopulationGraph(vertices=vertices, edges=frozenset(edges), traits=traits)


def run_rds(pop: PopulationGraph, cfg: RdsProcessConfig, rng=None) -> RdsSample:
    """Simulate one RDS study on a known population graph.

    Seeds are drawn uniformly (optionally within one trait block) and
    enter first; recruitment tokens are then processed in uniform random
    order until the sample-size target is reached or no token owner has a
    susceptible neighbor left. Owners whose neighborhoods are exhausted
    forfeit their remaining coupons. Returns both the observable study
    data (relabelled ``1..n`` in entry order) and the true augmented
    subgraph for oracle comparisons.
    """
    gen = as_rng(rng)
    if cfg.seed_trait is None:
        eligible = sorted(pop.vertices)
    else:
        eligible = sorted(v for v in pop.vertices if pop.traits[v] == cfg.seed_trait)
    if cfg.n_seeds > len(eligible):
        raise ValueError(f"cannot draw {cfg.n_seeds} seeds from {len(eligible)} eligible vertices")

    drawn = gen.choice(len(eligible), size=cfg.n_seeds, replace=False)
    seeds = [eligible[int(k)] for k in drawn]

    order: list[int] = list(seeds)
    in_sample = set(seeds)
    recruited_by: list[tuple[int, int]] = []
    queue: list[int] = [s for s in seeds for _ in range(cfg.coupons)]

    while queue and len(order) < cfg.sample_size:
        idx = int(gen.integers(len(queue)))
        recruiter = queue[idx]
        susceptible = sorted(v for v in pop.neighbors(recruiter) if v not in in_sample)
        if not susceptible:
            queue = [x for x in queue if x != recruiter]
            continue
        if cfg.beta == 0.0:
            j = susceptible[int(gen.integers(len(susceptible)))]
        else:
            zr = pop.traits[recruiter]
            weights = [math.exp(cfg.beta) if traits_match(zr, pop.traits[v]) else 1.0 for v in susceptible]
            total = sum(weights)
            j = susceptible[int(gen.choice(len(susceptible), p=[w / total for w in weights]))]
        queue.pop(idx)
        in_sample.add(j)
        order.append(j)
        recruited_by.append((recruiter, j))
        queue.extend([j] * cfg.coupons)

    # Relabel: sampled vertices 1..n in entry order, then unsampled
    # neighbors, then the rest of the population, each block by old id.
    labels = {v: k + 1 for k, v in enumerate(order)}
    fringe = sorted(
        {u for v in order for u in pop.neighbors(v)} - in_sample
    )
    for u in fringe:
        labels[u] = len(labels) + 1
    for v in sorted(set(pop.vertices) - set(labels)):
        labels[v] = len(labels) + 1

    n = len(order)
    graph = RecruitmentGraph(
        vertices=tuple(range(1, n + 1)),
        edges=tuple((labels[a], labels[b]) for a, b in recruited_by),
        seeds=frozenset(labels[s] for s in seeds),
        times={k: k for k in range(1, n + 1)},
        degrees={labels[v]: pop.degree(v) for v in order},
    )
    study = StudyData(graph=graph, traits={labels[v]: pop.traits[v] for v in order})

    population = PopulationGraph(
        vertices=tuple(sorted(labels[v] for v in pop.vertices)),
        edges=frozenset(undirected(labels[a], labels[b]) for a, b in pop.edges),
        traits={labels[v]: pop.traits[v] for v in pop.vertices},
    )
    truth = extract_augmented_subgraph(population, graph)
    return RdsSample(study=study, truth=truth, population=population, labels=labels)
