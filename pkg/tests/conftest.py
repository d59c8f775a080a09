import numpy as np
import pytest

from rdsbounds import (
    PopulationConfig,
    RdsProcessConfig,
    RecruitmentGraph,
    StudyData,
    generate_population,
    run_rds,
)


def make_study(rows):
    """Build StudyData from (id, trait, degree, recruiter-or-None) rows;
    entry ranks equal the ids."""
    vertices = tuple(r[0] for r in rows)
    seeds = frozenset(r[0] for r in rows if r[3] is None)
    edges = tuple((r[3], r[0]) for r in rows if r[3] is not None)
    graph = RecruitmentGraph(
        vertices=vertices,
        edges=edges,
        seeds=seeds,
        times={r[0]: r[0] for r in rows},
        degrees={r[0]: r[2] for r in rows},
    )
    return StudyData(graph=graph, traits={r[0]: r[1] for r in rows})


def random_tree_study(gen, max_n=10, max_extra=3, p_other=0.0):
    """A quick random study: random recruitment forest, random residual
    degrees, random traits. Not guaranteed non-degenerate."""
    n = int(gen.integers(1, max_n + 1))
    rows = []
    for v in range(1, n + 1):
        recruiter = None
        if v > 1 and gen.random() < 0.8:
            recruiter = int(gen.integers(1, v))
        if p_other and gen.random() < p_other:
            trait = "other"
        else:
            trait = int(gen.integers(2))
        rows.append([v, trait, 0, recruiter])
    study = make_study([tuple(r) for r in rows])
    rdeg = study.graph.recruit_degree
    degrees = {v: rdeg[v] + int(gen.integers(0, max_extra + 1)) for v in study.graph.vertices}
    graph = RecruitmentGraph(
        vertices=study.graph.vertices,
        edges=study.graph.edges,
        seeds=study.graph.seeds,
        times=study.graph.times,
        degrees=degrees,
    )
    return StudyData(graph=graph, traits=study.traits)


def small_instance(seed, max_n=8, max_residual=8, min_n=3):
    """A simulated study small enough for exhaustive enumeration, with
    mixed sampled traits and at least one recruit."""
    gen = np.random.default_rng(seed)
    for _ in range(500):
        pop = generate_population(
            PopulationConfig(
                n_vertices=int(gen.integers(5, 12)),
                trait_prevalence=0.5,
                p_within=float(gen.uniform(0.2, 0.5)),
                p_between=float(gen.uniform(0.2, 0.5)),
            ),
            gen,
        )
        cfg = RdsProcessConfig(
            n_seeds=int(gen.integers(1, 3)),
            coupons=int(gen.integers(1, 4)),
            sample_size=int(gen.integers(min_n, max_n + 1)),
        )
        sample = run_rds(pop, cfg, gen)
        study = sample.study
        if study.n < min_n or study.n > max_n:
            continue
        if study.n == study.n_seeds:
            continue
        if sum(study.residual_degree.values()) > max_residual:
            continue
        values = set(study.traits.values())
        if not {0, 1} <= values:
            continue
        return study
    raise RuntimeError(f"no small instance found for seed {seed}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
