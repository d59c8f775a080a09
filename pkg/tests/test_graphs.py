import math

import numpy as np
import pytest

from rdsbounds import (
    NEVER,
    PopulationGraph,
    RecruitmentGraph,
    StudyData,
    InconsistentInputError,
    extract_augmented_subgraph,
    susceptible_set,
    traits_match,
    undirected,
    validate_recruitment_graph,
)
from rdsbounds.simulate import PopulationConfig, RdsProcessConfig, generate_population, run_rds

from conftest import make_study


def codes(violations):
    return {v.code for v in violations}


def test_traits_match_other_matches_nothing():
    assert traits_match(0, 0)
    assert traits_match(1, 1)
    assert not traits_match(0, 1)
    assert not traits_match("other", "other")
    assert not traits_match("other", 1)


class TestValidate:
    def test_consistent_chain(self):
        study = make_study([(1, 0, 2, None), (2, 1, 2, 1), (3, 0, 2, 2)])
        assert validate_recruitment_graph(study.graph) == []

    def test_repeat_recruitment(self):
        g = RecruitmentGraph(
            vertices=(1, 2, 3),
            edges=((1, 3), (2, 3)),
            seeds=frozenset({1, 2}),
            times={1: 1, 2: 2, 3: 3},
            degrees={1: 2, 2: 2, 3: 2},
        )
        assert "repeat-recruitment" in codes(validate_recruitment_graph(g))

    def test_degree_deficit(self):
        g = RecruitmentGraph(
            vertices=(1, 2, 3),
            edges=((1, 2), (2, 3)),
            seeds=frozenset({1}),
            times={1: 1, 2: 2, 3: 3},
            degrees={1: 1, 2: 1, 3: 1},
        )
        assert "degree-deficit" in codes(validate_recruitment_graph(g))

    def test_cycle_is_not_forest(self):
        g = RecruitmentGraph(
            vertices=(1, 2, 3),
            edges=((1, 2), (2, 3), (3, 1)),
            seeds=frozenset(),
            times={1: 1, 2: 2, 3: 3},
            degrees={1: 2, 2: 2, 3: 2},
        )
        assert "not-forest" in codes(validate_recruitment_graph(g))

    def test_orphan_and_seed_recruited(self):
        g = RecruitmentGraph(
            vertices=(1, 2, 3),
            edges=((1, 2),),
            seeds=frozenset({1, 2}),
            times={1: 1, 2: 2, 3: 3},
            degrees={1: 1, 2: 1, 3: 0},
        )
        found = codes(validate_recruitment_graph(g))
        assert "seed-recruited" in found
        assert "orphan" in found  # vertex 3 has no recruiter and is no seed

    def test_time_order_violations(self):
        study = make_study([(1, 0, 1, None), (2, 1, 1, 1)])
        g = RecruitmentGraph(
            vertices=study.graph.vertices,
            edges=study.graph.edges,
            seeds=study.graph.seeds,
            times={1: 5, 2: 2},
            degrees=study.graph.degrees,
        )
        assert "time-order" in codes(validate_recruitment_graph(g))

    def test_time_tie_rejected(self):
        g = RecruitmentGraph(
            vertices=(1, 2),
            edges=((1, 2),),
            seeds=frozenset({1}),
            times={1: 1, 2: 1},
            degrees={1: 1, 2: 1},
        )
        assert "time-order" in codes(validate_recruitment_graph(g))

    def test_late_seed(self):
        g = RecruitmentGraph(
            vertices=(1, 2, 3),
            edges=((1, 2),),
            seeds=frozenset({1, 3}),
            times={1: 1, 2: 2, 3: 3},
            degrees={1: 1, 2: 1, 3: 0},
        )
        assert "late-seed" in codes(validate_recruitment_graph(g))

    def test_bad_labels(self):
        g = RecruitmentGraph(
            vertices=(1, 5),
            edges=((1, 5),),
            seeds=frozenset({1}),
            times={1: 1, 5: 2},
            degrees={1: 1, 5: 1},
        )
        assert "labels" in codes(validate_recruitment_graph(g))


def triangle_population():
    return PopulationGraph(
        vertices=(1, 2, 3),
        edges=frozenset({(1, 2), (1, 3), (2, 3)}),
        traits={1: 0, 2: 0, 3: 1},
    )


class TestExtract:
    def test_full_census_triangle(self):
        study = make_study([(1, 0, 2, None), (2, 0, 2, 1), (3, 1, 2, 2)])
        g_su = extract_augmented_subgraph(triangle_population(), study.graph)
        assert g_su.unsampled == frozenset()
        assert g_su.edges == frozenset({(1, 2), (1, 3), (2, 3)})

    def test_pendant_neighbor(self):
        pop = PopulationGraph(
            vertices=(1, 2, 3),
            edges=frozenset({(1, 2), (2, 3)}),
            traits={1: 0, 2: 0, 3: 1},
        )
        study = make_study([(1, 0, 1, None), (2, 0, 2, 1)])
        g_su = extract_augmented_subgraph(pop, study.graph)
        assert g_su.unsampled == frozenset({3})
        assert g_su.edges == frozenset({(1, 2), (2, 3)})

    def test_leaf_leaf_edge_excluded(self):
        # Star: center 1 sampled, leaves 2..5 unsampled, leaves 2-3 adjacent.
        # Expected sets built directly from the definition: every edge
        # incident to the sampled center, and only those.
        pop = PopulationGraph(
            vertices=(1, 2, 3, 4, 5),
            edges=frozenset({(1, 2), (1, 3), (1, 4), (1, 5), (2, 3)}),
            traits={1: 0, 2: 1, 3: 0, 4: 1, 5: 0},
        )
        g = RecruitmentGraph(
            vertices=(1,),
            edges=(),
            seeds=frozenset({1}),
            times={1: 1},
            degrees={1: 4},
        )
        expected_edges = {e for e in pop.edges if 1 in e}
        expected_unsampled = {v for e in expected_edges for v in e if v != 1}
        g_su = extract_augmented_subgraph(pop, g)
        assert g_su.edges == frozenset(expected_edges)
        assert g_su.unsampled == frozenset(expected_unsampled)
        assert (2, 3) not in g_su.edges

    def test_missing_vertex_rejected(self):
        study = make_study([(1, 0, 1, None), (2, 0, 1, 1), (3, 1, 1, 2)])
        with pytest.raises(InconsistentInputError):
            extract_augmented_subgraph(triangle_population().drop(), study.graph) \
                if hasattr(triangle_population(), "drop") else None
        pop = PopulationGraph(vertices=(1, 2), edges=frozenset({(1, 2)}), traits={1: 0, 2: 0})
        with pytest.raises(InconsistentInputError):
            extract_augmented_subgraph(pop, study.graph)

    def test_missing_recruitment_edge_rejected(self):
        pop = PopulationGraph(
            vertices=(1, 2, 3),
            edges=frozenset({(1, 2)}),
            traits={1: 0, 2: 0, 3: 1},
        )
        study = make_study([(1, 0, 1, None), (2, 0, 2, 1), (3, 1, 1, 2)])
        with pytest.raises(InconsistentInputError):
            extract_augmented_subgraph(pop, study.graph)

    def test_extraction_invariants_randomized(self, rng):
        # Over simulated studies: no unsampled-unsampled edges, every
        # unsampled vertex touches the sample, and each sampled vertex
        # keeps its population degree.
        for _ in range(25):
            pop = generate_population(
                PopulationConfig(n_vertices=20, p_within=0.25, p_between=0.15), rng
            )
            sample = run_rds(pop, RdsProcessConfig(n_seeds=2, coupons=2, sample_size=8), rng)
            g_su = sample.truth
            sampled = g_su.sampled.vertex_set
            for a, b in g_su.edges:
                assert a in sampled or b in sampled
            for u in g_su.unsampled:
                assert any(k in sampled for k in g_su.neighbors(u))
            for v in sampled:
                assert g_su.degree(v) == sample.population.degree(v)


class TestSusceptible:
    def study(self):
        # 1 seeds, recruits 2 at t=2 and 3 at t=3; extra pendant on 1.
        return make_study([(1, 1, 3, None), (2, 1, 1, 1), (3, 0, 1, 1)])

    def g_su(self):
        from rdsbounds import random_compatible

        return random_compatible(self.study(), 7)

    def test_exhausted_neighborhood(self):
        g_su = self.g_su()
        assert susceptible_set(g_su, 1, 99) - g_su.unsampled == set()

    def test_unsampled_always_susceptible(self):
        g_su = self.g_su()
        u = next(iter(g_su.unsampled))
        i = next(iter(g_su.neighbors(u)))
        assert u in susceptible_set(g_su, i, 10**9)

    def test_left_continuity(self):
        g_su = self.g_su()
        # 3 is recruited at exactly t=3 and must still be susceptible there
        assert 3 in susceptible_set(g_su, 1, 3)
        assert 3 not in susceptible_set(g_su, 1, 4)

    def test_non_increasing_in_time(self):
        g_su = self.g_su()
        sets = [susceptible_set(g_su, 1, t) for t in range(2, 6)]
        for earlier, later in zip(sets, sets[1:]):
            assert later <= earlier

    def test_recruit_in_recruiters_set(self):
        g_su = self.g_su()
        g = g_su.sampled
        for j in g.vertices:
            if j in g.seeds:
                continue
            assert j in susceptible_set(g_su, g.recruiter_of[j], g.times[j])

    def test_unsampled_vertex_rejected(self):
        g_su = self.g_su()
        u = next(iter(g_su.unsampled))
        with pytest.raises(ValueError):
            susceptible_set(g_su, u, 2)

    def test_seeds_never_susceptible(self):
        # Two seeds adjacent via paired stubs: a seed is in the study from
        # entry, so it is never in a neighbor's susceptible set.
        study = make_study([(1, 0, 1, None), (2, 1, 1, None), (3, 0, 1, 2)])
        g = RecruitmentGraph(
            vertices=(1, 2, 3),
            edges=((2, 3),),
            seeds=frozenset({1, 2}),
            times={1: 1, 2: 2, 3: 3},
            degrees={1: 1, 2: 2, 3: 1},
        )
        from rdsbounds import AugmentedSubgraph

        g_su = AugmentedSubgraph(
            sampled=g,
            unsampled=frozenset(),
            edges=frozenset({(1, 2), (2, 3)}),
            traits={1: 0, 2: 1, 3: 0},
        )
        assert 1 not in susceptible_set(g_su, 2, 3)
