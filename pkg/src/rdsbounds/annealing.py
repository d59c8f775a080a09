"""Simulated annealing over the compatible set, and interval assembly.

The optimizer runs an inhomogeneous Metropolis chain on compatible
``(G_SU, Z_SU)`` states. A step proposes either an edge rewire (remove a
non-recruitment edge and re-home the freed sampled stubs, or splice two
pendant edges into a sampled-sampled edge) or a trait flip on an
unsampled vertex; the proposal is accepted with probability
``min(1, exp((J* - J) / T_t))``. With the logarithmic cooling schedule
``T_t = 1 / (eps * log(t + offset))`` and any objective bounded by
``1/eps``, the chain's escape depth satisfies the classical condition for
convergence in probability to the global maximizers.

Four mirrored objectives turn the maximizer into interval endpoints:
``1/(1+eps+h)`` (minimum of h), ``1/(1+eps-h)``, ``1/(1+eps+p)``, and
``1/(1+eps-p)``. States where the homophily correlation is degenerate are
rejected outright so the chain never leaves the domain where both
estimands exist; exhaustive enumeration uses the same domain, so the two
routes bound the same set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .compatibility import EnumerationCaps, enumerate_compatible, random_compatible, is_compatible
from .errors import (
    DegenerateCorrelationError,
    StudyValidationError,
    UndefinedEstimandError,
)
from .graphs import NEVER, AugmentedSubgraph, StudyData, traits_match, undirected
from .measures import homophily, pref_recruitment
from .rng import as_rng, spawn_rngs

OBJECTIVE_TARGETS = ("min_h", "max_h", "min_p", "max_p")

_INIT_RETRIES = 100


@dataclass(frozen=True)
class Objective:
    """One of the four mirrored annealing objectives.

    Every form is strictly positive on [-1, 1]^2 and bounded by
    ``1/epsilon``, which is what the cooling-schedule convergence
    condition needs.
    """

    target: str
    epsilon: float = 0.05

    def __post_init__(self):
        if self.target not in OBJECTIVE_TARGETS:
            raise ValueError(f"unknown objective target {self.target!r}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    def value(self, h: float, p: float) -> float:
        e = self.epsilon
        if self.target == "min_h":
            return 1.0 / (1.0 + e + h)
        if self.target == "max_h":
            return 1.0 / (1.0 + e - h)
        if self.target == "min_p":
            return 1.0 / (1.0 + e + p)
        return 1.0 / (1.0 + e - p)

    def coordinate(self, h: float, p: float) -> float:
        """The coordinate this objective extremizes."""
        return h if self.target in ("min_h", "max_h") else p


@dataclass(frozen=True)
class CoolingSchedule:
    """Temperature sequence; logarithmic decay is the convergence-backed
    default, geometric decay is a diagnostic alternative."""

    kind: str = "logarithmic"
    epsilon: float = 0.05
    offset: int = 2
    t0: float = 1.0
    decay: float = 0.995

    def __post_init__(self):
        if self.kind not in ("logarithmic", "geometric"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "logarithmic" and self.offset < 2:
            raise ValueError("offset must be at least 2 so the first temperature is finite")

    def temperature(self, t: int) -> float:
        if self.kind == "logarithmic":
            return 1.0 / (self.epsilon * math.log(t + self.offset))
        return self.t0 * self.decay ** (t - 1)


class TraceRow(NamedTuple):
    step: int
    temperature: float
    h: float
    p: float
    j_value: float
    accepted: bool
    kernel: str


class BestState(NamedTuple):
    subgraph: AugmentedSubgraph
    h: float
    p: float
    j_value: float
    step: int


class ExtremeState(NamedTuple):
    value: float
    subgraph: AugmentedSubgraph


@dataclass
class RunExtremes:
    """Most extreme coordinates visited by one chain, with witnesses."""

    min_h: ExtremeState
    max_h: ExtremeState
    min_p: ExtremeState
    max_p: ExtremeState


@dataclass
class RunDiagnostics:
    accepted: int = 0
    rejected: int = 0
    rejected_degenerate: int = 0
    null_proposals: int = 0
    last_improvement_step: int = 0
    stalled: bool | None = None
    final_h: float = math.nan
    final_p: float = math.nan
    final_j: float = math.nan


@dataclass
class AnnealRun:
    """One chain: configuration, trace, best state, and diagnostics."""

    objective: Objective
    schedule: CoolingSchedule
    budget: int
    kernel_mix: float
    seed: object
    best: BestState
    extremes: RunExtremes
    diagnostics: RunDiagnostics
    trace: list[TraceRow] | None


class _ChainState:
    """Mutable working state of one chain.

    Keeps adjacency plus integer sufficient statistics for homophily and
    per-recruiter cached sums for preferential recruitment, all updated
    incrementally and guarded by an operation log so a rejected proposal
    can be rolled back exactly.
    """

    __slots__ = (
        "graph", "n", "ranks", "recruit_edges", "traits", "adj",
        "u_list", "u_pos", "next_uid",
        "m", "e_same", "c_u0", "c_u1", "c_r0", "c_r1", "s_rr", "half_pairs_rr",
        "recruiters", "recruit_ranks", "frac", "y_total", "denom",
        "_log",
    )

    def __init__(self, observed: StudyData, g_su: AugmentedSubgraph):
        g = observed.graph
        self.graph = g
        self.n = g.n
        self.ranks = dict(g.times)
        self.recruit_edges = g.undirected_edges
        self.traits = dict(g_su.traits)
        self.adj: dict[int, set[int]] = {v: set() for v in g.vertices}
        self.u_list: list[int] = sorted(g_su.unsampled)
        self.u_pos = {u: k for k, u in enumerate(self.u_list)}
        self.next_uid = max([g.n] + self.u_list) + 1
        for u in self.u_list:
            self.adj[u] = set()
            if self.traits[u] not in (0, 1):
                raise ValueError(f"unsampled vertex {u} needs a binary trait for annealing")

        self.m = 0
        self.e_same = 0
        for a, b in g_su.edges:
            self.adj[a].add(b)
            self.adj[b].add(a)
            self.m += 1
            if traits_match(self.traits[a], self.traits[b]):
                self.e_same += 1

        self.c_u0 = sum(1 for u in self.u_list if self.traits[u] == 0)
        self.c_u1 = len(self.u_list) - self.c_u0
        self.c_r0 = sum(1 for v in g.vertices if self.traits[v] == 0)
        self.c_r1 = sum(1 for v in g.vertices if self.traits[v] == 1)
        self.s_rr = self.c_r0 * (self.c_r0 - 1) // 2 + self.c_r1 * (self.c_r1 - 1) // 2
        self.half_pairs_rr = self.n * (self.n - 1) // 2

        self.recruiters = tuple(v for v in g.vertices if g.recruits_of[v])
        self.recruit_ranks = {v: tuple(g.times[j] for j in g.recruits_of[v]) for v in self.recruiters}
        self.frac = {v: self._recruiter_frac(v) for v in self.recruiters}
        self.y_total = sum(
            1
            for j in g.vertices
            if j not in g.seeds and traits_match(self.traits[g.recruiter_of[j]], self.traits[j])
        )
        self.denom = g.n - len(g.seeds)
        self._log: list[tuple] = []

    # -- estimand evaluation ------------------------------------------------

    def _recruiter_frac(self, i: int) -> float:
        zi = self.traits[i]
        ranks = self.ranks
        nbrs = [(ranks.get(k, NEVER), self.traits[k]) for k in self.adj[i]]
        total = 0.0
        for rj in self.recruit_ranks[i]:
            size = 0
            same = 0
            for rk, zk in nbrs:
                if rk >= rj:
                    size += 1
                    if zk == zi:
                        same += 1
            total += same / size
        return total

    def p_value(self) -> float:
        return (self.y_total - sum(self.frac.values())) / self.denom

    def h_value(self) -> float | None:
        """Homophily from sufficient statistics; None when degenerate."""
        n_u = self.c_u0 + self.c_u1
        pairs = self.half_pairs_rr + self.n * n_u
        if pairs == 0:
            return None
        sum_a = self.m
        sum_i = self.s_rr + self.c_r0 * self.c_u0 + self.c_r1 * self.c_u1
        if sum_a == 0 or sum_a == pairs or sum_i == 0 or sum_i == pairs:
            return None
        mean_a = sum_a / pairs
        mean_i = sum_i / pairs
        num = self.e_same - sum_a * sum_i / pairs
        sd = math.sqrt(mean_a * (1.0 - mean_a) * mean_i * (1.0 - mean_i))
        return num / (pairs * sd)

    # -- logged primitive operations ----------------------------------------

    def _add_edge(self, a: int, b: int) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)
        self.m += 1
        if traits_match(self.traits[a], self.traits[b]):
            self.e_same += 1
        self._log.append(("add_e", a, b))

    def _remove_edge(self, a: int, b: int) -> None:
        self.adj[a].discard(b)
        self.adj[b].discard(a)
        self.m -= 1
        if traits_match(self.traits[a], self.traits[b]):
            self.e_same -= 1
        self._log.append(("rm_e", a, b))

    def _add_vertex(self, trait: int) -> int:
        u = self.next_uid
        self.next_uid += 1
        self.u_pos[u] = len(self.u_list)
        self.u_list.append(u)
        self.adj[u] = set()
        self.traits[u] = trait
        if trait == 0:
            self.c_u0 += 1
        else:
            self.c_u1 += 1
        self._log.append(("add_v", u))
        return u

    def _remove_vertex(self, u: int) -> None:
        idx = self.u_pos.pop(u)
        last = self.u_list.pop()
        if last != u:
            self.u_list[idx] = last
            self.u_pos[last] = idx
        del self.adj[u]
        trait = self.traits.pop(u)
        if trait == 0:
            self.c_u0 -= 1
        else:
            self.c_u1 -= 1
        self._log.append(("rm_v", u, trait, idx))

    def _flip_trait(self, u: int) -> None:
        old = self.traits[u]
        new = 1 - old
        delta = 0
        for w in self.adj[u]:
            zw = self.traits[w]
            if zw == new:
                delta += 1
            elif zw == old:
                delta -= 1
        self.e_same += delta
        self.traits[u] = new
        if new == 1:
            self.c_u0 -= 1
            self.c_u1 += 1
        else:
            self.c_u0 += 1
            self.c_u1 -= 1
        self._log.append(("flip", u))

    def settle(self, dirty: Iterable[int]) -> None:
        """Refresh cached recruiter sums whose neighborhoods changed."""
        for i in sorted(set(dirty)):
            if i in self.frac:
                self._log.append(("frac", i, self.frac[i]))
                self.frac[i] = self._recruiter_frac(i)

    def begin(self) -> None:
        self._log.clear()

    @property
    def changed(self) -> bool:
        return bool(self._log)

    def rollback(self) -> None:
        for op in reversed(self._log):
            kind = op[0]
            if kind == "frac":
                self.frac[op[1]] = op[2]
            elif kind == "add_e":
                _, a, b = op
                self.adj[a].discard(b)
                self.adj[b].discard(a)
                self.m -= 1
                if traits_match(self.traits[a], self.traits[b]):
                    self.e_same -= 1
            elif kind == "rm_e":
                _, a, b = op
                self.adj[a].add(b)
                self.adj[b].add(a)
                self.m += 1
                if traits_match(self.traits[a], self.traits[b]):
                    self.e_same += 1
            elif kind == "add_v":
                u = op[1]
                self.u_pos.pop(u)
                self.u_list.pop()
                del self.adj[u]
                trait = self.traits.pop(u)
                if trait == 0:
                    self.c_u0 -= 1
                else:
                    self.c_u1 -= 1
                self.next_uid = u
            elif kind == "rm_v":
                _, u, trait, idx = op
                if idx == len(self.u_list):
                    self.u_list.append(u)
                else:
                    displaced = self.u_list[idx]
                    self.u_pos[displaced] = len(self.u_list)
                    self.u_list.append(displaced)
                    self.u_list[idx] = u
                self.u_pos[u] = idx
                self.adj[u] = set()
                self.traits[u] = trait
                if trait == 0:
                    self.c_u0 += 1
                else:
                    self.c_u1 += 1
            elif kind == "flip":
                u = op[1]
                old = self.traits[u]
                new = 1 - old
                delta = 0
                for w in self.adj[u]:
                    zw = self.traits[w]
                    if zw == new:
                        delta += 1
                    elif zw == old:
                        delta -= 1
                self.e_same += delta
                self.traits[u] = new
                if new == 1:
                    self.c_u0 -= 1
                    self.c_u1 += 1
                else:
                    self.c_u0 += 1
                    self.c_u1 -= 1
        self._log.clear()

    def to_subgraph(self) -> AugmentedSubgraph:
        edges = set()
        for v, nbrs in self.adj.items():
            for w in nbrs:
                if v < w:
                    edges.add((v, w))
        return AugmentedSubgraph(
            sampled=self.graph,
            unsampled=frozenset(self.u_list),
            edges=frozenset(edges),
            traits=dict(self.traits),
        )


# -- proposal kernels --------------------------------------------------------


def _rehome_stub(state: _ChainState, gen, k: int) -> None:
    # Fair coin: reuse an unsampled vertex not yet adjacent to k, else
    # (or when none exists) invent one with a uniform random trait.
    if gen.random() < 0.5:
        candidates = sorted(u for u in state.u_list if u not in state.adj[k])
        if candidates:
            u = candidates[int(gen.integers(len(candidates)))]
            state._add_edge(k, u)
            return
    u = state._add_vertex(int(gen.integers(2)))
    state._add_edge(k, u)


def _move_rewire(state: _ChainState, gen) -> set[int]:
    """Apply one edge-rewire proposal in place; returns dirty recruiters."""
    n = state.n
    n_total = n + len(state.u_list)
    i = int(gen.integers(1, n + 1))
    while True:
        k = int(gen.integers(n_total))
        j = k + 1 if k < n else state.u_list[k - n]
        if j != i:
            break

    if j in state.adj[i]:
        if undirected(i, j) in state.recruit_edges:
            return set()
        dirty = {i, j} if j <= n else {i}
        state._remove_edge(i, j)
        _rehome_stub(state, gen, i)
        if j <= n:
            _rehome_stub(state, gen, j)
        elif not state.adj[j]:
            state._remove_vertex(j)
        return dirty

    pendant_i = sorted(u for u in state.adj[i] if u > n)
    pendant_j = sorted(u for u in state.adj[j] if u > n)
    if pendant_i and pendant_j:
        u1 = pendant_i[int(gen.integers(len(pendant_i)))]
        u2 = pendant_j[int(gen.integers(len(pendant_j)))]
        state._remove_edge(i, u1)
        state._remove_edge(j, u2)
        state._add_edge(i, j)
        for u in {u1, u2}:
            if not state.adj[u]:
                state._remove_vertex(u)
        return {i, j}
    return set()


def _move_trait_flip(state: _ChainState, gen) -> set[int]:
    """Flip the trait of a uniformly chosen unsampled vertex."""
    if not state.u_list:
        return set()
    candidates = sorted(state.u_list)
    u = candidates[int(gen.integers(len(candidates)))]
    state._flip_trait(u)
    return set(state.adj[u])


def _study_of(state: AugmentedSubgraph) -> StudyData:
    g = state.sampled
    return StudyData(graph=g, traits={v: state.traits[v] for v in g.vertices})


def propose_rewire(state: AugmentedSubgraph, rng=None) -> AugmentedSubgraph:
    """One edge-rewire proposal applied to an immutable compatible state.

    Draws a random sampled vertex and a random other vertex: an existing
    non-recruitment edge between them is deleted and each freed sampled
    stub is re-homed to an unsampled vertex (an existing non-adjacent one
    on a fair coin, else a fresh one with random trait); a missing
    sampled-sampled edge is spliced in by consuming one pendant edge on
    each side. Inapplicable draws return the state unchanged. Isolated
    unsampled vertices are removed.
    """
    chain = _ChainState(_study_of(state), state)
    chain.begin()
    _move_rewire(chain, as_rng(rng))
    return chain.to_subgraph()


def propose_trait_flip(state: AugmentedSubgraph, rng=None) -> AugmentedSubgraph:
    """Flip the trait of one uniformly chosen unsampled vertex; identity
    when there are none."""
    chain = _ChainState(_study_of(state), state)
    chain.begin()
    _move_trait_flip(chain, as_rng(rng))
    return chain.to_subgraph()


# -- the chain ----------------------------------------------------------------


def _initial_state(observed: StudyData, gen, init: AugmentedSubgraph | None) -> _ChainState:
    if observed.n == observed.n_seeds:
        raise UndefinedEstimandError(
            "preferential recruitment is undefined: the sample contains only seeds"
        )
    if init is not None:
        state = _ChainState(observed, init)
        if state.h_value() is None:
            raise DegenerateCorrelationError("the provided initial state has a degenerate correlation")
        return state
    for _ in range(_INIT_RETRIES):
        state = _ChainState(observed, random_compatible(observed, gen))
        if state.h_value() is not None:
            return state
    raise DegenerateCorrelationError(
        "could not draw a compatible starting state with a defined correlation; "
        "the homophily correlation may be degenerate on the whole compatible set"
    )


def anneal(
    observed: StudyData,
    objective: Objective,
    schedule: CoolingSchedule,
    budget: int,
    rng=None,
    *,
    kernel_mix: float = 0.5,
    init: AugmentedSubgraph | None = None,
    record_trace: bool = True,
    stall_window: int | None = None,
    validate_every: int | None = None,
) -> AnnealRun:
    """Run one Metropolis chain of ``budget`` steps from a random (or
    given) compatible state and return its trace, best state, and
    diagnostics.

    ``kernel_mix`` is the probability that a step proposes a trait flip
    (the complement proposes an edge rewire). Proposals whose homophily
    correlation is degenerate are rejected. ``validate_every`` is a
    diagnostic hook that re-checks compatibility of the current state
    every that-many steps and raises on failure.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    gen = as_rng(rng)
    state = _initial_state(observed, gen, init)

    h_cur = state.h_value()
    p_cur = state.p_value()
    j_cur = objective.value(h_cur, p_cur)

    snapshot = state.to_subgraph()
    best = BestState(snapshot, h_cur, p_cur, j_cur, 0)
    extremes = RunExtremes(
        min_h=ExtremeState(h_cur, snapshot),
        max_h=ExtremeState(h_cur, snapshot),
        min_p=ExtremeState(p_cur, snapshot),
        max_p=ExtremeState(p_cur, snapshot),
    )
    diag = RunDiagnostics()
    trace: list[TraceRow] | None = [] if record_trace else None
    if record_trace:
        trace.append(TraceRow(0, math.inf, h_cur, p_cur, j_cur, True, "init"))

    for t in range(1, budget + 1):
        temperature = schedule.temperature(t)
        flip = gen.random() < kernel_mix
        kernel = "flip" if flip else "rewire"
        state.begin()
        dirty = _move_trait_flip(state, gen) if flip else _move_rewire(state, gen)

        if not state.changed:
            diag.null_proposals += 1
            diag.accepted += 1
            accepted = True
        else:
            state.settle(dirty)
            h_new = state.h_value()
            if h_new is None:
                state.rollback()
                diag.rejected_degenerate += 1
                diag.rejected += 1
                accepted = False
            else:
                p_new = state.p_value()
                j_new = objective.value(h_new, p_new)
                if j_new >= j_cur or gen.random() < math.exp((j_new - j_cur) / temperature):
                    h_cur, p_cur, j_cur = h_new, p_new, j_new
                    diag.accepted += 1
                    accepted = True
                else:
                    state.rollback()
                    diag.rejected += 1
                    accepted = False

        if accepted:
            snapshot = None
            if j_cur > best.j_value:
                snapshot = state.to_subgraph()
                best = BestState(snapshot, h_cur, p_cur, j_cur, t)
                diag.last_improvement_step = t
            if h_cur < extremes.min_h.value:
                extremes.min_h = ExtremeState(h_cur, snapshot or state.to_subgraph())
            if h_cur > extremes.max_h.value:
                extremes.max_h = ExtremeState(h_cur, snapshot or state.to_subgraph())
            if p_cur < extremes.min_p.value:
                extremes.min_p = ExtremeState(p_cur, snapshot or state.to_subgraph())
            if p_cur > extremes.max_p.value:
                extremes.max_p = ExtremeState(p_cur, snapshot or state.to_subgraph())

        if record_trace:
            trace.append(TraceRow(t, temperature, h_cur, p_cur, j_cur, accepted, kernel))
        if validate_every and t % validate_every == 0:
            violations = is_compatible(state.to_subgraph(), observed)
            if violations:
                raise StudyValidationError(violations, f"chain left the compatible set at step {t}")

    diag.final_h, diag.final_p, diag.final_j = h_cur, p_cur, j_cur
    if stall_window is not None:
        diag.stalled = (budget - diag.last_improvement_step) >= stall_window
    return AnnealRun(
        objective=objective,
        schedule=schedule,
        budget=budget,
        kernel_mix=kernel_mix,
        seed=rng,
        best=best,
        extremes=extremes,
        diagnostics=diag,
        trace=trace,
    )


# -- interval assembly --------------------------------------------------------


@dataclass(frozen=True)
class IdentifyConfig:
    """Configuration for interval identification."""

    budget: int = 10_000
    epsilon: float = 0.05
    kernel_mix: float = 0.5
    chains: int = 4
    schedule_kind: str = "logarithmic"
    schedule_offset: int = 2
    exact: bool = False
    caps: EnumerationCaps = EnumerationCaps()
    stall_window: int | None = None
    record_traces: bool = True
    seed: int | None = None


@dataclass(frozen=True)
class Witness:
    """A compatible subgraph attaining one interval endpoint."""

    kind: str
    subgraph: AugmentedSubgraph
    h: float
    p: float


@dataclass
class ObjectiveDiagnostics:
    target: str
    chain_best_j: list[float]
    chain_best_value: list[float]
    agreement_spread: float
    acceptance_rates: list[float]
    last_improvement_steps: list[int]
    stalled: list[bool | None]


@dataclass
class IdentificationResult:
    """Identification intervals for (h, p) with witnesses and diagnostics."""

    interval_h: tuple[float, float]
    interval_p: tuple[float, float]
    method: str
    witnesses: dict[str, Witness]
    diagnostics: dict[str, ObjectiveDiagnostics] = field(default_factory=dict)
    runs: dict[str, list[AnnealRun]] | None = None
    classes: int | None = None
    feasible_classes: int | None = None

    @property
    def rectangle(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return (self.interval_h, self.interval_p)


def exact_bounds(observed: StudyData, caps: EnumerationCaps = EnumerationCaps()) -> IdentificationResult:
    """Identification intervals by exhaustive enumeration (the oracle).

    Iterates one representative per equivalence class and takes exact
    extrema of both estimands over every class where the homophily
    correlation is defined.
    """
    if observed.n == observed.n_seeds:
        raise UndefinedEstimandError(
            "preferential recruitment is undefined: the sample contains only seeds"
        )
    total = 0
    feasible = 0
    ext: dict[str, tuple[float, AugmentedSubgraph]] = {}
    for rep in enumerate_compatible(observed, caps):
        total += 1
        try:
            h = homophily(rep).value
        except DegenerateCorrelationError:
            continue
        p = pref_recruitment(rep).value
        feasible += 1
        if "min_h" not in ext or h < ext["min_h"][0]:
            ext["min_h"] = (h, rep)
        if "max_h" not in ext or h > ext["max_h"][0]:
            ext["max_h"] = (h, rep)
        if "min_p" not in ext or p < ext["min_p"][0]:
            ext["min_p"] = (p, rep)
        if "max_p" not in ext or p > ext["max_p"][0]:
            ext["max_p"] = (p, rep)
    if not feasible:
        raise DegenerateCorrelationError(
            "every compatible subgraph has a degenerate correlation; no intervals exist"
        )

    witnesses = {}
    for kind, (_, rep) in ext.items():
        witnesses[kind] = Witness(kind, rep, homophily(rep).value, pref_recruitment(rep).value)
    return IdentificationResult(
        interval_h=(ext["min_h"][0], ext["max_h"][0]),
        interval_p=(ext["min_p"][0], ext["max_p"][0]),
        method="exact",
        witnesses=witnesses,
        classes=total,
        feasible_classes=feasible,
    )


def identify(observed: StudyData, config: IdentifyConfig = IdentifyConfig()) -> IdentificationResult:
    """Compute identification intervals for (h, p) from observed RDS data.

    Runs ``config.chains`` annealing chains for each of the four
    objectives (or substitutes exhaustive enumeration when
    ``config.exact``), pools the most extreme coordinates visited by any
    chain, and reports per-objective convergence diagnostics.
    """
    if config.exact:
        return exact_bounds(observed, config.caps)
    if observed.n == observed.n_seeds:
        raise UndefinedEstimandError(
            "preferential recruitment is undefined: the sample contains only seeds"
        )

    schedule = CoolingSchedule(
        kind=config.schedule_kind, epsilon=config.epsilon, offset=config.schedule_offset
    )
    rngs = spawn_rngs(config.seed, len(OBJECTIVE_TARGETS) * config.chains)

    runs: dict[str, list[AnnealRun]] = {}
    diagnostics: dict[str, ObjectiveDiagnostics] = {}
    pooled: dict[str, ExtremeState] = {}

    for o_idx, target in enumerate(OBJECTIVE_TARGETS):
        objective = Objective(target=target, epsilon=config.epsilon)
        chain_runs = []
        for c_idx in range(config.chains):
            run = anneal(
                observed,
                objective,
                schedule,
                config.budget,
                rngs[o_idx * config.chains + c_idx],
                kernel_mix=config.kernel_mix,
                record_trace=config.record_traces,
                stall_window=config.stall_window,
            )
            chain_runs.append(run)
            for kind in OBJECTIVE_TARGETS:
                cand: ExtremeState = getattr(run.extremes, kind)
                cur = pooled.get(kind)
                better = (
                    cur is None
                    or (kind.startswith("min") and cand.value < cur.value)
                    or (kind.startswith("max") and cand.value > cur.value)
                )
                if better:
                    pooled[kind] = cand
        runs[target] = chain_runs
        bests = [r.best for r in chain_runs]
        values = [objective.coordinate(b.h, b.p) for b in bests]
        diagnostics[target] = ObjectiveDiagnostics(
            target=target,
            chain_best_j=[b.j_value for b in bests],
            chain_best_value=values,
            agreement_spread=max(values) - min(values),
            acceptance_rates=[r.diagnostics.accepted / r.budget for r in chain_runs],
            last_improvement_steps=[r.diagnostics.last_improvement_step for r in chain_runs],
            stalled=[r.diagnostics.stalled for r in chain_runs],
        )

    # Endpoints are re-evaluated on the witness subgraphs with the
    # reference implementations, so annealed and enumerated intervals run
    # through identical arithmetic.
    witnesses = {}
    for kind, extreme in pooled.items():
        sub = extreme.subgraph
        witnesses[kind] = Witness(kind, sub, homophily(sub).value, pref_recruitment(sub).value)

    return IdentificationResult(
        interval_h=(witnesses["min_h"].h, witnesses["max_h"].h),
        interval_p=(witnesses["min_p"].p, witnesses["max_p"].p),
        method="anneal",
        witnesses=witnesses,
        diagnostics=diagnostics,
        runs=runs,
    )
