"""Study-file parsing and serialization, plus result-document helpers.

A study file is tab-separated text in one or two bracketed sections::

    [vertices]
    id	trait	degree	time	recruiter
    1	0	3	1	seed
    2	1	2	2	1

    [edges]
    a	b
    1	2

The ``[vertices]`` table is mandatory. ``trait`` is one of ``0``, ``1``,
``other``, ``missing``; ``time`` is an integer entry rank or ``never``
(unsampled vertices only); ``recruiter`` is a sampled id, ``seed``, or
``na`` (unsampled rows). Unsampled rows carry ``na`` degree and may only
appear when the optional ``[edges]`` section (a known augmented subgraph)
is present. Serialization is canonical - rows sorted by id, edges sorted
as (low, high) pairs - so parse/serialize round-trips are idempotent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import StudyParseError
from .graphs import NEVER, OTHER, AugmentedSubgraph, RecruitmentGraph, StudyData, undirected

VERTEX_HEADER = ("id", "trait", "degree", "time", "recruiter")
EDGE_HEADER = ("a", "b")
TRACE_HEADER = ("step", "temperature", "h", "p", "J", "accepted", "kernel")


@dataclass(frozen=True)
class ParsedStudy:
    """A parsed study file: observed data plus the optional known subgraph."""

    study: StudyData
    subgraph: AugmentedSubgraph | None


def _parse_trait(token: str, line: int):
    if token == "0":
        return 0
    if token == "1":
        return 1
    if token == OTHER:
        return OTHER
    if token == "missing":
        return None
    raise StudyParseError(f"line {line}: unknown trait {token!r}")


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise StudyParseError(f"line {line}: {what} must be an integer, got {token!r}") from None


def _sections(text: str) -> dict[str, list[tuple[int, str]]]:
    sections: dict[str, list[tuple[int, str]]] = {}
    current: list[tuple[int, str]] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1]
            if name not in ("vertices", "edges"):
                raise StudyParseError(f"line {lineno}: unknown section {name!r}")
            if name in sections:
                raise StudyParseError(f"line {lineno}: duplicate section {name!r}")
            current = sections.setdefault(name, [])
            continue
        if current is None:
            raise StudyParseError(f"line {lineno}: content before any section header")
        current.append((lineno, line))
    if "vertices" not in sections:
        raise StudyParseError("missing [vertices] section")
    return sections


def parse_study_text(text: str) -> ParsedStudy:
    """Parse a study file. Structural problems raise
    :class:`StudyParseError`; semantic violations are left to the
    validation helpers."""
    sections = _sections(text)

    rows = sections["vertices"]
    lineno, header = rows[0]
    if tuple(header.split("\t")) != VERTEX_HEADER:
        raise StudyParseError(f"line {lineno}: vertex header must be {' '.join(VERTEX_HEADER)}")

    has_edges = "edges" in sections
    sampled: list[int] = []
    unsampled: list[int] = []
    traits: dict[int, object] = {}
    times: dict[int, int] = {}
    degrees: dict[int, int] = {}
    recruiter: dict[int, int] = {}
    seeds: set[int] = set()

    for lineno, line in rows[1:]:
        parts = line.split("\t")
        if len(parts) != len(VERTEX_HEADER):
            raise StudyParseError(f"line {lineno}: expected {len(VERTEX_HEADER)} fields")
        vid = _parse_int(parts[0], lineno, "id")
        if vid in traits:
            raise StudyParseError(f"line {lineno}: duplicate vertex id {vid}")
        traits[vid] = _parse_trait(parts[1], lineno)
        if parts[3] == "never":
            if not has_edges:
                raise StudyParseError(
                    f"line {lineno}: unsampled vertex {vid} in a study without an [edges] section"
                )
            if parts[2] != "na" or parts[4] != "na":
                raise StudyParseError(
                    f"line {lineno}: unsampled rows must use degree=na and recruiter=na"
                )
            unsampled.append(vid)
            continue
        sampled.append(vid)
        times[vid] = _parse_int(parts[3], lineno, "time")
        degrees[vid] = _parse_int(parts[2], lineno, "degree")
        if parts[4] == "seed":
            seeds.add(vid)
        else:
            recruiter[vid] = _parse_int(parts[4], lineno, "recruiter")

    for j, r in recruiter.items():
        if r not in times:
            raise StudyParseError(f"recruiter {r} of vertex {j} is not a sampled vertex")

    graph = RecruitmentGraph(
        vertices=tuple(sorted(sampled)),
        edges=tuple((r, j) for j, r in sorted(recruiter.items())),
        seeds=frozenset(seeds),
        times=times,
        degrees=degrees,
    )
    study = StudyData(graph=graph, traits={v: traits[v] for v in sampled})

    subgraph = None
    if has_edges:
        erows = sections["edges"]
        lineno, header = erows[0]
        if tuple(header.split("\t")) != EDGE_HEADER:
            raise StudyParseError(f"line {lineno}: edge header must be {' '.join(EDGE_HEADER)}")
        edges = set()
        for lineno, line in erows[1:]:
            parts = line.split("\t")
            if len(parts) != 2:
                raise StudyParseError(f"line {lineno}: expected 2 fields")
            a = _parse_int(parts[0], lineno, "a")
            b = _parse_int(parts[1], lineno, "b")
            if a not in traits or b not in traits:
                raise StudyParseError(f"line {lineno}: edge ({a}, {b}) uses an undeclared vertex")
            if a == b:
                raise StudyParseError(f"line {lineno}: self-loop on vertex {a}")
            pair = undirected(a, b)
            if pair in edges:
                raise StudyParseError(f"line {lineno}: duplicate edge {pair}")
            edges.add(pair)
        subgraph = AugmentedSubgraph(
            sampled=graph,
            unsampled=frozenset(unsampled),
            edges=frozenset(edges),
            traits=traits,
        )
    return ParsedStudy(study=study, subgraph=subgraph)


def parse_study_file(path) -> ParsedStudy:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StudyParseError(f"cannot read {path}: {exc}") from None
    return parse_study_text(text)


def _trait_token(z) -> str:
    if z is None:
        return "missing"
    return str(z)


def serialize_study(study: StudyData, subgraph: AugmentedSubgraph | None = None) -> str:
    """Canonical study-file text for observed data, optionally with a
    known subgraph's unsampled vertices and edge table."""
    g = study.graph
    lines = ["[vertices]", "\t".join(VERTEX_HEADER)]
    for v in sorted(g.vertices):
        rec = "seed" if v in g.seeds else str(g.recruiter_of[v])
        lines.append(
            "\t".join((str(v), _trait_token(study.traits[v]), str(g.degrees[v]), str(g.times[v]), rec))
        )
    if subgraph is not None:
        for u in sorted(subgraph.unsampled):
            lines.append("\t".join((str(u), _trait_token(subgraph.traits[u]), "na", "never", "na")))
        lines.append("")
        lines.append("[edges]")
        lines.append("\t".join(EDGE_HEADER))
        for a, b in sorted(subgraph.edges):
            lines.append(f"{a}\t{b}")
    return "\n".join(lines) + "\n"


def render_json(doc: dict) -> str:
    """Deterministic result-document text."""
    return json.dumps(doc, indent=2) + "\n"


def render_trace(rows) -> str:
    """Trace table: step, temperature, h, p, J, accepted, kernel."""
    lines = ["\t".join(TRACE_HEADER)]
    for row in rows:
        lines.append(
            "\t".join(
                (
                    str(row.step),
                    repr(row.temperature),
                    repr(row.h),
                    repr(row.p),
                    repr(row.j_value),
                    "1" if row.accepted else "0",
                    row.kernel,
                )
            )
        )
    return "\n".join(lines) + "\n"
