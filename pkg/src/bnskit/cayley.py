"""Finite Cayley balls, character-nonnegative subgraphs, and connectivity
evidence.

Everything here is experimental in the strict sense: a finite ball never
decides whether the infinite nonnegative subgraph is connected, so reports
carry an explicit EVIDENCE label and are kept apart from the certified
facts of the inference store.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BallTooLarge, UnknownFormat, ZeroCharacter
from .oracles import WordOracle
from .presentation import Character, GroupPresentation
from .words import Word, display_word, word_from_letters

DEFAULT_VERTEX_BUDGET = 10 ** 6

Edge = tuple[Word, tuple[int, int], Word]  # (source, (generator, sign), target)

CONNECTED_AT_SCALE = "CONNECTED_AT_SCALE"
DISCONNECTED_AT_SCALE = "DISCONNECTED_AT_SCALE"
EVIDENCE_NOTE = ("EVIDENCE only: connectivity of a finite ball never decides "
                 "membership in Sigma(G)")


@dataclass(frozen=True, eq=False)
class CayleyBall:
    """All group elements of word length <= radius, with every generator
    edge whose endpoints both lie in the ball (stored in both directions)."""

    presentation: GroupPresentation
    radius: int
    vertices: tuple[Word, ...]
    depths: dict[Word, int]
    edges: tuple[Edge, ...]

    def vertex_key(self, vertex: Word):
        return (self.depths[vertex], vertex.letters)


def build_ball(oracle: WordOracle,
               presentation: GroupPresentation,
               radius: int,
               vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> CayleyBall:
    """Breadth-first closure of the identity under right multiplication."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if oracle.alphabet_size != presentation.rank:
        raise ValueError("oracle alphabet does not match the presentation")
    steps = [(gen, sign) for gen in range(presentation.rank) for sign in (1, -1)]
    identity = oracle.normal_form(Word())
    depths = {identity: 0}
    frontier = [identity]
    for depth in range(1, radius + 1):
        fresh = []
        for vertex in frontier:
            for gen, sign in steps:
                neighbor = oracle.normal_form(vertex * Word(((gen, sign),)))
                if neighbor not in depths:
                    depths[neighbor] = depth
                    fresh.append(neighbor)
                    if len(depths) > vertex_budget:
                        raise BallTooLarge(
                            f"ball exceeded {vertex_budget} vertices at radius {depth}"
                        )
        frontier = fresh
        if not frontier:
            break
    vertices = tuple(sorted(depths, key=lambda w: (depths[w], w.letters)))
    edges = []
    for vertex in vertices:
        for gen, sign in steps:
            neighbor = oracle.normal_form(vertex * Word(((gen, sign),)))
            if neighbor in depths:
                edges.append((vertex, (gen, sign), neighbor))
    return CayleyBall(presentation, radius, vertices, depths, tuple(edges))


@dataclass(frozen=True, eq=False)
class ChiSubgraph:
    """The full subgraph on vertices with nonnegative character value."""

    ball: CayleyBall
    character: Character
    chi_values: dict[Word, Fraction]
    retained_vertices: tuple[Word, ...]
    retained_edges: tuple[Edge, ...]

    def is_retained(self, vertex: Word) -> bool:
        return self.chi_values[vertex] >= 0


def chi_subgraph(ball: CayleyBall, character: Character) -> ChiSubgraph:
    """Keep vertices with chi >= 0 (the boundary chi = 0 is included) and
    edges with both endpoints kept; exact rational threshold test."""
    if character.presentation.generators != ball.presentation.generators:
        raise ValueError("character and ball use different presentations")
    if character.is_zero():
        raise ZeroCharacter("the zero character induces no subgraph")
    chi_values = {v: character.evaluate(v) for v in ball.vertices}
    retained = tuple(v for v in ball.vertices if chi_values[v] >= 0)
    kept = set(retained)
    edges = tuple(e for e in ball.edges if e[0] in kept and e[2] in kept)
    return ChiSubgraph(ball, character, chi_values, retained, edges)


class _UnionFind:
    def __init__(self, items: Iterable[Word]):
        self.parent = {x: x for x in items}

    def find(self, x: Word) -> Word:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Word, y: Word):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass(frozen=True, eq=False)
class ConnectivityReport:
    radius: int
    margin: int
    inner_radius: int
    ball_vertices: int
    retained_vertices: int
    inner_retained_vertices: int
    component_count: int
    representatives: tuple[Word, ...]
    witness_paths: tuple[tuple[Word, Word, tuple[Word, ...]], ...]
    verdict: str
    note: str = EVIDENCE_NOTE

    def render(self, presentation: GroupPresentation) -> str:
        lines = [
            f"radius = {self.radius}",
            f"margin = {self.margin}",
            f"inner_radius = {self.inner_radius}",
            f"ball_vertices = {self.ball_vertices}",
            f"retained_vertices = {self.retained_vertices}",
            f"inner_retained_vertices = {self.inner_retained_vertices}",
            f"components = {self.component_count}",
            f"verdict = {self.verdict}",
            f"note = {self.note}",
        ]
        for i, rep in enumerate(self.representatives):
            lines.append(f"component[{i}] representative = "
                         f"{display_word(rep, presentation.generators)}")
        for source, target, path in self.witness_paths:
            rendered = " -> ".join(display_word(w, presentation.generators)
                                   for w in path)
            lines.append(f"witness path {display_word(source, presentation.generators)}"
                         f" .. {display_word(target, presentation.generators)}: {rendered}")
        return "\n".join(lines)


def connectivity_evidence(subgraph: ChiSubgraph,
                          margin: int = 1,
                          witnesses_per_component: int = 2) -> ConnectivityReport:
    """Count components among inner retained vertices, using the whole
    retained ball as connective tissue.

    The outer shell (inside the margin) may legitimately join inner
    vertices, but its own fragmentation is a truncation artifact, so it is
    never counted.
    """
    ball = subgraph.ball
    if margin >= ball.radius and ball.radius > 0:
        raise ValueError("margin must be smaller than the radius")
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    inner_radius = ball.radius - margin
    uf = _UnionFind(subgraph.retained_vertices)
    for source, _, target in subgraph.retained_edges:
        uf.union(source, target)
    inner = [v for v in subgraph.retained_vertices
             if ball.depths[v] <= inner_radius]
    by_root: dict[Word, list[Word]] = {}
    for v in inner:
        by_root.setdefault(uf.find(v), []).append(v)
    components = sorted(by_root.values(), key=lambda vs: ball.vertex_key(vs[0]))

    adjacency: dict[Word, list[Word]] = {v: [] for v in subgraph.retained_vertices}
    for source, _, target in subgraph.retained_edges:
        adjacency[source].append(target)

    witness_paths = []
    for members in components:
        representative = members[0]
        parents = _bfs_forest(representative, adjacency)
        for target in members[1:witnesses_per_component + 1]:
            path = _recover_path(parents, representative, target)
            witness_paths.append((representative, target, path))

    verdict = CONNECTED_AT_SCALE if len(components) == 1 else DISCONNECTED_AT_SCALE
    return ConnectivityReport(
        radius=ball.radius,
        margin=margin,
        inner_radius=inner_radius,
        ball_vertices=len(ball.vertices),
        retained_vertices=len(subgraph.retained_vertices),
        inner_retained_vertices=len(inner),
        component_count=len(components),
        representatives=tuple(members[0] for members in components),
        witness_paths=tuple(witness_paths),
        verdict=verdict,
    )


def _bfs_forest(start: Word, adjacency: dict[Word, list[Word]]) -> dict[Word, Word]:
    parents: dict[Word, Word] = {start: start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for neighbor in adjacency[current]:
            if neighbor not in parents:
                parents[neighbor] = current
                queue.append(neighbor)
    return parents


def _recover_path(parents: dict[Word, Word], source: Word,
                  target: Word) -> tuple[Word, ...]:
    path = [target]
    while path[-1] != source:
        path.append(parents[path[-1]])
    return tuple(reversed(path))


# ---------------------------------------------------------------------------
# Export


def export_graph(subgraph: ChiSubgraph, fmt: str,
                 include_dropped: bool = False) -> str:
    if fmt == "dot":
        return _export_dot(subgraph, include_dropped)
    if fmt == "svg":
        return _export_svg(subgraph, include_dropped)
    raise UnknownFormat(f"unknown export format {fmt!r}")


def _vertex_labels(subgraph: ChiSubgraph, include_dropped: bool):
    symbols = subgraph.ball.presentation.generators
    shown = subgraph.ball.vertices if include_dropped else subgraph.retained_vertices
    ids = {v: f"n{i}" for i, v in enumerate(subgraph.ball.vertices)}
    labels = {
        v: f"{display_word(v, symbols)} | chi={subgraph.chi_values[v]}"
        for v in shown
    }
    return shown, ids, labels


def _undirected_edges(subgraph: ChiSubgraph, include_dropped: bool):
    order = {v: i for i, v in enumerate(subgraph.ball.vertices)}
    edges = subgraph.ball.edges if include_dropped else subgraph.retained_edges
    seen = {}
    for source, _, target in edges:
        key = (min(order[source], order[target]), max(order[source], order[target]))
        if key not in seen:
            retained = (subgraph.is_retained(source)
                        and subgraph.is_retained(target))
            seen[key] = retained
    return sorted(seen.items())


def _export_dot(subgraph: ChiSubgraph, include_dropped: bool) -> str:
    shown, ids, labels = _vertex_labels(subgraph, include_dropped)
    vertices = list(subgraph.ball.vertices)
    lines = ["graph sigma_subgraph {"]
    for v in shown:
        style = "" if subgraph.is_retained(v) \
            else ", style=filled, fillcolor=gray80, fontcolor=gray40"
        lines.append(f'  {ids[v]} [label="{labels[v]}"{style}];')
    for (i, j), retained in _undirected_edges(subgraph, include_dropped):
        style = "" if retained else ' [color=gray70]'
        lines.append(f"  {ids[vertices[i]]} -- {ids[vertices[j]]}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export_svg(subgraph: ChiSubgraph, include_dropped: bool) -> str:
    """Static concentric layout: one circle per word length, vertices evenly
    spaced in canonical order."""
    import math

    shown, ids, labels = _vertex_labels(subgraph, include_dropped)
    ball = subgraph.ball
    ring = 80
    size = 2 * ring * (ball.radius + 1)
    center = size / 2
    by_depth: dict[int, list[Word]] = {}
    for v in shown:
        by_depth.setdefault(ball.depths[v], []).append(v)
    positions = {}
    for depth, members in sorted(by_depth.items()):
        r = ring * depth
        for i, v in enumerate(members):
            angle = 2 * math.pi * i / len(members)
            positions[v] = (center + r * math.cos(angle),
                            center + r * math.sin(angle))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
    ]
    vertices = list(ball.vertices)
    for (i, j), retained in _undirected_edges(subgraph, include_dropped):
        u, v = vertices[i], vertices[j]
        if u not in positions or v not in positions:
            continue
        (x1, y1), (x2, y2) = positions[u], positions[v]
        color = "#222222" if retained else "#bbbbbb"
        lines.append(f'  <line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" '
                     f'y2="{y2:.1f}" stroke="{color}"/>')
    for v in shown:
        x, y = positions[v]
        fill = "#1f77b4" if subgraph.is_retained(v) else "#cccccc"
        lines.append(f'  <circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="{fill}"/>')
        lines.append(f'  <text x="{x + 6:.1f}" y="{y - 6:.1f}" '
                     f'font-size="9">{labels[v]}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
