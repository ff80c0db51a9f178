"""Weighted dual graphs of SNC divisors: blow-ups, contractions, fiber solving.

A configuration of smooth rational curves crossing transversally is encoded
as a simple weighted graph: one vertex per irreducible component carrying its
self-intersection number, one edge per intersection point.  Blow-ups and
contractions act on that graph in the usual way; the fiber solver recovers
the multiplicities of a degenerate fiber of a P^1-fibration from the zero
pairing conditions alone, which makes it an independent check on any blow-up
bookkeeping done alongside.

Graphs are immutable values; every operation returns a new graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

ROLES = ("boundary", "fiber-component", "section", "exceptional", "other")

# A blow-up center is a point on exactly one component (vertex id) or the
# intersection point of two components (edge, as an id pair).
BlowupCenter = Union[str, tuple[str, str]]

# An effective divisor supported on the configuration: id -> multiplicity >= 1.
WeightedMember = dict[str, int]


class GraphError(ValueError):
    """Structural problem with an SNC graph operation."""


class FiberSolveError(GraphError):
    """The fiber conditions have no valid multiplicity assignment."""


@dataclass(frozen=True)
class Vertex:
    id: str
    self_int: int
    role: str = "other"
    label: str = ""

    def __post_init__(self):
        if not self.id:
            raise GraphError("vertex id must be nonempty")
        if self.role not in ROLES:
            raise GraphError(f"unknown role {self.role!r}")
        if not self.label:
            object.__setattr__(self, "label", self.id)


@dataclass(frozen=True)
class SncGraph:
    vertices: tuple[Vertex, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate vertex ids")
        known = set(ids)
        for edge in self.edges:
            if len(edge) != 2:
                raise GraphError("edges must join two distinct vertices")
            if not edge <= known:
                raise GraphError(f"edge {sorted(edge)} references unknown vertex")

    # -- basic queries ----------------------------------------------------

    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise GraphError(f"no vertex {vid!r}")

    def has_vertex(self, vid: str) -> bool:
        return any(v.id == vid for v in self.vertices)

    def self_int(self, vid: str) -> int:
        return self.vertex(vid).self_int

    def neighbors(self, vid: str) -> tuple[str, ...]:
        self.vertex(vid)
        out = {next(iter(e - {vid})) for e in self.edges if vid in e}
        return tuple(sorted(out))

    def degree(self, vid: str) -> int:
        return len(self.neighbors(vid))

    def has_edge(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    # -- value-style updates ----------------------------------------------

    def add_vertex(self, vid: str, self_int: int, role: str = "other",
                   label: str = "") -> "SncGraph":
        if self.has_vertex(vid):
            raise GraphError(f"vertex {vid!r} already present")
        return SncGraph(self.vertices + (Vertex(vid, self_int, role, label),),
                        self.edges)

    def add_edge(self, a: str, b: str) -> "SncGraph":
        if a == b:
            raise GraphError("loops are not allowed")
        edge = frozenset((a, b))
        if edge in self.edges:
            raise GraphError(f"edge {sorted(edge)} already present")
        if not (self.has_vertex(a) and self.has_vertex(b)):
            raise GraphError("edge endpoints must exist")
        return SncGraph(self.vertices, self.edges | {edge})

    def bump_self_int(self, vid: str, delta: int) -> "SncGraph":
        out = tuple(replace(v, self_int=v.self_int + delta) if v.id == vid else v
                    for v in self.vertices)
        self.vertex(vid)
        return SncGraph(out, self.edges)

    def set_role(self, vid: str, role: str) -> "SncGraph":
        self.vertex(vid)
        out = tuple(replace(v, role=role) if v.id == vid else v
                    for v in self.vertices)
        return SncGraph(out, self.edges)

    def rename_vertex(self, old: str, new: str, label: str = "") -> "SncGraph":
        if self.has_vertex(new):
            raise GraphError(f"vertex {new!r} already present")
        self.vertex(old)
        verts = tuple(
            replace(v, id=new, label=label or new) if v.id == old else v
            for v in self.vertices)
        edges = frozenset(
            frozenset(new if x == old else x for x in e) for e in self.edges)
        return SncGraph(verts, edges)


def make_graph(vertices: Iterable[tuple], edges: Iterable[tuple[str, str]] = ()) -> SncGraph:
    """Build a graph from (id, self_int[, role[, label]]) tuples and id pairs."""
    vs = tuple(Vertex(*spec) for spec in vertices)
    es = frozenset(frozenset(pair) for pair in edges)
    return SncGraph(vs, es)


def is_connected(g: SncGraph) -> bool:
    if not g.vertices:
        return True
    seen = {g.vertices[0].id}
    frontier = [g.vertices[0].id]
    while frontier:
        v = frontier.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(g.vertices)


def is_tree(g: SncGraph) -> bool:
    return is_connected(g) and len(g.edges) == len(g.vertices) - 1


def induced_subgraph(g: SncGraph, ids: Iterable[str]) -> SncGraph:
    keep = set(ids)
    for vid in keep:
        g.vertex(vid)
    verts = tuple(v for v in g.vertices if v.id in keep)
    edges = frozenset(e for e in g.edges if e <= keep)
    return SncGraph(verts, edges)


# -- blow-up / contraction -------------------------------------------------

def _center_components(g: SncGraph, center: BlowupCenter) -> tuple[str, ...]:
    if isinstance(center, str):
        g.vertex(center)
        return (center,)
    if isinstance(center, tuple) and len(center) == 2:
        a, b = center
        if not g.has_edge(a, b):
            raise GraphError(f"no edge {sorted((a, b))} to blow up")
        return (a, b)
    raise GraphError(f"invalid blow-up center {center!r}")


def blow_up(g: SncGraph, center: BlowupCenter,
            members: Sequence[WeightedMember] = (), *,
            new_id: str | None = None, role: str = "exceptional",
            label: str = "") -> tuple[SncGraph, list[WeightedMember]]:
    """Blow up a point of the configuration.

    The center is either a general point of one component or the crossing
    point of two adjacent components.  A new exceptional vertex of
    self-intersection -1 appears; every component through the center drops
    by one and meets the new vertex; a blown-up crossing disappears.  Each
    weighted member picks up the new vertex with multiplicity equal to the
    total multiplicity of the member along the center (pullback rule).
    """
    through = _center_components(g, center)
    if new_id is None:
        k = 1
        while g.has_vertex(f"E{k}"):
            k += 1
        new_id = f"E{k}"
    elif g.has_vertex(new_id):
        raise GraphError(f"vertex {new_id!r} already present")

    verts = tuple(
        replace(v, self_int=v.self_int - 1) if v.id in through else v
        for v in g.vertices) + (Vertex(new_id, -1, role, label),)
    edges = set(g.edges)
    if len(through) == 2:
        edges.discard(frozenset(through))
    for vid in through:
        edges.add(frozenset((vid, new_id)))
    out = SncGraph(verts, frozenset(edges))

    new_members: list[WeightedMember] = []
    for member in members:
        _check_member(g, member)
        m2 = dict(member)
        total = sum(member.get(vid, 0) for vid in through)
        if total:
            m2[new_id] = total
        new_members.append(m2)
    return out, new_members


def contract(g: SncGraph, vid: str) -> SncGraph:
    """Contract a (-1)-vertex with at most two neighbours.

    The neighbours gain one in self-intersection and, when there are two of
    them, become adjacent (they now meet at the contracted point).
    """
    v = g.vertex(vid)
    if v.self_int != -1:
        raise GraphError(f"cannot contract {vid!r}: self-intersection {v.self_int} != -1")
    nbrs = g.neighbors(vid)
    if len(nbrs) > 2:
        raise GraphError(
            f"cannot contract {vid!r}: {len(nbrs)} neighbours would leave a non-SNC point")
    if len(nbrs) == 2 and g.has_edge(*nbrs):
        raise GraphError(
            f"cannot contract {vid!r}: neighbours already meet, contraction would "
            "create a tangency")
    verts = tuple(
        replace(w, self_int=w.self_int + 1) if w.id in nbrs else w
        for w in g.vertices if w.id != vid)
    edges = {e for e in g.edges if vid not in e}
    if len(nbrs) == 2:
        edges.add(frozenset(nbrs))
    return SncGraph(verts, frozenset(edges))


def _check_member(g: SncGraph, member: WeightedMember) -> None:
    for vid, mult in member.items():
        if not g.has_vertex(vid):
            raise GraphError(f"member references unknown vertex {vid!r}")
        if mult < 1:
            raise GraphError(f"member multiplicity at {vid!r} must be >= 1")


# -- chains -----------------------------------------------------------------

def chain_type(g: SncGraph, start: str) -> list[int]:
    """Self-intersections of a path graph read from one endpoint.

    Raises ``GraphError`` when the graph is not a chain or the start vertex
    is not an endpoint of it.
    """
    if not g.vertices:
        raise GraphError("empty graph has no chain type")
    if not is_connected(g):
        raise GraphError("graph is not connected, hence not a chain")
    degrees = {v.id: g.degree(v.id) for v in g.vertices}
    if any(d > 2 for d in degrees.values()):
        raise GraphError("graph has a branch vertex, hence is not a chain")
    if degrees[start] > 1 and len(g.vertices) > 1:
        raise GraphError(f"{start!r} is not an endpoint of the chain")
    g.vertex(start)
    order = [start]
    prev = None
    while True:
        nxt = [w for w in g.neighbors(order[-1]) if w != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    if len(order) != len(g.vertices):
        raise GraphError("graph is not a chain")
    return [g.self_int(vid) for vid in order]


# -- fiber multiplicities ----------------------------------------------------

def fiber_multiplicities(g: SncGraph, fiber: Iterable[str],
                         section: str) -> dict[str, int]:
    """Multiplicities of a degenerate fiber of a P^1-fibration.

    The fiber F = sum(m_i C_i) of a P^1-fibration pairs to zero with each of
    its own components and to one with a section.  Writing Q for the
    intersection matrix of the fiber components (self-intersections on the
    diagonal, adjacency off it), this pins down m as the kernel of Q
    normalized so that the component meeting the section has multiplicity 1.
    A fiber tree admits exactly one such assignment and it is positive and
    integral; any failure indicates that the input is not a fiber.
    """
    fiber_ids = sorted(set(fiber))
    if not fiber_ids:
        raise FiberSolveError("fiber set is empty")
    for vid in fiber_ids:
        g.vertex(vid)
    if section in fiber_ids:
        raise FiberSolveError("section cannot be part of the fiber")
    g.vertex(section)
    if not is_connected(induced_subgraph(g, fiber_ids)):
        raise FiberSolveError("fiber set is not connected")
    touching = [vid for vid in g.neighbors(section) if vid in fiber_ids]
    if len(touching) != 1:
        raise FiberSolveError(
            f"section meets {len(touching)} fiber components, expected exactly 1")
    anchor = touching[0]

    index = {vid: k for k, vid in enumerate(fiber_ids)}
    n = len(fiber_ids)
    q = [[Fraction(0)] * n for _ in range(n)]
    for vid in fiber_ids:
        q[index[vid]][index[vid]] = Fraction(g.self_int(vid))
        for w in g.neighbors(vid):
            if w in index:
                q[index[vid]][index[w]] = Fraction(1)

    kernel = _nullspace(q)
    if not kernel:
        raise FiberSolveError("fiber conditions admit no nonzero solution")
    if len(kernel) > 1:
        raise FiberSolveError("fiber conditions do not determine the multiplicities")
    vec = kernel[0]
    if vec[index[anchor]] == 0:
        raise FiberSolveError("component meeting the section has multiplicity zero")
    scale = vec[index[anchor]]
    vec = [c / scale for c in vec]
    if any(c <= 0 for c in vec):
        raise FiberSolveError("fiber multiplicities are not all positive")
    if any(c.denominator != 1 for c in vec):
        raise FiberSolveError("fiber multiplicities are not integral")

    # independent re-verification by substitution
    for row in range(n):
        if sum(q[row][col] * vec[col] for col in range(n)) != 0:
            raise FiberSolveError("solver result fails substitution check")
    return {vid: int(vec[index[vid]]) for vid in fiber_ids}


def fiber_self_intersection(g: SncGraph, mults: Mapping[str, int]) -> Fraction:
    """(sum m_i C_i)^2 for a weighted fiber; zero for a true fiber class."""
    total = Fraction(0)
    for vid, m in mults.items():
        total += Fraction(m * m * g.self_int(vid))
        for w in g.neighbors(vid):
            if w in mults:
                total += Fraction(m * mults[w])
    return total


def _nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the kernel of a square matrix, by exact Gaussian elimination."""
    if not rows:
        return []
    n = len(rows)
    m = len(rows[0])
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(m):
        pivot = next((i for i in range(r, n) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(n):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * m
        vec[fc] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -mat[prow][fc]
        basis.append(vec)
    return basis


# -- serialization -----------------------------------------------------------

def graph_to_obj(g: SncGraph) -> dict:
    return {
        "vertices": [
            {"id": v.id, "label": v.label, "self_int": v.self_int, "role": v.role}
            for v in sorted(g.vertices, key=lambda v: v.id)
        ],
        "edges": sorted(sorted(e) for e in g.edges),
    }


def graph_to_json(g: SncGraph) -> str:
    return json.dumps(graph_to_obj(g), indent=2, sort_keys=True) + "\n"


def graph_from_obj(obj: Mapping) -> SncGraph:
    verts = tuple(
        Vertex(v["id"], v["self_int"], v.get("role", "other"), v.get("label", ""))
        for v in obj["vertices"])
    edges = frozenset(frozenset(pair) for pair in obj["edges"])
    return SncGraph(verts, edges)


def graph_from_json(text: str) -> SncGraph:
    return graph_from_obj(json.loads(text))


def graph_to_dot(g: SncGraph) -> str:
    """Graphviz rendering with bit-stable ordering."""
    lines = ["graph snc {", "  node [shape=circle];"]
    for v in sorted(g.vertices, key=lambda v: v.id):
        lines.append(f'  "{v.id}" [label="{v.label} ({v.self_int})\\n{v.role}"];')
    for a, b in sorted(tuple(sorted(e)) for e in g.edges):
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graphs_isomorphic(a: SncGraph, b: SncGraph) -> bool:
    """Tree isomorphism respecting self-intersections and roles."""
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    if not (is_tree(a) and is_tree(b)):
        raise GraphError("isomorphism test implemented for trees only")
    return _tree_canon(a) == _tree_canon(b)


def _tree_canon(g: SncGraph):
    if not g.vertices:
        return ()
    # root at the centroid-ish vertex chosen canonically by repeated leaf pruning
    remaining = {v.id for v in g.vertices}
    adj = {v.id: set(g.neighbors(v.id)) for v in g.vertices}
    while len(remaining) > 2:
        leaves = [v for v in remaining if len(adj[v] & remaining) <= 1]
        if len(leaves) == len(remaining):
            break
        for leaf in leaves:
            remaining.discard(leaf)
    candidates = sorted(remaining)

    def encode(vid: str, parent: str | None):
        v = g.vertex(vid)
        children = sorted(
            (encode(w, vid) for w in g.neighbors(vid) if w != parent))
        return (v.self_int, v.role, tuple(children))

    return min(encode(c, None) for c in candidates)
