"""Ribbon graphs and the Bernardi tour.

A half-edge is ``(edge, tag)`` with a 0-based edge and tag 0 at the tail, 1 at
the head. A loop contributes both of its half-edges to one vertex.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

try:
    from .atlas import Atlas, OrientedBasis, Polarity
    from .errors import InputError, VerificationError
    from .fourientation import EdgeState, Fourientation
    from .logger import logger
    from .matroid import Basis, GraphData, RepresentedMatroid, from_graph
except ImportError:
    from atlas import Atlas, OrientedBasis, Polarity
    from errors import InputError, VerificationError
    from fourientation import EdgeState, Fourientation
    from logger import logger
    from matroid import Basis, GraphData, RepresentedMatroid, from_graph

HalfEdge = Tuple[int, int]


@dataclass(frozen=True)
class RibbonGraph:
    graph: GraphData
    rotation: Tuple[Tuple[HalfEdge, ...], ...]  # rotation[v - 1] = cyclic order at vertex v
    root_vertex: int
    root_half_edge: HalfEdge

    def __post_init__(self):
        if len(self.rotation) != self.graph.vertices:
            raise InputError("One rotation per vertex is required",
                             {"rotations": len(self.rotation), "vertices": self.graph.vertices})
        for v in range(1, self.graph.vertices + 1):
            expected = sorted(self.half_edges_at(v))
            got = sorted(self.rotation[v - 1])
            if got != expected:
                raise InputError("Rotation is not a permutation of the vertex's half-edges", {
                    "vertex": v, "rotation": [[e + 1, t] for e, t in self.rotation[v - 1]],
                    "expected": [[e + 1, t] for e, t in expected]})
        if self.vertex_of(self.root_half_edge) != self.root_vertex:
            raise InputError("Root half-edge is not incident to the root vertex", {
                "q": self.root_vertex, "half_edge": [self.root_half_edge[0] + 1, self.root_half_edge[1]]})
        succ = {}
        for cycle in self.rotation:
            for i, h in enumerate(cycle):
                succ[h] = cycle[(i + 1) % len(cycle)]
        object.__setattr__(self, "_succ", succ)

    @classmethod
    def from_rotations(cls, graph: GraphData, rotations: Mapping[int, Sequence[HalfEdge]],
                       root: Tuple[int, HalfEdge]) -> "RibbonGraph":
        rotation = tuple(tuple(tuple(h) for h in rotations.get(v, ())) for v in range(1, graph.vertices + 1))
        return cls(graph, rotation, root[0], tuple(root[1]))

    @classmethod
    def default(cls, graph: GraphData, q: int = 1) -> "RibbonGraph":
        """Rotation by increasing (edge, tag); rooted at the first half-edge of q."""
        rotation = []
        for v in range(1, graph.vertices + 1):
            rotation.append(tuple(sorted(_half_edges(graph, v))))
        if not rotation[q - 1]:
            raise InputError("Root vertex has no incident edge", {"q": q})
        return cls(graph, tuple(rotation), q, rotation[q - 1][0])

    def vertex_of(self, h: HalfEdge) -> int:
        tail, head = self.graph.endpoints(h[0])
        return head if h[1] else tail

    def half_edges_at(self, v: int) -> List[HalfEdge]:
        return _half_edges(self.graph, v)

    def successor(self, h: HalfEdge) -> HalfEdge:
        return self._succ[h]

    def matroid(self) -> RepresentedMatroid:
        return from_graph(self.graph.vertices, self.graph.edges)


def _half_edges(graph: GraphData, v: int) -> List[HalfEdge]:
    out = []
    for e, (tail, head) in enumerate(graph.edges):
        if tail == v:
            out.append((e, 0))
        if head == v:
            out.append((e, 1))
    return out


def bernardi_tour(rg: RibbonGraph, basis: Iterable[int]) -> Dict[int, int]:
    """Tour the tree from the root half-edge; returns edge -> tag of its first-cut half-edge."""
    tree = frozenset(basis)
    first_cut: Dict[int, int] = {}
    h = rg.root_half_edge
    limit = 2 * len(rg.graph.edges) + 1
    for _ in range(limit):
        e, tag = h
        if e in tree:
            opposite = (e, 1 - tag)
            h = rg.successor(opposite)
        else:
            first_cut.setdefault(e, tag)
            h = rg.successor(h)
        if h == rg.root_half_edge:
            return first_cut
    raise VerificationError("Bernardi tour did not close", {"basis": sorted(x + 1 for x in tree)})


def bernardi_oriented_basis(rg: RibbonGraph, basis: Basis) -> OrientedBasis:
    cuts = bernardi_tour(rg, basis)
    states = []
    for e in range(len(rg.graph.edges)):
        if e in basis:
            states.append(EdgeState.BI)
        elif e not in cuts:
            raise VerificationError("External edge never cut by the tour", {"edge": e + 1})
        else:
            # toward the first-cut endpoint: head end means the reference direction
            states.append(EdgeState.PLUS if cuts[e] == 1 else EdgeState.MINUS)
    return OrientedBasis(basis, Fourientation(tuple(states)), Polarity.EXTERNAL)


def bernardi_external_atlas(rg: RibbonGraph, m: Optional[RepresentedMatroid] = None) -> Atlas:
    m = m or rg.matroid()
    entries = tuple(bernardi_oriented_basis(rg, b) for b in m.bases)
    logger.info("Bernardi atlas built", bases=len(entries), q=rg.root_vertex)
    return Atlas(Polarity.EXTERNAL, entries)
