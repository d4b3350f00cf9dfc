"""Built-in desk-scale instances shipped under catalog/."""
import json
import os
from typing import Dict, Iterator, List, Optional

import networkx as nx
from pydantic import ValidationError

try:
    from .atlas import Signature
    from .config import catalog_path, config
    from .errors import InputError
    from .formats import GraphFile, RibbonFile, graph_data, loads, matroid_from_graph_file, read_text, ribbon_from_json
    from .logger import logger
    from .matroid import RepresentedMatroid, SignedVector, VectorKind, from_graph
    from .ribbon import RibbonGraph
except ImportError:
    from atlas import Signature
    from config import catalog_path, config
    from errors import InputError
    from formats import GraphFile, RibbonFile, graph_data, loads, matroid_from_graph_file, read_text, ribbon_from_json
    from logger import logger
    from matroid import RepresentedMatroid, SignedVector, VectorKind, from_graph
    from ribbon import RibbonGraph

NAMES = ("single_edge", "theta", "triangle", "path2", "k4", "fig5", "k5me")


class CatalogEntry(GraphFile):
    name: str
    provenance: str
    ribbon: Optional[RibbonFile] = None
    root_vertex: int = 1
    faces: Optional[Dict[str, List[int]]] = None
    signature_terms: Optional[List[str]] = None
    zero_sum: Optional[List[str]] = None
    expected: Dict[str, int] = {}

    def matroid(self) -> RepresentedMatroid:
        return matroid_from_graph_file(self)

    def ribbon_graph(self) -> RibbonGraph:
        graph = graph_data(self)
        if self.ribbon is None:
            return RibbonGraph.default(graph, self.root_vertex)
        return ribbon_from_json(self.ribbon.model_dump(), graph, self.name)

    def term_vector(self, term: str) -> SignedVector:
        """Signed sum of faces, e.g. "-125" = -(F1 + F2 + F5)."""
        if not self.faces:
            raise InputError(f"{self.name} has no faces", {"entry": self.name})
        sign = -1 if term.startswith("-") else 1
        total = [0] * len(self.edges)
        for label in term.lstrip("+-"):
            if label not in self.faces:
                raise InputError(f"Unknown face {label!r}", {"entry": self.name, "term": term})
            for arc in self.faces[label]:
                total[abs(arc) - 1] += 1 if arc > 0 else -1
        return SignedVector(tuple(sign * x for x in total))

    def face_signature(self, m: Optional[RepresentedMatroid] = None) -> Signature:
        m = m or self.matroid()
        if not self.signature_terms:
            raise InputError(f"{self.name} carries no signature", {"entry": self.name})
        return Signature.build(m, VectorKind.CIRCUIT, (self.term_vector(t) for t in self.signature_terms))


def load_entry(name: str) -> CatalogEntry:
    path = name if name.endswith(".json") and os.path.exists(name) else catalog_path(f"{name}.json")
    data = loads(read_text(path), path)
    try:
        return CatalogEntry.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"{path}: invalid catalog entry", {"path": path, "errors": json.loads(exc.json(include_url=False))})


def load_catalog(names=NAMES) -> List[CatalogEntry]:
    entries = [load_entry(n) for n in names]
    logger.debug("Catalog loaded", entries=len(entries), directory=config.catalog_dir)
    return entries


def connected_graphs(max_edges: int = 6) -> Iterator[RepresentedMatroid]:
    """Every connected simple graph with 1..max_edges edges, once per isomorphism class.

    Uses the networkx graph atlas (all graphs on up to 7 nodes), which covers every
    connected graph with at most 6 edges. Edges are oriented from lower to higher vertex.
    """
    if max_edges > 6:
        raise InputError("The graph atlas only covers graphs with at most 6 edges", {"max_edges": max_edges})
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() < 2 or g.number_of_edges() > max_edges or not nx.is_connected(g):
            continue
        edges = sorted((min(u, v) + 1, max(u, v) + 1) for u, v in g.edges())
        yield from_graph(g.number_of_nodes(), edges)
