"""Regular matroids represented by totally unimodular matrices.

Edges are 0-based indices in Python collections; arcs (``ArcId``) are signed
1-based integers: ``+i`` is the reference direction of edge ``i-1`` and ``-i``
its reverse. Files and CLI output use 1-based edge ids.
"""
import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

try:
    from .config import config
    from .errors import CapExceededError, InputError, VerificationError
    from .linalg import (column_rank, determinant, in_row_space, inverse, kernel_vector,
                         mat_vec, row_space_projector, to_matrix)
    from .logger import logger
except ImportError:
    from config import config
    from errors import CapExceededError, InputError, VerificationError
    from linalg import (column_rank, determinant, in_row_space, inverse, kernel_vector,
                        mat_vec, row_space_projector, to_matrix)
    from logger import logger

Basis = FrozenSet[int]


class VectorKind(str, Enum):
    CIRCUIT = "circuit"
    COCIRCUIT = "cocircuit"
    GENERAL = "general"


@dataclass(frozen=True)
class SignedVector:
    """A {0,±1}-vector. Equality ignores ``kind`` so circuits of M* equal cocircuits of M."""
    entries: Tuple[int, ...]
    kind: VectorKind = field(default=VectorKind.GENERAL, compare=False)

    def __post_init__(self):
        if any(x not in (-1, 0, 1) for x in self.entries):
            raise InputError("Signed vector entries must be in {-1,0,1}", {"entries": list(self.entries)})

    @cached_property
    def support(self) -> FrozenSet[int]:
        return frozenset(e for e, x in enumerate(self.entries) if x)

    @cached_property
    def plus_mask(self) -> int:
        return sum(1 << e for e, x in enumerate(self.entries) if x > 0)

    @cached_property
    def minus_mask(self) -> int:
        return sum(1 << e for e, x in enumerate(self.entries) if x < 0)

    @property
    def support_mask(self) -> int:
        return self.plus_mask | self.minus_mask

    def arcs(self) -> Tuple[int, ...]:
        return tuple((e + 1) * x for e, x in enumerate(self.entries) if x)

    def dot(self, w: Sequence) -> Fraction:
        return sum((Fraction(wi) * x for wi, x in zip(w, self.entries) if x), Fraction(0))

    def with_kind(self, kind: VectorKind) -> "SignedVector":
        return SignedVector(self.entries, kind)

    def __neg__(self) -> "SignedVector":
        return SignedVector(tuple(-x for x in self.entries), self.kind)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.entries) + ")"

    def to_dict(self) -> dict:
        return {"support": sorted(e + 1 for e in self.support),
                "signs": [self.entries[e] for e in sorted(self.support)]}


@dataclass(frozen=True)
class GraphData:
    """Directed multigraph with 1-based vertices; edge i is ``edges[i] = (tail, head)``."""
    vertices: int
    edges: Tuple[Tuple[int, int], ...]

    def endpoints(self, e: int) -> Tuple[int, int]:
        return self.edges[e]

    def to_networkx(self, edge_subset: Optional[Iterable[int]] = None) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(1, self.vertices + 1))
        chosen = range(len(self.edges)) if edge_subset is None else edge_subset
        for e in chosen:
            tail, head = self.edges[e]
            g.add_edge(tail, head, key=e)
        return g


@dataclass(frozen=True)
class RepresentedMatroid:
    matrix: Tuple[Tuple[int, ...], ...]
    edge_labels: Tuple[str, ...] = ()
    graph: Optional[GraphData] = field(default=None, compare=False)

    def __post_init__(self):
        # rank memo keyed by column set; not part of equality or hashing
        object.__setattr__(self, "_rank_cache", {})

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    @property
    def r(self) -> int:
        return len(self.matrix)

    @property
    def edges(self) -> range:
        return range(self.n)

    def label(self, e: int) -> str:
        return self.edge_labels[e] if self.edge_labels else f"e{e + 1}"

    def rank(self, edges: Iterable[int]) -> int:
        key = frozenset(edges)
        cache = self._rank_cache
        if key not in cache:
            cache[key] = column_rank(self.matrix, sorted(key))
        return cache[key]

    @cached_property
    def bases(self) -> Tuple[Basis, ...]:
        found = tuple(frozenset(c) for c in itertools.combinations(self.edges, self.r)
                      if self.rank(c) == self.r)
        logger.debug("Bases enumerated", n=self.n, r=self.r, count=len(found))
        return found

    @cached_property
    def circuits(self) -> Tuple[SignedVector, ...]:
        return _minimal_kernel_vectors(self, VectorKind.CIRCUIT)

    @cached_property
    def cocircuits(self) -> Tuple[SignedVector, ...]:
        if self.r == self.n:
            # every edge is a coloop
            out = []
            for e in self.edges:
                unit = tuple(1 if i == e else 0 for i in self.edges)
                out.append(SignedVector(unit, VectorKind.COCIRCUIT))
                out.append(-SignedVector(unit, VectorKind.COCIRCUIT))
            return tuple(out)
        return tuple(v.with_kind(VectorKind.COCIRCUIT) for v in dual(self).circuits)

    @cached_property
    def dual_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        if self.r == self.n:
            raise InputError("dual rank zero: every edge is a coloop", {"n": self.n, "r": self.r})
        b = sorted(self.bases[0])
        nb = [e for e in self.edges if e not in b]
        mb_inv = inverse([[row[c] for c in b] for row in self.matrix])
        mn = [[row[c] for c in nb] for row in self.matrix]
        # D = M_B^{-1} M_N, so that M = M_B [I | D] up to column order
        d = [[sum(mb_inv[s][t] * mn[t][j] for t in range(self.r)) for j in range(len(nb))]
             for s in range(self.r)]
        rows = []
        for t, ne in enumerate(nb):
            row = [0] * self.n
            for s, be in enumerate(b):
                value = -d[s][t]
                if value.denominator != 1:
                    raise VerificationError("Non-integral dual entry; matrix is not unimodular",
                                            {"basis": [x + 1 for x in b]})
                row[be] = int(value)
            row[ne] = 1
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def circuit_index(self) -> Dict[FrozenSet[int], SignedVector]:
        """Support -> the orientation listed first."""
        index: Dict[FrozenSet[int], SignedVector] = {}
        for v in self.circuits:
            index.setdefault(v.support, v)
        return index

    @cached_property
    def cocircuit_index(self) -> Dict[FrozenSet[int], SignedVector]:
        index: Dict[FrozenSet[int], SignedVector] = {}
        for v in self.cocircuits:
            index.setdefault(v.support, v)
        return index

    @cached_property
    def row_projector(self) -> List[List[Fraction]]:
        return row_space_projector(self.matrix)

    def vectors(self, kind: VectorKind) -> Tuple[SignedVector, ...]:
        return self.circuits if kind == VectorKind.CIRCUIT else self.cocircuits

    def __repr__(self) -> str:
        return f"RepresentedMatroid(n={self.n}, r={self.r})"


def _minimal_kernel_vectors(m: RepresentedMatroid, kind: VectorKind) -> Tuple[SignedVector, ...]:
    """Minimal dependent column sets in increasing cardinality, both signs each."""
    found: List[SignedVector] = []
    supports: List[FrozenSet[int]] = []
    for size in range(1, m.r + 2):
        for cols in itertools.combinations(m.edges, size):
            s = frozenset(cols)
            if any(c <= s for c in supports):
                continue
            if m.rank(cols) == size:
                continue
            vec = kernel_vector(m.matrix, list(cols))
            if vec is None:
                continue
            pivot = next(x for x in vec if x != 0)
            entries = [0] * m.n
            for c, x in zip(cols, vec):
                value = x / pivot
                if value not in (-1, 0, 1):
                    raise VerificationError("Circuit vector is not a {0,±1}-vector",
                                            {"support": [c + 1 for c in cols]})
                entries[c] = int(value)
            v = SignedVector(tuple(entries), kind)
            supports.append(s)
            found.append(v)
            found.append(-v)
    return tuple(found)


def _check_entries(rows: Sequence[Sequence[int]]) -> None:
    if not rows or not rows[0]:
        raise InputError("Empty matrix", {})
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InputError("Ragged matrix", {"row": i + 1, "length": len(row), "expected": width})
        for j, x in enumerate(row):
            if x not in (-1, 0, 1):
                raise InputError("Matrix entries must be in {-1,0,1}",
                                 {"row": i + 1, "column": j + 1, "value": x})


def unimodularity_violation(rows: Sequence[Sequence[int]]) -> Optional[dict]:
    """First square submatrix with determinant outside {-1,0,1}, or None."""
    r, n = len(rows), len(rows[0])
    for k in range(2, min(r, n) + 1):
        for rs in itertools.combinations(range(r), k):
            for cs in itertools.combinations(range(n), k):
                det = determinant([[rows[i][j] for j in cs] for i in rs])
                if det not in (-1, 0, 1):
                    return {"rows": [i + 1 for i in rs], "columns": [j + 1 for j in cs], "determinant": det}
    return None


def from_matrix(rows: Sequence[Sequence[int]], edge_labels: Sequence[str] = ()) -> RepresentedMatroid:
    rows = [[int(x) for x in row] for row in rows]
    _check_entries(rows)
    r, n = len(rows), len(rows[0])
    if r > n:
        raise InputError("More rows than columns", {"r": r, "n": n})
    actual = to_matrix(rows).rank()
    if actual < r:
        raise InputError("Rank deficiency: rows are linearly dependent", {"r": r, "rank": actual})
    if n > config.tu_cap:
        raise CapExceededError("TU_CAP", config.tu_cap, n)
    witness = unimodularity_violation(rows)
    if witness:
        raise InputError("Matrix is not totally unimodular", witness)
    logger.info("Matroid built from matrix", n=n, r=r)
    return RepresentedMatroid(tuple(tuple(row) for row in rows), tuple(edge_labels))


def from_graph(vertices: int, edges: Sequence[Sequence[int]], edge_labels: Sequence[str] = ()) -> RepresentedMatroid:
    """Oriented incidence matrix (+1 at head, -1 at tail), highest vertex row deleted."""
    if not edges:
        raise InputError("Graph has no edges", {"vertices": vertices})
    for i, edge in enumerate(edges):
        if len(edge) != 2 or not all(1 <= v <= vertices for v in edge):
            raise InputError("Edge endpoint out of range", {"edge": i + 1, "endpoints": list(edge)})
    graph = GraphData(vertices, tuple((int(t), int(h)) for t, h in edges))
    if vertices < 2:
        raise InputError("Graph matroid has rank zero", {"vertices": vertices})
    if not nx.is_connected(graph.to_networkx()):
        raise InputError("Graph is disconnected", {
            "components": [sorted(c) for c in nx.connected_components(graph.to_networkx())]})
    rows = []
    for v in range(1, vertices):
        row = []
        for tail, head in graph.edges:
            if tail == head:
                row.append(0)
            else:
                row.append(1 if v == head else -1 if v == tail else 0)
        rows.append(tuple(row))
    logger.info("Matroid built from graph", vertices=vertices, edges=len(edges))
    return RepresentedMatroid(tuple(rows), tuple(edge_labels), graph)


def dual(m: RepresentedMatroid) -> RepresentedMatroid:
    """M* = [-Dᵀ | I] from the row reduction at the lexicographically first basis."""
    return RepresentedMatroid(m.dual_matrix, m.edge_labels)


def enumerate_bases(m: RepresentedMatroid) -> List[Basis]:
    return list(m.bases)


def signed_circuits(m: RepresentedMatroid) -> List[SignedVector]:
    return list(m.circuits)


def signed_cocircuits(m: RepresentedMatroid) -> List[SignedVector]:
    return list(m.cocircuits)


def rank(m: RepresentedMatroid, edges: Iterable[int]) -> int:
    return m.rank(edges)


def _check_arc(m: RepresentedMatroid, arc: int) -> int:
    if arc == 0 or abs(arc) > m.n:
        raise InputError("Arc id out of range", {"arc": arc, "n": m.n})
    return abs(arc) - 1


def fundamental_circuit(m: RepresentedMatroid, b: Iterable[int], arc: int) -> SignedVector:
    """The signed circuit in B ∪ {e}, oriented to agree with ``arc`` on e."""
    e = _check_arc(m, arc)
    b = frozenset(b)
    if e in b:
        raise InputError("Fundamental circuit needs an edge outside the basis", {"arc": arc, "basis": sorted(x + 1 for x in b)})
    scope = b | {e}
    sign = 1 if arc > 0 else -1
    for v in m.circuits:
        if v.entries[e] == sign and v.support <= scope:
            return v
    raise InputError("Not a basis", {"basis": sorted(x + 1 for x in b)})


def fundamental_cocircuit(m: RepresentedMatroid, b: Iterable[int], arc: int) -> SignedVector:
    """The signed cocircuit in (E \\ B) ∪ {e}, oriented to agree with ``arc`` on e."""
    e = _check_arc(m, arc)
    b = frozenset(b)
    if e not in b:
        raise InputError("Fundamental cocircuit needs an edge of the basis", {"arc": arc, "basis": sorted(x + 1 for x in b)})
    scope = (frozenset(m.edges) - b) | {e}
    sign = 1 if arc > 0 else -1
    for v in m.cocircuits:
        if v.entries[e] == sign and v.support <= scope:
            return v
    raise InputError("Not a basis", {"basis": sorted(x + 1 for x in b)})


def conformal_decompose(m: RepresentedMatroid, u: Sequence) -> List[Tuple[Fraction, SignedVector]]:
    """Write u as a positive combination of signed (co)circuits conformal to u.

    u must lie in ker(M) (circuits are used) or in the row space of M (cocircuits).
    """
    u = [Fraction(x) for x in u]
    if len(u) != m.n:
        raise InputError("Vector length does not match the edge count", {"length": len(u), "n": m.n})
    if not any(u):
        return []
    if not any(mat_vec(m.matrix, u)):
        pool = m.circuits
    elif in_row_space(m.matrix, u):
        pool = m.cocircuits
    else:
        raise InputError("Vector lies neither in the kernel nor in the row space", {"vector": [str(x) for x in u]})
    parts: List[Tuple[Fraction, SignedVector]] = []
    while any(u):
        chosen = next((v for v in pool
                       if all(u[e] * x > 0 for e, x in enumerate(v.entries) if x)), None)
        if chosen is None:
            raise VerificationError("No conformal component found", {"remainder": [str(x) for x in u]})
        coeff = min(abs(u[e]) for e in chosen.support)
        for e in chosen.support:
            u[e] -= coeff * chosen.entries[e]
        parts.append((coeff, chosen))
    return parts


def count_spanning_trees(m: RepresentedMatroid) -> int:
    """Matrix-tree theorem: det of the reduced Laplacian M Mᵀ (loops have zero columns)."""
    if m.graph is None:
        raise InputError("count_spanning_trees needs a graph-backed matroid", {})
    mat = to_matrix(m.matrix)
    return int((mat * mat.T).det())


def is_loop(m: RepresentedMatroid, e: int) -> bool:
    return all(row[e] == 0 for row in m.matrix)


def is_coloop(m: RepresentedMatroid, e: int) -> bool:
    return m.rank(x for x in m.edges if x != e) < m.r


def to_graph(m: RepresentedMatroid) -> Optional[nx.MultiDiGraph]:
    if m.graph is None:
        return None
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(1, m.graph.vertices + 1))
    for e, (tail, head) in enumerate(m.graph.edges):
        g.add_edge(tail, head, key=e, label=m.label(e))
    return g


def _subsets_with(m: RepresentedMatroid, keep) -> List[FrozenSet[int]]:
    if m.n > config.orientation_cap:
        raise CapExceededError("ORIENTATION_CAP", config.orientation_cap, m.n)
    return [frozenset(s) for size in range(m.n + 1)
            for s in itertools.combinations(m.edges, size) if keep(s)]


def independent_sets(m: RepresentedMatroid) -> List[FrozenSet[int]]:
    return _subsets_with(m, lambda s: m.rank(s) == len(s))


def spanning_sets(m: RepresentedMatroid) -> List[FrozenSet[int]]:
    return _subsets_with(m, lambda s: m.rank(s) == m.r)
