"""Atlases of oriented bases and circuit/cocircuit signatures."""
import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

try:
    from .errors import InputError, VerificationError
    from .fourientation import EdgeState, Fourientation, contains, potential_circuits, potential_cocircuits
    from .logger import logger
    from .lp import INFEASIBLE, feasible_point
    from .matroid import (Basis, RepresentedMatroid, SignedVector, VectorKind,
                          fundamental_circuit, fundamental_cocircuit)
    from .utils import edge_key, parallel_map
except ImportError:
    from errors import InputError, VerificationError
    from fourientation import EdgeState, Fourientation, contains, potential_circuits, potential_cocircuits
    from logger import logger
    from lp import INFEASIBLE, feasible_point
    from matroid import (Basis, RepresentedMatroid, SignedVector, VectorKind,
                         fundamental_circuit, fundamental_cocircuit)
    from utils import edge_key, parallel_map


class Polarity(str, Enum):
    EXTERNAL = "external"
    INTERNAL = "internal"


@dataclass(frozen=True)
class OrientedBasis:
    basis: Basis
    fourientation: Fourientation
    polarity: Polarity

    def __post_init__(self):
        for e, s in enumerate(self.fourientation.states):
            inside = e in self.basis
            bi_expected = inside if self.polarity == Polarity.EXTERNAL else not inside
            ok = s == EdgeState.BI if bi_expected else s in (EdgeState.PLUS, EdgeState.MINUS)
            if not ok:
                raise InputError(f"Not an {self.polarity.value}ly oriented basis", {
                    "basis": edge_key(self.basis), "fourientation": str(self.fourientation), "edge": e + 1})


@dataclass(frozen=True)
class Atlas:
    polarity: Polarity
    entries: Tuple[OrientedBasis, ...]

    def __post_init__(self):
        for ob in self.entries:
            if ob.polarity != self.polarity:
                raise InputError("Entry polarity does not match the atlas", {"basis": edge_key(ob.basis)})

    @classmethod
    def build(cls, m: RepresentedMatroid, polarity: Polarity, oriented: Iterable[OrientedBasis]) -> "Atlas":
        by_basis: Dict[Basis, OrientedBasis] = {}
        for ob in oriented:
            if ob.basis in by_basis:
                raise InputError("Basis appears twice in the atlas", {"basis": edge_key(ob.basis)})
            by_basis[ob.basis] = ob
        missing = [b for b in m.bases if b not in by_basis]
        extra = [b for b in by_basis if b not in set(m.bases)]
        if missing or extra:
            raise InputError("Atlas does not cover every basis exactly once", {
                "missing": [edge_key(b) for b in missing], "not_bases": [edge_key(b) for b in extra]})
        return cls(polarity, tuple(by_basis[b] for b in m.bases))

    def __getitem__(self, basis: Iterable[int]) -> Fourientation:
        basis = frozenset(basis)
        for ob in self.entries:
            if ob.basis == basis:
                return ob.fourientation
        raise KeyError(edge_key(basis))

    def __len__(self) -> int:
        return len(self.entries)

    def bases(self) -> List[Basis]:
        return [ob.basis for ob in self.entries]

    def as_dict(self) -> Dict[str, str]:
        return {edge_key(ob.basis): str(ob.fourientation) for ob in self.entries}


@dataclass(frozen=True)
class Signature:
    """One chosen orientation per circuit (or per cocircuit), keyed by support."""
    polarity: VectorKind
    chosen: Tuple[SignedVector, ...]
    _by_support: Dict[FrozenSet[int], SignedVector] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_support", {v.support: v for v in self.chosen})

    @classmethod
    def build(cls, m: RepresentedMatroid, polarity: VectorKind, vectors: Iterable[SignedVector]) -> "Signature":
        index = m.circuit_index if polarity == VectorKind.CIRCUIT else m.cocircuit_index
        chosen: Dict[FrozenSet[int], SignedVector] = {}
        for v in vectors:
            if v.support not in index or v not in (index[v.support], -index[v.support]):
                raise InputError(f"Not a signed {polarity.value}", {"vector": v.to_dict()})
            if v.support in chosen:
                raise InputError(f"Two orientations chosen for one {polarity.value}", {"support": edge_key(v.support)})
            chosen[v.support] = v.with_kind(polarity)
        missing = [s for s in index if s not in chosen]
        if missing:
            raise InputError(f"Signature misses some {polarity.value}s", {"missing": [edge_key(s) for s in missing]})
        return cls(polarity, tuple(chosen[s] for s in index))

    def for_support(self, support: FrozenSet[int]) -> SignedVector:
        return self._by_support[support]

    def __contains__(self, v: SignedVector) -> bool:
        return self._by_support.get(v.support) == v

    def __len__(self) -> int:
        return len(self.chosen)

    def key(self) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(v.entries for v in self.chosen)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self.polarity == other.polarity and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.polarity, self.key()))


@dataclass(frozen=True)
class AtlasVerdict:
    ok: bool
    witness: Optional[Dict[str, Any]] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class AcyclicityResult:
    acyclic: bool
    weights: Optional[Tuple[Fraction, ...]] = None
    certificate: Optional[Tuple[Tuple[SignedVector, Fraction], ...]] = None

    def __bool__(self) -> bool:
        return self.acyclic


def atlas_from_signature(m: RepresentedMatroid, sig: Signature) -> Atlas:
    """A_σ (circuit signature, external) or A*_σ* (cocircuit signature, internal)."""
    external = sig.polarity == VectorKind.CIRCUIT
    entries = []
    for b in m.bases:
        states = []
        for e in m.edges:
            if (e in b) == external:
                states.append(EdgeState.BI)
                continue
            if external:
                support = fundamental_circuit(m, b, e + 1).support
            else:
                support = fundamental_cocircuit(m, b, e + 1).support
            sign = sig.for_support(support).entries[e]
            states.append(EdgeState.PLUS if sign > 0 else EdgeState.MINUS)
        entries.append(OrientedBasis(b, Fourientation(tuple(states)),
                                     Polarity.EXTERNAL if external else Polarity.INTERNAL))
    return Atlas(Polarity.EXTERNAL if external else Polarity.INTERNAL, tuple(entries))


def signature_from_atlas(m: RepresentedMatroid, a: Atlas) -> Signature:
    """Read σ(C) from the oriented bases; every witness (B, e) with C = C(B, e) must agree."""
    external = a.polarity == Polarity.EXTERNAL
    kind = VectorKind.CIRCUIT if external else VectorKind.COCIRCUIT
    readings: Dict[FrozenSet[int], Tuple[SignedVector, Basis, int]] = {}
    for ob in a.entries:
        for e in m.edges:
            if (e in ob.basis) == external:
                continue
            arc = (e + 1) if ob.fourientation[e] == EdgeState.PLUS else -(e + 1)
            if external:
                v = fundamental_circuit(m, ob.basis, arc)
            else:
                v = fundamental_cocircuit(m, ob.basis, arc)
            seen = readings.get(v.support)
            if seen is None:
                readings[v.support] = (v, ob.basis, e)
            elif seen[0] != v:
                witness = {"basis_1": edge_key(seen[1]), "basis_2": edge_key(ob.basis),
                           kind.value: edge_key(v.support), "signs_1": str(seen[0]), "signs_2": str(v)}
                logger.warning("Atlas is not signature-induced", **witness)
                raise VerificationError("Atlas is not induced by a signature", witness)
    return Signature.build(m, kind, (readings[s][0] for s in readings))


def _pair_fourientation(a: Atlas, b1: Fourientation, b2: Fourientation) -> Fourientation:
    f = b1.intersect(b2.negate())
    return f if a.polarity == Polarity.EXTERNAL else f.complement()


def _scan_pairs(m: RepresentedMatroid, a: Atlas, failing) -> AtlasVerdict:
    pairs = [(x, y) for x, y in itertools.permutations(a.entries, 2)]
    results = parallel_map(lambda p: failing(_pair_fourientation(a, p[0].fourientation, p[1].fourientation)), pairs)
    for (x, y), bad in zip(pairs, results):
        if bad is not None:
            return AtlasVerdict(False, {"basis_1": edge_key(x.basis), "basis_2": edge_key(y.basis), **bad})
    return AtlasVerdict(True)


def pair_dissects(m: RepresentedMatroid, polarity: Polarity, f: Fourientation) -> bool:
    """The pair fourientation f separates: potential cocircuit (external) or potential circuit (internal)."""
    if polarity == Polarity.EXTERNAL:
        return bool(potential_cocircuits(m, f))
    return bool(potential_circuits(m, f))


def pair_triangulates(m: RepresentedMatroid, polarity: Polarity, f: Fourientation) -> bool:
    if polarity == Polarity.EXTERNAL:
        return not potential_circuits(m, f)
    return not potential_cocircuits(m, f)


def is_dissecting(m: RepresentedMatroid, a: Atlas) -> AtlasVerdict:
    def failing(f):
        return None if pair_dissects(m, a.polarity, f) else {"fourientation": str(f)}
    return _scan_pairs(m, a, failing)


def is_triangulating(m: RepresentedMatroid, a: Atlas) -> AtlasVerdict:
    def failing(f):
        if a.polarity == Polarity.EXTERNAL:
            found = potential_circuits(m, f)
        else:
            found = potential_cocircuits(m, f)
        return {"fourientation": str(f), "witness_vector": str(found[0])} if found else None
    return _scan_pairs(m, a, failing)


def is_acyclic(m: RepresentedMatroid, sig: Signature) -> AcyclicityResult:
    """Feasibility of { w : w·σ(C) >= 1 for all C }, exactly.

    Variables are w+ , w- and a surplus per chosen vector. An infeasible system
    yields Phase-I duals y <= 0 whose negation is a zero-sum certificate.
    """
    chosen = sig.chosen
    if not chosen:
        return AcyclicityResult(True, weights=tuple(Fraction(0) for _ in m.edges))
    k = len(chosen)
    rows = []
    for i, v in enumerate(chosen):
        rows.append(list(v.entries) + [-x for x in v.entries] + [-1 if t == i else 0 for t in range(k)])
    result = feasible_point(rows, [1] * k)
    if result.status != INFEASIBLE:
        x = result.x
        w = tuple(x[e] - x[m.n + e] for e in m.edges)
        return AcyclicityResult(True, weights=w)
    coeffs = [-y for y in result.farkas]
    total = [sum((c * v.entries[e] for c, v in zip(coeffs, chosen)), Fraction(0)) for e in m.edges]
    if any(c < 0 for c in coeffs) or not any(coeffs) or any(total):
        raise VerificationError("Invalid acyclicity certificate", {"coefficients": [str(c) for c in coeffs]})
    certificate = tuple((v, c) for v, c in zip(chosen, coeffs) if c)
    logger.info("Signature is not acyclic", terms=len(certificate))
    return AcyclicityResult(False, certificate=certificate)


def is_triangulating_signature(m: RepresentedMatroid, sig: Signature) -> AtlasVerdict:
    """Every signed (co)circuit contained in an oriented basis of the induced atlas lies in σ."""
    a = atlas_from_signature(m, sig)
    pool = m.vectors(sig.polarity)
    for ob in a.entries:
        for v in pool:
            if contains(ob.fourientation, v) and v not in sig:
                return AtlasVerdict(False, {"basis": edge_key(ob.basis), sig.polarity.value: str(v)})
    return AtlasVerdict(True)


def is_triangulating_cycle_signature_graph(m: RepresentedMatroid, sig: Signature) -> AtlasVerdict:
    """Graph criterion: no three chosen directed cycles sum to zero."""
    if m.graph is None:
        raise InputError("The triple criterion applies to graph-represented matroids only", {})
    if sig.polarity != VectorKind.CIRCUIT:
        raise InputError("The triple criterion needs a cycle signature", {"polarity": sig.polarity.value})
    lookup = {v.entries: v for v in sig.chosen}
    for v1, v2 in itertools.combinations(sig.chosen, 2):
        target = tuple(-(a + b) for a, b in zip(v1.entries, v2.entries))
        v3 = lookup.get(target)
        if v3 is not None and v3 is not v1 and v3 is not v2:
            return AtlasVerdict(False, {"cycles": [str(v1), str(v2), str(v3)]})
    return AtlasVerdict(True)


def acyclic_signature_from_weights(m: RepresentedMatroid, w: Sequence, polarity: VectorKind) -> Signature:
    if len(w) != m.n:
        raise InputError("Weight vector length does not match the edge count", {"length": len(w), "n": m.n})
    chosen = []
    for v in m.vectors(polarity):
        value = v.dot(w)
        if value == 0:
            raise InputError("Weights are not generic", {polarity.value: str(v)})
        if value > 0:
            chosen.append(v)
    return Signature.build(m, polarity, chosen)


def away_from_root_signature(m: RepresentedMatroid, q: int) -> Signature:
    """Orient every bond away from the side containing the root vertex q."""
    g = _require_graph(m, q)
    chosen = []
    for support, v in m.cocircuit_index.items():
        rest = g.to_networkx(e for e in m.edges if e not in support)
        near = nx.node_connected_component(rest, q)
        entries = [0] * m.n
        for e in support:
            tail, _ = g.endpoints(e)
            entries[e] = 1 if tail in near else -1
        vec = SignedVector(tuple(entries), VectorKind.COCIRCUIT)
        if vec not in (v, -v):
            raise VerificationError("Bond orientation is not a signed cocircuit", {"support": edge_key(support)})
        chosen.append(vec)
    return Signature.build(m, VectorKind.COCIRCUIT, chosen)


def away_from_root_internal_atlas(m: RepresentedMatroid, q: int) -> Atlas:
    """Per spanning tree: tree edges oriented away from q, other edges bioriented."""
    g = _require_graph(m, q)
    entries = []
    for b in m.bases:
        depth = nx.single_source_shortest_path_length(g.to_networkx(b), q)
        states = []
        for e in m.edges:
            if e not in b:
                states.append(EdgeState.BI)
                continue
            tail, head = g.endpoints(e)
            states.append(EdgeState.PLUS if depth[tail] < depth[head] else EdgeState.MINUS)
        entries.append(OrientedBasis(b, Fourientation(tuple(states)), Polarity.INTERNAL))
    return Atlas(Polarity.INTERNAL, tuple(entries))


def _require_graph(m: RepresentedMatroid, q: int):
    if m.graph is None:
        raise InputError("A graph-backed matroid is required", {})
    if not 1 <= q <= m.graph.vertices:
        raise InputError("Root vertex out of range", {"q": q, "vertices": m.graph.vertices})
    return m.graph


def atlas_from_mapping(m: RepresentedMatroid, mapping: Mapping[Basis, Fourientation],
                       polarity: Optional[Polarity] = None) -> Atlas:
    """Build and validate an atlas from basis -> fourientation; polarity inferred when omitted."""
    if polarity is None:
        b, f = next(iter(mapping.items()))
        polarity = Polarity.EXTERNAL if all(f[e] == EdgeState.BI for e in b) else Polarity.INTERNAL
    return Atlas.build(m, polarity, (OrientedBasis(frozenset(b), f, polarity) for b, f in mapping.items()))

