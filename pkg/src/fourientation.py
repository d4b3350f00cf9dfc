"""Fourientations, orientations and circuit-cocircuit reversal classes.

Orientations are handled internally as bitmasks: bit e set means edge e is
reversed (Minus). A signed vector is contained in an orientation ``o`` exactly
when ``o & support == minus_mask``.
"""
from collections import deque
from dataclasses import dataclass
from enum import IntFlag
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

try:
    from .config import config
    from .errors import CapExceededError, InputError
    from .logger import logger
    from .matroid import RepresentedMatroid, SignedVector, VectorKind, conformal_decompose
except ImportError:
    from config import config
    from errors import CapExceededError, InputError
    from logger import logger
    from matroid import RepresentedMatroid, SignedVector, VectorKind, conformal_decompose


class EdgeState(IntFlag):
    EMPTY = 0
    PLUS = 1
    MINUS = 2
    BI = 3


_TO_CHAR = {EdgeState.EMPTY: "o", EdgeState.PLUS: "+", EdgeState.MINUS: "-", EdgeState.BI: "b"}
_FROM_CHAR = {c: s for s, c in _TO_CHAR.items()}
_SWAP = {EdgeState.EMPTY: EdgeState.EMPTY, EdgeState.PLUS: EdgeState.MINUS,
         EdgeState.MINUS: EdgeState.PLUS, EdgeState.BI: EdgeState.BI}


@dataclass(frozen=True)
class Fourientation:
    states: Tuple[EdgeState, ...]

    @classmethod
    def parse(cls, text: str) -> "Fourientation":
        try:
            return cls(tuple(_FROM_CHAR[c] for c in text.strip()))
        except KeyError as exc:
            raise InputError(f"Bad fourientation character {exc.args[0]!r}", {"text": text})

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "Fourientation":
        return cls(tuple(EdgeState.PLUS if s > 0 else EdgeState.MINUS for s in signs))

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "Fourientation":
        return cls(tuple(EdgeState.MINUS if mask >> e & 1 else EdgeState.PLUS for e in range(n)))

    @classmethod
    def from_arcs(cls, arcs: Iterable[int], n: int) -> "Fourientation":
        states = [EdgeState.EMPTY] * n
        for a in arcs:
            if a == 0 or abs(a) > n:
                raise InputError("Arc id out of range", {"arc": a, "n": n})
            states[abs(a) - 1] |= EdgeState.PLUS if a > 0 else EdgeState.MINUS
        return cls(tuple(EdgeState(s) for s in states))

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, e: int) -> EdgeState:
        return self.states[e]

    def __str__(self) -> str:
        return "".join(_TO_CHAR[s] for s in self.states)

    def arcs(self) -> FrozenSet[int]:
        out = set()
        for e, s in enumerate(self.states):
            if s & EdgeState.PLUS:
                out.add(e + 1)
            if s & EdgeState.MINUS:
                out.add(-(e + 1))
        return frozenset(out)

    # algebra
    def negate(self) -> "Fourientation":
        return Fourientation(tuple(_SWAP[s] for s in self.states))

    def complement(self) -> "Fourientation":
        return Fourientation(tuple(EdgeState(3 ^ s) for s in self.states))

    def minus_complement(self) -> "Fourientation":
        return self.complement().negate()

    def restrict(self, edges: Iterable[int]) -> "Fourientation":
        keep = set(edges)
        return Fourientation(tuple(s if e in keep else EdgeState.EMPTY for e, s in enumerate(self.states)))

    def intersect(self, other: "Fourientation") -> "Fourientation":
        return Fourientation(tuple(EdgeState(a & b) for a, b in zip(self.states, other.states)))

    def union(self, other: "Fourientation") -> "Fourientation":
        return Fourientation(tuple(EdgeState(a | b) for a, b in zip(self.states, other.states)))

    # orientation views
    def is_orientation(self) -> bool:
        return all(s in (EdgeState.PLUS, EdgeState.MINUS) for s in self.states)

    def mask(self) -> int:
        if not self.is_orientation():
            raise InputError("Not an orientation", {"fourientation": str(self)})
        return sum(1 << e for e, s in enumerate(self.states) if s == EdgeState.MINUS)

    def signs(self) -> Tuple[int, ...]:
        self.mask()
        return tuple(1 if s == EdgeState.PLUS else -1 for s in self.states)

    def edges_in(self, *states: EdgeState) -> FrozenSet[int]:
        return frozenset(e for e, s in enumerate(self.states) if s in states)


def four_algebra(f: Fourientation) -> Dict[str, object]:
    return {
        "negate": f.negate(),
        "complement": f.complement(),
        "minus_complement": f.minus_complement(),
        "restrict": f.restrict,
    }


def contains(f: Fourientation, v: SignedVector) -> bool:
    """Arc containment of a signed vector in a fourientation."""
    for e, x in enumerate(v.entries):
        if x > 0 and not f.states[e] & EdgeState.PLUS:
            return False
        if x < 0 and not f.states[e] & EdgeState.MINUS:
            return False
    return True


def potential_circuits(m: RepresentedMatroid, f: Fourientation) -> List[SignedVector]:
    return [c for c in m.circuits if contains(f, c)]


def potential_cocircuits(m: RepresentedMatroid, f: Fourientation) -> List[SignedVector]:
    g = f.minus_complement()
    return [c for c in m.cocircuits if contains(g, c)]


def parse_orientation(text: str) -> Fourientation:
    o = Fourientation.parse(text)
    if not o.is_orientation():
        raise InputError("Orientation strings use only '+' and '-'", {"text": text})
    return o


def _mask_contains(o: int, v: SignedVector) -> bool:
    return o & v.support_mask == v.minus_mask


def _difference(o1: Fourientation, o2: Fourientation) -> List[int]:
    s1, s2 = o1.signs(), o2.signs()
    if len(s1) != len(s2):
        raise InputError("Orientations of different lengths", {"lengths": [len(s1), len(s2)]})
    return [a if a != b else 0 for a, b in zip(s1, s2)]


def _split(m: RepresentedMatroid, d: Sequence[int]) -> Optional[Tuple[List[Fraction], List[Fraction]]]:
    """Orthogonal split d = u + u* (u in ker M, u* in rowspace M), if it is a valid reversal."""
    p = m.row_projector
    u_star = [sum((p[i][j] * d[j] for j in range(m.n) if d[j]), Fraction(0)) for i in range(m.n)]
    u = [Fraction(d[i]) - u_star[i] for i in range(m.n)]
    for e in range(m.n):
        if u[e] not in (-1, 0, 1) or u_star[e] not in (-1, 0, 1):
            return None
        if u[e] and u_star[e]:
            return None
        if (u[e] and u[e] != d[e]) or (u_star[e] and u_star[e] != d[e]):
            return None
    return u, u_star


def class_equivalent(m: RepresentedMatroid, o1: Fourientation, o2: Fourientation) -> bool:
    return _split(m, _difference(o1, o2)) is not None


def class_difference(m: RepresentedMatroid, o1: Fourientation,
                     o2: Fourientation) -> Tuple[List[SignedVector], List[SignedVector]]:
    """Disjoint signed circuits and cocircuits of o1 whose reversal turns o1 into o2."""
    split = _split(m, _difference(o1, o2))
    if split is None:
        raise InputError("Orientations are not in one reversal class", {"o1": str(o1), "o2": str(o2)})
    u, u_star = split
    circuits = [v for _, v in conformal_decompose(m, u)]
    cocircuits = [v for _, v in conformal_decompose(m, u_star)]
    return circuits, cocircuits


@dataclass(frozen=True)
class ReversalClass:
    canonical_rep: Fourientation
    members: Tuple[Fourientation, ...] = ()

    def __len__(self) -> int:
        return len(self.members)


def _lex_key(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(mask >> e & 1 for e in range(n))


def _check_cap(m: RepresentedMatroid) -> None:
    if m.n > config.orientation_cap:
        raise CapExceededError("ORIENTATION_CAP", config.orientation_cap, m.n)


def _partition(m: RepresentedMatroid, moves: Sequence[SignedVector]) -> Tuple[List[List[int]], Dict[int, int]]:
    """BFS components of all 2^n orientation masks under the given reversals."""
    _check_cap(m)
    label: Dict[int, int] = {}
    comps: List[List[int]] = []
    for start in range(1 << m.n):
        if start in label:
            continue
        idx = len(comps)
        comp = [start]
        label[start] = idx
        queue = deque([start])
        while queue:
            o = queue.popleft()
            for v in moves:
                if _mask_contains(o, v):
                    nxt = o ^ v.support_mask
                    if nxt not in label:
                        label[nxt] = idx
                        comp.append(nxt)
                        queue.append(nxt)
        comps.append(comp)
    return comps, label


def _classes(m: RepresentedMatroid, moves: Sequence[SignedVector]) -> List[ReversalClass]:
    comps, _ = _partition(m, moves)
    out = []
    for comp in comps:
        comp.sort(key=lambda o: _lex_key(o, m.n))
        out.append(ReversalClass(Fourientation.from_mask(comp[0], m.n),
                                 tuple(Fourientation.from_mask(o, m.n) for o in comp)))
    out.sort(key=lambda c: _lex_key(c.canonical_rep.mask(), m.n))
    return out


def enumerate_classes(m: RepresentedMatroid) -> List[ReversalClass]:
    classes = _classes(m, m.circuits + m.cocircuits)
    logger.info("Reversal classes enumerated", n=m.n, classes=len(classes))
    return classes


def circuit_classes(m: RepresentedMatroid) -> List[ReversalClass]:
    return _classes(m, m.circuits)


def cocircuit_classes(m: RepresentedMatroid) -> List[ReversalClass]:
    return _classes(m, m.cocircuits)


@lru_cache(maxsize=32)
def class_index(m: RepresentedMatroid) -> Dict[int, ReversalClass]:
    """Orientation mask -> its reversal class."""
    index: Dict[int, ReversalClass] = {}
    for cls in enumerate_classes(m):
        for member in cls.members:
            index[member.mask()] = cls
    return index


def class_of(m: RepresentedMatroid, o: Fourientation) -> ReversalClass:
    return class_index(m)[o.mask()]


def bfs_equivalent(m: RepresentedMatroid, o1: Fourientation, o2: Fourientation) -> bool:
    """Oracle for class_equivalent: search from o1 by single reversals."""
    _check_cap(m)
    start, goal = o1.mask(), o2.mask()
    moves = m.circuits + m.cocircuits
    seen = {start}
    queue = deque([start])
    while queue:
        o = queue.popleft()
        if o == goal:
            return True
        for v in moves:
            if _mask_contains(o, v):
                nxt = o ^ v.support_mask
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return False


def all_orientations(m: RepresentedMatroid) -> List[Fourientation]:
    _check_cap(m)
    return [Fourientation.from_mask(o, m.n) for o in range(1 << m.n)]


def reverse(o: Fourientation, vectors: Iterable[SignedVector]) -> Fourientation:
    mask = o.mask()
    for v in vectors:
        mask ^= v.support_mask
    return Fourientation.from_mask(mask, len(o))


def vectors_in(m: RepresentedMatroid, o: Fourientation, kind: VectorKind) -> List[SignedVector]:
    return [v for v in m.vectors(kind) if contains(o, v)]
