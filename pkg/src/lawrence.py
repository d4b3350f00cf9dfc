"""Lawrence matrices and polytopes.

Vertex ids are signed 1-based integers: ``+i`` is column i of ``[[M, 0], [I, I]]``
and ``-i`` is column n+i. On the dual side M is replaced by M*, and every
combinatorial answer is expressed with internal atlases of the base matroid.
"""
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

try:
    from .atlas import (Atlas, OrientedBasis, Polarity, acyclic_signature_from_weights, atlas_from_signature,
                        is_dissecting, is_triangulating, pair_dissects, pair_triangulates)
    from .config import config
    from .errors import CapExceededError, InputError
    from .fourientation import Fourientation
    from .linalg import column_rank, inverse, mat_vec
    from .logger import logger
    from .lp import OPTIMAL, solve
    from .matroid import RepresentedMatroid, VectorKind, dual, is_loop
except ImportError:
    from atlas import (Atlas, OrientedBasis, Polarity, acyclic_signature_from_weights, atlas_from_signature,
                       is_dissecting, is_triangulating, pair_dissects, pair_triangulates)
    from config import config
    from errors import CapExceededError, InputError
    from fourientation import Fourientation
    from linalg import column_rank, inverse, mat_vec
    from logger import logger
    from lp import OPTIMAL, solve
    from matroid import RepresentedMatroid, VectorKind, dual, is_loop

Simplex = FrozenSet[int]


class Side(str, Enum):
    PRIMAL = "primal"
    DUAL = "dual"


@dataclass(frozen=True)
class LawrenceModel:
    base: RepresentedMatroid
    side: Side
    working: RepresentedMatroid
    matrix: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def rank(self) -> int:
        """n + r of the working matrix; also the vertex count of a maximal simplex."""
        return self.n + self.working.r

    @property
    def dimension(self) -> int:
        return self.rank - 1

    @property
    def polarity(self) -> Polarity:
        return Polarity.EXTERNAL if self.side == Side.PRIMAL else Polarity.INTERNAL

    @property
    def vector_kind(self) -> VectorKind:
        return VectorKind.CIRCUIT if self.side == Side.PRIMAL else VectorKind.COCIRCUIT

    def vertex_ids(self) -> List[int]:
        return list(range(1, self.n + 1)) + [-i for i in range(1, self.n + 1)]

    def column(self, v: int) -> int:
        if v == 0 or abs(v) > self.n:
            raise InputError("Vertex id out of range", {"vertex": v, "n": self.n})
        return v - 1 if v > 0 else self.n - v - 1

    def point(self, v: int) -> List[int]:
        c = self.column(v)
        return [row[c] for row in self.matrix]


@dataclass(frozen=True)
class FamilyClass:
    dissection: bool
    triangulation: bool
    atlas: Optional[Atlas] = None


@dataclass(frozen=True)
class OracleResult:
    interiors_intersect: bool
    common_face: bool


def build_lawrence(m: RepresentedMatroid, side: Side = Side.PRIMAL) -> LawrenceModel:
    side = Side(side)
    working = m if side == Side.PRIMAL else dual(m)
    for e in m.edges:
        if is_loop(working, e):
            what = "loop" if side == Side.PRIMAL else "coloop"
            raise InputError(f"Edge {e + 1} is a {what}; the {side.value} Lawrence polytope needs none",
                             {"edge": e + 1, "side": side.value})
    n, r = m.n, working.r
    rows = [tuple(list(row) + [0] * n) for row in working.matrix]
    for i in range(n):
        rows.append(tuple(1 if j % n == i else 0 for j in range(2 * n)))
    logger.debug("Lawrence matrix built", side=side.value, rows=n + r, columns=2 * n)
    return LawrenceModel(m, side, working, tuple(rows))


def chi_vertex(v: int) -> int:
    """P_i ↦ arc i; the correspondence is the identity on signed ids."""
    if v == 0:
        raise InputError("Vertex id 0 is not valid", {"vertex": v})
    return v


def _arcs(lm: LawrenceModel, vertex_set: Iterable[int]) -> Fourientation:
    return Fourientation.from_arcs((chi_vertex(v) for v in vertex_set), lm.n)


def is_maximal_simplex(lm: LawrenceModel, vertex_set: Iterable[int]) -> bool:
    vs = frozenset(vertex_set)
    if len(vs) != lm.rank or any(v == 0 or abs(v) > lm.n for v in vs):
        return False
    return column_rank(lm.matrix, [lm.column(v) for v in vs]) == lm.rank


def chi_simplex(lm: LawrenceModel, vertex_set: Iterable[int]) -> OrientedBasis:
    vs = frozenset(vertex_set)
    if not is_maximal_simplex(lm, vs):
        raise InputError("Not a maximal simplex", {"vertices": sorted(vs), "expected_size": lm.rank})
    f = _arcs(lm, vs)
    bi = frozenset(e for e in lm.base.edges if e + 1 in vs and -(e + 1) in vs)
    basis = bi if lm.side == Side.PRIMAL else frozenset(lm.base.edges) - bi
    return OrientedBasis(basis, f, lm.polarity)


def chi_atlas(lm: LawrenceModel, simplices: Iterable[Iterable[int]]) -> Atlas:
    return Atlas.build(lm.base, lm.polarity, (chi_simplex(lm, s) for s in simplices))


def simplex_of(ob: OrientedBasis) -> Simplex:
    """Inverse of chi_simplex."""
    return frozenset(ob.fourientation.arcs())


def enumerate_maximal_simplices(lm: LawrenceModel) -> List[Simplex]:
    found = [frozenset(c) for c in itertools.combinations(lm.vertex_ids(), lm.rank)
             if is_maximal_simplex(lm, c)]
    logger.info("Maximal simplices enumerated", side=lm.side.value, count=len(found))
    return found


def _pair(lm: LawrenceModel, s1: Iterable[int], s2: Iterable[int]) -> Fourientation:
    f = _arcs(lm, s1).intersect(_arcs(lm, s2).negate())
    return f if lm.side == Side.PRIMAL else f.complement()


def interiors_disjoint(lm: LawrenceModel, s1: Iterable[int], s2: Iterable[int]) -> bool:
    if frozenset(s1) == frozenset(s2):
        return False
    return pair_dissects(lm.base, lm.polarity, _pair(lm, s1, s2))


def common_face(lm: LawrenceModel, s1: Iterable[int], s2: Iterable[int]) -> bool:
    if frozenset(s1) == frozenset(s2):
        return True
    return pair_triangulates(lm.base, lm.polarity, _pair(lm, s1, s2))


def classify_family(lm: LawrenceModel, simplices: Sequence[Iterable[int]]) -> FamilyClass:
    """Dissection / triangulation via χ; coverage follows from |family| = |bases|."""
    try:
        atlas = chi_atlas(lm, simplices)
    except InputError as exc:
        logger.debug("Family is not an atlas", reason=exc.message)
        return FamilyClass(False, False)
    dissection = is_dissecting(lm.base, atlas).ok
    triangulation = dissection and is_triangulating(lm.base, atlas).ok
    return FamilyClass(dissection, triangulation, atlas)


def simplex_volume(lm: LawrenceModel) -> Tuple[int, int]:
    """(a, d) with volume √a / d for every maximal simplex."""
    return lm.n, factorial(lm.dimension)


def polytope_volume(lm: LawrenceModel) -> Tuple[int, int, int]:
    """(count, a, d): volume = count · √a / d."""
    a, d = simplex_volume(lm)
    return len(lm.base.bases), a, d


def format_volume(count: int, a: int, d: int) -> str:
    g = Fraction(count, d)
    root = "1" if a == 1 else f"√{a}"
    if g.numerator == 1 and a != 1:
        head = root
    elif a == 1:
        head = str(g.numerator)
    else:
        head = f"{g.numerator}{root}"
    return head if g.denominator == 1 else f"{head}/{g.denominator}"


def _heights(lm: LawrenceModel, h: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    missing = [v for v in lm.vertex_ids() if v not in h]
    if missing:
        raise InputError("Heights missing for some vertices", {"missing": missing})
    return {v: Fraction(h[v]) for v in lm.vertex_ids()}


def weights_from_heights(lm: LawrenceModel, h: Mapping[int, Fraction]) -> List[Fraction]:
    h = _heights(lm, h)
    return [h[i] - h[-i] for i in range(1, lm.n + 1)]


def heights_from_weights(w: Sequence) -> Dict[int, Fraction]:
    """Nonnegative heights with h(+i) - h(-i) = w_i."""
    h: Dict[int, Fraction] = {}
    for i, wi in enumerate(w, start=1):
        wi = Fraction(wi)
        h[i] = max(wi, Fraction(0))
        h[-i] = max(-wi, Fraction(0))
    return h


def regular_triangulation_from_heights(lm: LawrenceModel, h: Mapping[int, Fraction]) -> Atlas:
    w = weights_from_heights(lm, h)
    try:
        sig = acyclic_signature_from_weights(lm.base, [-x for x in w], lm.vector_kind)
    except InputError as exc:
        raise InputError("Heights are not generic", exc.witness)
    return atlas_from_signature(lm.base, sig)


def lower_facet_simplices(lm: LawrenceModel, h: Mapping[int, Fraction]) -> List[Simplex]:
    """Maximal simplices whose lifted facet lies strictly below every other lifted vertex."""
    h = _heights(lm, h)
    lower = []
    for s in enumerate_maximal_simplices(lm):
        order = sorted(s)
        n_inv = inverse([[row[lm.column(v)] for v in order] for row in lm.matrix])
        ok = True
        for v in lm.vertex_ids():
            if v in s:
                continue
            lam = mat_vec(n_inv, lm.point(v))
            if h[v] <= sum((l * h[u] for l, u in zip(lam, order)), Fraction(0)):
                ok = False
                break
        if ok:
            lower.append(s)
    return lower


def _check_geometric_cap(lm: LawrenceModel) -> None:
    if lm.rank > config.geometric_cap:
        raise CapExceededError("GEOMETRIC_CAP", config.geometric_cap, lm.rank)


def relative_interiors_meet(lm: LawrenceModel, a1: Sequence[int], a2: Sequence[int]) -> bool:
    """max t with λ = t + s >= t, μ = t + u >= t, Σλ = Σμ = 1, Σλ P = Σμ Q; meet iff t* > 0."""
    p = [lm.point(v) for v in a1]
    q = [lm.point(v) for v in a2]
    k1, k2 = len(p), len(q)
    dim = len(lm.matrix)
    rows = []
    for i in range(dim):
        t_coef = sum(x[i] for x in p) - sum(x[i] for x in q)
        rows.append([t_coef] + [x[i] for x in p] + [-x[i] for x in q])
    rows.append([k1] + [1] * k1 + [0] * k2)
    rows.append([k2] + [0] * k1 + [1] * k2)
    result = solve([1] + [0] * (k1 + k2), rows, [0] * dim + [1, 1])
    return result.status == OPTIMAL and result.value > 0


def geometric_oracle(lm: LawrenceModel, s1: Iterable[int], s2: Iterable[int]) -> OracleResult:
    """Direct geometry: interior test by LP, common face by scanning disjoint face pairs."""
    _check_geometric_cap(lm)
    v1, v2 = sorted(frozenset(s1)), sorted(frozenset(s2))
    if v1 == v2:
        return OracleResult(True, True)
    intersect = relative_interiors_meet(lm, v1, v2)
    proper = True
    for k1 in range(1, len(v1) + 1):
        for a1 in itertools.combinations(v1, k1):
            rest = [v for v in v2 if v not in a1]
            for k2 in range(1, len(rest) + 1):
                if k1 + k2 < 3:
                    continue
                for a2 in itertools.combinations(rest, k2):
                    if relative_interiors_meet(lm, a1, a2):
                        proper = False
                        break
                if not proper:
                    break
            if not proper:
                break
        if not proper:
            break
    return OracleResult(intersect, proper)


def contains_point(lm: LawrenceModel, s: Iterable[int], x: Sequence[Fraction]) -> bool:
    order = sorted(s)
    n_inv = inverse([[row[lm.column(v)] for v in order] for row in lm.matrix])
    return all(l >= 0 for l in mat_vec(n_inv, x))


def barycentre(lm: LawrenceModel, s: Iterable[int]) -> Tuple[Fraction, ...]:
    pts = [lm.point(v) for v in s]
    k = len(pts)
    return tuple(Fraction(sum(p[i] for p in pts), k) for i in range(len(lm.matrix)))


def uncovered_point(lm: LawrenceModel, simplices: Sequence[Iterable[int]]) -> Optional[Tuple[Fraction, ...]]:
    """A barycentre of some maximal simplex lying in none of the given simplices, if any."""
    _check_geometric_cap(lm)
    family = [frozenset(s) for s in simplices]
    for s in enumerate_maximal_simplices(lm):
        x = barycentre(lm, s)
        if not any(contains_point(lm, t, x) for t in family):
            return x
    return None


def atlas_simplices(atlas: Atlas) -> List[Simplex]:
    return [simplex_of(ob) for ob in atlas.entries]
