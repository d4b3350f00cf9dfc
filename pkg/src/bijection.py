"""The map f(B) = B⃗ ∩ B⃗*, its class-level version, and the subset extension φ."""
import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

try:
    from .atlas import (Atlas, Polarity, Signature, atlas_from_signature, is_dissecting, is_triangulating)
    from .config import config
    from .errors import CapExceededError, InputError, VerificationError
    from .fourientation import (Fourientation, ReversalClass, all_orientations, class_difference,
                                class_index, cocircuit_classes, circuit_classes, enumerate_classes,
                                vectors_in)
    from .logger import logger
    from .matroid import Basis, RepresentedMatroid, VectorKind, independent_sets, spanning_sets
    from .utils import edge_key, parallel_map
except ImportError:
    from atlas import (Atlas, Polarity, Signature, atlas_from_signature, is_dissecting, is_triangulating)
    from config import config
    from errors import CapExceededError, InputError, VerificationError
    from fourientation import (Fourientation, ReversalClass, all_orientations, class_difference,
                               class_index, cocircuit_classes, circuit_classes, enumerate_classes,
                               vectors_in)
    from logger import logger
    from matroid import Basis, RepresentedMatroid, VectorKind, independent_sets, spanning_sets
    from utils import edge_key, parallel_map

PhiTable = Dict[Fourientation, FrozenSet[int]]


@dataclass(frozen=True)
class Hypotheses:
    dissecting_ext: bool
    dissecting_int: bool
    triangulating_ext: bool
    triangulating_int: bool
    witnesses: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def hold(self) -> bool:
        return (self.dissecting_ext and self.dissecting_int
                and (self.triangulating_ext or self.triangulating_int))

    def to_dict(self) -> Dict[str, Any]:
        return {"dissecting_ext": self.dissecting_ext, "dissecting_int": self.dissecting_int,
                "triangulating_ext": self.triangulating_ext, "triangulating_int": self.triangulating_int,
                "hold": self.hold, "witnesses": self.witnesses}


@dataclass(frozen=True)
class FBarResult:
    mapping: Dict[Basis, ReversalClass]
    bijective: bool
    collision: Optional[Tuple[Basis, Basis]] = None
    hypotheses: Optional[Hypotheses] = None


def _check_pair(a_ext: Atlas, a_int: Atlas) -> None:
    if a_ext.polarity != Polarity.EXTERNAL or a_int.polarity != Polarity.INTERNAL:
        raise InputError("Expected an external and an internal atlas",
                         {"first": a_ext.polarity.value, "second": a_int.polarity.value})


def check_hypotheses(m: RepresentedMatroid, a_ext: Atlas, a_int: Atlas) -> Hypotheses:
    verdicts = {
        "dissecting_ext": is_dissecting(m, a_ext),
        "dissecting_int": is_dissecting(m, a_int),
        "triangulating_ext": is_triangulating(m, a_ext),
        "triangulating_int": is_triangulating(m, a_int),
    }
    witnesses = {k: v.witness for k, v in verdicts.items() if not v.ok}
    result = Hypotheses(witnesses=witnesses, **{k: v.ok for k, v in verdicts.items()})
    if not result.hold:
        logger.warning("Atlas pair fails the bijection hypotheses", **result.to_dict())
    return result


def f_map(m: RepresentedMatroid, a_ext: Atlas, a_int: Atlas, b: Basis) -> Fourientation:
    _check_pair(a_ext, a_int)
    o = a_ext[b].intersect(a_int[b])
    if not o.is_orientation():
        raise VerificationError("B⃗ ∩ B⃗* is not an orientation", {"basis": edge_key(b), "result": str(o)})
    return o


def f_table(m: RepresentedMatroid, a_ext: Atlas, a_int: Atlas) -> Dict[Basis, Fourientation]:
    return {b: f_map(m, a_ext, a_int, b) for b in m.bases}


def f_bar(m: RepresentedMatroid, a_ext: Atlas, a_int: Atlas, verify: Optional[bool] = None) -> FBarResult:
    """Bases -> reversal classes; bijective iff injective (class count equals basis count)."""
    verify = config.verify if verify is None else verify
    hypotheses = check_hypotheses(m, a_ext, a_int) if verify else None
    index = class_index(m)
    mapping: Dict[Basis, ReversalClass] = {}
    owner: Dict[Fourientation, Basis] = {}
    collision = None
    for b, o in f_table(m, a_ext, a_int).items():
        cls = index[o.mask()]
        mapping[b] = cls
        if cls.canonical_rep in owner and collision is None:
            collision = (owner[cls.canonical_rep], b)
        owner.setdefault(cls.canonical_rep, b)
    bijective = collision is None and len(owner) == len({c.canonical_rep for c in index.values()})
    if collision:
        logger.warning("f-bar collision", basis_1=edge_key(collision[0]), basis_2=edge_key(collision[1]))
    return FBarResult(mapping, bijective, collision, hypotheses)


def is_compatible(m: RepresentedMatroid, o: Fourientation, sig: Signature) -> bool:
    return all(v in sig for v in vectors_in(m, o, sig.polarity))


def compatible_orientations(m: RepresentedMatroid, sigma: Optional[Signature],
                            sigma_star: Optional[Signature]) -> List[Fourientation]:
    for sig, kind in ((sigma, VectorKind.CIRCUIT), (sigma_star, VectorKind.COCIRCUIT)):
        if sig is not None and sig.polarity != kind:
            raise InputError(f"Expected a {kind.value} signature", {"got": sig.polarity.value})
    return [o for o in all_orientations(m)
            if (sigma is None or is_compatible(m, o, sigma))
            and (sigma_star is None or is_compatible(m, o, sigma_star))]


def compatible_representatives(m: RepresentedMatroid, sigma: Signature, sigma_star: Signature) -> Dict[str, bool]:
    """Each class holds exactly one compatible orientation, for the three kinds of classes."""
    def one_each(classes: Sequence[ReversalClass], keep) -> bool:
        return all(sum(1 for o in c.members if keep(o)) == 1 for c in classes)
    both = set(compatible_orientations(m, sigma, sigma_star))
    return {
        "circuit_cocircuit": one_each(enumerate_classes(m), lambda o: o in both),
        "circuit": one_each(circuit_classes(m), lambda o: is_compatible(m, o, sigma)),
        "cocircuit": one_each(cocircuit_classes(m), lambda o: is_compatible(m, o, sigma_star)),
    }


def phi_table(m: RepresentedMatroid, a_ext: Atlas, a_int: Atlas, verify: Optional[bool] = None) -> PhiTable:
    """φ(O) = (B ∪ circuits) \\ cocircuits where f(B) is the image in O's class."""
    if m.n > config.phi_cap:
        raise CapExceededError("PHI_CAP", config.phi_cap, m.n)
    fb = f_bar(m, a_ext, a_int, verify)
    if fb.hypotheses is not None and not fb.hypotheses.hold:
        raise VerificationError("Atlas pair fails the bijection hypotheses", fb.hypotheses.to_dict())
    if not fb.bijective:
        witness = {"basis_1": edge_key(fb.collision[0]), "basis_2": edge_key(fb.collision[1])} if fb.collision else {}
        raise VerificationError("f-bar is not bijective", witness)
    images = f_table(m, a_ext, a_int)
    by_class = {fb.mapping[b].canonical_rep: (b, images[b]) for b in images}
    index = class_index(m)

    def image(o: Fourientation) -> FrozenSet[int]:
        b, fo = by_class[index[o.mask()].canonical_rep]
        circuits, cocircuits = class_difference(m, o, fo)
        added = frozenset().union(*(c.support for c in circuits))
        removed = frozenset().union(*(c.support for c in cocircuits))
        return (b | added) - removed

    orientations = all_orientations(m)
    table = dict(zip(orientations, parallel_map(image, orientations)))
    logger.info("Phi table built", orientations=len(table))
    return table


def phi(m: RepresentedMatroid, a_ext: Atlas, a_int: Atlas, o: Fourientation) -> FrozenSet[int]:
    return phi_table(m, a_ext, a_int)[o]


def invert_table(table: PhiTable) -> Dict[FrozenSet[int], Fourientation]:
    inverse: Dict[FrozenSet[int], Fourientation] = {}
    for o, s in table.items():
        if s in inverse:
            raise VerificationError("φ is not injective", {
                "subset": edge_key(s), "orientation_1": str(inverse[s]), "orientation_2": str(o)})
        inverse[s] = o
    return inverse


def phi_inverse(m: RepresentedMatroid, a_ext: Atlas, a_int: Atlas, s) -> Fourientation:
    inverse = invert_table(phi_table(m, a_ext, a_int))
    s = frozenset(s)
    if s not in inverse:
        raise VerificationError("Subset has no preimage", {"subset": edge_key(s)})
    return inverse[s]


def tiling_violation(table: PhiTable) -> Optional[Tuple[Fourientation, Fourientation]]:
    items = list(table.items())
    for (o1, s1), (o2, s2) in itertools.combinations(items, 2):
        sym = s1 ^ s2
        if not any(o1[e] != o2[e] for e in sym):
            return o1, o2
    return None


def is_tiling(m: RepresentedMatroid, table: PhiTable) -> bool:
    return tiling_violation(table) is None


def restricted_phi(m: RepresentedMatroid, table: PhiTable, edges) -> Tuple[Dict[FrozenSet[int], Fourientation], bool, bool]:
    """H ↦ φ⁻¹(H)|_A over H ⊆ A; returns the map, whether it is bijective onto orientations of A, and tiling."""
    a = frozenset(edges)
    inverse = invert_table(table)
    restricted = {}
    for size in range(len(a) + 1):
        for h in itertools.combinations(sorted(a), size):
            h = frozenset(h)
            restricted[h] = inverse[h].restrict(a)
    bijective = len(set(restricted.values())) == 2 ** len(a)
    tiling = is_tiling(m, {o: h for h, o in restricted.items()})
    return restricted, bijective, tiling


@dataclass(frozen=True)
class SpecializationReport:
    independents_match: bool
    spannings_match: bool
    circuit_representatives: bool
    cocircuit_representatives: bool

    def to_dict(self) -> Dict[str, bool]:
        return {"independents_match": self.independents_match, "spannings_match": self.spannings_match,
                "circuit_representatives": self.circuit_representatives,
                "cocircuit_representatives": self.cocircuit_representatives}


def specialization_report(m: RepresentedMatroid, sigma: Signature, sigma_star: Signature,
                          table: Optional[PhiTable] = None) -> SpecializationReport:
    """φ sends σ-compatible orientations onto independent sets and σ*-compatible ones onto spanning sets."""
    if table is None:
        table = phi_table(m, atlas_from_signature(m, sigma), atlas_from_signature(m, sigma_star))
    independents = set(independent_sets(m))
    spannings = set(spanning_sets(m))
    sigma_ok = [o for o in table if is_compatible(m, o, sigma)]
    star_ok = [o for o in table if is_compatible(m, o, sigma_star)]
    inverse = invert_table(table)

    def represents(classes: Sequence[ReversalClass], subsets) -> bool:
        chosen = {inverse[s] for s in subsets}
        return all(sum(1 for o in c.members if o in chosen) == 1 for c in classes)

    return SpecializationReport(
        independents_match=len(sigma_ok) == len(independents) and {table[o] for o in sigma_ok} == independents,
        spannings_match=len(star_ok) == len(spannings) and {table[o] for o in star_ok} == spannings,
        circuit_representatives=represents(circuit_classes(m), independents),
        cocircuit_representatives=represents(cocircuit_classes(m), spannings),
    )
