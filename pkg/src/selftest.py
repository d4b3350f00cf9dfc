"""Invariant suite over the built-in catalog.

Each check returns ``None`` on success or a small JSON-serialisable witness.
The quick scope limits K5-e to signature-level checks and skips the heavier
geometric and table-building checks on larger instances.
"""
import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional

try:
    from .atlas import (Polarity, Signature, acyclic_signature_from_weights, atlas_from_signature,
                        away_from_root_internal_atlas, away_from_root_signature, is_acyclic, is_dissecting,
                        is_triangulating, is_triangulating_cycle_signature_graph, is_triangulating_signature,
                        signature_from_atlas)
    from .bijection import (compatible_representatives, f_bar, f_table, is_tiling, phi_table, specialization_report,
                            tiling_violation)
    from .catalog import NAMES, CatalogEntry, load_entry
    from .errors import InputError, LawrenceAtlasError, VerificationError
    from .fourientation import (EdgeState, Fourientation, all_orientations, class_difference, class_equivalent,
                                class_index, enumerate_classes, potential_circuits, potential_cocircuits, reverse)
    from .linalg import determinant
    from .logger import StructuredLogger, logger
    from .lawrence import (Side, atlas_simplices, build_lawrence, classify_family, common_face,
                           enumerate_maximal_simplices, geometric_oracle, heights_from_weights, interiors_disjoint,
                           lower_facet_simplices, regular_triangulation_from_heights, simplex_of)
    from .matroid import (RepresentedMatroid, SignedVector, VectorKind, count_spanning_trees, dual,
                          fundamental_circuit, fundamental_cocircuit)
    from .ribbon import bernardi_external_atlas
except ImportError:
    from atlas import (Polarity, Signature, acyclic_signature_from_weights, atlas_from_signature,
                       away_from_root_internal_atlas, away_from_root_signature, is_acyclic, is_dissecting,
                       is_triangulating, is_triangulating_cycle_signature_graph, is_triangulating_signature,
                       signature_from_atlas)
    from bijection import (compatible_representatives, f_bar, f_table, is_tiling, phi_table, specialization_report,
                           tiling_violation)
    from catalog import NAMES, CatalogEntry, load_entry
    from errors import InputError, LawrenceAtlasError, VerificationError
    from fourientation import (EdgeState, Fourientation, all_orientations, class_difference, class_equivalent,
                               class_index, enumerate_classes, potential_circuits, potential_cocircuits, reverse)
    from linalg import determinant
    from logger import StructuredLogger, logger
    from lawrence import (Side, atlas_simplices, build_lawrence, classify_family, common_face,
                          enumerate_maximal_simplices, geometric_oracle, heights_from_weights, interiors_disjoint,
                          lower_facet_simplices, regular_triangulation_from_heights, simplex_of)
    from matroid import (RepresentedMatroid, SignedVector, VectorKind, count_spanning_trees, dual,
                         fundamental_circuit, fundamental_cocircuit)
    from ribbon import bernardi_external_atlas

QUICK = "quick"
FULL = "full"

Witness = Optional[Dict[str, Any]]


@dataclass(frozen=True)
class CheckResult:
    name: str
    instance: str
    passed: bool
    elapsed: float
    witness: Witness = None

    def to_dict(self) -> Dict[str, Any]:
        out = {"name": self.name, "instance": self.instance, "passed": self.passed,
               "elapsed": round(self.elapsed, 3)}
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass
class SelftestReport:
    scope: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"scope": self.scope, "ok": self.ok, "checks": len(self.results),
                "failed": len(self.failures), "results": [r.to_dict() for r in self.results]}


def generic_weights(n: int) -> List[int]:
    """Distinct powers of two: no signed {0,±1} vector is orthogonal to them."""
    return [1 << e for e in range(n)]


# --- matroid-core -------------------------------------------------------------

def check_expected_counts(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    actual = {"bases": len(m.bases), "circuits": len(m.circuits), "cocircuits": len(m.cocircuits)}
    if "classes" in entry.expected:
        actual["classes"] = len(enumerate_classes(m))
    wrong = {k: {"expected": v, "actual": actual[k]} for k, v in entry.expected.items()
             if k in actual and actual[k] != v}
    return wrong or None


def check_matrix_tree(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    trees = count_spanning_trees(m)
    return None if trees == len(m.bases) else {"bases": len(m.bases), "determinant": trees}


def check_orthogonality(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    for c in m.circuits:
        for d in m.cocircuits:
            if not c.support & d.support:
                continue
            products = [c.entries[e] * d.entries[e] for e in c.support & d.support]
            if c.dot(d.entries) != 0 or 1 not in products or -1 not in products:
                return {"circuit": str(c), "cocircuit": str(d)}
    return None


def check_duality(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    if set(dual(m).circuits) != set(m.cocircuits):
        return {"dual_circuits": len(dual(m).circuits), "cocircuits": len(m.cocircuits)}
    return None


def _arc(v, e: int) -> int:
    return e + 1 if v.entries[e] > 0 else -(e + 1)


def check_fundamental_decomposition(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    for b in m.bases:
        for c in m.circuits:
            parts = [fundamental_circuit(m, b, _arc(c, e)) for e in c.support - b]
            total = tuple(sum(p.entries[e] for p in parts) for e in m.edges)
            if total != c.entries:
                return {"basis": sorted(x + 1 for x in b), "circuit": str(c)}
        for d in m.cocircuits:
            parts = [fundamental_cocircuit(m, b, _arc(d, e)) for e in d.support & b]
            total = tuple(sum(p.entries[e] for p in parts) for e in m.edges)
            if total != d.entries:
                return {"basis": sorted(x + 1 for x in b), "cocircuit": str(d)}
    return None


# --- fourientation ------------------------------------------------------------

def _fourientations(n: int) -> Iterable[Fourientation]:
    states = (EdgeState.EMPTY, EdgeState.PLUS, EdgeState.MINUS, EdgeState.BI)
    for combo in itertools.product(states, repeat=n):
        yield Fourientation(combo)


def check_exclusivity_and_painting(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    for f in _fourientations(m.n):
        circuits = potential_circuits(m, f)
        cocircuits = potential_cocircuits(m, f)
        in_circuit = frozenset().union(*(c.support for c in circuits))
        in_cocircuit = frozenset().union(*(d.support for d in cocircuits))
        if in_circuit & in_cocircuit:
            return {"fourientation": str(f), "shared": sorted(e + 1 for e in in_circuit & in_cocircuit)}
        for e in f.edges_in(EdgeState.PLUS, EdgeState.MINUS):
            if (e in in_circuit) == (e in in_cocircuit):
                return {"fourientation": str(f), "edge": e + 1}
    return None


def check_gioan_count(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    classes = len(enumerate_classes(m))
    return None if classes == len(m.bases) else {"classes": classes, "bases": len(m.bases)}


def check_class_equivalence(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    index = class_index(m)
    orientations = all_orientations(m)
    for o1, o2 in itertools.combinations(orientations, 2):
        same = index[o1.mask()] is index[o2.mask()]
        if class_equivalent(m, o1, o2) != same:
            return {"o1": str(o1), "o2": str(o2), "bfs": same}
        if same:
            circuits, cocircuits = class_difference(m, o1, o2)
            vectors = circuits + cocircuits
            supports = [v.support for v in vectors]
            disjoint = all(not (a & b) for a, b in itertools.combinations(supports, 2))
            if not disjoint or reverse(o1, vectors) != o2:
                return {"o1": str(o1), "o2": str(o2), "reversed": [str(v) for v in vectors]}
    return None


# --- atlas-signature ----------------------------------------------------------

def check_signature_roundtrip(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    w = generic_weights(m.n)
    for kind in (VectorKind.CIRCUIT, VectorKind.COCIRCUIT):
        sig = acyclic_signature_from_weights(m, w, kind)
        if not is_acyclic(m, sig):
            return {kind.value: "weight signature reported cyclic"}
        tri = is_triangulating_signature(m, sig)
        if not tri:
            return {kind.value: "acyclic but not triangulating", **(tri.witness or {})}
        atlas = atlas_from_signature(m, sig)
        for verdict in (is_dissecting(m, atlas), is_triangulating(m, atlas)):
            if not verdict:
                return {kind.value: "induced atlas rejected", **(verdict.witness or {})}
        if signature_from_atlas(m, atlas) != sig:
            return {kind.value: "signature does not round-trip"}
    return None


def zero_sum_triple(m: RepresentedMatroid) -> Optional[tuple]:
    """Three signed circuits c1, c2, -(c1 + c2), or None when no two circuits add up to one."""
    for c1, c2 in itertools.combinations(m.circuits, 2):
        for a, b in ((c1, c2), (c1, -c2)):
            total = [x + y for x, y in zip(a.entries, b.entries)]
            if any(abs(x) > 1 for x in total):
                continue
            third = SignedVector(tuple(-x for x in total))
            known = m.circuit_index.get(third.support)
            if known is not None and third in (known, -known):
                return a, b, third
    return None


def with_orientations(m: RepresentedMatroid, sig: Signature, vectors) -> Signature:
    """sig with the given signed vectors replacing the choice on their supports."""
    forced = {v.support: v for v in vectors}
    return Signature.build(m, sig.polarity, (forced.get(v.support, v) for v in sig.chosen))


def check_graph_criterion(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    acyclic = acyclic_signature_from_weights(m, generic_weights(m.n), VectorKind.CIRCUIT)
    cases = [("acyclic", acyclic, True)]
    triple = zero_sum_triple(m)
    if triple is not None:
        cases.append(("zero_sum_triple", with_orientations(m, acyclic, triple), False))
    for label, sig, expected in cases:
        verdicts = {
            "triples": is_triangulating_cycle_signature_graph(m, sig).ok,
            "definition": is_triangulating_signature(m, sig).ok,
            "atlas": is_triangulating(m, atlas_from_signature(m, sig)).ok,
        }
        if any(v != expected for v in verdicts.values()):
            return {"signature": label, "expected": expected, **verdicts}
    return None


def check_away_from_root(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    sig = away_from_root_signature(m, entry.root_vertex)
    if not is_acyclic(m, sig):
        return {"q": entry.root_vertex, "reason": "signature is not acyclic"}
    if atlas_from_signature(m, sig).as_dict() != away_from_root_internal_atlas(m, entry.root_vertex).as_dict():
        return {"q": entry.root_vertex, "reason": "atlas mismatch"}
    return None


def check_bernardi(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    atlas = bernardi_external_atlas(entry.ribbon_graph(), m)
    verdict = is_dissecting(m, atlas)
    if not verdict:
        return {"reason": "Bernardi atlas is not dissecting", **(verdict.witness or {})}
    if "bernardi_induced" in entry.expected:
        try:
            signature_from_atlas(m, atlas)
            induced = 1
        except VerificationError:
            induced = 0
        if induced != entry.expected["bernardi_induced"]:
            return {"reason": "signature reading", "expected": entry.expected["bernardi_induced"], "actual": induced}
    for partner, internal in bernardi_partners(entry, m):
        result = f_bar(m, atlas, internal, verify=True)
        if not result.bijective or not result.hypotheses.hold:
            return {"reason": "Bernardi f-bar is not bijective", "partner": partner}
    return None


def bernardi_partners(entry: CatalogEntry, m: RepresentedMatroid):
    """Internal atlases paired with the Bernardi atlas: away-from-root and a weight cocycle signature."""
    yield "away_from_root", away_from_root_internal_atlas(m, entry.root_vertex)
    sigma_star = acyclic_signature_from_weights(m, list(reversed(generic_weights(m.n))), VectorKind.COCIRCUIT)
    yield "weights", atlas_from_signature(m, sigma_star)


def check_bernardi_phi(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    atlas = bernardi_external_atlas(entry.ribbon_graph(), m)
    for partner, internal in bernardi_partners(entry, m):
        table = phi_table(m, atlas, internal, verify=True)
        if len(set(table.values())) != 2 ** m.n:
            return {"partner": partner, "reason": "phi is not injective", "images": len(set(table.values()))}
        violation = tiling_violation(table)
        if violation is not None:
            return {"partner": partner, "reason": "phi is not tiling", "orientations": [str(o) for o in violation]}
    return None


# --- bijection ----------------------------------------------------------------

def _weight_pair(m: RepresentedMatroid):
    w = generic_weights(m.n)
    sigma = acyclic_signature_from_weights(m, w, VectorKind.CIRCUIT)
    sigma_star = acyclic_signature_from_weights(m, list(reversed(w)), VectorKind.COCIRCUIT)
    return sigma, sigma_star


def check_f_bar(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    sigma, sigma_star = _weight_pair(m)
    result = f_bar(m, atlas_from_signature(m, sigma), atlas_from_signature(m, sigma_star), verify=True)
    if not result.bijective:
        return {"collision": [sorted(x + 1 for x in b) for b in result.collision or ()]}
    reps = compatible_representatives(m, sigma, sigma_star)
    if not all(reps.values()):
        return {"compatible_representatives": reps}
    return None


def check_phi(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    sigma, sigma_star = _weight_pair(m)
    a_ext, a_int = atlas_from_signature(m, sigma), atlas_from_signature(m, sigma_star)
    table = phi_table(m, a_ext, a_int, verify=True)
    for b, o in f_table(m, a_ext, a_int).items():
        if table[o] != b:
            return {"basis": sorted(x + 1 for x in b), "orientation": str(o)}
    if not is_tiling(m, table):
        return {"reason": "phi is not tiling"}
    report = specialization_report(m, sigma, sigma_star, table)
    if not all(report.to_dict().values()):
        return report.to_dict()
    return None


# --- lawrence -----------------------------------------------------------------

def _oriented_simplices(lm) -> set:
    """χ-images of every oriented basis of the side's polarity."""
    external = lm.polarity == Polarity.EXTERNAL
    out = set()
    for b in lm.base.bases:
        free = [e for e in lm.base.edges if (e in b) != external]
        for signs in itertools.product((1, -1), repeat=len(free)):
            arcs = set()
            for e in lm.base.edges:
                if e in free:
                    arcs.add((e + 1) * signs[free.index(e)])
                else:
                    arcs.update((e + 1, -(e + 1)))
            out.add(frozenset(arcs))
    return out


def _sides(m: RepresentedMatroid):
    for side in (Side.PRIMAL, Side.DUAL):
        try:
            yield build_lawrence(m, side)
        except InputError:
            continue


def check_chi_correspondence(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    for lm in _sides(m):
        found = set(enumerate_maximal_simplices(lm))
        expected = _oriented_simplices(lm)
        if found != expected:
            return {"side": lm.side.value, "only_rank_test": [sorted(s) for s in found - expected],
                    "only_oriented": [sorted(s) for s in expected - found]}
        for s in found:
            if abs(determinant([[row[lm.column(v)] for v in sorted(s)] for row in lm.matrix])) != 1:
                return {"side": lm.side.value, "simplex": sorted(s), "reason": "determinant is not ±1"}
    return None


def check_geometric_oracle(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    for lm in _sides(m):
        simplices = enumerate_maximal_simplices(lm)
        for s1, s2 in itertools.combinations(simplices, 2):
            geo = geometric_oracle(lm, s1, s2)
            if interiors_disjoint(lm, s1, s2) == geo.interiors_intersect or common_face(lm, s1, s2) != geo.common_face:
                return {"side": lm.side.value, "s1": sorted(s1), "s2": sorted(s2)}
    return None


def check_regular(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    for lm in _sides(m):
        h = heights_from_weights(generic_weights(m.n))
        atlas = regular_triangulation_from_heights(lm, h)
        simplices = atlas_simplices(atlas)
        if set(simplices) != set(lower_facet_simplices(lm, h)):
            return {"side": lm.side.value, "reason": "lower facets differ from the induced atlas"}
        family = classify_family(lm, simplices)
        if not family.triangulation or len(simplices) != len(m.bases):
            return {"side": lm.side.value, "reason": "regular family is not a triangulation"}
        if any(simplex_of(ob) not in set(simplices) for ob in family.atlas.entries):
            return {"side": lm.side.value, "reason": "χ round trip"}
    return None


# --- K5-e ---------------------------------------------------------------------

def check_face_signature(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    sig = entry.face_signature(m)
    if len(sig) != len(entry.signature_terms):
        return {"chosen": len(sig), "terms": len(entry.signature_terms)}
    if not is_triangulating_cycle_signature_graph(m, sig):
        return {"reason": "triple criterion failed"}
    acyclic = is_acyclic(m, sig)
    if acyclic:
        return {"reason": "signature reported acyclic"}
    zero = [entry.term_vector(t) for t in entry.zero_sum or ()]
    if any(v not in sig for v in zero) or any(sum(v.entries[e] for v in zero) for e in m.edges):
        return {"reason": "zero-sum terms", "terms": entry.zero_sum}
    if zero and {v.entries for v, _ in acyclic.certificate} != {v.entries for v in zero}:
        return {"reason": "certificate terms", "certificate": [str(v) for v, _ in acyclic.certificate]}
    return None


def check_face_signature_definition(entry: CatalogEntry, m: RepresentedMatroid) -> Witness:
    verdict = is_triangulating_signature(m, entry.face_signature(m))
    return None if verdict else verdict.witness


Check = Callable[[CatalogEntry, RepresentedMatroid], Witness]


def _plan(entry: CatalogEntry, m: RepresentedMatroid, scope: str) -> List[tuple]:
    """(name, check) pairs applicable to an entry at the given scope."""
    full = scope == FULL
    small = m.n <= (6 if full else 4)
    plan: List[tuple] = [("expected_counts", check_expected_counts)]
    if entry.signature_terms:
        plan.append(("face_signature", check_face_signature))
        if full:
            plan.append(("face_signature_definition", check_face_signature_definition))
        return plan
    plan += [
        ("matrix_tree", check_matrix_tree),
        ("orthogonality", check_orthogonality),
        ("duality", check_duality),
        ("fundamental_decomposition", check_fundamental_decomposition),
        ("gioan_count", check_gioan_count),
        ("signature_roundtrip", check_signature_roundtrip),
        ("graph_criterion", check_graph_criterion),
        ("away_from_root", check_away_from_root),
        ("bernardi", check_bernardi),
        ("f_bar", check_f_bar),
    ]
    if small:
        plan += [("exclusivity_and_painting", check_exclusivity_and_painting),
                 ("class_equivalence", check_class_equivalence),
                 ("phi", check_phi),
                 ("bernardi_phi", check_bernardi_phi)]
    if m.n <= 3:
        plan += [("chi_correspondence", check_chi_correspondence), ("regular", check_regular)]
    if m.n <= (3 if full else 2):
        plan.append(("geometric_oracle", check_geometric_oracle))
    return plan


def _run(name: str, instance: str, check: Check, entry: CatalogEntry, m: RepresentedMatroid,
         log: StructuredLogger = logger) -> CheckResult:
    start = time.perf_counter()
    try:
        witness = check(entry, m)
    except LawrenceAtlasError as exc:
        witness = exc.to_dict()
    elapsed = time.perf_counter() - start
    result = CheckResult(name, instance, witness is None, elapsed, witness)
    if not result.passed:
        log.warning("Self-test check failed", check=name, witness=witness)
    else:
        log.debug("Self-test check passed", check=name, elapsed=round(elapsed, 3))
    return result


def run_entries(entries: Iterable[CatalogEntry], scope: str = QUICK) -> SelftestReport:
    if scope not in (QUICK, FULL):
        raise InputError("Scope must be quick or full", {"scope": scope})
    report = SelftestReport(scope)
    for entry in entries:
        try:
            m = entry.matroid()
        except LawrenceAtlasError as exc:
            report.results.append(CheckResult("load", entry.name, False, 0.0, exc.to_dict()))
            continue
        log = logger.bind(scope=scope, instance=entry.name)
        for name, check in _plan(entry, m, scope):
            report.results.append(_run(name, entry.name, check, entry, m, log))
    logger.info("Self-test finished", scope=scope, checks=len(report.results), failed=len(report.failures))
    return report


def run_selftest(scope: str = QUICK, names: Iterable[str] = NAMES) -> SelftestReport:
    return run_entries((load_entry(n) for n in names), scope)
