"""File formats: pydantic models, readers and canonical JSON writers."""
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, RootModel, ValidationError, model_validator

try:
    from .atlas import Atlas, Polarity, Signature, atlas_from_mapping
    from .errors import InputError
    from .fourientation import Fourientation
    from .matroid import GraphData, RepresentedMatroid, SignedVector, VectorKind, from_graph, from_matrix
    from .ribbon import RibbonGraph
    from .utils import edge_key, format_rational, parse_edge_key, parse_rational
except ImportError:
    from atlas import Atlas, Polarity, Signature, atlas_from_mapping
    from errors import InputError
    from fourientation import Fourientation
    from matroid import GraphData, RepresentedMatroid, SignedVector, VectorKind, from_graph, from_matrix
    from ribbon import RibbonGraph
    from utils import edge_key, format_rational, parse_edge_key, parse_rational


class GraphFile(BaseModel):
    model_config = ConfigDict(extra="allow")

    vertices: int = Field(ge=1)
    edges: List[Tuple[int, int]]
    labels: Optional[List[str]] = None


class SignedEntry(BaseModel):
    support: List[int]
    signs: List[int]

    @model_validator(mode="after")
    def _check(self):
        if len(self.support) != len(self.signs):
            raise ValueError("support and signs must have the same length")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        return self


class SignatureFile(RootModel[List[SignedEntry]]):
    pass


class AtlasFile(BaseModel):
    polarity: Optional[Literal["external", "internal"]] = None
    entries: Dict[str, str]

    @model_validator(mode="before")
    @classmethod
    def _bare_map(cls, data: Any):
        # a plain {basis: fourientation} map is accepted too
        if isinstance(data, dict) and "entries" not in data:
            return {"entries": data}
        return data


class RibbonFile(BaseModel):
    rotations: Dict[str, List[Tuple[int, int]]]
    root: Tuple[int, Tuple[int, int]]


class SimplexFamilyFile(RootModel[List[List[int]]]):
    pass


class HeightsFile(RootModel[Dict[str, Union[str, int]]]):
    pass


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_text(text: str, path: Optional[str]) -> None:
    if path:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
    else:
        print(text, end="")


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror}", {"path": path})


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: {exc.msg} at line {exc.lineno}, column {exc.colno}",
                         {"path": source, "line": exc.lineno, "column": exc.colno})


def _validate(model, data: Any, source: str):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"{source}: invalid {model.__name__}",
                         {"path": source, "errors": json.loads(exc.json(include_url=False))})


def parse_matrix_text(text: str, source: str = "<input>") -> List[List[int]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for colno, token in enumerate(line.split(), start=1):
            try:
                row.append(int(token))
            except ValueError:
                raise InputError(f"{source}: bad matrix entry {token!r} at line {lineno}, column {colno}",
                                 {"path": source, "line": lineno, "column": colno})
        rows.append(row)
    if not rows:
        raise InputError(f"{source}: empty matrix", {"path": source, "line": 1, "column": 1})
    return rows


def graph_data(model: GraphFile) -> GraphData:
    return GraphData(model.vertices, tuple((int(t), int(h)) for t, h in model.edges))


def matroid_from_graph_file(model: GraphFile) -> RepresentedMatroid:
    return from_graph(model.vertices, model.edges, model.labels or ())


def read_matroid(path: str) -> RepresentedMatroid:
    """Graph files are JSON; anything else is a whitespace matrix."""
    text = read_text(path)
    if path.endswith(".json"):
        return matroid_from_graph_file(_validate(GraphFile, loads(text, path), path))
    return from_matrix(parse_matrix_text(text, path))


def read_graph_file(path: str) -> GraphFile:
    return _validate(GraphFile, loads(read_text(path), path), path)


def signature_to_json(sig: Signature) -> List[Dict[str, List[int]]]:
    return [v.to_dict() for v in sig.chosen]


def signature_from_json(data: Any, m: RepresentedMatroid, kind: Optional[VectorKind] = None,
                        source: str = "<signature>") -> Signature:
    entries = _validate(SignatureFile, data, source).root
    vectors = []
    for entry in entries:
        values = [0] * m.n
        for e, s in zip(entry.support, entry.signs):
            if not 1 <= e <= m.n:
                raise InputError(f"{source}: edge id {e} out of range", {"path": source, "edge": e})
            values[e - 1] = s
        vectors.append(SignedVector(tuple(values)))
    if kind is None:
        circuits = set(m.circuits)
        kind = VectorKind.CIRCUIT if all(v in circuits for v in vectors) else VectorKind.COCIRCUIT
    return Signature.build(m, kind, vectors)


def read_signature(path: str, m: RepresentedMatroid, kind: Optional[VectorKind] = None) -> Signature:
    return signature_from_json(loads(read_text(path), path), m, kind, path)


def atlas_to_json(atlas: Atlas) -> Dict[str, Any]:
    return {"polarity": atlas.polarity.value, "entries": atlas.as_dict()}


def atlas_from_json(data: Any, m: RepresentedMatroid, source: str = "<atlas>") -> Atlas:
    model = _validate(AtlasFile, data, source)
    mapping = {}
    for key, text in model.entries.items():
        f = Fourientation.parse(text)
        if len(f) != m.n:
            raise InputError(f"{source}: fourientation {text!r} has the wrong length", {"path": source, "basis": key})
        mapping[parse_edge_key(key, m.n)] = f
    if not mapping:
        raise InputError(f"{source}: empty atlas", {"path": source})
    polarity = Polarity(model.polarity) if model.polarity else None
    return atlas_from_mapping(m, mapping, polarity)


def read_atlas(path: str, m: RepresentedMatroid) -> Atlas:
    return atlas_from_json(loads(read_text(path), path), m, path)


def ribbon_from_json(data: Any, graph: GraphData, source: str = "<ribbon>") -> RibbonGraph:
    model = _validate(RibbonFile, data, source)
    rotations = {}
    for vertex, cycle in model.rotations.items():
        try:
            v = int(vertex)
        except ValueError:
            raise InputError(f"{source}: bad vertex key {vertex!r}", {"path": source})
        rotations[v] = [(e - 1, t) for e, t in cycle]
    q, (e, t) = model.root
    return RibbonGraph.from_rotations(graph, rotations, (q, (e - 1, t)))


def ribbon_to_json(rg: RibbonGraph) -> Dict[str, Any]:
    return {
        "rotations": {str(v): [[e + 1, t] for e, t in rg.rotation[v - 1]] for v in range(1, rg.graph.vertices + 1)},
        "root": [rg.root_vertex, [rg.root_half_edge[0] + 1, rg.root_half_edge[1]]],
    }


def read_ribbon(path: str, graph: GraphData) -> RibbonGraph:
    return ribbon_from_json(loads(read_text(path), path), graph, path)


def family_from_json(data: Any, source: str = "<family>") -> List[frozenset]:
    return [frozenset(s) for s in _validate(SimplexFamilyFile, data, source).root]


def family_to_json(simplices) -> List[List[int]]:
    return sorted((sorted(s, key=lambda v: (abs(v), v < 0)) for s in simplices),
                  key=lambda s: [(abs(v), v < 0) for v in s])


def read_family(path: str) -> List[frozenset]:
    return family_from_json(loads(read_text(path), path), path)


def heights_from_json(data: Any, source: str = "<heights>") -> Dict[int, Any]:
    model = _validate(HeightsFile, data, source)
    out = {}
    for key, value in model.root.items():
        try:
            v = int(key)
        except ValueError:
            raise InputError(f"{source}: bad vertex id {key!r}", {"path": source})
        out[v] = parse_rational(value)
    return out


def heights_to_json(h: Mapping[int, Any]) -> Dict[str, str]:
    return {f"{v:+d}": format_rational(x) for v, x in h.items()}


def read_heights(path: str) -> Dict[int, Any]:
    return heights_from_json(loads(read_text(path), path), path)


def f_table_to_json(table: Mapping[frozenset, Fourientation]) -> Dict[str, str]:
    return {edge_key(b): str(o) for b, o in table.items()}


def phi_table_to_json(table: Mapping[Fourientation, frozenset]) -> Dict[str, List[int]]:
    return {str(o): sorted(e + 1 for e in s) for o, s in table.items()}


def phi_table_from_json(data: Mapping[str, List[int]]) -> Dict[Fourientation, frozenset]:
    return {Fourientation.parse(o): frozenset(e - 1 for e in s) for o, s in data.items()}
