"""JSON documents for every record the command line reads or writes.

Rationals are written as "p/q" strings and infinity as "inf", so documents are exact.
Every document carries a "type" discriminator. Output is sorted and indented, so equal
objects always serialize to identical text.
"""
import json

from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, TextIO

from ..circle import Arc, StepLsc
from ..determinant import Certificate, CertificateKind, Check, Report, WindingClass
from ..graph import Edge, GraphLsc, Mesh, MetricGraph, Point
from ..graph.exceptions import GraphError
from ..lift import LiftReport
from ..morphisms import ArcValuation, CauchyLimit, CodomainKind, CuZElement, Distance
from ..morphisms import FinDim, Graph, JiangSu, valuation_arcs
from ..rational import format_rational, to_extended, to_fraction
from ..spectral import DiagonalUnitary, Matching, TrackPiece, UnitaryField
from ..types import INF
from .exceptions import SchemaError


def _rational(value: Any) -> str:
    return format_rational(value)


def _extended(value: Any) -> Any:
    return "inf" if value == INF else value


def _parse_rational(value: Any, path: str) -> Fraction:
    if isinstance(value, float):
        raise SchemaError(path, f"floats are not exact, write '{value}' as \"p/q\"")
    try:
        return to_fraction(value)
    except (ArithmeticError, TypeError, ValueError) as e:
        raise SchemaError(path, str(e)) from e


def _parse_extended(value: Any, path: str) -> Any:
    try:
        return to_extended(value)
    except (ArithmeticError, TypeError, ValueError) as e:
        raise SchemaError(path, str(e)) from e


def _object(doc: Any, path: str) -> Dict[str, Any]:
    if not isinstance(doc, dict):
        raise SchemaError(path, f"expected an object, got {type(doc).__name__}")
    return doc


def _field(doc: Dict[str, Any], key: str, path: str) -> Any:
    try:
        return _object(doc, path)[key]
    except KeyError as e:
        raise SchemaError(f"{path}.{key}", "required field missing") from e


def _list(doc: Dict[str, Any], key: str, path: str) -> List[Any]:
    value = _field(doc, key, path)
    if not isinstance(value, list):
        raise SchemaError(f"{path}.{key}", f"expected an array, got {type(value).__name__}")
    return value


def _int(doc: Dict[str, Any], key: str, path: str) -> int:
    value = _field(doc, key, path)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def _encode_step_lsc(f: StepLsc) -> Dict[str, Any]:
    return {
        "type": "step_lsc",
        "resolution": f.resolution,
        "arc_values": [_extended(v) for v in f.arc_values],
        "point_values": [_extended(v) for v in f.point_values],
    }


def _decode_step_lsc(doc: Dict[str, Any], path: str) -> StepLsc:
    resolution = _int(doc, "resolution", path)
    arcs = [
        _parse_extended(v, f"{path}.arc_values[{i}]")
        for i, v in enumerate(_list(doc, "arc_values", path))
    ]
    points = [
        _parse_extended(v, f"{path}.point_values[{i}]")
        for i, v in enumerate(_list(doc, "point_values", path))
    ]
    try:
        return StepLsc(resolution, arcs, points)
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _encode_metric_graph(graph: MetricGraph) -> Dict[str, Any]:
    return {
        "type": "metric_graph",
        "vertices": list(graph.vertices),
        "edges": [
            {"a": e.a, "b": e.b, "length": _rational(e.length)} for e in graph.edges
        ],
    }


def _decode_metric_graph(doc: Dict[str, Any], path: str) -> MetricGraph:
    vertices = _list(doc, "vertices", path)
    edges = []
    for i, e in enumerate(_list(doc, "edges", path)):
        where = f"{path}.edges[{i}]"
        edges.append(
            Edge(
                _field(e, "a", where),
                _field(e, "b", where),
                _parse_rational(_field(e, "length", where), f"{where}.length"),
            )
        )
    try:
        return MetricGraph(vertices, edges)
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _encode_cuts(mesh: Mesh) -> List[List[str]]:
    return [[_rational(t) for t in edge_cuts] for edge_cuts in mesh.cuts]


def _encode_graph_lsc_values(f: GraphLsc) -> Dict[str, Any]:
    return {"cuts": _encode_cuts(f.mesh), "values": [_extended(v) for v in f.values]}


def _encode_graph_lsc(f: GraphLsc) -> Dict[str, Any]:
    doc = _encode_graph_lsc_values(f)
    doc.update(type="graph_lsc", graph=_encode_metric_graph(f.graph))
    return doc


def _decode_graph_lsc_values(
    doc: Dict[str, Any], graph: MetricGraph, path: str
) -> GraphLsc:
    cuts = [
        [_parse_rational(t, f"{path}.cuts[{i}][{j}]") for j, t in enumerate(edge_cuts)]
        for i, edge_cuts in enumerate(_list(doc, "cuts", path))
    ]
    values = [
        _parse_extended(v, f"{path}.values[{i}]")
        for i, v in enumerate(_list(doc, "values", path))
    ]
    try:
        return GraphLsc(Mesh(graph, cuts), values)
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _decode_graph_lsc(doc: Dict[str, Any], path: str) -> GraphLsc:
    graph = _decode_metric_graph(_field(doc, "graph", path), f"{path}.graph")
    return _decode_graph_lsc_values(doc, graph, path)


def _encode_diagonal_unitary(u: DiagonalUnitary) -> Dict[str, Any]:
    return {
        "type": "diagonal_unitary",
        "blocks": [[_rational(a.value) for a in block] for block in u.blocks],
    }


def _decode_diagonal_unitary(doc: Dict[str, Any], path: str) -> DiagonalUnitary:
    blocks = [
        [_parse_rational(a, f"{path}.blocks[{i}][{j}]") for j, a in enumerate(block)]
        for i, block in enumerate(_list(doc, "blocks", path))
    ]
    try:
        return DiagonalUnitary(blocks)
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _encode_unitary_field(u: UnitaryField) -> Dict[str, Any]:
    return {
        "type": "unitary_field",
        "graph": _encode_metric_graph(u.graph),
        "dimension": u.dimension,
        "vertex_angles": {
            v: [_rational(a.value) for a in angles] for v, angles in u.vertex_angles.items()
        },
        "edge_tracks": [
            [
                [
                    {
                        "start": _rational(p.start),
                        "stop": _rational(p.stop),
                        "start_angle": _rational(p.start_angle),
                        "end_angle": _rational(p.end_angle),
                    }
                    for p in track
                ]
                for track in track_list
            ]
            for track_list in u.edge_tracks
        ],
    }


def _decode_track_piece(doc: Dict[str, Any], path: str) -> TrackPiece:
    values = [
        _parse_rational(_field(doc, key, path), f"{path}.{key}")
        for key in ("start", "stop", "start_angle", "end_angle")
    ]
    try:
        return TrackPiece(*values)
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _decode_unitary_field(doc: Dict[str, Any], path: str) -> UnitaryField:
    graph = _decode_metric_graph(_field(doc, "graph", path), f"{path}.graph")
    angles = _field(doc, "vertex_angles", path)
    if not isinstance(angles, dict):
        raise SchemaError(f"{path}.vertex_angles", "expected an object")
    vertex_angles = {
        v: [_parse_rational(a, f"{path}.vertex_angles.{v}[{j}]") for j, a in enumerate(values)]
        for v, values in angles.items()
    }
    edge_tracks = [
        [
            [
                _decode_track_piece(p, f"{path}.edge_tracks[{e}][{j}][{k}]")
                for k, p in enumerate(track)
            ]
            for j, track in enumerate(track_list)
        ]
        for e, track_list in enumerate(_list(doc, "edge_tracks", path))
    ]
    try:
        return UnitaryField(graph, _int(doc, "dimension", path), vertex_angles, edge_tracks)
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _encode_point(point: Point) -> Dict[str, Any]:
    if point.is_vertex:
        return {"vertex": point.vertex}
    return {"edge": point.edge, "coord": _rational(point.coord)}


def _decode_point(doc: Dict[str, Any], path: str) -> Point:
    if "vertex" in _object(doc, path):
        vertex = doc["vertex"]
        if not isinstance(vertex, str):
            raise SchemaError(f"{path}.vertex", f"expected a vertex id, got {vertex!r}")
        return Point.at_vertex(vertex)
    try:
        return Point(
            edge=_int(doc, "edge", path),
            coord=_parse_rational(_field(doc, "coord", path), f"{path}.coord"),
        )
    except GraphError as e:
        raise SchemaError(path, str(e)) from e


def _encode_codomain(codomain) -> Dict[str, Any]:
    if codomain.kind == CodomainKind.FIN_DIM:
        params: Dict[str, Any] = {"blocks": list(codomain.blocks)}
    elif codomain.kind == CodomainKind.GRAPH:
        params = {
            "graph": _encode_metric_graph(codomain.graph),
            "dimension": codomain.dimension,
        }
    else:
        params = {}
    return {"kind": codomain.kind.value, "params": params}


def _decode_codomain(doc: Dict[str, Any], path: str):
    try:
        kind = CodomainKind.from_str(str(_field(doc, "kind", path)))
    except ValueError as e:
        raise SchemaError(f"{path}.kind", str(e)) from e
    params = _field(doc, "params", path)
    where = f"{path}.params"
    try:
        if kind == CodomainKind.FIN_DIM:
            return FinDim(_list(params, "blocks", where))
        if kind == CodomainKind.GRAPH:
            graph = _decode_metric_graph(_field(params, "graph", where), f"{where}.graph")
            return Graph(graph, _int(params, "dimension", where))
    except ValueError as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(where, str(e)) from e
    return JiangSu()


def _encode_cuz(x: CuZElement) -> Dict[str, Any]:
    return {"kind": x.kind.value, "value": format_rational(x.value)}


def _decode_cuz(doc: Dict[str, Any], path: str) -> CuZElement:
    kind = _field(doc, "kind", path)
    value = _field(doc, "value", path)
    try:
        return CuZElement(kind, INF if value == "inf" else _parse_rational(value, path))
    except ValueError as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(path, str(e)) from e


def _encode_value(codomain, value: Any) -> Any:
    if codomain.kind == CodomainKind.FIN_DIM:
        return [_extended(v) for v in value]
    if codomain.kind == CodomainKind.GRAPH:
        return _encode_graph_lsc_values(value)
    return _encode_cuz(value)


def _decode_value(codomain, doc: Any, path: str) -> Any:
    if codomain.kind == CodomainKind.FIN_DIM:
        if not isinstance(doc, list):
            raise SchemaError(path, "expected an array of block values")
        return tuple(_parse_extended(v, f"{path}[{i}]") for i, v in enumerate(doc))
    if codomain.kind == CodomainKind.GRAPH:
        return _decode_graph_lsc_values(doc, codomain.graph, path)
    return _decode_cuz(doc, path)


def _encode_arc_valuation(alpha: ArcValuation) -> Dict[str, Any]:
    codomain = alpha.codomain
    return {
        "type": "arc_valuation",
        "resolution": alpha.resolution,
        "codomain": _encode_codomain(codomain),
        "unit": _encode_value(codomain, alpha.unit),
        "arcs": [
            {
                "start": _rational(Fraction(arc.start, arc.size)),
                "length": _rational(arc.length),
                "value": _encode_value(codomain, value),
            }
            for arc, value in alpha.items()
            if not arc.whole
        ],
    }


def _decode_arc(doc: Dict[str, Any], resolution: int, path: str) -> Arc:
    size = 1 << resolution
    start = _parse_rational(_field(doc, "start", path), f"{path}.start") * size
    span = _parse_rational(_field(doc, "length", path), f"{path}.length") * size
    if start.denominator != 1 or span.denominator != 1:
        raise SchemaError(path, f"arc is not on the resolution-{resolution} grid")
    try:
        return Arc(resolution, int(start), int(span))
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _decode_arc_valuation(doc: Dict[str, Any], path: str) -> ArcValuation:
    resolution = _int(doc, "resolution", path)
    if resolution < 0:
        raise SchemaError(f"{path}.resolution", f"must be non-negative, got {resolution}")
    codomain = _decode_codomain(_field(doc, "codomain", path), f"{path}.codomain")
    unit = _decode_value(codomain, _field(doc, "unit", path), f"{path}.unit")
    values = {Arc.full(resolution): unit}
    for i, entry in enumerate(_list(doc, "arcs", path)):
        where = f"{path}.arcs[{i}]"
        arc = _decode_arc(entry, resolution, where)
        if arc in values:
            raise SchemaError(where, f"arc {arc} given twice")
        values[arc] = _decode_value(codomain, _field(entry, "value", where), f"{where}.value")
    missing = [arc for arc in valuation_arcs(resolution) if arc not in values]
    if missing:
        raise SchemaError(f"{path}.arcs", f"no value for arc {missing[0]}")
    try:
        return ArcValuation(
            resolution,
            codomain,
            {arc: codomain.coerce(value) for arc, value in values.items()},
        )
    except ValueError as e:
        raise SchemaError(path, str(e)) from e


def _encode_distance(d: Distance) -> Dict[str, Any]:
    return {
        "type": "distance",
        "value": format_rational(d.value),
        "resolution": d.resolution,
        "exact": d.exact,
    }


def _decode_distance(doc: Dict[str, Any], path: str) -> Distance:
    value = _field(doc, "value", path)
    return Distance(
        INF if value == "inf" else _parse_rational(value, f"{path}.value"),
        _int(doc, "resolution", path),
        bool(_field(doc, "exact", path)),
    )


def _encode_matching(m: Matching) -> Dict[str, Any]:
    return {
        "type": "matching",
        "source": [_rational(a.value) for a in m.source],
        "target": [_rational(a.value) for a in m.target],
        "pairs": [list(p) for p in m.pairs],
        "threshold": _rational(m.threshold),
        "bottleneck": _rational(m.bottleneck),
        "source_label": m.source_label,
        "target_label": m.target_label,
    }


def _decode_matching(doc: Dict[str, Any], path: str) -> Matching:
    doc = _object(doc, path)
    return Matching(
        [
            _parse_rational(a, f"{path}.source[{i}]")
            for i, a in enumerate(_list(doc, "source", path))
        ],
        [
            _parse_rational(a, f"{path}.target[{i}]")
            for i, a in enumerate(_list(doc, "target", path))
        ],
        [tuple(p) for p in _list(doc, "pairs", path)],
        _parse_rational(_field(doc, "threshold", path), f"{path}.threshold"),
        doc.get("source_label"),
        doc.get("target_label"),
    )


def _encode_winding_class(w: WindingClass) -> Dict[str, Any]:
    return {
        "type": "winding_class",
        "graph": _encode_metric_graph(w.graph),
        "modulus": w.modulus,
        "vertex_values": {v: _rational(x) for v, x in w.vertex_values.items()},
        "edge_knots": [
            [[_rational(t), _rational(x)] for t, x in knots] for knots in w.edge_knots
        ],
    }


def _decode_winding_class(doc: Dict[str, Any], path: str) -> WindingClass:
    graph = _decode_metric_graph(_field(doc, "graph", path), f"{path}.graph")
    values = _field(doc, "vertex_values", path)
    if not isinstance(values, dict):
        raise SchemaError(f"{path}.vertex_values", "expected an object")
    return WindingClass(
        graph,
        _int(doc, "modulus", path),
        {v: _parse_rational(x, f"{path}.vertex_values.{v}") for v, x in values.items()},
        [
            [
                (
                    _parse_rational(t, f"{path}.edge_knots[{e}][{i}][0]"),
                    _parse_rational(x, f"{path}.edge_knots[{e}][{i}][1]"),
                )
                for i, (t, x) in enumerate(knots)
            ]
            for e, knots in enumerate(_list(doc, "edge_knots", path))
        ],
    )


def _encode_certificate(c: Certificate) -> Dict[str, Any]:
    return {
        "type": "certificate",
        "kind": c.kind.value,
        "modulus": c.modulus,
        "witnesses": [_encode_point(p) for p in c.witnesses],
        "values": [_rational(x) for x in c.values],
        "constant": None if c.constant is None else _rational(c.constant),
    }


def _decode_certificate(doc: Dict[str, Any], path: str) -> Certificate:
    doc = _object(doc, path)
    constant = doc.get("constant")
    try:
        kind = CertificateKind.from_str(str(_field(doc, "kind", path)))
    except ValueError as e:
        raise SchemaError(f"{path}.kind", str(e)) from e
    return Certificate(
        kind,
        _int(doc, "modulus", path),
        [
            _decode_point(p, f"{path}.witnesses[{i}]")
            for i, p in enumerate(_list(doc, "witnesses", path))
        ],
        [
            _parse_rational(x, f"{path}.values[{i}]")
            for i, x in enumerate(_list(doc, "values", path))
        ],
        None if constant is None else _parse_rational(constant, f"{path}.constant"),
    )


def _encode_report(r: Report) -> Dict[str, Any]:
    return {
        "type": "report",
        "name": r.name,
        "checks": [
            {
                "name": c.name,
                "claimed_bound": c.claimed_bound,
                "computed_value": c.computed_value,
                "pass": c.passed,
            }
            for c in r.checks
        ],
        "verdict": r.verdict,
        "certificate": None if r.certificate is None else _encode_certificate(r.certificate),
        "notes": list(r.notes),
    }


def _decode_report(doc: Dict[str, Any], path: str) -> Report:
    doc = _object(doc, path)
    checks = []
    for i, c in enumerate(_list(doc, "checks", path)):
        where = f"{path}.checks[{i}]"
        checks.append(
            Check(
                _field(c, "name", where),
                _field(c, "claimed_bound", where),
                _field(c, "computed_value", where),
                bool(_field(c, "pass", where)),
            )
        )
    certificate = doc.get("certificate")
    return Report(
        _field(doc, "name", path),
        checks,
        doc.get("verdict"),
        None if certificate is None else _decode_certificate(certificate, f"{path}.certificate"),
        doc.get("notes", []),
    )


def _encode_cauchy_limit(c: CauchyLimit) -> Dict[str, Any]:
    return {
        "type": "cauchy_limit",
        "limit": _encode_arc_valuation(c.limit),
        "settled_resolution": c.settled_resolution,
        "tail_distances": [_encode_distance(d) for d in c.tail_distances],
        "error_bounds": [_rational(b) for b in c.error_bounds],
    }


def _decode_cauchy_limit(doc: Dict[str, Any], path: str) -> CauchyLimit:
    return CauchyLimit(
        _decode_arc_valuation(_field(doc, "limit", path), f"{path}.limit"),
        _int(doc, "settled_resolution", path),
        [
            _decode_distance(d, f"{path}.tail_distances[{i}]")
            for i, d in enumerate(_list(doc, "tail_distances", path))
        ],
        [
            _parse_rational(b, f"{path}.error_bounds[{i}]")
            for i, b in enumerate(_list(doc, "error_bounds", path))
        ],
    )


def _encode_lift_report(r: LiftReport) -> Dict[str, Any]:
    return {
        "type": "lift_report",
        "resolution": r.resolution,
        "coarse_resolution": r.coarse_resolution,
        "boundary": r.boundary,
        "excursion": _rational(r.excursion),
        "bottleneck": _rational(r.bottleneck),
        "excursion_bound": _rational(r.excursion_bound),
        "alpha_below_beta": r.alpha_below_beta,
        "beta_below_alpha": r.beta_below_alpha,
        "compares": r.compares,
        "ok": r.ok,
    }


def _decode_lift_report(doc: Dict[str, Any], path: str) -> LiftReport:
    return LiftReport(
        resolution=_int(doc, "resolution", path),
        coarse_resolution=_int(doc, "coarse_resolution", path),
        boundary=bool(_field(doc, "boundary", path)),
        excursion=_parse_rational(_field(doc, "excursion", path), f"{path}.excursion"),
        bottleneck=_parse_rational(_field(doc, "bottleneck", path), f"{path}.bottleneck"),
        alpha_below_beta=bool(_field(doc, "alpha_below_beta", path)),
        beta_below_alpha=bool(_field(doc, "beta_below_alpha", path)),
        compares=bool(_field(doc, "compares", path)),
    )


_ENCODERS = [
    (StepLsc, _encode_step_lsc),
    (MetricGraph, _encode_metric_graph),
    (GraphLsc, _encode_graph_lsc),
    (DiagonalUnitary, _encode_diagonal_unitary),
    (UnitaryField, _encode_unitary_field),
    (ArcValuation, _encode_arc_valuation),
    (Distance, _encode_distance),
    (Matching, _encode_matching),
    (WindingClass, _encode_winding_class),
    (Certificate, _encode_certificate),
    (Report, _encode_report),
    (LiftReport, _encode_lift_report),
    (CauchyLimit, _encode_cauchy_limit),
]

_DECODERS: Dict[str, Callable[[Dict[str, Any], str], Any]] = {
    "step_lsc": _decode_step_lsc,
    "metric_graph": _decode_metric_graph,
    "graph_lsc": _decode_graph_lsc,
    "diagonal_unitary": _decode_diagonal_unitary,
    "unitary_field": _decode_unitary_field,
    "arc_valuation": _decode_arc_valuation,
    "distance": _decode_distance,
    "matching": _decode_matching,
    "winding_class": _decode_winding_class,
    "certificate": _decode_certificate,
    "report": _decode_report,
    "lift_report": _decode_lift_report,
    "cauchy_limit": _decode_cauchy_limit,
}

#: Every document type, in the order they are documented.
DOCUMENT_TYPES = tuple(_DECODERS) + ("sequence",)


def to_document(obj: Any) -> Dict[str, Any]:
    """Turn a record, or a list of records, into a JSON-ready document.

    Lists become {"type": "sequence", "items": [...]}.

    Raises:
        TypeError: raised for objects without a document form.
    """
    if isinstance(obj, (list, tuple)):
        return {"type": "sequence", "items": [to_document(item) for item in obj]}
    for cls, encode in _ENCODERS:
        if isinstance(obj, cls):
            return encode(obj)
    raise TypeError(f"no document form for {type(obj).__name__}")


def from_document(doc: Any, kind: Optional[str] = None, path: str = "$") -> Any:
    """Parse a document back into the record it describes.

    Args:
        doc (Any): The decoded JSON value.
        kind (str, optional): The expected "type". Defaults to accepting any type.
        path (str, optional): The JSON path of `doc`, for error messages.

    Returns:
        Any: The record; a list of records for sequences.

    Raises:
        SchemaError: raised with the JSON path of the first offending field.
    """
    found = _field(doc, "type", path)
    if kind is not None and found != kind:
        raise SchemaError(f"{path}.type", f"expected a '{kind}' document, got '{found}'")
    if found == "sequence":
        return [
            from_document(item, path=f"{path}.items[{i}]")
            for i, item in enumerate(_list(doc, "items", path))
        ]
    try:
        decode = _DECODERS[found]
    except (KeyError, TypeError) as e:
        raise SchemaError(f"{path}.type", f"unknown document type '{found}'") from e
    try:
        return decode(doc, path)
    except SchemaError:
        raise
    except (ArithmeticError, AttributeError, IndexError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(path, str(e)) from e


def dumps(obj: Any) -> str:
    """Serialize a record to a JSON string."""
    return json.dumps(to_document(obj), sort_keys=True, indent=2) + "\n"


def dump(obj: Any, f: TextIO):
    f.write(dumps(obj))


def loads(s: str, kind: Optional[str] = None) -> Any:
    """Parse a JSON string into a record.

    Raises:
        SchemaError: raised for malformed JSON or documents.
    """
    try:
        doc = json.loads(s)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"malformed json at line {e.lineno}: {e.msg}") from e
    return from_document(doc, kind)


def load(f: TextIO, kind: Optional[str] = None) -> Any:
    return loads(f.read(), kind)


__all__ = [
    "DOCUMENT_TYPES",
    "dump",
    "dumps",
    "from_document",
    "load",
    "loads",
    "to_document",
]
