"""JSON drawing documents (pydantic) and SVG rendering (svgwrite)."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Union

import svgwrite
from pydantic import BaseModel, Field, ValidationError

from rac.drawing import Drawing, Edge, ValidationReport, Vertex
from rac.errors import DrawingFormatError
from rac.geom import Point, format_coord, parse_coord

logger = logging.getLogger(__name__)


class PointModel(BaseModel):
    x: str
    y: str


class VertexModel(BaseModel):
    id: str
    x: str
    y: str


class EdgeModel(BaseModel):
    id: str
    source: str
    target: str
    bends: List[PointModel] = Field(default_factory=list)
    auxiliary: bool = False


class DrawingModel(BaseModel):
    """Wire form of a drawing; coordinates stay strings so rationals survive unchanged."""

    bend_limit: int = Field(default=1, ge=0)
    vertices: List[VertexModel]
    edges: List[EdgeModel] = Field(default_factory=list)
    allow_self_loops: Optional[bool] = None


def _point(model: Union[PointModel, VertexModel]) -> Point:
    return Point(parse_coord(model.x), parse_coord(model.y))


def drawing_from_model(model: DrawingModel) -> Drawing:
    return Drawing(
        vertices=tuple(Vertex(v.id, _point(v)) for v in model.vertices),
        edges=tuple(
            Edge(e.id, e.source, e.target, tuple(_point(b) for b in e.bends), e.auxiliary)
            for e in model.edges
        ),
        bend_limit=model.bend_limit,
        allow_self_loops=bool(model.allow_self_loops),
    )


def drawing_to_model(d: Drawing) -> DrawingModel:
    return DrawingModel(
        bend_limit=d.bend_limit,
        vertices=[VertexModel(id=v.id, x=format_coord(v.point.x), y=format_coord(v.point.y)) for v in d.vertices],
        edges=[
            EdgeModel(
                id=e.id,
                source=e.source,
                target=e.target,
                bends=[PointModel(x=format_coord(b.x), y=format_coord(b.y)) for b in e.bends],
                auxiliary=e.auxiliary,
            )
            for e in d.edges
        ],
        allow_self_loops=True if d.allow_self_loops else None,
    )


def loads_drawing(text: str) -> Drawing:
    try:
        model = DrawingModel.model_validate_json(text)
    except ValidationError as e:
        raise DrawingFormatError(f"invalid drawing document: {e}") from e
    return drawing_from_model(model)


def dumps_drawing(d: Drawing) -> str:
    return drawing_to_model(d).model_dump_json(exclude_none=True, indent=2)


def drawing_from_dict(data: dict) -> Drawing:
    try:
        model = DrawingModel.model_validate(data)
    except ValidationError as e:
        raise DrawingFormatError(f"invalid drawing document: {e}") from e
    return drawing_from_model(model)


def drawing_to_dict(d: Drawing) -> dict:
    return json.loads(dumps_drawing(d))


def load_drawing(path: Union[str, Path]) -> Drawing:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DrawingFormatError(f"cannot read {path}: {e}") from e
    d = loads_drawing(text)
    logger.info(f"Loaded drawing from {path}: n={d.n}, edges={len(d.edges)}")
    return d


def save_drawing(d: Drawing, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_drawing(d) + "\n", encoding="utf-8")
    logger.info(f"Saved drawing to {path}")


def _viewbox(points: Iterable[Point], pad_ratio: float = 0.05) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for p in points:
        xs.append(float(p.x))
        ys.append(-float(p.y))
    if not xs:
        return 0.0, 0.0, 1.0, 1.0
    minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    span = max(maxx - minx, maxy - miny, 1e-9)
    pad = span * pad_ratio
    return minx - pad, miny - pad, (maxx - minx) + 2 * pad, (maxy - miny) + 2 * pad


def _flip(p: Point) -> tuple[float, float]:
    return float(p.x), -float(p.y)


def render_svg(
    d: Drawing,
    report: Optional[ValidationReport] = None,
    out_path: Union[str, Path] = "drawing.svg",
    mark_crossings: bool = True,
) -> svgwrite.Drawing:
    """Build the SVG document: edges as polylines, vertices as circles, crossings as squares."""
    all_points = [v.point for v in d.vertices] + [b for e in d.edges for b in e.bends]
    vb = _viewbox(all_points)
    unit = max(vb[2], vb[3]) / 400.0

    dwg = svgwrite.Drawing(str(out_path), profile="tiny")
    dwg.attribs["viewBox"] = f"{vb[0]:.9g} {vb[1]:.9g} {vb[2]:.9g} {vb[3]:.9g}"

    edges = dwg.g(id="edges", fill="none", stroke="#222")
    aux = dwg.g(id="auxiliary", fill="none", stroke="#999")
    for e in d.edges:
        line = dwg.polyline(
            points=[_flip(p) for p in d.polyline(e)],
            stroke_width=unit,
            stroke_linejoin="round",
        )
        (aux if e.auxiliary else edges).add(line)
    dwg.add(edges)
    dwg.add(aux)

    if mark_crossings and report is not None and report.crossings:
        marks = dwg.g(id="crossings", fill="#d11", stroke="none")
        for c in report.crossings:
            x, y = _flip(c.point)
            marks.add(dwg.rect(insert=(x - unit, y - unit), size=(2 * unit, 2 * unit)))
        dwg.add(marks)

    nodes = dwg.g(id="vertices", fill="#1b4f9e", stroke="none")
    for v in d.vertices:
        nodes.add(dwg.circle(center=_flip(v.point), r=2.5 * unit))
    dwg.add(nodes)
    return dwg


def svg_string(d: Drawing, report: Optional[ValidationReport] = None, mark_crossings: bool = True) -> str:
    return render_svg(d, report, mark_crossings=mark_crossings).tostring()


def write_svg(
    d: Drawing,
    out_path: Union[str, Path],
    report: Optional[ValidationReport] = None,
    mark_crossings: bool = True,
) -> None:
    render_svg(d, report, out_path, mark_crossings).save()
    logger.info(f"Wrote SVG to {out_path}")
