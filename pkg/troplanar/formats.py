"""
Line-oriented text formats for polygons, triangulations, graphs and heights.

Every format is ASCII with ``#`` comments and a one-word header line:

    polygon             triangulation           graph
    v <x> <y>           v <x> <y>   (optional)  n <count>
                        t x1 y1 x2 y2 x3 y3     e <i> <j>
                                                (or the single line ``circle``)

Heights are ``x y p/q`` lines. Malformed input raises ParseError with a
1-based line and column.
"""

from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from troplanar.errors import InvalidGraph, ParseError
from troplanar.graphs import Circle, Graph, Skeleton
from troplanar.lattice import LatticePoint, LatticePolygon, doubled_area
from troplanar.triangulation import Triangle, Triangulation, from_triangles, validate

Token = Tuple[str, int]


class _Line:
    def __init__(self, number: int, raw: str, source: Optional[str]):
        self.number = number
        self.source = source
        self.tokens: List[Token] = []
        body = raw.split("#", 1)[0]
        pos = 0
        for word in body.split():
            col = body.index(word, pos)
            self.tokens.append((word, col + 1))
            pos = col + len(word)

    @property
    def keyword(self) -> str:
        return self.tokens[0][0]

    def error(self, message: str, index: int = 0) -> ParseError:
        col = self.tokens[index][1] if index < len(self.tokens) else 1
        return ParseError(message, self.number, col, self.source)

    def ints(self, count: int) -> List[int]:
        args = self.tokens[1:]
        if len(args) != count:
            raise self.error(f"'{self.keyword}' expects {count} integers, got {len(args)}")
        out = []
        for i, (word, _) in enumerate(args, start=1):
            try:
                out.append(int(word))
            except ValueError:
                raise self.error(f"expected an integer, got '{word}'", i) from None
        return out


def _lines(text: str, source: Optional[str]) -> Iterator[_Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _Line(number, raw, source)
        if line.tokens:
            yield line


def _body(text: str, header: str, source: Optional[str]) -> List[_Line]:
    lines = list(_lines(text, source))
    if not lines:
        raise ParseError(f"empty input, expected '{header}' header", 1, 1, source)
    if lines[0].keyword != header or len(lines[0].tokens) != 1:
        raise lines[0].error(f"expected '{header}' header, got '{lines[0].keyword}'")
    return lines[1:]


# --- polygons --------------------------------------------------------------------------------


def parse_polygon(text: str, source: Optional[str] = None) -> LatticePolygon:
    vertices = []
    last = None
    for line in _body(text, "polygon", source):
        if line.keyword != "v":
            raise line.error(f"unexpected '{line.keyword}' in polygon")
        vertices.append(tuple(line.ints(2)))
        last = line
    if len(vertices) < 3:
        raise ParseError("polygon needs at least 3 vertices", last.number if last else 1, 1, source)
    points = [LatticePoint(x, y) for x, y in vertices]
    if doubled_area(points) < 0:
        points.reverse()
    return LatticePolygon(tuple(points))


def serialize_polygon(polygon: LatticePolygon) -> str:
    return "polygon\n" + "".join(f"v {p.x} {p.y}\n" for p in polygon.vertices)


# --- triangulations --------------------------------------------------------------------------


def parse_triangulation(text: str, source: Optional[str] = None) -> Triangulation:
    """Vertices ``v`` fix the polygon; without them the hull of the triangles is used."""
    vertices = []
    triangles = []
    for line in _body(text, "triangulation", source):
        if line.keyword == "v":
            vertices.append(LatticePoint(*line.ints(2)))
        elif line.keyword == "t":
            x1, y1, x2, y2, x3, y3 = line.ints(6)
            triangles.append(Triangle.of((x1, y1), (x2, y2), (x3, y3)))
        else:
            raise line.error(f"unexpected '{line.keyword}' in triangulation")
    if not triangles:
        raise ParseError("triangulation has no triangles", 1, 1, source)
    if vertices:
        if doubled_area(vertices) < 0:
            vertices.reverse()
        return validate(LatticePolygon(tuple(vertices)), triangles)
    return from_triangles(triangles)


def serialize_triangulation(tri: Triangulation) -> str:
    out = ["triangulation"]
    out.extend(f"v {p.x} {p.y}" for p in tri.polygon.vertices)
    for t in tri.sorted_triangles():
        out.append("t " + " ".join(f"{v.x} {v.y}" for v in t.vertices))
    return "\n".join(out) + "\n"


# --- graphs ----------------------------------------------------------------------------------


def parse_graph(text: str, source: Optional[str] = None) -> Graph:
    lines = _body(text, "graph", source)
    if len(lines) == 1 and lines[0].keyword == "circle":
        return Circle()
    n = None
    edges = []
    for line in lines:
        if line.keyword == "n":
            if n is not None:
                raise line.error("duplicate vertex count")
            (n,) = line.ints(1)
        elif line.keyword == "e":
            if n is None:
                raise line.error("edge before vertex count 'n'")
            a, b = line.ints(2)
            if not (0 <= a < n and 0 <= b < n):
                raise line.error(f"vertex out of range 0..{n - 1}", 1)
            edges.append((a, b))
        else:
            raise line.error(f"unexpected '{line.keyword}' in graph")
    if n is None:
        raise ParseError("graph has no vertex count 'n'", 1, 1, source)
    try:
        return Skeleton(n, tuple(edges))
    except InvalidGraph as e:
        raise ParseError(str(e), lines[-1].number if lines else 1, 1, source) from None


def serialize_graph(graph: Graph) -> str:
    if isinstance(graph, Circle):
        return "graph\ncircle\n"
    return f"graph\nn {graph.n}\n" + "".join(f"e {a} {b}\n" for a, b in graph.edges)


# --- heights ---------------------------------------------------------------------------------


def parse_heights(text: str, source: Optional[str] = None) -> Dict[LatticePoint, Fraction]:
    heights = {}
    for line in _lines(text, source):
        if len(line.tokens) != 3:
            raise line.error("expected 'x y p/q'")
        try:
            x, y = int(line.tokens[0][0]), int(line.tokens[1][0])
        except ValueError:
            raise line.error("coordinates must be integers") from None
        try:
            heights[LatticePoint(x, y)] = Fraction(line.tokens[2][0])
        except (ValueError, ZeroDivisionError):
            raise line.error(f"bad rational '{line.tokens[2][0]}'", 2) from None
    return heights


def serialize_heights(heights: Mapping[LatticePoint, Fraction]) -> str:
    return "".join(f"{p.x} {p.y} {Fraction(h).numerator}/{Fraction(h).denominator}\n" for p, h in sorted(heights.items()))


# --- files -----------------------------------------------------------------------------------

PathLike = Union[str, Path]


def read_polygon(path: PathLike) -> LatticePolygon:
    """A ``.poly`` file, or the polygon of a ``.tri`` file."""
    text = Path(path).read_text()
    if _first_keyword(text) == "triangulation":
        return parse_triangulation(text, str(path)).polygon
    return parse_polygon(text, str(path))


def read_triangulation(path: PathLike) -> Triangulation:
    return parse_triangulation(Path(path).read_text(), str(path))


def read_graph(path: PathLike) -> Graph:
    return parse_graph(Path(path).read_text(), str(path))


def _first_keyword(text: str) -> Optional[str]:
    for line in _lines(text, None):
        return line.keyword
    return None


def file_kind(path: PathLike) -> Optional[str]:
    """Header keyword of a fixture file: ``polygon``, ``triangulation`` or ``graph``."""
    return _first_keyword(Path(path).read_text())
