"""Plain-text graph format.

A graph file holds one directed multigraph:

    # comment lines start with a hash
    v 4
    e 0 1
    e 1 2

``v <n>`` declares n vertices (ids 0 .. n-1) and must appear exactly
once, before any edge line.  ``e <tail> <head>`` appends one edge;
tail == head declares a loop.  Edge ids are assigned in file order.
Blank lines are ignored.
"""

from __future__ import annotations

from .graph import MultiGraph


class ParseError(ValueError):
    """Malformed graph text; the message carries the 1-based line number."""


def parse_graph_text(text: str) -> MultiGraph:
    vertex_count: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "v":
            if vertex_count is not None:
                raise ParseError(f"line {lineno}: repeated vertex count")
            if len(fields) != 2:
                raise ParseError(f"line {lineno}: expected 'v <count>'")
            vertex_count = _int_field(fields[1], lineno)
            if vertex_count < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
        elif tag == "e":
            if vertex_count is None:
                raise ParseError(f"line {lineno}: edge before the vertex count")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'e <tail> <head>'")
            tail = _int_field(fields[1], lineno)
            head = _int_field(fields[2], lineno)
            for end in (tail, head):
                if not 0 <= end < vertex_count:
                    raise ParseError(
                        f"line {lineno}: vertex {end} outside 0..{vertex_count - 1}"
                    )
            edges.append((tail, head))
        else:
            raise ParseError(f"line {lineno}: unknown directive {tag!r}")
    if vertex_count is None:
        raise ParseError("missing 'v <count>' line")
    return MultiGraph(vertex_count, tuple(edges))


def _int_field(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: {token!r} is not an integer") from None


def parse_graph_file(path: str) -> MultiGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def format_graph(g: MultiGraph) -> str:
    lines = [f"v {g.vertex_count}"]
    lines.extend(f"e {t} {h}" for t, h in g.edges)
    return "\n".join(lines) + "\n"
