"""
Edge-list text format for graphs.

    # optional comment lines
    n <vertex count>
    <u> <v>
    ...

Vertices are 0-based. Emission writes each edge once as "u v" with u < v,
sorted lexicographically, so parse(emit(g)) == g.
"""

from pathlib import Path
from typing import IO, List, Optional, Tuple, Union

from model.errors import ParseError
from model.graph import Graph, build_graph


def parse_edge_list(text: Union[str, IO[str]]) -> Graph:
    """
    Parse an edge list from a string or a text stream.

    Raises:
        ParseError: malformed line (reports the 1-based line number)
        IndexOutOfRange, SelfLoop: as build_graph
    """
    lines = text.splitlines() if isinstance(text, str) else text.read().splitlines()

    n: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()

        if tokens[0] == "n":
            if n is not None:
                raise ParseError("duplicate 'n' header", number)
            if len(tokens) != 2:
                raise ParseError(f"expected 'n <count>', got '{line}'", number)
            n = _parse_int(tokens[1], number)
            if n < 0:
                raise ParseError(f"vertex count must be non-negative, got {n}", number)
            continue

        if n is None:
            raise ParseError("edge before the 'n <count>' header", number)
        if len(tokens) != 2:
            raise ParseError(f"expected two vertex indices, got '{line}'", number)
        edges.append((_parse_int(tokens[0], number), _parse_int(tokens[1], number)))

    if n is None:
        raise ParseError("missing 'n <count>' header")
    return build_graph(n, edges)


def _parse_int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"'{token}' is not an integer", number) from None


def emit_edge_list(g: Graph, comment: Optional[str] = None) -> str:
    """Serialize a graph; edges sorted with u < v."""
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"n {g.n}")
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def read_edge_list(path: Union[str, Path]) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_edge_list(f)


def write_edge_list(g: Graph, path: Union[str, Path], comment: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_edge_list(g, comment))
