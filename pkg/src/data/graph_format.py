# src/data/graph_format.py
"""
Graph text form "n=6; edges=1-2,2-3,3-4" and its JSON mirror
{"n": 6, "edges": [[1, 2], [2, 3], [3, 4]]}.
"""
import re
from pathlib import Path
from typing import Any, Dict

from src.graphs.quadgraph import QuadGraph
from src.utils.errors import MalformedInput, SkewQuadricError
from src.utils.helpers import safe_json_parse

_TEXT = re.compile(r"^\s*n\s*=\s*(?P<n>\d+)\s*(?:;\s*edges\s*=\s*(?P<edges>[\d\s,\-]*))?\s*;?\s*$")


def parse_graph_text(text: str) -> QuadGraph:
    match = _TEXT.match(text)
    if not match:
        raise MalformedInput(f"cannot parse graph {text!r}; expected 'n=6; edges=1-2,2-3'")
    n = int(match.group("n"))
    edges = []
    for item in (match.group("edges") or "").split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split("-")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise MalformedInput(f"invalid edge {item!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return QuadGraph.from_edges(n, edges)


def graph_to_json(g: QuadGraph) -> Dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_json(obj: Any) -> QuadGraph:
    if not isinstance(obj, dict) or "n" not in obj:
        raise MalformedInput("graph JSON needs 'n' and 'edges'")
    try:
        return QuadGraph.from_edges(int(obj["n"]), [tuple(int(v) for v in e) for e in obj.get("edges", [])])
    except SkewQuadricError:
        raise
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"invalid graph JSON: {e}") from e


def load_graph(source: str) -> QuadGraph:
    """Text form, inline JSON, or a path to a file holding either."""
    source = source.strip()
    if source.startswith("{"):
        return graph_from_json(safe_json_parse(source))
    if source.startswith("n"):
        return parse_graph_text(source)
    path = Path(source)
    if path.is_file():
        return load_graph(path.read_text(encoding="utf-8"))
    raise MalformedInput(f"cannot read graph from {source!r}")
