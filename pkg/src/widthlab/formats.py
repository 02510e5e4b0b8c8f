"""Instance files: DIMACS ``.col`` and this tool's JSON (precolours allowed).

DIMACS vertices are 1-based on the wire and 0-based internally.  JSON
instances look like ``{"n": 3, "edges": [[0, 1]], "colors": {"0": 2}}``.
"""

from __future__ import annotations

import io
import json
import os
from pathlib import Path

from .errors import BadParams, ParseError
from .graphs import Graph, PrecoloredGraph


def parse_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        col = raw.index(toks[0]) + 1
        if toks[0] == "p":
            if n is not None:
                raise ParseError("second problem line", lineno, col)
            if len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise ParseError("expected 'p edge <n> <m>'", lineno, col)
            try:
                n = int(toks[2])
                int(toks[3])
            except ValueError:
                raise ParseError("non-integer vertex or edge count", lineno, col) from None
            if n < 0:
                raise ParseError("negative vertex count", lineno, col)
        elif toks[0] == "e":
            if n is None:
                raise ParseError("edge line before the problem line", lineno, col)
            if len(toks) != 3:
                raise ParseError("expected 'e <u> <v>'", lineno, col)
            ends = []
            at = col
            for tok in toks[1:]:
                at = raw.index(tok, at)
                try:
                    x = int(tok)
                except ValueError:
                    raise ParseError(f"non-integer vertex {tok!r}", lineno, at + 1) from None
                if not 1 <= x <= n:
                    raise ParseError(f"vertex {x} out of range 1..{n}", lineno, at + 1)
                ends.append(x)
                at += len(tok)
            u, v = ends
            if u == v:
                raise ParseError("self-loop", lineno, col)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {toks[0]!r}", lineno, col)
    if n is None:
        raise ParseError("missing 'p edge' line")
    return Graph(n, edges)


def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


def parse_json_instance(text: str) -> PrecoloredGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or "n" not in data:
        raise ParseError("JSON instance must be an object with key 'n'")
    extra = set(data) - {"n", "edges", "colors"}
    if extra:
        raise ParseError(f"unknown instance keys: {sorted(extra)}")
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data.get("edges", [])]
        colors = {int(v): int(c) for v, c in (data.get("colors") or {}).items()}
        return PrecoloredGraph(Graph(n, edges), colors)
    except (BadParams, TypeError, ValueError) as exc:
        raise ParseError(f"invalid instance: {exc}") from None


def to_json_instance(p) -> str:
    if isinstance(p, Graph):
        p = PrecoloredGraph(p)
    data = {"n": p.n, "edges": [list(e) for e in p.graph.edge_list()]}
    if p.colors:
        data["colors"] = {str(v): c for v, c in p.colors.items()}
    return json.dumps(data)


def parse_instance(source) -> PrecoloredGraph:
    """Read a DIMACS or JSON instance from a path, a text stream or a string.

    The format is chosen from the first non-blank character: ``{`` means JSON.
    """
    if isinstance(source, (str, os.PathLike)) and Path(source).exists():
        text = Path(source).read_text()
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
    if text.lstrip().startswith("{"):
        return parse_json_instance(text)
    return PrecoloredGraph(parse_dimacs(text))
