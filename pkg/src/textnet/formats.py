"""Edgelist, Pajek and GraphML readers and writers."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .errors import InvalidParameterError, ParseError
from .graph import Network

__all__ = ["read_network", "write_network", "FORMATS"]

FORMATS = ("edgelist", "pajek", "graphml")
DEFAULT_DELIM = r"[ \t]+"
GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _fmt_weight(w) -> str:
    return repr(float(w))


def _edge_rows(net: Network, skip_duplicates: bool, transpose: bool):
    for (u, v), data in net.edge_items():
        if transpose:
            u, v = v, u
        copies = 1 if skip_duplicates else data.get("count", 1)
        for _ in range(copies):
            yield u, v, data.get("weight")


def _want_weights(net: Network, weights):
    return net.has_weights() if weights is None else bool(weights)


# -- edgelist -----------------------------------------------------------


def _read_edgelist(path, directed, delim, edge_property):
    net = Network(directed=directed)
    splitter = re.compile(delim)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f for f in splitter.split(line) if f]
            if len(fields) == 1:
                net.add_node(fields[0])
            elif len(fields) == 2:
                net.add_edge(fields[0], fields[1])
            elif len(fields) == 3:
                try:
                    w = float(fields[2])
                except ValueError:
                    raise ParseError(f"bad weight {fields[2]!r}", lineno, path) from None
                net.add_edge(fields[0], fields[1], weight=w)
                if edge_property:
                    net.set_edge_attribute(fields[0], fields[1], edge_property, w)
            else:
                raise ParseError(f"expected 'u v [w]', got {len(fields)} fields", lineno, path)
    return net


def _write_edgelist(net, fh, weights, skip_duplicates, transpose, delim=" "):
    linked = set()
    for u, v, w in _edge_rows(net, skip_duplicates, transpose):
        linked.update((u, v))
        if weights:
            fh.write(f"{u}{delim}{v}{delim}{_fmt_weight(1.0 if w is None else w)}\n")
        else:
            fh.write(f"{u}{delim}{v}\n")
    for n in net.nodes():
        if n not in linked:
            fh.write(f"{n}\n")


# -- pajek --------------------------------------------------------------

_VERTEX_LINE = re.compile(r'\s*(\d+)(?:\s+"(.*)"|\s+(\S+))?')


def _write_pajek(net, fh, weights, skip_duplicates, transpose):
    if net.name:
        fh.write(f"*Network {net.name}\n")
    nodes = net.nodes()
    index = {n: i for i, n in enumerate(nodes, 1)}
    fh.write(f"*Vertices {len(nodes)}\n")
    for n in nodes:
        fh.write(f'{index[n]} "{n}"\n')
    fh.write("*Arcs\n" if net.directed else "*Edges\n")
    for u, v, w in _edge_rows(net, skip_duplicates, transpose):
        line = f"{index[u]} {index[v]}"
        if weights:
            line += f" {_fmt_weight(1.0 if w is None else w)}"
        fh.write(line + "\n")


def _read_pajek(path, directed):
    labels: dict[str, str] = {}
    section = None
    arcs, edges = [], []
    declared: set[str] = set()
    name = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            if line.startswith("*"):
                head = line.split(None, 1)
                keyword = head[0].lower()
                if keyword == "*network":
                    name = head[1] if len(head) > 1 else None
                    section = None
                elif keyword == "*vertices":
                    section = "vertices"
                elif keyword in ("*arcs", "*edges"):
                    section = keyword[1:]
                    declared.add(section)
                elif keyword in ("*arcslist", "*edgeslist", "*matrix"):
                    raise ParseError(f"unsupported Pajek section {head[0]}", lineno, path)
                else:
                    raise ParseError(f"unknown Pajek section {head[0]}", lineno, path)
                continue
            if section == "vertices":
                m = _VERTEX_LINE.match(line)
                if not m:
                    raise ParseError("bad vertex line", lineno, path)
                idx = m.group(1)
                labels[idx] = m.group(2) if m.group(2) is not None else (m.group(3) or idx)
            elif section in ("arcs", "edges"):
                fields = line.split()
                if len(fields) < 2:
                    raise ParseError("expected 'i j [w]'", lineno, path)
                try:
                    w = float(fields[2]) if len(fields) > 2 else None
                except ValueError:
                    raise ParseError(f"bad weight {fields[2]!r}", lineno, path) from None
                (arcs if section == "arcs" else edges).append((fields[0], fields[1], w))
            else:
                raise ParseError("data outside a section", lineno, path)
    if directed is None:
        # An *Edges header alone (even with no lines under it) means undirected.
        directed = not ("edges" in declared and "arcs" not in declared)
    net = Network(directed=directed, name=name)
    for idx in labels:
        net.add_node(labels[idx])
    for i, j, w in arcs:
        net.add_edge(labels.get(i, i), labels.get(j, j), weight=w)
    for i, j, w in edges:
        net.add_edge(labels.get(i, i), labels.get(j, j), weight=w)
        if net.directed and i != j:
            net.add_edge(labels.get(j, j), labels.get(i, i), weight=w)
    return net


# -- graphml ------------------------------------------------------------


def _write_graphml(net, fh, weights, skip_duplicates, transpose):
    fh.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    fh.write(
        f'<graphml xmlns="{GRAPHML_NS}"\n'
        '  xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"\n'
        f'  xsi:schemaLocation="{GRAPHML_NS}\n'
        f'                      {GRAPHML_NS}/1.0/graphml.xsd">\n'
    )
    fh.write('<key id="d1" for="edge" attr.name="weight" attr.type="double"/>\n')
    gid = quoteattr(net.name or "graph")
    default = "directed" if net.directed else "undirected"
    fh.write(f'  <graph id={gid} edgedefault="{default}">\n')
    for n in net.nodes():
        fh.write(f"    <node id={quoteattr(n)}/>\n")
    for u, v, w in _edge_rows(net, skip_duplicates, transpose):
        fh.write(f"    <edge source={quoteattr(u)} target={quoteattr(v)}>\n")
        if weights:
            fh.write(f'      <data key="d1">{escape(_fmt_weight(1.0 if w is None else w))}</data>\n')
        fh.write("    </edge>\n")
    fh.write("  </graph>\n")
    fh.write("</graphml>\n")


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _read_graphml(path, directed):
    try:
        root = ET.parse(path).getroot()
    except ET.ParseError as exc:
        raise ParseError(str(exc), exc.position[0], path) from None
    weight_keys = set()
    for el in root:
        if _local(el.tag) == "key" and el.get("attr.name") == "weight":
            if el.get("for") in (None, "edge", "all"):
                weight_keys.add(el.get("id"))
    graph = next((el for el in root if _local(el.tag) == "graph"), None)
    if graph is None:
        raise ParseError("no <graph> element", None, path)
    if directed is None:
        directed = graph.get("edgedefault", "directed") == "directed"
    gid = graph.get("id")
    net = Network(directed=directed, name=None if gid == "graph" else gid)
    for el in graph:
        tag = _local(el.tag)
        if tag == "node":
            net.add_node(el.get("id"))
        elif tag == "edge":
            w = None
            for data in el:
                if _local(data.tag) == "data" and data.get("key") in weight_keys:
                    try:
                        w = float((data.text or "").strip())
                    except ValueError:
                        raise ParseError(f"bad weight {data.text!r}", None, path) from None
            src, dst = el.get("source"), el.get("target")
            if src is None or dst is None:
                raise ParseError("edge without source/target", None, path)
            net.add_edge(src, dst, weight=w)
    return net


# -- dispatch -----------------------------------------------------------


def read_network(
    path,
    format: str = "edgelist",
    directed: bool | None = None,
    delim: str = DEFAULT_DELIM,
    edge_property: str | None = None,
) -> Network:
    """Read a graph file.

    ``directed=None`` means: edgelists are directed, Pajek and GraphML
    follow what the file declares.
    """
    path = Path(path)
    if format == "edgelist":
        return _read_edgelist(path, True if directed is None else directed, delim, edge_property)
    if format == "pajek":
        return _read_pajek(path, directed)
    if format == "graphml":
        return _read_graphml(path, directed)
    raise InvalidParameterError(f"unknown format {format!r}; expected one of {FORMATS}")


def write_network(
    net: Network,
    path,
    format: str = "edgelist",
    weights: bool | None = None,
    skip_duplicates: bool = False,
    transpose: bool = False,
    delim: str = " ",
) -> None:
    """Write ``net`` to a path or an open text file.

    ``weights=None`` writes weights only if some edge has one.
    """
    writers = {"edgelist": _write_edgelist, "pajek": _write_pajek, "graphml": _write_graphml}
    if format not in writers:
        raise InvalidParameterError(f"unknown format {format!r}; expected one of {FORMATS}")
    want = _want_weights(net, weights)

    def emit(fh):
        if format == "edgelist":
            _write_edgelist(net, fh, want, skip_duplicates, transpose, delim)
        else:
            writers[format](net, fh, want, skip_duplicates, transpose)

    if hasattr(path, "write"):
        emit(path)
        return
    with open(Path(path), "w", encoding="utf-8") as fh:
        emit(fh)


def guess_format(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".net", ".pajek", ".paj"):
        return "pajek"
    if suffix in (".graphml", ".xml"):
        return "graphml"
    return "edgelist"
