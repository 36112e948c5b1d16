"""Canonical JSON format for bigraphs and embeddings."""
from __future__ import annotations

import json
import re
from typing import Any

from .core import (Bigraph, Control, Edge, Embedding, InnerName, OuterName, Port, Root,
                   Signature, Site, Violation, sorted_keys, validate)

_ROOT = re.compile(r"^r(\d+)$")
_SITE = re.compile(r"^s(\d+)$")


class BigraphFormatError(ValueError):
    """Raised when a document does not describe a well-formed bigraph."""

    def __init__(self, diagnostics: list):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"{d.element}: {d.invariant} {d.message}".strip()
                                   for d in self.diagnostics))


def _fail(element: str, message: str, invariant: str = "format"):
    raise BigraphFormatError([Violation(invariant, element, message)])


def _expect(cond: bool, element: str, message: str):
    if not cond:
        _fail(element, message)


def parse_place(text: str, *, allow_site: bool = False):
    m = _ROOT.match(text)
    if m:
        return Root(int(m.group(1)))
    m = _SITE.match(text)
    if m and allow_site:
        return Site(int(m.group(1)))
    return text


def parse_point(text: str):
    if ":" in text:
        node, _, idx = text.rpartition(":")
        if not idx.isdigit():
            _fail(text, "port index must be a non-negative integer")
        return Port(node, int(idx))
    return InnerName(text)


def bigraph_from_dict(data: Any, *, strict: bool = True) -> Bigraph:
    """Build a bigraph from the canonical JSON structure.

    With ``strict`` every ``validate`` violation is raised as a
    :class:`BigraphFormatError`.
    """
    _expect(isinstance(data, dict), "<document>", "expected an object")
    controls = []
    for i, entry in enumerate(data.get("signature", [])):
        where = f"signature[{i}]"
        _expect(isinstance(entry, dict) and isinstance(entry.get("ctrl"), str),
                where, "expected {ctrl, arity}")
        arity = entry.get("arity", 0)
        _expect(isinstance(arity, int) and not isinstance(arity, bool), where, "arity must be an integer")
        controls.append(Control(entry["ctrl"], arity, bool(entry.get("active", True))))
    names = [c.name for c in controls]
    if len(set(names)) != len(names):
        _fail("signature", "control names must be unique", "control")
    signature = Signature({c.name: c for c in controls})

    def face(key):
        f = data.get(key, {})
        _expect(isinstance(f, dict), key, "expected {width, names}")
        width = f.get("width", 0)
        _expect(isinstance(width, int) and width >= 0, f"{key}.width", "must be a non-negative integer")
        fnames = f.get("names", [])
        _expect(isinstance(fnames, list) and all(isinstance(n, str) for n in fnames),
                f"{key}.names", "expected a list of strings")
        _expect(len(set(fnames)) == len(fnames), f"{key}.names", "duplicate name")
        return width, frozenset(fnames)

    sites, inner_names = face("inner")
    roots, outer_names = face("outer")

    nodes, prnt = {}, {}
    for i, entry in enumerate(data.get("nodes", [])):
        where = f"nodes[{i}]"
        _expect(isinstance(entry, dict) and all(isinstance(entry.get(k), str)
                                                for k in ("id", "ctrl", "parent")),
                where, "expected {id, ctrl, parent}")
        v = entry["id"]
        _expect(v not in nodes, v, "duplicate node id")
        nodes[v] = entry["ctrl"]
        prnt[v] = parse_place(entry["parent"])
    for i, entry in enumerate(data.get("sites", [])):
        where = f"sites[{i}]"
        _expect(isinstance(entry, dict) and isinstance(entry.get("index"), int)
                and isinstance(entry.get("parent"), str), where, "expected {index, parent}")
        s = Site(entry["index"])
        _expect(s not in prnt, str(s), "duplicate site")
        _expect(0 <= s.index < sites, str(s), "site index outside the inner width")
        prnt[s] = parse_place(entry["parent"], allow_site=True)

    edges = data.get("edges", [])
    _expect(isinstance(edges, list) and all(isinstance(e, str) for e in edges),
            "edges", "expected a list of strings")
    _expect(len(set(edges)) == len(edges), "edges", "duplicate edge id")
    edges = frozenset(edges)

    link = {}
    raw_links = data.get("links", {})
    _expect(isinstance(raw_links, dict), "links", "expected an object")
    for key, value in raw_links.items():
        _expect(isinstance(value, str), key, "link target must be a string")
        point = parse_point(key)
        if value in edges:
            link[point] = Edge(value)
        elif value in outer_names:
            link[point] = OuterName(value)
        else:
            _fail(key, f"unknown handle {value!r}", "link-target")

    b = Bigraph(signature, nodes, sites, roots, prnt, edges, inner_names, outer_names, link)
    if strict:
        problems = validate(b)
        if problems:
            raise BigraphFormatError(problems)
    return b


def place_str(p) -> str:
    return str(p)


def bigraph_to_dict(b: Bigraph) -> dict:
    return {
        "signature": [{"ctrl": c.name, "arity": c.arity, "active": c.active}
                      for c in sorted(b.signature, key=lambda c: c.name)],
        "inner": {"width": b.sites, "names": sorted(b.inner_names)},
        "outer": {"width": b.roots, "names": sorted(b.outer_names)},
        "nodes": [{"id": v, "ctrl": b.nodes[v], "parent": str(b.prnt[v])} for v in b.node_list],
        "sites": [{"index": s.index, "parent": str(b.prnt[s])} for s in b.site_list],
        "edges": sorted(b.edges),
        "links": {str(p): str(b.link[p]) for p in sorted_keys(b.link)},
    }


def loads_bigraph(text: str) -> Bigraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"line {exc.lineno}", exc.msg, "json")
    return bigraph_from_dict(data)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def embedding_to_dict(phi: Embedding) -> dict:
    return {
        "phi_v": {v: phi.phi_v[v] for v in sorted(phi.phi_v)},
        "phi_e": {e: phi.phi_e[e] for e in sorted(phi.phi_e)},
        "phi_i": {x: [str(p) for p in sorted_keys(phi.phi_i[x])] for x in sorted(phi.phi_i)},
        "phi_o": {y: str(phi.phi_o[y]) for y in sorted(phi.phi_o)},
        "phi_s": {str(s): [str(p) for p in sorted_keys(phi.phi_s[s])] for s in sorted(phi.phi_s)},
        "phi_r": {str(r): str(phi.phi_r[r]) for r in sorted(phi.phi_r)},
    }


def embedding_from_dict(data: dict, host: Bigraph) -> Embedding:
    """Inverse of :func:`embedding_to_dict`; the host disambiguates handles."""
    def handle(text):
        return Edge(text) if text in host.edges else OuterName(text)

    return Embedding(
        phi_v=dict(data.get("phi_v", {})),
        phi_e=dict(data.get("phi_e", {})),
        phi_i={x: frozenset(parse_point(p) for p in ps) for x, ps in data.get("phi_i", {}).items()},
        phi_o={y: handle(h) for y, h in data.get("phi_o", {}).items()},
        phi_s={int(s): frozenset(parse_place(p, allow_site=True) for p in ps)
               for s, ps in data.get("phi_s", {}).items()},
        phi_r={int(r): parse_place(p) for r, p in data.get("phi_r", {}).items()},
    )
