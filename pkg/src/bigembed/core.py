"""Concrete bigraphs: signatures and their place and link structure, with validation and composition."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Union

import networkx as nx
from networkx.algorithms import isomorphism


# -- identifiers -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Root:
    index: int

    def __str__(self) -> str:
        return f"r{self.index}"


@dataclass(frozen=True, order=True)
class Site:
    index: int

    def __str__(self) -> str:
        return f"s{self.index}"


@dataclass(frozen=True, order=True)
class Port:
    node: str
    index: int

    def __str__(self) -> str:
        return f"{self.node}:{self.index}"


@dataclass(frozen=True, order=True)
class InnerName:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Edge:
    id: str

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True, order=True)
class OuterName:
    name: str

    def __str__(self) -> str:
        return self.name


# Nodes are plain string ids.
Place = Union[str, Root, Site]
Point = Union[Port, InnerName]
Handle = Union[Edge, OuterName]


def sort_key(x) -> tuple:
    """Total order over all identifier kinds.

    Within a disjoint union the order follows the usual reading
    ``n ⊎ V ⊎ m`` for places, ``P ⊎ X`` for points and ``E ⊎ Y`` for handles.
    """
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, int):
        return (x,)
    if isinstance(x, Site):
        return (0, x.index)
    if isinstance(x, Root):
        return (2, x.index)
    if isinstance(x, Port):
        return (0, x.node, x.index)
    if isinstance(x, InnerName):
        return (1, x.name)
    if isinstance(x, Edge):
        return (0, x.id)
    if isinstance(x, OuterName):
        return (1, x.name)
    if isinstance(x, tuple):
        return tuple(sort_key(y) for y in x)
    raise TypeError(f"no order for {x!r}")


def sorted_keys(items: Iterable) -> list:
    return sorted(items, key=sort_key)


# -- signature ---------------------------------------------------------------

@dataclass(frozen=True)
class Control:
    name: str
    arity: int
    active: bool = True


@dataclass(frozen=True)
class Signature:
    controls: Mapping[str, Control] = field(default_factory=dict)

    @classmethod
    def of(cls, *entries) -> "Signature":
        """Build from ``(name, arity)`` or ``(name, arity, active)`` tuples."""
        controls = {}
        for entry in entries:
            c = entry if isinstance(entry, Control) else Control(*entry)
            if c.name in controls:
                raise ValueError(f"duplicate control {c.name!r}")
            controls[c.name] = c
        return cls(controls)

    def __contains__(self, name: str) -> bool:
        return name in self.controls

    def __iter__(self):
        return iter(self.controls.values())

    def __len__(self) -> int:
        return len(self.controls)

    def arity(self, name: str) -> int:
        return self.controls[name].arity

    def is_active(self, name: str) -> bool:
        return self.controls[name].active

    def merge(self, other: "Signature") -> "Signature":
        check_signatures(self, other)
        merged = dict(self.controls)
        merged.update(other.controls)
        return Signature(merged)

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and dict(self.controls) == dict(other.controls)

    def __hash__(self) -> int:
        return hash(frozenset(self.controls.items()))


class SignatureMismatch(ValueError):
    """Two bigraphs disagree on a control they both declare."""


def check_signatures(a: Signature, b: Signature) -> None:
    for name in a.controls.keys() & b.controls.keys():
        if a.controls[name] != b.controls[name]:
            raise SignatureMismatch(
                f"control {name!r} declared as {a.controls[name]} and {b.controls[name]}")


# -- bigraphs ----------------------------------------------------------------

class Interface(NamedTuple):
    width: int
    names: frozenset


@dataclass(frozen=True)
class Bigraph:
    """A concrete bigraph ``<sites, inner_names> -> <roots, outer_names>``.

    ``nodes`` maps node ids to control names; ``prnt`` is the parent map on
    nodes and sites; ``link`` maps ports and inner names to edges and outer
    names.  Instances are treated as immutable.
    """

    signature: Signature
    nodes: Mapping[str, str]
    sites: int
    roots: int
    prnt: Mapping[Place, Place]
    edges: frozenset = frozenset()
    inner_names: frozenset = frozenset()
    outer_names: frozenset = frozenset()
    link: Mapping[Point, Handle] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "inner_names", frozenset(self.inner_names))
        object.__setattr__(self, "outer_names", frozenset(self.outer_names))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bigraph):
            return NotImplemented
        return (self.signature == other.signature
                and dict(self.nodes) == dict(other.nodes)
                and self.sites == other.sites and self.roots == other.roots
                and dict(self.prnt) == dict(other.prnt)
                and self.edges == other.edges
                and self.inner_names == other.inner_names
                and self.outer_names == other.outer_names
                and dict(self.link) == dict(other.link))

    __hash__ = None

    @property
    def inner(self) -> Interface:
        return Interface(self.sites, self.inner_names)

    @property
    def outer(self) -> Interface:
        return Interface(self.roots, self.outer_names)

    @property
    def is_ground(self) -> bool:
        return self.sites == 0 and not self.inner_names

    def ctrl(self, node: str) -> str:
        return self.nodes[node]

    def arity(self, node: str) -> int:
        return self.signature.arity(self.nodes[node])

    # carrier sets, each in canonical order
    @cached_property
    def node_list(self) -> list:
        return sorted(self.nodes)

    @cached_property
    def site_list(self) -> list:
        return [Site(i) for i in range(self.sites)]

    @cached_property
    def root_list(self) -> list:
        return [Root(i) for i in range(self.roots)]

    @cached_property
    def places(self) -> list:
        return self.site_list + self.node_list + self.root_list

    @cached_property
    def ports(self) -> list:
        return [Port(v, i) for v in self.node_list
                for i in range(self.signature.arity(self.nodes[v]))]

    @cached_property
    def inner_points(self) -> list:
        return [InnerName(x) for x in sorted(self.inner_names)]

    @cached_property
    def points(self) -> list:
        return self.ports + self.inner_points

    @cached_property
    def edge_handles(self) -> list:
        return [Edge(e) for e in sorted(self.edges)]

    @cached_property
    def outer_handles(self) -> list:
        return [OuterName(y) for y in sorted(self.outer_names)]

    @cached_property
    def handles(self) -> list:
        return self.edge_handles + self.outer_handles

    @cached_property
    def _children(self) -> dict:
        out: dict = {p: [] for p in self.node_list + self.root_list}
        for c in self.site_list + self.node_list:
            parent = self.prnt.get(c)
            if parent in out:
                out[parent].append(c)
        return out

    def children(self, place: Place) -> list:
        """``prnt⁻¹(place)`` in canonical order."""
        return list(self._children.get(place, ()))

    @cached_property
    def _preimage(self) -> dict:
        out: dict = {h: [] for h in self.handles}
        for p in self.points:
            h = self.link.get(p)
            if h in out:
                out[h].append(p)
        return out

    def preimage(self, handle: Handle) -> list:
        return list(self._preimage.get(handle, ()))

    @cached_property
    def _ancestors(self) -> dict:
        return {c: _walk_up(self, c) for c in self.places}

    def ancestors(self, place: Place) -> list:
        """``prnt*(place)``: the place itself followed by its ancestors."""
        try:
            return list(self._ancestors[place])
        except KeyError:
            raise KeyError(f"unknown place {place!r}") from None

    def with_supports(self, node_map: Mapping[str, str], edge_map: Mapping[str, str]) -> "Bigraph":
        """Rename nodes and edges (support translation)."""
        def place(p):
            return node_map.get(p, p) if isinstance(p, str) else p

        def point(p):
            return Port(node_map[p.node], p.index) if isinstance(p, Port) else p

        def handle(h):
            return Edge(edge_map[h.id]) if isinstance(h, Edge) else h

        return Bigraph(
            self.signature,
            {node_map[v]: c for v, c in self.nodes.items()},
            self.sites, self.roots,
            {place(c): place(p) for c, p in self.prnt.items()},
            frozenset(edge_map[e] for e in self.edges),
            self.inner_names, self.outer_names,
            {point(p): handle(h) for p, h in self.link.items()})


def _walk_up(b: Bigraph, c: Place) -> list:
    chain = [c]
    limit = len(b.nodes) + 1
    while not isinstance(chain[-1], Root):
        parent = b.prnt.get(chain[-1])
        if parent is None or len(chain) > limit:
            break
        chain.append(parent)
    return chain


# -- basic queries -----------------------------------------------------------

def prnt_star(b: Bigraph, c: Place) -> list:
    """``c, prnt(c), prnt²(c), ...`` up to and including the root."""
    if c not in b._ancestors:
        raise KeyError(f"unknown place {c!r}")
    return b.ancestors(c)


def link_preimage(b: Bigraph, h: Handle) -> frozenset:
    if h not in b._preimage:
        raise KeyError(f"unknown handle {h!r}")
    return frozenset(b._preimage[h])


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    invariant: str
    element: str
    message: str = ""

    def to_dict(self) -> dict:
        return {"invariant": self.invariant, "element": self.element, "message": self.message}


_RESERVED = re.compile(r"^[rs]\d+$")


def validate(b: Bigraph) -> list:
    """List every broken well-formedness invariant of ``b``."""
    out = []
    sig = b.signature
    for c in sig:
        if c.arity < 0:
            out.append(Violation("arity", c.name, "negative arity"))
    if b.sites < 0 or b.roots < 0:
        out.append(Violation("width", "interface", "negative width"))
    for v, c in b.nodes.items():
        if c not in sig:
            out.append(Violation("control", v, f"unknown control {c!r}"))
        if not isinstance(v, str) or not v:
            out.append(Violation("identifier", repr(v), "node ids are non-empty strings"))
        elif _RESERVED.match(v) or ":" in v:
            out.append(Violation("identifier", v, "node id collides with place/port syntax"))
    for e in b.edges & b.outer_names:
        out.append(Violation("identifier", e, "edge id also used as outer name"))
    for x in b.inner_names:
        if ":" in x:
            out.append(Violation("identifier", x, "inner name collides with port syntax"))

    # place graph
    children = set(b.site_list) | set(b.nodes)
    parents_ok = set(b.nodes) | set(b.root_list)
    for c in sorted_keys(children):
        p = b.prnt.get(c)
        if p is None:
            out.append(Violation("prnt-total", str(c), "missing parent"))
        elif isinstance(p, Site):
            out.append(Violation("site-leaf", str(c), f"parent {p} is a site"))
        elif p not in parents_ok:
            out.append(Violation("prnt-target", str(c), f"unknown parent {p!r}"))
    for c in b.prnt:
        if c not in children:
            out.append(Violation("prnt-domain", str(c), "parent given for unknown place"))
    limit = len(b.nodes) + 1
    for v in b.node_list:
        seen, cur, steps = {v}, b.prnt.get(v), 0
        while cur is not None and not isinstance(cur, Root) and steps <= limit:
            if cur in seen:
                out.append(Violation("forest", v, "parent chain loops"))
                break
            seen.add(cur)
            cur = b.prnt.get(cur)
            steps += 1

    # link graph
    points = set()
    for v, c in b.nodes.items():
        if c in sig:
            points.update(Port(v, i) for i in range(sig.arity(c)))
    points.update(InnerName(x) for x in b.inner_names)
    handles = {Edge(e) for e in b.edges} | {OuterName(y) for y in b.outer_names}
    for p in sorted_keys(points):
        h = b.link.get(p)
        if h is None:
            out.append(Violation("link-total", str(p), "point is not linked"))
        elif h not in handles:
            out.append(Violation("link-target", str(p), f"unknown handle {h!r}"))
    for p in b.link:
        if p not in points:
            out.append(Violation("link-domain", str(p), "link given for unknown point"))
    return out


# -- composition -------------------------------------------------------------

class CompositionError(ValueError):
    pass


def compose(outer_b: Bigraph, inner_b: Bigraph) -> Bigraph:
    """``outer_b ∘ inner_b``: plug the regions of ``inner_b`` into the sites of ``outer_b``."""
    if inner_b.outer != outer_b.inner:
        raise CompositionError(f"interface mismatch: {inner_b.outer} vs {outer_b.inner}")
    if outer_b.nodes.keys() & inner_b.nodes.keys():
        raise CompositionError("node supports overlap")
    if outer_b.edges & inner_b.edges:
        raise CompositionError("edge supports overlap")
    sig = outer_b.signature.merge(inner_b.signature)

    prnt = {c: p for c, p in outer_b.prnt.items() if not isinstance(c, Site)}
    for c, p in inner_b.prnt.items():
        prnt[c] = outer_b.prnt[Site(p.index)] if isinstance(p, Root) else p

    link = {p: h for p, h in outer_b.link.items() if not isinstance(p, InnerName)}
    for p, h in inner_b.link.items():
        link[p] = outer_b.link[InnerName(h.name)] if isinstance(h, OuterName) else h

    return Bigraph(sig, {**outer_b.nodes, **inner_b.nodes}, inner_b.sites, outer_b.roots,
                   prnt, outer_b.edges | inner_b.edges, inner_b.inner_names,
                   outer_b.outer_names, link)


def identity(width: int, names: Iterable[str] = (), signature: Signature | None = None) -> Bigraph:
    names = frozenset(names)
    return Bigraph(signature or Signature(), {}, width, width,
                   {Site(i): Root(i) for i in range(width)}, frozenset(), names, names,
                   {InnerName(x): OuterName(x) for x in names})


def with_identity_names(b: Bigraph, names: Iterable[str]) -> Bigraph:
    """``b ⊗ id_names``: thread extra names straight through ``b``."""
    names = frozenset(names)
    if names & (b.inner_names | b.outer_names):
        raise CompositionError("identity names clash with the interface")
    link = dict(b.link)
    link.update({InnerName(x): OuterName(x) for x in names})
    return Bigraph(b.signature, b.nodes, b.sites, b.roots, b.prnt, b.edges,
                   b.inner_names | names, b.outer_names | names, link)


def juxtapose(parts: Iterable[Bigraph], signature: Signature | None = None) -> Bigraph:
    """Parallel product: regions side by side, equal outer names shared.

    Supports must be disjoint and inner names must not clash.
    """
    parts = list(parts)
    sig = signature or Signature()
    nodes, prnt, link = {}, {}, {}
    edges, inner, outer = set(), set(), set()
    sites = roots = 0
    for b in parts:
        sig = sig.merge(b.signature)
        if nodes.keys() & b.nodes.keys() or edges & b.edges:
            raise CompositionError("supports overlap")
        if inner & b.inner_names:
            raise CompositionError("inner names overlap")
        nodes.update(b.nodes)
        for c, p in b.prnt.items():
            c = Site(c.index + sites) if isinstance(c, Site) else c
            p = Root(p.index + roots) if isinstance(p, Root) else p
            prnt[c] = p
        link.update(b.link)
        edges |= b.edges
        inner |= b.inner_names
        outer |= b.outer_names
        sites += b.sites
        roots += b.roots
    return Bigraph(sig, nodes, sites, roots, prnt, frozenset(edges), frozenset(inner),
                   frozenset(outer), link)


# -- isomorphism -------------------------------------------------------------

def _as_digraph(b: Bigraph) -> nx.DiGraph:
    g = nx.DiGraph()
    for v, c in b.nodes.items():
        g.add_node(("v", v), label=("node", c))
    for r in b.root_list:
        g.add_node(r, label=("root", r.index))
    for s in b.site_list:
        g.add_node(s, label=("site", s.index))
    for e in b.edges:
        g.add_node(Edge(e), label=("edge",))
    for y in b.outer_names:
        g.add_node(OuterName(y), label=("outer", y))
    for x in b.inner_names:
        g.add_node(InnerName(x), label=("inner", x))

    def key(c):
        return ("v", c) if isinstance(c, str) else c

    for c, p in b.prnt.items():
        g.add_edge(key(c), key(p))
    for p, h in b.link.items():
        if isinstance(p, Port):
            port = ("p", p.node, p.index)
            g.add_node(port, label=("port", p.index))
            g.add_edge(("v", p.node), port)
            g.add_edge(port, h)
        else:
            g.add_edge(p, h)
    return g


def is_isomorphic(a: Bigraph, b: Bigraph) -> bool:
    """Equality up to renaming of nodes and edges, interfaces fixed."""
    try:
        check_signatures(a.signature, b.signature)
    except SignatureMismatch:
        return False
    if a.inner != b.inner or a.outer != b.outer:
        return False
    if len(a.nodes) != len(b.nodes) or len(a.edges) != len(b.edges):
        return False
    if sorted(a.nodes.values()) != sorted(b.nodes.values()):
        return False
    if dict(a.nodes) == dict(b.nodes) and dict(a.prnt) == dict(b.prnt) \
            and a.edges == b.edges and dict(a.link) == dict(b.link):
        return True
    return nx.is_isomorphic(_as_digraph(a), _as_digraph(b),
                            node_match=isomorphism.categorical_node_match("label", None))


# -- embeddings --------------------------------------------------------------

def _freeze(mapping: Mapping) -> tuple:
    return tuple(sorted(((k, frozenset(v) if isinstance(v, (set, frozenset)) else v)
                         for k, v in mapping.items()), key=lambda kv: sort_key(kv[0])))


@dataclass(frozen=True)
class Embedding:
    """The six component maps of a bigraph embedding ``G ↪ H``.

    ``phi_v``/``phi_e`` send guest node/edge ids to host ids, ``phi_i`` sends
    guest inner names to sets of host points, ``phi_o`` guest outer names to
    host handles, ``phi_s`` guest site indices to sets of host places and
    ``phi_r`` guest root indices to a host place.  Equality is component-wise.
    """

    phi_v: Mapping[str, str] = field(default_factory=dict)
    phi_e: Mapping[str, str] = field(default_factory=dict)
    phi_i: Mapping[str, frozenset] = field(default_factory=dict)
    phi_o: Mapping[str, Handle] = field(default_factory=dict)
    phi_s: Mapping[int, frozenset] = field(default_factory=dict)
    phi_r: Mapping[int, Place] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "phi_i", {k: frozenset(v) for k, v in self.phi_i.items()})
        object.__setattr__(self, "phi_s", {k: frozenset(v) for k, v in self.phi_s.items()})

    def _key(self) -> tuple:
        return tuple(_freeze(m) for m in (self.phi_v, self.phi_e, self.phi_i,
                                          self.phi_o, self.phi_s, self.phi_r))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def link_part(self) -> "Embedding":
        return Embedding(phi_v=self.phi_v, phi_e=self.phi_e, phi_i=self.phi_i, phi_o=self.phi_o)

    def place_part(self) -> "Embedding":
        return Embedding(phi_v=self.phi_v, phi_s=self.phi_s, phi_r=self.phi_r)

    def restrict_nodes(self, nodes: Iterable[str]) -> "Embedding":
        keep = set(nodes)
        return Embedding({v: w for v, w in self.phi_v.items() if v in keep}, self.phi_e,
                         self.phi_i, self.phi_o, self.phi_s, self.phi_r)
