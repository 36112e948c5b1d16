"""Ground truth for embeddings: literal condition checks and brute-force search.

Everything here works straight from the definitions of link graph, place
graph and bigraph embeddings and shares no logic with the constraint
encoder, so the two can be cross-checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator

from .core import Bigraph, Edge, Embedding, InnerName, OuterName, Port, Root, Site, sort_key

# extra clause: no guest root may be placed inside a passive host node
ACTIVITY = "ACTIVITY"


@dataclass(frozen=True)
class ViolationReport:
    condition: str
    elements: tuple = ()

    def __str__(self) -> str:
        return f"{self.condition}: {', '.join(map(str, self.elements))}"


class UnknownElement(ValueError):
    """The embedding refers to host elements that do not exist."""


def link_nodes(b: Bigraph) -> list:
    """Nodes visible in the link graph alone, i.e. those with at least one port."""
    return [v for v in b.node_list if b.arity(v) > 0]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UnknownElement(message)


def _handle_image(phi: Embedding, h):
    return Edge(phi.phi_e[h.id]) if isinstance(h, Edge) else phi.phi_o[h.name]


def _port_image(phi: Embedding, p: Port) -> Port:
    return Port(phi.phi_v[p.node], p.index)


def _points_image(phi: Embedding, p) -> frozenset:
    if isinstance(p, Port):
        return frozenset([_port_image(phi, p)])
    return phi.phi_i[p.name]


def _check_nodes(G: Bigraph, H: Bigraph, phi: Embedding, domain, tag_inj, tag_ctrl) -> list:
    out = []
    for v in domain:
        _require(v in phi.phi_v, f"phi_v undefined on guest node {v!r}")
        _require(phi.phi_v[v] in H.nodes, f"unknown host node {phi.phi_v[v]!r}")
    images = [phi.phi_v[v] for v in domain]
    if len(set(images)) != len(images):
        out.append(ViolationReport(tag_inj, tuple(sorted(domain))))
    for v in domain:
        if G.ctrl(v) != H.ctrl(phi.phi_v[v]):
            out.append(ViolationReport(tag_ctrl, (v, phi.phi_v[v])))
    return out


def check_link_embedding(G: Bigraph, H: Bigraph, phi: Embedding, *, nodes=None) -> list:
    """Violated link graph embedding conditions.

    ``nodes`` is the guest node set the node map is checked on; by default
    the nodes with ports, which is all a link graph can see.
    """
    domain = link_nodes(G) if nodes is None else sorted(nodes)
    host_points = set(H.points)
    host_handles = set(H.handles)
    for e in G.edges:
        _require(e in phi.phi_e, f"phi_e undefined on guest edge {e!r}")
        _require(phi.phi_e[e] in H.edges, f"unknown host edge {phi.phi_e[e]!r}")
    for y in G.outer_names:
        _require(y in phi.phi_o, f"phi_o undefined on guest outer name {y!r}")
        _require(phi.phi_o[y] in host_handles, f"unknown host handle {phi.phi_o[y]!r}")
    for x in G.inner_names:
        _require(x in phi.phi_i, f"phi_i undefined on guest inner name {x!r}")
        for p in phi.phi_i[x]:
            _require(p in host_points, f"unknown host point {p!r}")

    out = _check_nodes(G, H, phi, domain, "LGE-1", "LGE-6")
    edge_images = [phi.phi_e[e] for e in sorted(G.edges)]
    if len(set(edge_images)) != len(edge_images):
        out.append(ViolationReport("LGE-1", tuple(sorted(G.edges))))

    # LGE-2: fully injective inner names
    xs = sorted(G.inner_names)
    for i, x in enumerate(xs):
        for x2 in xs[i + 1:]:
            common = phi.phi_i[x] & phi.phi_i[x2]
            if common:
                out.append(ViolationReport("LGE-2", (x, x2) + tuple(sorted(common, key=sort_key))))

    # LGE-4
    clash = {Edge(e) for e in edge_images} & set(phi.phi_o.values())
    if clash:
        out.append(ViolationReport("LGE-4", tuple(sorted(clash, key=sort_key))))
    port_image = {_port_image(phi, p) for p in G.ports if p.node in phi.phi_v}
    inner_image = set().union(*phi.phi_i.values()) if phi.phi_i else set()
    if port_image & inner_image:
        out.append(ViolationReport("LGE-4", tuple(sorted(port_image & inner_image, key=sort_key))))

    # LGE-5: the image of an edge covers exactly the points of its host edge
    for e in sorted(G.edges):
        covered = set()
        for p in G.preimage(Edge(e)):
            if isinstance(p, Port) and p.node not in phi.phi_v:
                continue
            covered |= _points_image(phi, p)
        if covered != set(H.preimage(Edge(phi.phi_e[e]))):
            out.append(ViolationReport("LGE-5", (e, phi.phi_e[e])))

    # LGE-7: links are preserved
    for p in G.points:
        if isinstance(p, Port) and p.node not in phi.phi_v:
            continue
        target = _handle_image(phi, G.link[p])
        for p2 in sorted(_points_image(phi, p), key=sort_key):
            if H.link[p2] != target:
                out.append(ViolationReport("LGE-7", (p, p2)))
    return out


def _is_passive_below(H: Bigraph, h) -> bool:
    return any(isinstance(c, str) and not H.signature.is_active(H.ctrl(c))
               for c in H.ancestors(h))


def check_place_embedding(G: Bigraph, H: Bigraph, phi: Embedding, *,
                          respect_activity: bool = True) -> list:
    """Violated place graph embedding conditions (plus the activity clause)."""
    host_places = set(H.site_list) | set(H.nodes)
    for s in range(G.sites):
        _require(s in phi.phi_s, f"phi_s undefined on guest site {s}")
        for c in phi.phi_s[s]:
            _require(c in host_places, f"unknown host place {c!r} in a site image")
    for r in range(G.roots):
        _require(r in phi.phi_r, f"phi_r undefined on guest root {r}")
        _require(phi.phi_r[r] in set(H.nodes) | set(H.root_list),
                 f"unknown host place {phi.phi_r[r]!r} as root image")

    out = _check_nodes(G, H, phi, G.node_list, "PGE-1", "PGE-7")

    for i in range(G.sites):
        for j in range(i + 1, G.sites):
            common = phi.phi_s[i] & phi.phi_s[j]
            if common:
                out.append(ViolationReport("PGE-2", (Site(i), Site(j))))

    node_image = set(phi.phi_v.values())
    root_image = set(phi.phi_r.values())
    site_image = set().union(*phi.phi_s.values()) if phi.phi_s else set()
    if node_image & root_image:
        out.append(ViolationReport("PGE-4", tuple(sorted(node_image & root_image))))
    if node_image & site_image:
        out.append(ViolationReport("PGE-4", tuple(sorted(node_image & site_image, key=sort_key))))

    for r in range(G.roots):
        above = set(H.ancestors(phi.phi_r[r]))
        for s in range(G.sites):
            if above & phi.phi_s[s]:
                out.append(ViolationReport("PGE-5", (Root(r), Site(s))))

    def phi_c(c) -> frozenset:
        return phi.phi_s[c.index] if isinstance(c, Site) else frozenset([phi.phi_v[c]])

    def phi_f(c):
        return phi.phi_r[c.index] if isinstance(c, Root) else phi.phi_v[c]

    # PGE-6: children of a node image are exactly the images of the children
    for v in G.node_list:
        image = set()
        for c in G.children(v):
            image |= phi_c(c)
        if image != set(H.children(phi.phi_v[v])):
            out.append(ViolationReport("PGE-6", (v,)))

    # PGE-8: parents are preserved
    for c in G.site_list + G.node_list:
        target = phi_f(G.prnt[c])
        for c2 in sorted(phi_c(c), key=sort_key):
            if H.prnt[c2] != target:
                out.append(ViolationReport("PGE-8", (c, c2)))

    if respect_activity:
        for r in range(G.roots):
            if _is_passive_below(H, phi.phi_r[r]):
                out.append(ViolationReport(ACTIVITY, (Root(r), phi.phi_r[r])))
    return out


def _parameter_ports(G: Bigraph, H: Bigraph, phi: Embedding) -> set:
    params = set().union(*phi.phi_s.values()) if phi.phi_s else set()
    return {p for p in H.ports if set(H.ancestors(p.node)) & params}


def check_embedding(G: Bigraph, H: Bigraph, phi: Embedding, *,
                    respect_activity: bool = True) -> list:
    """Every violated bigraph embedding condition; empty iff ``phi`` is an embedding."""
    out = check_place_embedding(G, H, phi, respect_activity=respect_activity)
    out += check_link_embedding(G, H, phi, nodes=G.node_list)
    allowed = set(H.inner_points) | _parameter_ports(G, H, phi)
    for x in sorted(G.inner_names):
        stray = phi.phi_i[x] - allowed
        if stray:
            out.append(ViolationReport("BGE-1", (x,) + tuple(sorted(stray, key=sort_key))))
    return out


# -- brute force -------------------------------------------------------------

def node_maps(G: Bigraph, H: Bigraph, nodes=None) -> Iterator[dict]:
    """Injective control-preserving node maps, in canonical order."""
    domain = G.node_list if nodes is None else list(nodes)
    options = {v: [w for w in H.node_list if H.ctrl(w) == G.ctrl(v)] for v in domain}

    def extend(i, used, acc):
        if i == len(domain):
            yield dict(acc)
            return
        v = domain[i]
        for w in options[v]:
            if w not in used:
                acc[v] = w
                used.add(w)
                yield from extend(i + 1, used, acc)
                used.discard(w)
                del acc[v]

    yield from extend(0, set(), {})


def _assignments(items: list, choices) -> Iterator[dict]:
    """Every way of sending each item to one of ``choices(item)`` or to nothing."""
    options = [[None] + list(choices(it)) for it in items]
    for pick in product(*options):
        out: dict = {}
        for it, k in zip(items, pick):
            if k is not None:
                out.setdefault(k, set()).add(it)
        yield out


def _link_parts(G: Bigraph, H: Bigraph, phi_v: dict) -> Iterator[Embedding]:
    guest_edges = sorted(G.edges)
    outer = sorted(G.outer_names)
    inner = sorted(G.inner_names)
    port_image = {Port(phi_v[p.node], p.index) for p in G.ports if p.node in phi_v}
    free_points = [p for p in H.points if p not in port_image]
    for edge_img in permutations(sorted(H.edges), len(guest_edges)):
        phi_e = dict(zip(guest_edges, edge_img))
        for outer_img in product(H.handles, repeat=len(outer)):
            phi_o = dict(zip(outer, outer_img))

            def image_of(h):
                return Edge(phi_e[h.id]) if isinstance(h, Edge) else phi_o[h.name]

            # a host point can only serve an inner name whose handle maps onto its own
            def eligible(p2):
                return [x for x in inner if image_of(G.link[InnerName(x)]) == H.link[p2]]

            for parts in _assignments(free_points, eligible):
                phi_i = {x: frozenset(parts.get(x, ())) for x in inner}
                yield Embedding(phi_v, phi_e, phi_i, phi_o)


def _place_parts(G: Bigraph, H: Bigraph, phi_v: dict) -> Iterator[Embedding]:
    node_image = set(phi_v.values())
    root_targets = H.node_list + H.root_list
    for root_img in product(root_targets, repeat=G.roots):
        phi_r = dict(enumerate(root_img))

        def parent_image(c):
            return phi_r[c.index] if isinstance(c, Root) else phi_v[c]

        # a site takes host places sitting right under its parent's image
        site_parent = {s: parent_image(G.prnt[Site(s)]) for s in range(G.sites)}
        candidates = [c for c in H.site_list + H.node_list
                      if c not in node_image and H.prnt[c] in set(site_parent.values())]

        def eligible(c):
            return [s for s in range(G.sites) if site_parent[s] == H.prnt[c]]

        for parts in _assignments(candidates, eligible):
            phi_s = {s: frozenset(parts.get(s, ())) for s in range(G.sites)}
            yield Embedding(phi_v, phi_s=phi_s, phi_r=phi_r)


def brute_force_link_embeddings(G: Bigraph, H: Bigraph) -> set:
    """All link graph embeddings, node maps restricted to nodes with ports."""
    out = set()
    for phi_v in node_maps(G, H, link_nodes(G)):
        for phi in _link_parts(G, H, phi_v):
            if not check_link_embedding(G, H, phi):
                out.add(phi)
    return out


def brute_force_place_embeddings(G: Bigraph, H: Bigraph, *, respect_activity: bool = True) -> set:
    out = set()
    for phi_v in node_maps(G, H):
        for phi in _place_parts(G, H, phi_v):
            if not check_place_embedding(G, H, phi, respect_activity=respect_activity):
                out.add(phi)
    return out


def brute_force_embeddings(G: Bigraph, H: Bigraph, *, respect_activity: bool = True) -> set:
    """Every bigraph embedding of ``G`` into ``H``."""
    out = set()
    for phi_v in node_maps(G, H):
        places = [p for p in _place_parts(G, H, phi_v)
                  if not check_place_embedding(G, H, p, respect_activity=respect_activity)]
        if not places:
            continue
        links = [lk for lk in _link_parts(G, H, phi_v)
                 if not check_link_embedding(G, H, lk, nodes=G.node_list)]
        for p in places:
            for lk in links:
                phi = Embedding(phi_v, lk.phi_e, lk.phi_i, lk.phi_o, p.phi_s, p.phi_r)
                if not check_embedding(G, H, phi, respect_activity=respect_activity):
                    out.add(phi)
    return out
