"""Random and exhaustive generation of small bigraphs."""
from __future__ import annotations

import random
from itertools import permutations, product
from typing import Iterator

from .core import Bigraph, Edge, InnerName, OuterName, Port, Root, Signature, Site


class GenerationError(ValueError):
    pass


def random_bigraph(rng: random.Random, signature: Signature, *, nodes: int = 0, edges: int = 0,
                   sites: int = 0, roots: int = 1, inner_names: int = 0,
                   outer_names: int = 0) -> Bigraph:
    """A valid bigraph with exactly the requested carrier sizes.

    Node ``i`` is placed under a root or an earlier node, which keeps the
    place graph a forest.  Names are ``x0, x1, ...`` and ``y0, y1, ...``.
    """
    if min(nodes, edges, sites, roots, inner_names, outer_names) < 0:
        raise GenerationError("counts must be non-negative")
    if (nodes or sites) and not roots:
        raise GenerationError("nodes and sites need at least one root")
    controls = sorted(signature.controls)
    if nodes and not controls:
        raise GenerationError("nodes need a non-empty signature")
    ids = [f"v{i}" for i in range(nodes)]
    ctrl = {v: rng.choice(controls) for v in ids}
    prnt: dict = {}
    root_list = [Root(i) for i in range(roots)]
    for i, v in enumerate(ids):
        prnt[v] = rng.choice(root_list + ids[:i])
    for s in range(sites):
        prnt[Site(s)] = rng.choice(root_list + ids)
    edge_ids = [f"e{i}" for i in range(edges)]
    inner = [f"x{i}" for i in range(inner_names)]
    outer = [f"y{i}" for i in range(outer_names)]
    handles = [Edge(e) for e in edge_ids] + [OuterName(y) for y in outer]
    points = [Port(v, i) for v in ids for i in range(signature.arity(ctrl[v]))]
    points += [InnerName(x) for x in inner]
    if points and not handles:
        raise GenerationError("points need at least one edge or outer name")
    link = {p: rng.choice(handles) for p in points}
    return Bigraph(signature, ctrl, sites, roots, prnt, frozenset(edge_ids),
                   frozenset(inner), frozenset(outer), link)


def canonical_form(b: Bigraph) -> tuple:
    """A key equal for two bigraphs iff they are isomorphic (small supports only)."""
    best = None
    nodes, edges = b.node_list, sorted(b.edges)
    for order in permutations(range(len(nodes))):
        rn = {v: f"v{order[i]}" for i, v in enumerate(nodes)}
        place = {v: rn[v] for v in nodes}
        prnt = tuple(sorted((str(place.get(c, c)), str(place.get(p, p)) if isinstance(p, str) else str(p))
                            for c, p in b.prnt.items()))
        ctrl = tuple(sorted((rn[v], c) for v, c in b.nodes.items()))
        for eorder in permutations(range(len(edges))):
            re_ = {e: f"e{eorder[i]}" for i, e in enumerate(edges)}

            def pt(p):
                return f"{rn[p.node]}:{p.index}" if isinstance(p, Port) else f"#{p.name}"

            def hd(h):
                return re_[h.id] if isinstance(h, Edge) else f"#{h.name}"

            link = tuple(sorted((pt(p), hd(h)) for p, h in b.link.items()))
            key = (ctrl, prnt, link)
            if best is None or key < best:
                best = key
    return (b.sites, b.roots, tuple(sorted(b.inner_names)), tuple(sorted(b.outer_names)),
            len(b.edges), best)


def all_bigraphs(signature: Signature, *, nodes: int, edges: int, sites: int, roots: int,
                 inner_names=(), outer_names=()) -> Iterator[Bigraph]:
    """Every bigraph with exactly these carriers, one per isomorphism class.

    Node ``i`` only gets parents among the roots and nodes ``< i``; every
    forest is isomorphic to one so labelled, so no class is missed.
    """
    controls = sorted(signature.controls)
    ids = [f"v{i}" for i in range(nodes)]
    root_list = [Root(i) for i in range(roots)]
    if (nodes or sites) and not roots:
        return
    edge_ids = [f"e{i}" for i in range(edges)]
    handles = [Edge(e) for e in edge_ids] + [OuterName(y) for y in sorted(outer_names)]
    seen = set()
    for ctrls in product(controls, repeat=nodes):
        ctrl = dict(zip(ids, ctrls))
        points = [Port(v, i) for v in ids for i in range(signature.arity(ctrl[v]))]
        points += [InnerName(x) for x in sorted(inner_names)]
        if points and not handles:
            continue
        node_parents = [root_list + ids[:i] for i in range(nodes)]
        for np_ in product(*node_parents):
            for sp in product(root_list + ids, repeat=sites):
                prnt = dict(zip(ids, np_))
                prnt.update({Site(s): p for s, p in enumerate(sp)})
                for targets in product(handles, repeat=len(points)):
                    b = Bigraph(signature, ctrl, sites, roots, prnt, frozenset(edge_ids),
                                frozenset(inner_names), frozenset(outer_names),
                                dict(zip(points, targets)))
                    key = canonical_form(b)
                    if key not in seen:
                        seen.add(key)
                        yield b


def bigraph_family(signature: Signature, *, max_nodes: int, max_edges: int, max_sites: int,
                   max_roots: int, max_inner: int, max_outer: int,
                   min_roots: int = 0) -> Iterator[Bigraph]:
    """Union of :func:`all_bigraphs` over every size up to the given bounds."""
    for n in range(max_nodes + 1):
        for e in range(max_edges + 1):
            for s in range(max_sites + 1):
                for r in range(min_roots, max_roots + 1):
                    for xi in range(max_inner + 1):
                        for yo in range(max_outer + 1):
                            yield from all_bigraphs(
                                signature, nodes=n, edges=e, sites=s, roots=r,
                                inner_names=[f"x{i}" for i in range(xi)],
                                outer_names=[f"y{i}" for i in range(yo)])
