"""Shared test oracles and fixtures, plus the acceptance corpus."""
from __future__ import annotations

from itertools import chain, combinations, product

from bigembed.core import (Bigraph, Edge, Embedding, InnerName, OuterName, Port, Root,
                           Signature, Site)
from bigembed.oracle import check_embedding, node_maps

ACCEPTANCE_LINES: list = []


# -- testing oracles ---------------------------------------------------------

def cartesian_solutions(model) -> list:
    """Every point of the full domain box that satisfies the model."""
    if model.contradiction is not None:
        return []
    ranges = [range(lo, hi + 1) for lo, hi in zip(model.lower, model.upper)]
    return [vals for vals in product(*ranges) if model.is_solution(vals)]


def _powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def naive_embeddings(G: Bigraph, H: Bigraph, *, respect_activity: bool = True) -> set:
    """Filter the whole candidate space (every subset for set-valued maps)."""
    out = set()
    subsets_points = [frozenset(s) for s in _powerset(H.points)]
    subsets_places = [frozenset(s) for s in _powerset(H.site_list + H.node_list)]
    for phi_v in node_maps(G, H):
        for phi_e in product(sorted(H.edges), repeat=len(G.edges)):
            for phi_o in product(H.handles, repeat=len(G.outer_names)):
                for phi_i in product(subsets_points, repeat=len(G.inner_names)):
                    for phi_s in product(subsets_places, repeat=G.sites):
                        for phi_r in product(H.node_list + H.root_list, repeat=G.roots):
                            phi = Embedding(phi_v, dict(zip(sorted(G.edges), phi_e)),
                                            dict(zip(sorted(G.inner_names), phi_i)),
                                            dict(zip(sorted(G.outer_names), phi_o)),
                                            dict(enumerate(phi_s)), dict(enumerate(phi_r)))
                            if not check_embedding(G, H, phi, respect_activity=respect_activity):
                                out.add(phi)
    return out


# -- fixtures ----------------------------------------------------------------

def ambient_rule_parts():
    sig = Signature.of(("open", 1, False), ("amb", 1, True), ("P", 0), ("Q", 0))
    redex = Bigraph(sig, {"o": "open", "a": "amb"}, 2, 1,
                    {"o": Root(0), "a": Root(0), Site(0): "a", Site(1): "o"},
                    frozenset(), frozenset(), frozenset({"x"}),
                    {Port("o", 0): OuterName("x"), Port("a", 0): OuterName("x")})
    reactum = Bigraph(sig, {}, 2, 1, {Site(0): Root(0), Site(1): Root(0)},
                      frozenset(), frozenset(), frozenset({"x"}), {})
    agent = Bigraph(sig, {"op": "open", "n": "amb", "p": "P", "q": "Q"}, 0, 1,
                    {"op": Root(0), "n": Root(0), "p": "n", "q": "op"},
                    frozenset(), frozenset(), frozenset({"n"}),
                    {Port("op", 0): OuterName("n"), Port("n", 0): OuterName("n")})
    expected = Bigraph(sig, {"p": "P", "q": "Q"}, 0, 1, {"p": Root(0), "q": Root(0)},
                       frozenset(), frozenset(), frozenset({"n"}), {})
    return sig, redex, reactum, agent, expected


def leaf_host(sig, ctrl, k):
    return Bigraph(sig, {f"h{i}": ctrl for i in range(k)}, 0, 1,
                   {f"h{i}": Root(0) for i in range(k)})


# -- acceptance corpus -------------------------------------------------------

CORPUS_SIGNATURE = Signature.of(("K", 1, True), ("L", 0, False))


def _family(**bounds) -> list:
    from bigembed.generate import bigraph_family
    return list(bigraph_family(CORPUS_SIGNATURE, max_edges=1, max_inner=1, max_outer=1, **bounds))


def corpus_tiers() -> dict:
    """Exhaustive tiers (one bigraph per isomorphism class), as lists of pairs.

    T1  guests with at most 1 node and interface widths up to 2,
        hosts with at most 1 node and widths up to 1
    T2  guests and hosts with at most 2 nodes and widths up to 1
    T3  guests with at most 1 node and widths up to 1,
        ground single-region hosts with up to 4 nodes
    All carry at most one edge and at most one inner and one outer name.
    """
    g1_wide = _family(max_nodes=1, max_sites=2, max_roots=2)
    g1 = _family(max_nodes=1, max_sites=1, max_roots=1)
    g2 = _family(max_nodes=2, max_sites=1, max_roots=1)
    ground4 = [b for b in _family(max_nodes=4, max_sites=0, max_roots=1, min_roots=1)
               if not b.inner_names]
    return {
        "T1": [(g, h) for g in g1_wide for h in g1],
        "T2": [(g, h) for g in g2 for h in g2],
        "T3": [(g, h) for g in g1 for h in ground4],
    }


def random_pairs(count: int = 240, seed: int = 20240611) -> list:
    """Seeded pairs with hosts of 5 or 6 nodes and guests of up to 2 nodes."""
    import random

    from bigembed.generate import random_bigraph
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        guest = random_bigraph(rng, CORPUS_SIGNATURE, nodes=rng.randint(0, 2),
                               edges=rng.randint(0, 1), sites=rng.randint(0, 2),
                               roots=rng.randint(1, 2), inner_names=rng.randint(0, 1),
                               outer_names=1)
        host = random_bigraph(rng, CORPUS_SIGNATURE, nodes=rng.randint(5, 6),
                              edges=rng.randint(1, 2), sites=rng.randint(0, 1), roots=1,
                              inner_names=rng.randint(0, 1), outer_names=rng.randint(0, 1))
        out.append((guest, host))
    return out
