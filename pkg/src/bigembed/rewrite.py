"""Reaction rules: split an agent around a redex occurrence and rebuild it.

Given an embedding of the redex ``R`` into a ground agent ``A`` we build a
context ``C`` and a parameter ``D`` with ``A = C ∘ (R ⊗ id_Z) ∘ D``, where
``Z`` are fresh names carrying the links between the parameter and the
context that do not pass through the redex.  Firing a rule swaps ``R`` for
the reactum and rearranges the entries of ``D`` as the instantiation map
says.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Mapping, NamedTuple

from .core import (Bigraph, Edge, Embedding, InnerName, OuterName, Port, Root, Signature, Site,
                   compose, is_isomorphic, juxtapose, validate, with_identity_names)
from .encode import enumerate_embeddings
from .jsonio import BigraphFormatError, bigraph_from_dict, bigraph_to_dict
from .oracle import check_embedding


class RewriteError(ValueError):
    pass


@dataclass(frozen=True)
class ReactionRule:
    redex: Bigraph
    reactum: Bigraph
    eta: Mapping[int, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        eta = {int(k): int(v) for k, v in dict(self.eta).items()}
        object.__setattr__(self, "eta", eta)
        if self.redex.outer != self.reactum.outer:
            raise RewriteError(f"redex and reactum outer faces differ: "
                               f"{self.redex.outer} vs {self.reactum.outer}")
        if set(eta) != set(range(self.reactum.sites)):
            raise RewriteError("eta must be defined on every reactum site")
        for j, s in eta.items():
            if not 0 <= s < self.redex.sites:
                raise RewriteError(f"eta({j}) = {s} is not a redex site")


def rule_from_dict(data: Mapping) -> ReactionRule:
    if not isinstance(data, Mapping) or "redex" not in data or "reactum" not in data:
        raise RewriteError("a rule needs 'redex' and 'reactum'")
    eta = data.get("eta")
    if eta is None:
        eta = {}
    try:
        eta = {int(k): int(v) for k, v in dict(eta).items()}
    except (TypeError, ValueError):
        raise RewriteError("eta must map site indices to site indices") from None
    return ReactionRule(bigraph_from_dict(data["redex"]), bigraph_from_dict(data["reactum"]),
                        eta, str(data.get("name", "")))


def rule_to_dict(rule: ReactionRule) -> dict:
    out = {"redex": bigraph_to_dict(rule.redex), "reactum": bigraph_to_dict(rule.reactum),
           "eta": {str(k): v for k, v in sorted(rule.eta.items())}}
    if rule.name:
        out["name"] = rule.name
    return out


def rules_from_json(data) -> list:
    """A rules document is one rule object or a list of them."""
    items = data if isinstance(data, list) else [data]
    return [rule_from_dict(item) for item in items]


# -- fresh identifiers -------------------------------------------------------

class FreshIds:
    """Deterministic supply of identifiers avoiding a set of taken ones."""

    def __init__(self, taken, prefix: str):
        self.taken = set(taken)
        self.prefix = prefix
        self._counter = count()

    def __call__(self) -> str:
        while True:
            candidate = f"{self.prefix}{next(self._counter)}"
            if candidate not in self.taken:
                self.taken.add(candidate)
                return candidate


def _names_of(*bs: Bigraph) -> set:
    out = set()
    for b in bs:
        out |= set(b.inner_names) | set(b.outer_names)
    return out


# -- decomposition -----------------------------------------------------------

class Decomposition(NamedTuple):
    context: Bigraph
    params: list        # one ground bigraph of outer width 1 per redex site
    redex: Bigraph      # the redex over the agent's node and edge ids
    names: frozenset    # the fresh names Z threaded past the redex

    def parameter(self) -> Bigraph:
        """The entries side by side, padded with every routed name."""
        return _close_names(juxtapose(self.params, self.redex.signature),
                            self.redex.inner_names | self.names)

    def recompose(self) -> Bigraph:
        middle = with_identity_names(self.redex, self.names)
        return compose(self.context, compose(middle, self.parameter()))


def _close_names(b: Bigraph, names) -> Bigraph:
    """Give ``b`` exactly the outer names ``names``; extra ones must be unused."""
    names = frozenset(names)
    extra = b.outer_names - names
    if any(isinstance(h, OuterName) and h.name in extra for h in b.link.values()):
        raise RewriteError("cannot drop an outer name that is still linked")
    return Bigraph(b.signature, b.nodes, b.sites, b.roots, b.prnt, b.edges,
                   b.inner_names, names, b.link)


def _subtree(agent: Bigraph, tops) -> list:
    """All places at or below ``tops``, in canonical order."""
    out, stack = [], list(tops)
    while stack:
        c = stack.pop()
        out.append(c)
        stack.extend(agent.children(c))
    return out


def decompose(agent: Bigraph, redex: Bigraph, phi: Embedding, *,
              respect_activity: bool = False, avoid_names=()) -> Decomposition:
    """Split ``agent`` around the occurrence of ``redex`` given by ``phi``.

    Fresh names in ``Z`` avoid the names of both bigraphs and ``avoid_names``.
    """
    if not agent.is_ground:
        raise RewriteError("the agent must be ground")
    problems = check_embedding(redex, agent, phi, respect_activity=respect_activity)
    if problems:
        raise RewriteError("invalid embedding: " + "; ".join(map(str, problems)))
    sig = agent.signature.merge(redex.signature)

    # place structure
    entry_of: dict = {}
    for s in range(redex.sites):
        for c in _subtree(agent, phi.phi_s[s]):
            entry_of[c] = s
    image = set(phi.phi_v.values())
    context_nodes = [v for v in agent.node_list if v not in image and v not in entry_of]

    # link structure: which parameter entry each point lives in
    def entry_of_point(p):
        return entry_of.get(p.node) if isinstance(p, Port) else None

    inner_of = {p: x for x in redex.inner_names for p in phi.phi_i[x]}
    taken_names = _names_of(agent, redex) | set(avoid_names)
    fresh_name = FreshIds(taken_names, "z")
    edge_images = set(phi.phi_e.values())
    outer_images = set(phi.phi_o.values())
    internal: dict = {}   # agent edge -> entry that owns it
    routed: dict = {}     # agent handle -> fresh name
    for h in agent.handles:
        pts = agent.preimage(h)
        param_pts = [p for p in pts if entry_of_point(p) is not None]
        if isinstance(h, Edge) and h.id in edge_images:
            continue
        entries = {entry_of_point(p) for p in pts}
        if (isinstance(h, Edge) and h not in outer_images and pts
                and len(entries) == 1 and None not in entries and not any(p in inner_of for p in pts)):
            internal[h.id] = entries.pop()
            continue
        if any(p not in inner_of for p in param_pts):
            routed[h] = fresh_name()
    Z = frozenset(routed.values())

    # parameter entries
    params = []
    for s in range(redex.sites):
        places = [c for c in agent.node_list if entry_of.get(c) == s]
        prnt = {v: (Root(0) if v in phi.phi_s[s] else agent.prnt[v]) for v in places}
        edges = frozenset(e for e, k in internal.items() if k == s)
        link, names = {}, set()
        for v in places:
            for i in range(agent.arity(v)):
                p = Port(v, i)
                h = agent.link[p]
                if p in inner_of:
                    target = OuterName(inner_of[p])
                elif isinstance(h, Edge) and h.id in edges:
                    target = h
                else:
                    target = OuterName(routed[h])
                link[p] = target
                if isinstance(target, OuterName):
                    names.add(target.name)
        params.append(Bigraph(sig, {v: agent.nodes[v] for v in places}, 0, 1, prnt, edges,
                              frozenset(), frozenset(names), link))

    # context
    prnt = {v: agent.prnt[v] for v in context_nodes}
    prnt.update({Site(r): phi.phi_r[r] for r in range(redex.roots)})
    kept_edges = frozenset(e for e in agent.edges if e not in edge_images and e not in internal)
    link = {p: agent.link[p] for v in context_nodes for p in
            (Port(v, i) for i in range(agent.arity(v)))}
    for y in redex.outer_names:
        link[InnerName(y)] = phi.phi_o[y]
    for h, z in routed.items():
        link[InnerName(z)] = h
    context = Bigraph(sig, {v: agent.nodes[v] for v in context_nodes}, redex.roots, agent.roots,
                      prnt, kept_edges, redex.outer_names | Z, agent.outer_names, link)
    renamed = redex.with_supports(dict(phi.phi_v), dict(phi.phi_e))
    return Decomposition(context, params, renamed, Z)


# -- instantiation and firing ------------------------------------------------

def _refresh(b: Bigraph, fresh_node: FreshIds, fresh_edge: FreshIds) -> Bigraph:
    return b.with_supports({v: fresh_node() for v in b.node_list},
                           {e: fresh_edge() for e in sorted(b.edges)})


def instantiate(params: list, eta: Mapping[int, int], width: int, *,
                signature: Signature | None = None, taken=()) -> Bigraph:
    """Juxtapose ``params[eta[0]], ..., params[eta[width-1]]``.

    The first copy of an entry keeps its support; later copies get fresh
    ids avoiding ``taken`` and everything already used.
    """
    for j in range(width):
        if j not in eta:
            raise RewriteError(f"eta undefined on site {j}")
        if not 0 <= eta[j] < len(params):
            raise RewriteError(f"eta({j}) = {eta[j]} is out of range")
    used = set(taken)
    for d in params:
        used |= set(d.nodes) | set(d.edges)
    fresh_node, fresh_edge = FreshIds(used, "n"), FreshIds(used, "e")
    fresh_edge.taken = fresh_node.taken
    parts, seen = [], set()
    for j in range(width):
        d = params[eta[j]]
        parts.append(d if eta[j] not in seen else _refresh(d, fresh_node, fresh_edge))
        seen.add(eta[j])
    return juxtapose(parts, signature)


def apply_rule(agent: Bigraph, rule: ReactionRule, phi: Embedding, *,
               respect_activity: bool = True) -> Bigraph:
    """Fire ``rule`` at the occurrence ``phi`` of its redex in ``agent``."""
    dec = decompose(agent, rule.redex, phi, respect_activity=respect_activity,
                    avoid_names=_names_of(rule.reactum))
    reactum = rule.reactum
    taken_ids = (set(agent.nodes) | set(agent.edges) | set(dec.names)
                 | _names_of(agent, rule.redex, rule.reactum))
    fresh = FreshIds(taken_ids, "n")
    reactum = _refresh(reactum, fresh, fresh)
    param = instantiate(dec.params, rule.eta, reactum.sites,
                        signature=agent.signature.merge(reactum.signature),
                        taken=fresh.taken)
    taken_ids |= set(param.nodes) | set(param.edges) | set(reactum.nodes) | set(reactum.edges)

    # names the parameter exposes but the reactum does not take are closed off
    wanted = reactum.inner_names | dec.names
    closing = {}
    edge_ids = FreshIds(taken_ids, "e")
    for x in sorted(param.outer_names - wanted):
        closing[x] = edge_ids()
    link = {p: (Edge(closing[h.name]) if isinstance(h, OuterName) and h.name in closing else h)
            for p, h in param.link.items()}
    param = Bigraph(param.signature, param.nodes, param.sites, param.roots, param.prnt,
                    param.edges | frozenset(closing.values()), param.inner_names,
                    wanted, link)
    middle = with_identity_names(reactum, dec.names)
    result = compose(dec.context, compose(middle, param))
    problems = validate(result)
    if problems:
        raise RewriteError("rewriting produced an invalid bigraph: "
                           + "; ".join(f"{v.invariant} {v.element}" for v in problems))
    return result


def step(agent: Bigraph, rules: list, *, respect_activity: bool = True) -> Iterator[tuple]:
    """``(rule index, embedding, successor)`` for every occurrence of every rule."""
    for i, rule in enumerate(rules):
        for phi in enumerate_embeddings(rule.redex, agent, respect_activity=respect_activity):
            yield i, phi, apply_rule(agent, rule, phi, respect_activity=respect_activity)


def explore(agent: Bigraph, rules: list, max_steps: int, *,
            respect_activity: bool = True) -> list:
    """Breadth-first reachable agents up to ``max_steps`` steps, one per isomorphism class.

    Returns ``(depth, agent)`` pairs in discovery order, the start agent first.
    """
    found = [(0, agent)]
    frontier = [agent]
    for depth in range(1, max_steps + 1):
        nxt = []
        for a in frontier:
            for _, _, b in step(a, rules, respect_activity=respect_activity):
                if not any(is_isomorphic(b, seen) for _, seen in found):
                    found.append((depth, b))
                    nxt.append(b)
        frontier = nxt
        if not frontier:
            break
    return found


__all__ = ["ReactionRule", "RewriteError", "Decomposition", "decompose", "instantiate",
           "apply_rule", "step", "explore", "rule_from_dict", "rule_to_dict", "rules_from_json",
           "BigraphFormatError"]
