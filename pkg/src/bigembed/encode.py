"""Compile embedding problems into linear integer models and translate back.

Three encodings are provided: link graph embeddings (a multi-flux network
between host points, guest points and handles), place graph embeddings (a
0/1 matching between host and guest places) and bigraph embeddings (both
glued on shared nodes and on the parameter of inner names).

Variable keys:

``("N_hh", guest_handle, host_handle)``  flux from a guest to a host handle
``("N_ph", host_point, host_handle)``    flux from a host point to its own handle
``("N_pp", host_point, guest_point)``    flux from a host point to a guest point
``("F", guest_handle, host_handle)``     the guest handle is sent to the host handle
``("M", host_place, guest_place)``       the guest place is matched to the host place
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .core import (Bigraph, Edge, Embedding, InnerName, OuterName, Port, Root, Site,
                   check_signatures, sort_key)
from .csp import EQ, LE, Model, merge_terms, solve_all

LGE, PGE, BGE = "LGE", "PGE", "BGE"
KINDS = (LGE, PGE, BGE)

VAR_FAMILIES = ("N_hh", "N_ph", "N_pp", "F", "M")

LGE_FAMILIES = (
    "lge.point_outflow", "lge.handle_inflow", "lge.guest_conservation",
    "lge.guest_port_inflow", "lge.inner_name_port", "lge.flux_channel",
    "lge.point_channel", "lge.handle_function", "lge.no_bypass", "lge.outer_mixing",
    "lge.edge_not_outer", "lge.edge_injective", "lge.edge_outer_disjoint",
    "lge.port_index", "lge.port_control", "lge.port_together",
)
PGE_FAMILIES = (
    "pge.host_root", "pge.host_site", "pge.control", "pge.passive", "pge.parent",
    "pge.root_function", "pge.node_function", "pge.exclusive", "pge.single",
    "pge.node_children", "pge.root_children", "pge.parameter",
)
BGE_FAMILIES = ("bge.agree", "bge.residence")


class InvalidEmbedding(ValueError):
    """An embedding (or solution) that does not satisfy the encoded model."""


class VarRegistry:
    """Bijection between semantic variable keys and solver variable ids."""

    def __init__(self):
        self._ids: dict = {}
        self._keys: list = []

    def add(self, model: Model, key: tuple, lower: int, upper: int) -> int:
        if key in self._ids:
            raise KeyError(f"duplicate variable {key!r}")
        var = model.add_var(lower, upper, key)
        assert var == len(self._keys)
        self._ids[key] = var
        self._keys.append(key)
        return var

    def __getitem__(self, key: tuple) -> int:
        return self._ids[key]

    def __contains__(self, key) -> bool:
        return key in self._ids

    def __len__(self) -> int:
        return len(self._keys)

    def key(self, var: int) -> tuple:
        return self._keys[var]

    def keys(self) -> list:
        return list(self._keys)

    def count(self, family: str) -> int:
        return sum(1 for k in self._keys if k[0] == family)


@dataclass(frozen=True)
class EncodedInstance:
    model: Model
    registry: VarRegistry
    guest: Bigraph
    host: Bigraph
    kind: str
    respect_activity: bool = True

    @property
    def link_nodes(self) -> list:
        """Guest nodes whose image is visible to the link encoding (those with ports)."""
        return [v for v in self.guest.node_list if self.guest.arity(v) > 0]


def _emit(model: Model, tag: str, terms, relation: str, constant: int) -> None:
    merged = merge_terms(terms)
    if merged:
        model.add_linear(merged, relation, constant, tag)
        return
    holds = (0 <= constant) if relation == LE else (0 == constant)
    if not holds:
        model.add_contradiction(tag)


def _by_key(keys) -> list:
    return sorted(keys, key=sort_key)


# -- variables ---------------------------------------------------------------

def _link_vars(model: Model, reg: VarRegistry, G: Bigraph, H: Bigraph) -> None:
    for h, h2 in _by_key((h, h2) for h in G.handles for h2 in H.handles):
        reg.add(model, ("N_hh", h, h2), 0, len(H.preimage(h2)))
    for p2, h2 in _by_key((p2, H.link[p2]) for p2 in H.points):
        reg.add(model, ("N_ph", p2, h2), 0, 1)
    for p2, p in _by_key((p2, p) for p2 in H.points for p in G.points):
        reg.add(model, ("N_pp", p2, p), 0, 1)
    for h, h2 in _by_key((h, h2) for h in G.handles for h2 in H.handles):
        reg.add(model, ("F", h, h2), 0, 1)


def _place_vars(model: Model, reg: VarRegistry, G: Bigraph, H: Bigraph) -> None:
    for h, g in _by_key((h, g) for h in H.places for g in G.places):
        reg.add(model, ("M", h, g), 0, 1)


# -- constraint families -----------------------------------------------------

def _link_constraints(model: Model, reg: VarRegistry, G: Bigraph, H: Bigraph) -> None:
    def N_hh(h, h2):
        return reg[("N_hh", h, h2)]

    def N_ph(p2):
        return reg[("N_ph", p2, H.link[p2])]

    def N_pp(p2, p):
        return reg[("N_pp", p2, p)]

    def F(h, h2):
        return reg[("F", h, h2)]

    guest_edges, guest_outer = G.edge_handles, G.outer_handles
    host_edges, host_outer = H.edge_handles, H.outer_handles

    # every host point emits one unit
    for p2 in H.points:
        terms = [(N_ph(p2), 1)] + [(N_pp(p2, p), 1) for p in G.points]
        _emit(model, "lge.point_outflow", terms, EQ, 1)

    # every host handle absorbs one unit per linked point
    for h2 in H.handles:
        pre = H.preimage(h2)
        terms = [(N_ph(p2), 1) for p2 in pre] + [(N_hh(h, h2), 1) for h in G.handles]
        _emit(model, "lge.handle_inflow", terms, EQ, len(pre))

    # flux is conserved through the guest handles
    for h in G.handles:
        terms = [(N_hh(h, h2), 1) for h2 in H.handles]
        terms += [(N_pp(p2, p), -1) for p in G.preimage(h) for p2 in H.points]
        _emit(model, "lge.guest_conservation", terms, EQ, 0)

    # guest ports receive exactly one unit; guest inner names any number
    for p in G.ports:
        _emit(model, "lge.guest_port_inflow", [(N_pp(p2, p), 1) for p2 in H.points], EQ, 1)

    for x2 in H.inner_points:
        for p in G.ports:
            _emit(model, "lge.inner_name_port", [(N_pp(x2, p), 1)], EQ, 0)

    # flux between handles switches the handle map on
    for h in G.handles:
        if not G.preimage(h):
            continue
        for h2 in H.handles:
            cap = len(H.preimage(h2))
            if cap:
                _emit(model, "lge.flux_channel", [(N_hh(h, h2), 1), (F(h, h2), -cap)], LE, 0)

    # flux between points only along mapped handles
    for p in G.points:
        for p2 in H.points:
            _emit(model, "lge.point_channel",
                  [(N_pp(p2, p), 1), (F(G.link[p], H.link[p2]), -1)], LE, 0)

    for h in G.handles:
        _emit(model, "lge.handle_function", [(F(h, h2), 1) for h2 in H.handles], EQ, 1)

    # points of an edge image cannot bypass the guest
    for e in guest_edges:
        for p2 in H.points:
            _emit(model, "lge.no_bypass", [(N_ph(p2), 1), (F(e, H.link[p2]), 1)], LE, 1)

    for e in guest_edges:
        for y2 in host_outer:
            for y in guest_outer:
                _emit(model, "lge.outer_mixing", [(F(e, y2), 1), (F(y, y2), 1)], LE, 1)
    for e in guest_edges:
        for y2 in host_outer:
            _emit(model, "lge.edge_not_outer", [(F(e, y2), 1)], EQ, 0)

    # edges map injectively, and never onto the image of an outer name
    if guest_edges:
        for e2 in host_edges:
            _emit(model, "lge.edge_injective", [(F(e, e2), 1) for e in guest_edges], LE, 1)
        for e2 in host_edges:
            for y in guest_outer:
                terms = [(F(e, e2), 1) for e in guest_edges] + [(F(y, e2), 1)]
                _emit(model, "lge.edge_outer_disjoint", terms, LE, 1)

    # port compatibility
    for v in G.node_list:
        a = G.arity(v)
        for v2 in H.node_list:
            a2 = H.arity(v2)
            if G.ctrl(v) == H.ctrl(v2):
                for i in range(a):
                    for i2 in range(a2):
                        if i != i2:
                            _emit(model, "lge.port_index",
                                  [(N_pp(Port(v2, i2), Port(v, i)), 1)], EQ, 0)
            else:
                for i in range(a):
                    for i2 in range(a2):
                        _emit(model, "lge.port_control",
                              [(N_pp(Port(v2, i2), Port(v, i)), 1)], EQ, 0)
    for v in G.node_list:
        a = G.arity(v)
        if a < 2:
            continue
        for v2 in H.node_list:
            if G.ctrl(v) != H.ctrl(v2):
                continue
            together = [(N_pp(Port(v2, j), Port(v, j)), 1) for j in range(a)]
            for i in range(a):
                _emit(model, "lge.port_together",
                      together + [(N_pp(Port(v2, i), Port(v, i)), -a)], EQ, 0)


def _is_shadowed(H: Bigraph, h) -> bool:
    return any(isinstance(c, str) and not H.signature.is_active(H.ctrl(c))
               for c in H.ancestors(h))


def _place_constraints(model: Model, reg: VarRegistry, G: Bigraph, H: Bigraph,
                       respect_activity: bool) -> None:
    def M(h, g):
        return reg[("M", h, g)]

    g_sites, g_nodes, g_roots = G.site_list, G.node_list, G.root_list
    h_sites, h_nodes, h_roots = H.site_list, H.node_list, H.root_list
    m_G = len(g_roots)

    for g in g_sites + g_nodes:
        for r2 in h_roots:
            _emit(model, "pge.host_root", [(M(r2, g), 1)], EQ, 0)
    for g in g_nodes + g_roots:
        for s2 in h_sites:
            _emit(model, "pge.host_site", [(M(s2, g), 1)], EQ, 0)
    for g in g_nodes:
        for h in h_nodes:
            if G.ctrl(g) != H.ctrl(h):
                _emit(model, "pge.control", [(M(h, g), 1)], EQ, 0)
    if respect_activity:
        shadowed = [h for h in h_nodes if _is_shadowed(H, h)]
        for g in g_roots:
            for h in shadowed:
                _emit(model, "pge.passive", [(M(h, g), 1)], EQ, 0)

    # matching propagates from children to parents
    for g in g_sites + g_nodes:
        for h in h_sites + h_nodes:
            _emit(model, "pge.parent", [(M(h, g), 1), (M(H.prnt[h], G.prnt[g]), -1)], LE, 0)

    for g in g_roots:
        _emit(model, "pge.root_function", [(M(h, g), 1) for h in h_nodes + h_roots], EQ, 1)
    for g in g_nodes:
        _emit(model, "pge.node_function", [(M(h, g), 1) for h in h_sites + h_nodes], EQ, 1)

    # a host node matched by a node or a site takes no root, and only one of them
    if m_G:
        for h in h_nodes:
            terms = [(M(h, g), m_G) for g in g_sites + g_nodes] + [(M(h, g), 1) for g in g_roots]
            _emit(model, "pge.exclusive", terms, LE, m_G)
    if g_sites or g_nodes:
        for h in h_sites + h_nodes:
            _emit(model, "pge.single", [(M(h, g), 1) for g in g_sites + g_nodes], LE, 1)

    # matching propagates from parents to children
    for g in g_nodes:
        g_children = G.children(g)
        for h in h_nodes:
            h_children = H.children(h)
            if not h_children:
                continue
            terms = [(M(h, g), len(h_children))]
            terms += [(M(h2, g2), -1) for h2 in h_children for g2 in g_children]
            _emit(model, "pge.node_children", terms, LE, 0)
    for g in g_roots:
        g_children = [c for c in G.children(g) if isinstance(c, str)]
        if not g_children:
            continue
        for h in h_nodes:
            h_children = [c for c in H.children(h) if isinstance(c, str)]
            terms = [(M(h, g), len(g_children))]
            terms += [(M(h2, g2), -1) for h2 in h_children for g2 in g_children]
            _emit(model, "pge.root_children", terms, LE, 0)

    # nothing of the guest image lies inside a parameter
    for g in g_nodes + g_roots:
        for h in h_nodes:
            terms = [(M(h, g), 1)] + [(M(h2, s), 1) for h2 in H.ancestors(h) for s in g_sites]
            _emit(model, "pge.parameter", terms, LE, 1)


def _glue_constraints(model: Model, reg: VarRegistry, G: Bigraph, H: Bigraph) -> None:
    for v in G.node_list:
        for v2 in H.node_list:
            if G.ctrl(v) != H.ctrl(v2):
                continue
            for k in range(G.arity(v)):
                _emit(model, "bge.agree",
                      [(reg[("M", v2, v)], 1), (reg[("N_pp", Port(v2, k), Port(v, k))], -1)],
                      EQ, 0)
    if not (G.inner_names or G.sites):
        return
    for p2 in H.ports:
        terms = [(reg[("N_pp", p2, x)], 1) for x in G.inner_points]
        terms += [(reg[("M", h, s)], -1) for h in H.ancestors(p2.node) for s in G.site_list]
        _emit(model, "bge.residence", terms, LE, 0)


# -- encoders ----------------------------------------------------------------

def encode(G: Bigraph, H: Bigraph, kind: str = BGE, *, respect_activity: bool = True) -> EncodedInstance:
    if kind not in KINDS:
        raise ValueError(f"unknown encoding {kind!r}")
    check_signatures(G.signature, H.signature)
    model, reg = Model(), VarRegistry()
    if kind in (LGE, BGE):
        _link_vars(model, reg, G, H)
    if kind in (PGE, BGE):
        _place_vars(model, reg, G, H)
    if kind in (LGE, BGE):
        _link_constraints(model, reg, G, H)
    if kind in (PGE, BGE):
        _place_constraints(model, reg, G, H, respect_activity)
    if kind == BGE:
        _glue_constraints(model, reg, G, H)
    return EncodedInstance(model, reg, G, H, kind, respect_activity)


def encode_lge(G: Bigraph, H: Bigraph) -> EncodedInstance:
    return encode(G, H, LGE)


def encode_pge(G: Bigraph, H: Bigraph, *, respect_activity: bool = True) -> EncodedInstance:
    return encode(G, H, PGE, respect_activity=respect_activity)


def encode_bge(G: Bigraph, H: Bigraph, *, respect_activity: bool = True) -> EncodedInstance:
    return encode(G, H, BGE, respect_activity=respect_activity)


# -- translations ------------------------------------------------------------

def _unique(candidates: list, what: str):
    if len(candidates) != 1:
        raise InvalidEmbedding(f"{what}: expected exactly one image, found {len(candidates)}")
    return candidates[0]


def decode(inst: EncodedInstance, solution) -> Embedding:
    """Read the embedding off a solution of ``inst.model``."""
    if not inst.model.is_solution(solution):
        raise InvalidEmbedding("not a solution of the model")
    G, H, reg = inst.guest, inst.host, inst.registry

    def on(key) -> bool:
        return solution[reg[key]] == 1

    phi_v, phi_e, phi_i, phi_o, phi_s, phi_r = {}, {}, {}, {}, {}, {}
    if inst.kind in (LGE, BGE):
        for e in G.edge_handles:
            h2 = _unique([h2 for h2 in H.handles if on(("F", e, h2))], f"edge {e}")
            phi_e[e.id] = h2.id
        for y in G.outer_handles:
            phi_o[y.name] = _unique([h2 for h2 in H.handles if on(("F", y, h2))], f"outer name {y}")
        for x in G.inner_points:
            phi_i[x.name] = frozenset(p2 for p2 in H.points if on(("N_pp", p2, x)))
    if inst.kind == LGE:
        for v in inst.link_nodes:
            phi_v[v] = _unique([v2 for v2 in H.node_list if H.ctrl(v2) == G.ctrl(v)
                                and on(("N_pp", Port(v2, 0), Port(v, 0)))], f"node {v}")
    if inst.kind in (PGE, BGE):
        for v in G.node_list:
            phi_v[v] = _unique([h for h in H.node_list if on(("M", h, v))], f"node {v}")
        for s in G.site_list:
            phi_s[s.index] = frozenset(h for h in H.site_list + H.node_list if on(("M", h, s)))
        for r in G.root_list:
            phi_r[r.index] = _unique([h for h in H.node_list + H.root_list if on(("M", h, r))],
                                     f"root {r}")
    return Embedding(phi_v, phi_e, phi_i, phi_o, phi_s, phi_r)


def _guest_handle_image(phi: Embedding, h):
    if isinstance(h, Edge):
        return Edge(phi.phi_e[h.id])
    return phi.phi_o[h.name]


def embedding_to_solution(inst: EncodedInstance, phi: Embedding) -> tuple:
    """The unique solution of ``inst.model`` corresponding to ``phi``."""
    G, H, reg = inst.guest, inst.host, inst.registry
    values = [0] * len(reg)
    try:
        if inst.kind in (LGE, BGE):
            link_nodes = inst.link_nodes if inst.kind == LGE else G.node_list
            sources: dict = {}  # host point -> guest point it feeds
            for v in link_nodes:
                for i in range(G.arity(v)):
                    sources[Port(phi.phi_v[v], i)] = Port(v, i)
            for x in G.inner_points:
                for p2 in phi.phi_i[x.name]:
                    sources[p2] = x
            inflow = Counter()
            for p2, p in sources.items():
                values[reg[("N_pp", p2, p)]] = 1
                inflow[G.link[p]] += 1
            for p2 in H.points:
                if p2 not in sources:
                    values[reg[("N_ph", p2, H.link[p2])]] = 1
            for h in G.handles:
                h2 = _guest_handle_image(phi, h)
                values[reg[("F", h, h2)]] = 1
                values[reg[("N_hh", h, h2)]] = inflow[h]
        if inst.kind in (PGE, BGE):
            for v in G.node_list:
                values[reg[("M", phi.phi_v[v], v)]] = 1
            for s in G.site_list:
                for h in phi.phi_s[s.index]:
                    values[reg[("M", h, s)]] = 1
            for r in G.root_list:
                values[reg[("M", phi.phi_r[r.index], r)]] = 1
    except KeyError as exc:
        raise InvalidEmbedding(f"embedding does not fit the instance: {exc}") from None
    if inst.model.contradiction is not None:
        raise InvalidEmbedding(f"model is contradictory ({inst.model.contradiction})")
    bad = [(v, x) for v, x in enumerate(values)
           if not inst.model.lower[v] <= x <= inst.model.upper[v]]
    if bad:
        raise InvalidEmbedding(f"value outside domain for {reg.key(bad[0][0])}")
    violated = inst.model.violated(values)
    if violated:
        tags = sorted({c.tag for c in violated})
        raise InvalidEmbedding(f"embedding violates {', '.join(tags)}")
    return tuple(values)


def enumerate_embeddings(G: Bigraph, H: Bigraph, *, mode: str = "all",
                         respect_activity: bool = True, kind: str = BGE) -> Iterator[Embedding]:
    """Every embedding of ``G`` into ``H``, each exactly once, in solver order.

    ``mode`` is ``"all"`` or ``"first"``; use :func:`count_embeddings` to count.
    """
    if mode not in ("all", "first"):
        raise ValueError(f"unknown mode {mode!r}")
    inst = encode(G, H, kind, respect_activity=respect_activity)
    for sol in solve_all(inst.model):
        yield decode(inst, sol)
        if mode == "first":
            return


def count_embeddings(G: Bigraph, H: Bigraph, *, respect_activity: bool = True,
                     kind: str = BGE) -> int:
    inst = encode(G, H, kind, respect_activity=respect_activity)
    return sum(1 for _ in solve_all(inst.model))


# -- sizes -------------------------------------------------------------------

@dataclass(frozen=True)
class SizeReport:
    variables: dict = field(default_factory=dict)
    constraints: dict = field(default_factory=dict)

    @property
    def total_variables(self) -> int:
        return sum(self.variables.values())

    @property
    def total_constraints(self) -> int:
        return sum(self.constraints.values())


def measured_sizes(inst: EncodedInstance) -> SizeReport:
    """Per-family counts of what an encoder actually generated."""
    families = _families(inst.kind)
    cons = Counter(c.tag for c in inst.model.constraints)
    return SizeReport({f: inst.registry.count(f) for f in _var_families(inst.kind)},
                      {f: cons.get(f, 0) for f in families})


def _var_families(kind: str) -> tuple:
    return {LGE: VAR_FAMILIES[:4], PGE: VAR_FAMILIES[4:], BGE: VAR_FAMILIES}[kind]


def _families(kind: str) -> tuple:
    return {LGE: LGE_FAMILIES, PGE: PGE_FAMILIES,
            BGE: LGE_FAMILIES + PGE_FAMILIES + BGE_FAMILIES}[kind]


def size_formulas(G: Bigraph, H: Bigraph, kind: str = BGE, *,
                  respect_activity: bool = True) -> SizeReport:
    """Closed-form variable and constraint counts per family.

    The counts are products and sums of carrier cardinalities, per-control
    node counts and a few structural tallies (idle handles, host nodes with
    children, host nodes below a passive node), hence polynomial in the size
    of both bigraphs.
    """
    sig = G.signature.merge(H.signature)
    E_G, Y_G, X_G = len(G.edges), len(G.outer_names), len(G.inner_names)
    E_H, Y_H, X_H = len(H.edges), len(H.outer_names), len(H.inner_names)
    V_G, V_H = len(G.nodes), len(H.nodes)
    n_G, m_G, n_H, m_H = G.sites, G.roots, H.sites, H.roots
    cnt_G, cnt_H = Counter(G.nodes.values()), Counter(H.nodes.values())
    ar = {c.name: c.arity for c in sig}
    P_G = sum(cnt_G[c] * ar[c] for c in cnt_G)
    P_H = sum(cnt_H[c] * ar[c] for c in cnt_H)
    hg, hh = E_G + Y_G, E_H + Y_H
    pt_G, pt_H = P_G + X_G, P_H + X_H
    busy_G = sum(1 for h in G.handles if G.preimage(h))
    busy_H = sum(1 for h in H.handles if H.preimage(h))
    same = lambda f: sum(cnt_G[c] * cnt_H[c] * f(ar[c]) for c in cnt_G)  # noqa: E731

    variables, constraints = {}, {}
    if kind in (LGE, BGE):
        variables.update({"N_hh": hg * hh, "N_ph": pt_H, "N_pp": pt_H * pt_G, "F": hg * hh})
        constraints.update({
            "lge.point_outflow": pt_H,
            "lge.handle_inflow": hh if hg else busy_H,
            "lge.guest_conservation": hg if hh else 0,
            "lge.guest_port_inflow": P_G if pt_H else 0,
            "lge.inner_name_port": X_H * P_G,
            "lge.flux_channel": busy_G * busy_H,
            "lge.point_channel": pt_G * pt_H,
            "lge.handle_function": hg if hh else 0,
            "lge.no_bypass": E_G * pt_H,
            "lge.outer_mixing": E_G * Y_H * Y_G,
            "lge.edge_not_outer": E_G * Y_H,
            "lge.edge_injective": E_H if E_G else 0,
            "lge.edge_outer_disjoint": E_H * Y_G if E_G else 0,
            "lge.port_index": same(lambda a: a * (a - 1)),
            "lge.port_control": P_G * P_H - same(lambda a: a * a),
            "lge.port_together": same(lambda a: a if a >= 2 else 0),
        })
    if kind in (PGE, BGE):
        shadowed = sum(1 for h in H.node_list if _is_shadowed(H, h)) if respect_activity else 0
        with_children = sum(1 for h in H.node_list if H.children(h))
        roots_with_nodes = sum(1 for r in G.root_list
                               if any(isinstance(c, str) for c in G.children(r)))
        variables["M"] = (n_G + V_G + m_G) * (n_H + V_H + m_H)
        constraints.update({
            "pge.host_root": (n_G + V_G) * m_H,
            "pge.host_site": (V_G + m_G) * n_H,
            "pge.control": V_G * V_H - same(lambda a: 1),
            "pge.passive": m_G * shadowed,
            "pge.parent": (n_G + V_G) * (n_H + V_H),
            "pge.root_function": m_G if V_H + m_H else 0,
            "pge.node_function": V_G if n_H + V_H else 0,
            "pge.exclusive": V_H if m_G else 0,
            "pge.single": n_H + V_H if n_G + V_G else 0,
            "pge.node_children": V_G * with_children,
            "pge.root_children": roots_with_nodes * V_H,
            "pge.parameter": (V_G + m_G) * V_H,
        })
    if kind == BGE:
        constraints.update({
            "bge.agree": same(lambda a: a),
            "bge.residence": P_H if X_G + n_G else 0,
        })
    return SizeReport(variables, constraints)
