"""3-SAT to rainbow antichains to forest embeddings, and back.

A formula becomes a coloured tree: an uncoloured root ``r`` with two
children ``x<i>`` and ``nx<i>`` per variable (both coloured ``cx<i>``), and
for clause ``j`` one node ``c<j>_<k>`` coloured ``cc<j>`` per literal
position ``k``, hung under the node of the *opposite* literal.  A rainbow
antichain (one node of every colour, none above another) picks a true
literal per variable and, for every clause, a literal whose opposite was
not picked.  The antichain problem is in turn a place graph embedding: one
guest region per colour, each a single coloured node over a site.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional

from .core import Bigraph, Control, Embedding, Root, Signature, Site
from .encode import enumerate_embeddings

UNCOLOURED = "*"


class DimacsError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    variables: int
    clauses: tuple = ()   # tuples of three non-zero ints, DIMACS style

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.variables < 0:
            raise ValueError("variable count must be non-negative")
        for c in clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.variables:
                    raise ValueError(f"literal {lit} out of range")

    def evaluate(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.variables} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; every clause must have exactly three literals."""
    header = None
    clauses, current, start = [], [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("%"):
            break   # SATLIB end-of-data marker
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError("expected 'p cnf <variables> <clauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError("problem line counts must be integers", lineno) from None
            if min(header) < 0:
                raise DimacsError("problem line counts must be non-negative", lineno)
            continue
        if header is None:
            raise DimacsError("clause before the problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if start is None:
                start = lineno
            if lit == 0:
                if len(current) != 3:
                    raise DimacsError(f"clause has {len(current)} literals, expected 3", start)
                clauses.append(tuple(current))
                current, start = [], None
                continue
            if abs(lit) > header[0]:
                raise DimacsError(f"literal {lit} exceeds the variable count", lineno)
            current.append(lit)
    if header is None:
        raise DimacsError("missing problem line")
    if current:
        raise DimacsError("last clause is not terminated by 0", start)
    if len(clauses) != header[1]:
        raise DimacsError(f"expected {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def truth_table_satisfiable(f: CnfFormula) -> bool:
    return any(f.evaluate(dict(enumerate(bits, 1)))
               for bits in product((False, True), repeat=f.variables))


# -- coloured trees ----------------------------------------------------------

@dataclass(frozen=True)
class ColouredTree:
    root: str
    parent: Mapping[str, str] = field(default_factory=dict)   # every non-root node
    colour: Mapping[str, str] = field(default_factory=dict)   # partial
    palette: tuple = ()

    def __post_init__(self):
        if self.root in self.parent:
            raise ValueError("the root has no parent")
        nodes = self.nodes
        for v, p in self.parent.items():
            if p not in nodes:
                raise ValueError(f"unknown parent {p!r} of {v!r}")
        for v, c in self.colour.items():
            if v not in nodes:
                raise ValueError(f"colour on unknown node {v!r}")
            if c not in self.palette:
                raise ValueError(f"colour {c!r} not in the palette")

    @property
    def nodes(self) -> list:
        return [self.root] + sorted(self.parent)

    def ancestors(self, v: str) -> list:
        """Proper ancestors of ``v``, nearest first."""
        out = []
        while v in self.parent:
            v = self.parent[v]
            out.append(v)
        return out


def literal_node(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"nx{-lit}"


def sat_to_rainbow(f: CnfFormula) -> ColouredTree:
    parent, colour = {}, {}
    for i in range(1, f.variables + 1):
        for v in (f"x{i}", f"nx{i}"):
            parent[v] = "r"
            colour[v] = f"cx{i}"
    for j, clause in enumerate(f.clauses, 1):
        for k, lit in enumerate(clause, 1):
            v = f"c{j}_{k}"
            parent[v] = literal_node(-lit)
            colour[v] = f"cc{j}"
    palette = tuple(f"cx{i}" for i in range(1, f.variables + 1))
    palette += tuple(f"cc{j}" for j in range(1, len(f.clauses) + 1))
    return ColouredTree("r", parent, colour, palette)


def rainbow_to_instance(t: ColouredTree) -> tuple:
    """``(guest, host)``: one guest region per palette colour, the tree as host."""
    if UNCOLOURED in t.palette:
        raise ReductionError(f"{UNCOLOURED!r} is reserved for uncoloured nodes")
    for v, c in t.colour.items():
        if not isinstance(c, str):
            raise ReductionError(f"node {v!r} must carry exactly one colour")
    sig = Signature({c: Control(c, 0, True) for c in (UNCOLOURED,) + tuple(t.palette)})
    k = len(t.palette)
    g_nodes = {f"g{i}": c for i, c in enumerate(t.palette)}
    g_prnt = {f"g{i}": Root(i) for i in range(k)}
    g_prnt.update({Site(i): f"g{i}" for i in range(k)})
    guest = Bigraph(sig, g_nodes, k, k, g_prnt)
    h_nodes = {v: t.colour.get(v, UNCOLOURED) for v in t.nodes}
    h_prnt = {v: t.parent.get(v, Root(0)) for v in t.nodes}
    host = Bigraph(sig, h_nodes, 0, 1, h_prnt)
    return guest, host


def decode_antichain(phi: Embedding, t: ColouredTree) -> frozenset:
    nodes = set(t.nodes)
    image = frozenset(phi.phi_v.values())
    if len(phi.phi_v) != len(t.palette) or not image <= nodes:
        raise ReductionError("embedding does not belong to this tree")
    return image


def verify_rainbow_antichain(t: ColouredTree, R) -> bool:
    R = set(R)
    if not R <= set(t.nodes):
        return False
    colours = [t.colour.get(v) for v in R]
    if sorted(c for c in colours if c is not None) != sorted(t.palette) or None in colours:
        return False
    return not any(a in R for v in R for a in t.ancestors(v))


def antichain_to_assignment(t: ColouredTree, R, f: CnfFormula) -> dict:
    if not verify_rainbow_antichain(t, R):
        raise ReductionError("not a rainbow antichain")
    assignment = {i: f"x{i}" in R for i in range(1, f.variables + 1)}
    if not f.evaluate(assignment):
        raise ReductionError("antichain does not induce a satisfying assignment")
    return assignment


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    antichain: tuple = ()
    assignment: Mapping[int, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"satisfiable": self.satisfiable, "antichain": list(self.antichain),
                "assignment": {str(i): v for i, v in sorted(self.assignment.items())}}


def solve_sat(f: CnfFormula, *, respect_activity: bool = True) -> SatResult:
    """Decide ``f`` through the embedding solver and decode a witness."""
    t = sat_to_rainbow(f)
    guest, host = rainbow_to_instance(t)
    for phi in enumerate_embeddings(guest, host, mode="first", respect_activity=respect_activity):
        R = decode_antichain(phi, t)
        assignment = antichain_to_assignment(t, R, f)
        return SatResult(True, tuple(sorted(R)), assignment)
    return SatResult(False)


def canonical_formulas(max_vars: int, max_clauses: int) -> list:
    """3-CNF formulas up to renaming of variables, literal order and clause order.

    Every variable in ``1..n`` occurs; sign patterns are enumerated in full.
    """
    from itertools import combinations_with_replacement, permutations
    out = []
    for n in range(1, max_vars + 1):
        lits = [l for i in range(1, n + 1) for l in (i, -i)]
        clauses = sorted(set(tuple(sorted(c)) for c in combinations_with_replacement(lits, 3)))
        perms = list(permutations(range(1, n + 1)))
        for m in range(1, max_clauses + 1):
            seen = set()
            for cs in combinations_with_replacement(clauses, m):
                if {abs(l) for c in cs for l in c} != set(range(1, n + 1)):
                    continue
                key = min(
                    tuple(sorted(tuple(sorted((1 if l > 0 else -1) * p[abs(l) - 1] for l in c))
                                 for c in cs))
                    for p in perms)
                if key not in seen:
                    seen.add(key)
                    out.append(CnfFormula(n, key))
    return out
