"""A small finite-domain solver for linear integer constraints.

Bounds-consistency propagation plus depth-first enumeration of every
solution.  Branching follows variable creation order and ascending values
unless a ``select_var`` hook is supplied, so the solution stream is
reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

LE, EQ, GE = "<=", "==", ">="
RELATIONS = (LE, EQ, GE)

INT64_MAX = 2 ** 63 - 1

Solution = tuple  # value of variable i at position i


@dataclass(frozen=True)
class LinearConstraint:
    """``Σ coef·var  relation  constant``, optionally labelled with a family tag."""

    terms: tuple  # ((var, coef), ...) sorted by var, coefficients non-zero
    relation: str
    constant: int
    tag: str = ""

    def holds(self, values: Sequence[int]) -> bool:
        total = sum(c * values[v] for v, c in self.terms)
        if self.relation == LE:
            return total <= self.constant
        if self.relation == GE:
            return total >= self.constant
        return total == self.constant


def merge_terms(terms) -> tuple:
    """Sum duplicate variables and drop zero coefficients."""
    items = terms.items() if isinstance(terms, dict) else terms
    acc: dict = {}
    for v, c in items:
        acc[v] = acc.get(v, 0) + c
    return tuple(sorted((v, c) for v, c in acc.items() if c != 0))


class Model:
    def __init__(self):
        self.lower: list = []
        self.upper: list = []
        self.names: list = []
        self.constraints: list = []
        # set when the encoder derives a constraint with no terms that can never hold
        self.contradiction: Optional[str] = None

    @property
    def num_vars(self) -> int:
        return len(self.lower)

    def add_var(self, lower: int, upper: int, name=None) -> int:
        if lower > upper:
            raise ValueError(f"empty domain [{lower}, {upper}]")
        self.lower.append(int(lower))
        self.upper.append(int(upper))
        self.names.append(name)
        return len(self.lower) - 1

    def add_linear(self, terms, relation: str, constant: int, tag: str = "") -> LinearConstraint:
        if relation not in RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        merged = merge_terms(terms)
        if not merged:
            raise ValueError("constraint has no terms")
        for v, _ in merged:
            if not 0 <= v < self.num_vars:
                raise ValueError(f"unknown variable {v}")
        con = LinearConstraint(merged, relation, int(constant), tag)
        self.constraints.append(con)
        return con

    def add_contradiction(self, reason: str) -> None:
        if self.contradiction is None:
            self.contradiction = reason

    def is_solution(self, values: Sequence[int]) -> bool:
        if self.contradiction is not None or len(values) != self.num_vars:
            return False
        if any(not lo <= x <= hi for x, lo, hi in zip(values, self.lower, self.upper)):
            return False
        return all(c.holds(values) for c in self.constraints)

    def violated(self, values: Sequence[int]) -> list:
        return [c for c in self.constraints if not c.holds(values)]


class _Rows:
    """Constraints normalised to ``Σ a·x ≤ b`` rows with variable watch lists."""

    def __init__(self, model: Model):
        self.vars: list = []
        self.coefs: list = []
        self.bound: list = []
        self.watch: list = [[] for _ in range(model.num_vars)]
        for con in model.constraints:
            vs = [v for v, _ in con.terms]
            cs = [c for _, c in con.terms]
            if con.relation in (LE, EQ):
                self._add(vs, cs, con.constant)
            if con.relation in (GE, EQ):
                self._add(vs, [-c for c in cs], -con.constant)

    def _add(self, vs, cs, b):
        r = len(self.bound)
        self.vars.append(vs)
        self.coefs.append(cs)
        self.bound.append(b)
        for v in vs:
            self.watch[v].append(r)


def _fixpoint(rows: _Rows, lo: list, hi: list, queue: Iterable[int], checked: bool) -> bool:
    """Tighten ``lo``/``hi`` in place; False when some domain empties."""
    pending = deque(queue)
    queued = [False] * len(rows.bound)
    for r in pending:
        queued[r] = True
    while pending:
        r = pending.popleft()
        queued[r] = False
        vs, cs, b = rows.vars[r], rows.coefs[r], rows.bound[r]
        minsum = 0
        for v, a in zip(vs, cs):
            minsum += a * lo[v] if a > 0 else a * hi[v]
        if checked:
            assert abs(minsum) <= INT64_MAX, "64-bit overflow in propagation"
        if minsum > b:
            return False
        for v, a in zip(vs, cs):
            if a > 0:
                slack = b - (minsum - a * lo[v])
                new = slack // a
                if new < hi[v]:
                    if new < lo[v]:
                        return False
                    hi[v] = new
                    for w in rows.watch[v]:
                        if w != r and not queued[w]:
                            queued[w] = True
                            pending.append(w)
            else:
                slack = b - (minsum - a * hi[v])
                new = -(slack // -a)
                if new > lo[v]:
                    if new > hi[v]:
                        return False
                    lo[v] = new
                    for w in rows.watch[v]:
                        if w != r and not queued[w]:
                            queued[w] = True
                            pending.append(w)
    return True


def propagate(model: Model, *, checked: bool = False) -> Optional[tuple]:
    """Bounds-consistent ``(lower, upper)`` lists, or ``None`` if infeasible."""
    if model.contradiction is not None:
        return None
    rows = _Rows(model)
    lo, hi = list(model.lower), list(model.upper)
    if not _fixpoint(rows, lo, hi, range(len(rows.bound)), checked):
        return None
    return lo, hi


def first_unfixed(lo: Sequence[int], hi: Sequence[int], start: int = 0) -> Optional[int]:
    for v in range(start, len(lo)):
        if lo[v] != hi[v]:
            return v
    return None


def solve_all(model: Model, *,
              select_var: Optional[Callable[[list, list], Optional[int]]] = None,
              checked: bool = False) -> Iterator[Solution]:
    """Yield every solution exactly once, depth-first with propagation at every node."""
    if model.contradiction is not None:
        return
    rows = _Rows(model)
    lo, hi = list(model.lower), list(model.upper)
    if not _fixpoint(rows, lo, hi, range(len(rows.bound)), checked):
        return

    def pick(lo, hi, start):
        if select_var is not None:
            return select_var(lo, hi)
        return first_unfixed(lo, hi, start)

    var = pick(lo, hi, 0)
    if var is None:
        yield tuple(lo)
        return
    # frame: [lo, hi, branching var, next value]
    stack = [[lo, hi, var, lo[var]]]
    while stack:
        frame = stack[-1]
        flo, fhi, v, val = frame
        if val > fhi[v]:
            stack.pop()
            continue
        frame[3] = val + 1
        clo, chi = list(flo), list(fhi)
        clo[v] = chi[v] = val
        if not _fixpoint(rows, clo, chi, rows.watch[v], checked):
            continue
        nxt = pick(clo, chi, v + 1)
        if nxt is None:
            yield tuple(clo)
        else:
            stack.append([clo, chi, nxt, clo[nxt]])

