"""CNF formulas with at most three literals per clause, DIMACS I/O, and the incidence graph."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import networkx as nx


class FormulaError(ValueError):
    """Malformed DIMACS text or a clause outside the planar 3-SAT shape."""


@dataclass(frozen=True)
class Formula:
    variable_count: int
    clauses: tuple  # tuple of tuples of non-zero ints

    def __post_init__(self):
        for i, cl in enumerate(self.clauses):
            if not 1 <= len(cl) <= 3:
                raise FormulaError(f"clause {i + 1} has {len(cl)} literals; 1 to 3 are allowed")
            if len({abs(l) for l in cl}) != len(cl):
                raise FormulaError(f"clause {i + 1} repeats a variable")
            for l in cl:
                if l == 0 or abs(l) > self.variable_count:
                    raise FormulaError(f"clause {i + 1} mentions unknown variable {l}")

    def evaluate(self, model: dict) -> bool:
        return all(any(model.get(abs(l), False) == (l > 0) for l in cl) for cl in self.clauses)

    def used_variables(self) -> list:
        return sorted({abs(l) for cl in self.clauses for l in cl})


def parse_dimacs(text: str) -> Formula:
    """Read DIMACS CNF; duplicate literals are merged, tautologies and long clauses rejected."""
    header = None
    tokens: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormulaError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise FormulaError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                tokens.append((int(tok), lineno))
            except ValueError:
                raise FormulaError(f"line {lineno}: bad literal {tok!r}") from None
    if header is None:
        raise FormulaError("missing 'p cnf' header")
    nvars, nclauses = header
    clauses = []
    cur: list = []
    for lit, lineno in tokens:
        if lit == 0:
            clauses.append(_normalize(cur, len(clauses) + 1, lineno))
            cur = []
        else:
            if abs(lit) > nvars:
                raise FormulaError(f"line {lineno}: variable {abs(lit)} exceeds the declared {nvars}")
            cur.append(lit)
    if cur:
        clauses.append(_normalize(cur, len(clauses) + 1, tokens[-1][1]))
    if len(clauses) != nclauses:
        raise FormulaError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return Formula(nvars, tuple(clauses))


def _normalize(lits: list, index: int, lineno: int) -> tuple:
    out = []
    for l in lits:
        if -l in out:
            raise FormulaError(f"clause {index} (line {lineno}) contains both {abs(l)} and -{abs(l)}")
        if l not in out:
            out.append(l)
    if not out:
        raise FormulaError(f"clause {index} (line {lineno}) is empty")
    if len(out) > 3:
        raise FormulaError(f"clause {index} (line {lineno}) has {len(out)} literals; at most 3 are allowed")
    return tuple(out)


def to_dimacs(f: Formula) -> str:
    lines = [f"p cnf {f.variable_count} {len(f.clauses)}"]
    lines += [" ".join(str(l) for l in cl) + " 0" for cl in f.clauses]
    return "\n".join(lines) + "\n"


def brute_force_sat(f: Formula) -> Optional[dict]:
    """First satisfying assignment in binary order (variable 1 most significant), or None."""
    used = f.used_variables()
    for bits in itertools.product((False, True), repeat=len(used)):
        model = {v: False for v in range(1, f.variable_count + 1)}
        model.update(zip(used, bits))
        if f.evaluate(model):
            return model
    return None


def var_node(v: int, sub: int = 0) -> tuple:
    return ("v", v, sub)


def clause_node(j: int) -> tuple:
    return ("c", j)


@dataclass(frozen=True)
class IncidenceGraph:
    vertices: tuple
    edges: tuple  # ((variable, clause index, polarity +1/-1), ...)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for v in self.vertices:
            g.add_node(v)
        for var, cl, pol in self.edges:
            g.add_edge(var_node(var), clause_node(cl), polarity=pol, kind="occurrence")
        return g

    def degree(self, vertex) -> int:
        if vertex[0] == "v":
            return sum(1 for var, _, _ in self.edges if var == vertex[1])
        return sum(1 for _, cl, _ in self.edges if cl == vertex[1])


def incidence_graph(f: Formula) -> IncidenceGraph:
    """Variables that occur, every clause, and one edge per occurrence."""
    verts = [var_node(v) for v in f.used_variables()] + [clause_node(j) for j in range(len(f.clauses))]
    edges = tuple((abs(l), j, 1 if l > 0 else -1) for j, cl in enumerate(f.clauses) for l in cl)
    return IncidenceGraph(tuple(verts), edges)
