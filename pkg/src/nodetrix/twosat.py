"""2SAT via strongly connected components of the implication graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Tuple

Var = Hashable
Literal = Tuple[Var, bool]  # (variable, positive?)


@dataclass
class TwoSatFormula:
    variables: List[Var] = field(default_factory=list)
    clauses: List[Tuple[Literal, ...]] = field(default_factory=list)

    def declare(self, x: Var) -> None:
        if x not in self.variables:
            self.variables.append(x)

    def add(self, *lits: Literal) -> None:
        if not 1 <= len(lits) <= 2:
            raise ValueError("2SAT clauses have one or two literals")
        for x, _ in lits:
            if x not in self.variables:
                raise ValueError(f"undeclared variable {x!r}")
        self.clauses.append(tuple(lits))

    def unit(self, x: Var, value: bool) -> None:
        self.add((x, value))

    def equal(self, x: Var, y: Var) -> None:
        self.add((x, True), (y, False))
        self.add((x, False), (y, True))

    def differ(self, x: Var, y: Var) -> None:
        self.add((x, True), (y, True))
        self.add((x, False), (y, False))

    def satisfied_by(self, assignment: Dict[Var, bool]) -> bool:
        return all(any(assignment[x] == pos for x, pos in c) for c in self.clauses)


def solve(f: TwoSatFormula) -> Optional[Dict[Var, bool]]:
    """A satisfying assignment, or None when the formula is unsatisfiable."""
    index = {x: i for i, x in enumerate(f.variables)}
    n = 2 * len(index)

    def node(lit: Literal) -> int:
        return 2 * index[lit[0]] + (0 if lit[1] else 1)

    adj: List[List[int]] = [[] for _ in range(n)]
    for c in f.clauses:
        a, b = (c[0], c[0]) if len(c) == 1 else c
        # (a or b) gives not a -> b and not b -> a
        adj[node(a) ^ 1].append(node(b))
        adj[node(b) ^ 1].append(node(a))

    comp = _tarjan(adj)
    out: Dict[Var, bool] = {}
    for x, i in index.items():
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        # Tarjan numbers components in reverse topological order
        out[x] = comp[2 * i] < comp[2 * i + 1]
    return out


def _tarjan(adj: List[List[int]]) -> List[int]:
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: List[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp
