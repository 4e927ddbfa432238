"""
Implication graph between the finite-increment statements, the Rolle /
mean-value / Darboux group and the two characterizations FCD and SVD.

Arcs are exactly the cited ones; a double arrow is stored as two arcs.
FCD has no outgoing arc: whether FCD (with the Darboux property) gives
back SVD or IAF is an open question, listed by open_questions().
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from models.errors import UnknownStatement

logger = logging.getLogger(__name__)


class Statement(Enum):
    IAF = "IAF"
    IAF_PRIME = "IAFPrime"
    IAFG = "IAFG"
    MAJA = "MAJA"
    SVD = "SVD"
    FCD = "FCD"
    ROLLE = "Rolle"
    TAF = "TAF"
    DARBOUX_AND_SVD = "DarbouxAndSVD"

    @property
    def note(self) -> str:
        return NOTES[self]


NOTES = {
    Statement.IAF: "|f(b)-f(a)| <= k(b-a) when |f'| <= k",
    Statement.IAF_PRIME: "m(b-a) <= f(b)-f(a) <= M(b-a) when m <= f' <= M",
    Statement.IAFG: "|f(b)-f(a)| <= g(b)-g(a) when |f'| <= g'",
    Statement.MAJA: "f(b)-f(a) <= M(b-a) when f' <= M",
    Statement.SVD: "f' >= 0 on ]a,b[ implies f nondecreasing",
    Statement.FCD: "f' = 0 on an interval implies f constant",
    Statement.ROLLE: "g(a) = g(b) implies g'(c) = 0 for some c in ]a,b[",
    Statement.TAF: "f(b)-f(a) = f'(c)(b-a) for some c in ]a,b[",
    Statement.DARBOUX_AND_SVD: "derivatives have the intermediate value property, together with SVD",
}

ALIASES = {"IAF'": Statement.IAF_PRIME, "IAFP": Statement.IAF_PRIME}


# Charts the arcs are read from
FINITE_INCREMENT = "finite-increment chart"
MEAN_VALUE = "mean-value chart"
CONSEQUENCES = "consequences chart"
CHARTS = (FINITE_INCREMENT, MEAN_VALUE, CONSEQUENCES)

# Marks on single arrows
CONSTANCY = "constancy"  # nondecreasing and nonincreasing, hence constant
DIRECT = "direct"        # mean value equality applied to the pair (a, b) itself


@dataclass(frozen=True)
class Implication:
    source: Statement
    target: Statement
    chart: str
    reason: str
    mark: Optional[str] = None

    @property
    def source_tag(self) -> str:
        cited = f"{self.chart} [{self.mark}]" if self.mark else self.chart
        return f"{cited}: {self.reason}"

    def __repr__(self):
        return f"<Implication {self.source.value} -> {self.target.value} [{self.source_tag}]>"


S = Statement
FI, MV, CQ = FINITE_INCREMENT, MEAN_VALUE, CONSEQUENCES

# (source, target, chart, reason, both directions?, mark)
_CITED_ARCS = [
    (S.IAF, S.IAF_PRIME, FI, "take m = -k, M = k; back via f - m x and M x - f", True, None),
    (S.IAFG, S.SVD, FI, "SVD on g - f and g + f; IAFG with f = 0", True, None),
    (S.ROLLE, S.TAF, MV, "Rolle on f(x) - s(x - a); Rolle is the case f(a) = f(b)", True, None),
    (S.TAF, S.DARBOUX_AND_SVD, MV, "mean value point of a chord; chords cover f' values", True, None),
    (S.ROLLE, S.DARBOUX_AND_SVD, MV, "via the mean value theorem", True, None),
    (S.IAFG, S.IAF, FI, "IAFG with g = k x", False, None),
    (S.IAFG, S.MAJA, FI, "IAFG on the pair (0, M x - f)", False, None),
    (S.MAJA, S.IAFG, FI, "MAJA gives SVD, SVD gives IAFG", False, None),
    (S.SVD, S.MAJA, FI, "SVD applied to M x - f", False, None),
    (S.MAJA, S.SVD, FI, "MAJA on the pair (-f, 0)", False, None),
    (S.MAJA, S.IAF, FI, "MAJA applied to f and -f", False, None),
    (S.MAJA, S.IAF_PRIME, FI, "MAJA applied to f - m x and M x - f", False, None),
    (S.SVD, S.IAF_PRIME, FI, "SVD on f - m x and M x - f", False, None),
    (S.IAF, S.FCD, FI, "IAF with k = 0", False, None),
    (S.IAF_PRIME, S.FCD, FI, "f' = 0 is both >= 0 and <= 0", False, CONSTANCY),
    (S.SVD, S.FCD, FI, "f and -f both nondecreasing", False, CONSTANCY),
    (S.TAF, S.IAF, CQ, "bound f'(c) by k", False, None),
    (S.TAF, S.SVD, CQ, "sign of f'(c)", False, None),
    (S.TAF, S.FCD, CQ, "f'(c) = 0", False, None),
    (S.TAF, S.MAJA, CQ, "bound f'(c) by M", False, None),
    (S.TAF, S.FCD, CQ, "a pair with f(a) != f(b) yields f'(c) != 0", False, DIRECT),
]


class TheoremGraph:
    def __init__(self, implications: list):
        self.statements = list(Statement)
        self.implications = list(implications)
        self.adjacency = defaultdict(list)
        for arc in self.implications:
            if arc.target not in self.adjacency[arc.source]:
                self.adjacency[arc.source].append(arc.target)

    def successors(self, statement: Statement) -> list:
        return list(self.adjacency[statement])

    def reachable(self, start: Statement) -> set:
        seen = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in self.adjacency[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    def __repr__(self):
        return f"<TheoremGraph {len(self.statements)} statements, {len(self.implications)} arcs>"


def build_graph() -> TheoremGraph:
    arcs = []
    for source, target, chart, reason, both, mark in _CITED_ARCS:
        arcs.append(Implication(source, target, chart, reason, mark))
        if both:
            arcs.append(Implication(target, source, chart, reason, mark))
    return TheoremGraph(arcs)


def statement(name) -> Statement:
    """Resolve an id like "IAF", "IAFPrime" or "IAF'"."""
    if isinstance(name, Statement):
        return name
    if name in ALIASES:
        return ALIASES[name]
    for s in Statement:
        if s.value == name or s.name == name:
            return s
    raise UnknownStatement(f"Unknown statement '{name}'. Known: {', '.join(s.value for s in Statement)}")


def implies(source, target, graph: TheoremGraph = None) -> bool:
    """Reachability; every statement implies itself."""
    graph = graph or build_graph()
    return statement(target) in graph.reachable(statement(source))


def equivalence_classes(graph: TheoremGraph = None) -> list:
    """Strongly connected components (Tarjan), each sorted by declaration order."""
    graph = graph or build_graph()
    order = {s: i for i, s in enumerate(graph.statements)}
    index, lowlink = {}, {}
    stack, on_stack = [], set()
    components = []
    counter = [0]

    def strongconnect(v):
        index[v] = lowlink[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in graph.successors(v):
            if w not in index:
                strongconnect(w)
                lowlink[v] = min(lowlink[v], lowlink[w])
            elif w in on_stack:
                lowlink[v] = min(lowlink[v], index[w])

        if lowlink[v] == index[v]:
            component = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                component.append(w)
                if w == v:
                    break
            components.append(sorted(component, key=order.get))

    for v in graph.statements:
        if v not in index:
            strongconnect(v)

    components.sort(key=lambda c: order[c[0]])
    logger.info(f"{len(components)} equivalence classes over {len(graph.statements)} statements")
    return components


def open_questions() -> list:
    """Implications posed as questions, deliberately absent from the graph."""
    return [
        (S.FCD, S.SVD, "does FCD together with the Darboux property give SVD?"),
        (S.FCD, S.IAF, "does FCD give the finite-increment inequality?"),
    ]


def to_dot(graph: TheoremGraph = None) -> str:
    graph = graph or build_graph()
    lines = ["digraph theorems {"]
    for s in graph.statements:
        lines.append(f'  "{s.value}" [label="{s.value}\\n{_escape(s.note)}"];')
    for arc in graph.implications:
        lines.append(f'  "{arc.source.value}" -> "{arc.target.value}" [label="{_escape(arc.source_tag)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
