"""Definitional checks for strip structures and extended strip decompositions.

Validators never raise on bad input; they collect :class:`Violation` records
so callers can see every broken condition at once. Use
:meth:`ValidationReport.raise_for_violations` to turn a report into an error.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from stripmis.esd.model import EtaMap, PatternGraph
from stripmis.graph import Graph, VertexSet

__all__ = [
    "ESDValidationError",
    "ValidationReport",
    "Violation",
    "validate_elementary",
    "validate_esd",
    "validate_strip_structure",
]


class ESDValidationError(ValueError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        lines = [f"{v.rule}: {v.message}" for v in report.violations]
        super().__init__("invalid decomposition:\n  " + "\n  ".join(lines))


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    witnesses: Tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()
    indeterminate: Tuple[str, ...] = ()
    details: Dict[str, object] = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def rules(self) -> Tuple[str, ...]:
        """Names of the broken rules, without duplicates, in report order."""
        return tuple(dict.fromkeys(v.rule for v in self.violations))

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(
            self.violations + other.violations,
            self.indeterminate + other.indeterminate,
            {**self.details, **other.details},
        )

    def raise_for_violations(self) -> None:
        if self.violations:
            raise ESDValidationError(self)

    def __bool__(self) -> bool:
        return self.ok


class _Collector:
    def __init__(self):
        self.violations: List[Violation] = []

    def add(self, rule: str, message: str, *witnesses) -> None:
        self.violations.append(Violation(rule, message, tuple(witnesses)))

    def report(self, **details) -> ValidationReport:
        return ValidationReport(tuple(self.violations), (), details)


def _check_domain(out: _Collector, host: Graph, pattern: PatternGraph, eta: EtaMap) -> None:
    for e in eta.edge:
        if not pattern.has_edge_id(e):
            out.add("domain", f"eta(e) given for unknown pattern edge {e}", e)
    for e, v in eta.edge_end:
        if not pattern.has_edge_id(e) or v not in pattern.edge(e).ends:
            out.add("domain", f"eta(e, v) given for non-incident pair ({e}, {v})", e, v)
    known = set(pattern.vertices)
    for v in eta.vertex:
        if v not in known:
            out.add("domain", f"eta(v) given for unknown pattern vertex {v}", v)
    triangles = set(pattern.triangles)
    for d in eta.triangle:
        if d not in triangles:
            out.add("domain", f"eta(D) given for non-triangle {d}", d)
    for sets in (eta.edge, eta.edge_end, eta.vertex, eta.triangle):
        for key, vertices in sets.items():
            bad = [x for x in vertices if not 0 <= x < host.n]
            if bad:
                out.add("domain", f"set {key} holds vertices outside the host graph", key, *bad)


def _strip_checks(
    out: _Collector, host: Graph, pattern: PatternGraph, eta: EtaMap, relaxed: bool
) -> None:
    if len(pattern.edges) < 2 and not relaxed:
        out.add("edge-count", f"pattern graph has {len(pattern.edges)} edges, needs at least 2")

    for e in pattern.edges:
        strip = set(eta.of_edge(e.id))
        for v in e.ends:
            stray = [x for x in eta.of_end(e.id, v) if x not in strip]
            if stray:
                out.add("containment", f"eta({e.id}, {v}) is not inside eta({e.id})", e.id, v, *stray)

    owner: Dict[int, int] = {}
    for e in pattern.edges:
        for x in eta.of_edge(e.id):
            if x in owner:
                out.add("disjointness", f"vertex {x} lies in eta({owner[x]}) and eta({e.id})", x, owner[x], e.id)
            else:
                owner[x] = e.id

    # edges between different strips must run between segments of a shared end
    for x, y in host.edges():
        e, f = owner.get(x), owner.get(y)
        if e is None or f is None or e == f:
            continue
        ee, ff = pattern.edge(e), pattern.edge(f)
        shared = set(ee.ends) & set(ff.ends)
        if not any(x in eta.of_end(e, v) and y in eta.of_end(f, v) for v in shared):
            out.add("adjacency", f"host edge {x}-{y} joins strips {e} and {f} outside a shared potato", x, y)

    # segments at a shared end must be complete to each other
    for v in pattern.vertices:
        incident = pattern.incident(v)
        for ee, ff in itertools.combinations(incident, 2):
            for x in eta.of_end(ee.id, v):
                for y in eta.of_end(ff.id, v):
                    if x != y and not host.has_edge(x, y):
                        out.add(
                            "adjacency",
                            f"segments eta({ee.id}, {v}) and eta({ff.id}, {v}) miss the edge {x}-{y}",
                            x,
                            y,
                        )


def validate_strip_structure(
    host: Graph, pattern: PatternGraph, eta: EtaMap, relaxed: bool = False
) -> ValidationReport:
    """Check the three strip-structure conditions (and ``|E(H)| >= 2`` unless relaxed)."""
    out = _Collector()
    _check_domain(out, host, pattern, eta)
    _strip_checks(out, host, pattern, eta, relaxed)
    return out.report()


def potato_of(pattern: PatternGraph, eta: EtaMap, v: int) -> VertexSet:
    return tuple(sorted({x for e in pattern.incident(v) for x in eta.of_end(e.id, v)}))


def validate_elementary(
    host: Graph, pattern: PatternGraph, eta: EtaMap, relaxed: bool = False
) -> ValidationReport:
    """Strip structure whose strips partition ``V(G)`` and whose potatoes are cliques."""
    out = _Collector()
    _check_domain(out, host, pattern, eta)
    _strip_checks(out, host, pattern, eta, relaxed)
    for e in pattern.edges:
        if not eta.of_edge(e.id):
            out.add("partition", f"strip eta({e.id}) is empty", e.id)
    covered = {x for e in pattern.edges for x in eta.of_edge(e.id)}
    missing = [x for x in range(host.n) if x not in covered]
    if missing:
        out.add("partition", "strips do not cover the host graph", *missing)
    potatoes = {}
    for v in pattern.vertices:
        potato = potato_of(pattern, eta, v)
        potatoes[v] = len(potato)
        for x, y in itertools.combinations(potato, 2):
            if not host.has_edge(x, y):
                out.add("clique", f"potato({v}) is not a clique: {x} and {y} are not adjacent", v, x, y)
    return out.report(potato_sizes=potatoes)


def _owners(pattern: PatternGraph, eta: EtaMap) -> Iterable[Tuple[Tuple, VertexSet]]:
    for e in pattern.edges:
        yield ("edge", e.id), eta.of_edge(e.id)
    for v in pattern.vertices:
        yield ("vertex", v), eta.of_vertex(v)
    for d in pattern.triangles:
        yield ("triangle", d), eta.of_triangle(d)


def validate_esd(
    host: Graph,
    pattern: PatternGraph,
    eta: EtaMap,
    terminals: Optional[Iterable[int]] = None,
    relaxed: bool = False,
) -> ValidationReport:
    """Check every extended-strip-decomposition condition.

    With ``terminals`` the decomposition must also be one of ``(G, Z)``:
    the degree-one pattern vertices correspond one-to-one with ``Z``.
    """
    out = _Collector()
    _check_domain(out, host, pattern, eta)
    _strip_checks(out, host, pattern, eta, relaxed)

    owner: Dict[int, Tuple] = {}
    for feature, vertices in _owners(pattern, eta):
        for x in vertices:
            if x in owner:
                if feature[0] != "edge" or owner[x][0] != "edge":
                    out.add("disjointness", f"vertex {x} lies in eta{owner[x]} and eta{feature}", x)
            else:
                owner[x] = feature
    missing = [x for x in range(host.n) if x not in owner]
    if missing:
        out.add("cover", "eta sets do not cover the host graph", *missing)

    for v in pattern.vertices:
        inside = set(eta.of_vertex(v))
        allowed = {y for e in pattern.incident(v) for y in eta.of_end(e.id, v)}
        for x in inside:
            for y in host.neighbors(x):
                if y not in inside and y not in allowed:
                    out.add("vertex-locality", f"{x} in eta({v}) sees {y} outside potato({v})", v, x, y)

    for d in pattern.triangles:
        inside = set(eta.of_triangle(d))
        if not inside:
            continue
        allowed = set()
        for u, w in itertools.combinations(d, 2):
            for e in pattern.edges_between(u, w):
                allowed.update(set(eta.of_end(e.id, u)) & set(eta.of_end(e.id, w)))
        for x in inside:
            for y in host.neighbors(x):
                if y not in inside and y not in allowed:
                    out.add("triangle-locality", f"{x} in eta{d} sees {y} outside the triangle's shared segments", d, x, y)

    if terminals is not None:
        _check_terminals(out, pattern, eta, tuple(terminals))
    return out.report()


def _check_terminals(out: _Collector, pattern: PatternGraph, eta: EtaMap, terminals: Tuple[int, ...]) -> None:
    leaves = pattern.leaves
    if len(terminals) != len(leaves):
        out.add(
            "terminals",
            f"{len(terminals)} terminals but {len(leaves)} degree-one pattern vertices",
            *terminals,
        )
    singletons = set()
    for w in leaves:
        (edge,) = pattern.incident(w)
        segment = eta.of_end(edge.id, w)
        if len(segment) == 1:
            singletons.add(segment[0])
    for z in terminals:
        if z not in singletons:
            out.add("terminals", f"terminal {z} is not the whole end set of any leaf edge", z)
