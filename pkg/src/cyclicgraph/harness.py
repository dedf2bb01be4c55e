"""Reports, theorem checks and conjecture scans over the catalog.

Everything here returns plain dataclasses; :mod:`cyclicgraph.cli` does the
printing.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

from .bijection import Infeasible, OrderBijection, find_order_bijection, verify_order_bijection
from .catalog import MAX_CATALOG_ORDER, OrderOutOfRange, groups_of_order
from .groups import FiniteGroup
from .lattice import cyclic_poset, edge_count_formula, edge_count_hasse
from .numtheory import cyclic_edge_count


class Verdict(str, enum.Enum):
    MINIMUM_IS_CYCLIC_ONLY = "MinimumIsCyclicOnly"
    MINIMUM_SHARED_WITH_NON_CYCLIC = "MinimumSharedWithNonCyclic"
    MINIMUM_BELOW_CYCLIC = "MinimumBelowCyclic"


def histogram_digest(hist: dict[int, int]) -> str:
    return ",".join(f"{d}:{c}" for d, c in sorted(hist.items()))


@dataclass
class GroupReport:
    label: str
    order: int
    histogram: dict[int, int]
    cyclic_subgroups: int
    edges_hasse: int
    edges_formula: int
    cyclic_edges: int

    @property
    def agreement(self) -> bool:
        return self.edges_hasse == self.edges_formula

    def to_dict(self) -> dict:
        d = asdict(self)
        d["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        d["agreement"] = self.agreement
        return d


def group_report(G: FiniteGroup, label: str | None = None) -> GroupReport:
    poset = cyclic_poset(G)
    return GroupReport(
        label=label if label is not None else G.label,
        order=G.order,
        histogram=G.order_histogram(),
        cyclic_subgroups=len(poset.subgroups),
        edges_hasse=edge_count_hasse(G, poset),
        edges_formula=edge_count_formula(G),
        cyclic_edges=cyclic_edge_count(G.order),
    )


@dataclass
class TheoremRow:
    label: str
    edges: int
    histogram: str
    cyclic: bool
    nilpotent: bool


@dataclass
class TheoremReport:
    order: int
    cyclic_edges: int
    rows: list[TheoremRow]
    min_edges: int
    witnesses: list[str]
    complete: bool
    verdict: Verdict
    # non-cyclic entries the theorem covers (odd order or nilpotent) that fail to beat Z_n
    violations: list[str] = field(default_factory=list)

    @property
    def alarming(self) -> bool:
        return self.verdict is Verdict.MINIMUM_BELOW_CYCLIC or bool(self.violations)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "cyclic_edges": self.cyclic_edges,
            "min_edges": self.min_edges,
            "verdict": self.verdict.value,
            "witnesses": list(self.witnesses),
            "complete": self.complete,
            "violations": list(self.violations),
            "rows": [
                {"label": r.label, "edges": r.edges, "histogram": r.histogram, "cyclic": r.cyclic, "nilpotent": r.nilpotent}
                for r in self.rows
            ],
        }


def verify_theorem(n: int) -> TheoremReport:
    """Compare every catalog group of order n against Z_n."""
    if not 1 <= n <= MAX_CATALOG_ORDER:
        raise OrderOutOfRange(f"orders 1..{MAX_CATALOG_ORDER} only, got {n}")
    entries = groups_of_order(n)
    target = cyclic_edge_count(n)
    rows = []
    violations = []
    for entry in entries:
        G = entry.build()
        edges = edge_count_hasse(G)
        rows.append(TheoremRow(entry.label, edges, histogram_digest(G.order_histogram()), entry.cyclic, entry.nilpotent))
        covered = n % 2 == 1 or entry.nilpotent
        if covered and not entry.cyclic and edges <= target:
            violations.append(entry.label)
    if not any(r.cyclic for r in rows):
        raise AssertionError(f"catalog for order {n} lacks the cyclic group")
    min_edges = min(r.edges for r in rows)
    witnesses = [r.label for r in rows if r.edges == min_edges]
    if min_edges < target:
        verdict = Verdict.MINIMUM_BELOW_CYCLIC
    elif len(witnesses) > 1:
        verdict = Verdict.MINIMUM_SHARED_WITH_NON_CYCLIC
    else:
        verdict = Verdict.MINIMUM_IS_CYCLIC_ONLY
    return TheoremReport(n, target, rows, min_edges, witnesses, entries[0].complete_for_order, verdict, violations)


@dataclass
class ScanFinding:
    order: int
    verdict: Verdict
    witnesses: list[str]
    complete: bool
    cyclic_edges: int
    min_edges: int
    violations: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "verdict": self.verdict.value,
            "witnesses": list(self.witnesses),
            "complete": self.complete,
            "cyclic_edges": self.cyclic_edges,
            "min_edges": self.min_edges,
            "violations": list(self.violations),
        }


def scan(max_n: int, parity: str | None = None) -> list[ScanFinding]:
    """Run :func:`verify_theorem` for 1..max_n, optionally odd or even only.

    Witnesses list the non-cyclic groups at or below the cyclic count.
    """
    if not 1 <= max_n <= MAX_CATALOG_ORDER:
        raise OrderOutOfRange(f"scan bound must lie in 1..{MAX_CATALOG_ORDER}, got {max_n}")
    if parity not in (None, "odd", "even"):
        raise ValueError(f"parity must be 'odd', 'even' or None, not {parity!r}")
    findings = []
    for n in range(1, max_n + 1):
        if parity == "odd" and n % 2 == 0 or parity == "even" and n % 2 == 1:
            continue
        rep = verify_theorem(n)
        noncyclic = [r.label for r in rep.rows if not r.cyclic and r.edges <= rep.cyclic_edges]
        findings.append(
            ScanFinding(n, rep.verdict, noncyclic, rep.complete, rep.cyclic_edges, rep.min_edges, rep.violations)
        )
    return findings


def scan_summary(findings: list[ScanFinding]) -> dict[str, int]:
    counts = {v.value: 0 for v in Verdict}
    for f in findings:
        counts[f.verdict.value] += 1
    counts["incomplete_orders"] = sum(not f.complete for f in findings)
    return counts


def dot_text(G: FiniteGroup, name: str | None = None) -> str:
    """Undirected DOT text for the cyclic subgroup graph, canonical order."""
    poset = cyclic_poset(G)
    labels = poset.vertex_labels()
    title = (name if name is not None else G.label) or "G"
    lines = [f"graph {_quote(title)} {{"]
    lines += [f"  {_quote(v)};" for v in labels]
    lines += [f"  {_quote(labels[i])} -- {_quote(labels[j])};" for i, j in sorted(poset.cover_edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass
class BijectionResult:
    label: str
    order: int
    result: OrderBijection | Infeasible
    valid: bool
    reason: str = ""

    @property
    def feasible(self) -> bool:
        return isinstance(self.result, OrderBijection)


def bijection_result(G: FiniteGroup, label: str | None = None) -> BijectionResult:
    res = find_order_bijection(G)
    label = label if label is not None else G.label
    if isinstance(res, Infeasible):
        return BijectionResult(label, G.order, res, False, "no saturating flow")
    verdict = verify_order_bijection(G, res)
    return BijectionResult(label, G.order, res, verdict.valid, verdict.reason)
