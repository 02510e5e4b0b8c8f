"""Bound reports, dynamic-width surveys, the Nesetril-Zhu girth threshold and
bounded obstruction search."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .cache import Cache, digest
from .canonical import canonical_form, graphs_up_to_iso
from .config import DEFAULT, Budgets
from .consistency import homomorphism_exists, width
from .errors import BadParams, BoundViolation, Not4Chromatic, NoWitness, PreconditionViolated, ResourceCap
from .generators import complete
from .graphs import Graph, girth, independence_number, is_3_colorable, treewidth_exact

K3 = complete(3)


@dataclass
class BoundRecord:
    name: str
    value: float
    relation: str
    holds: bool


@dataclass
class BoundReport:
    graph_id: str
    n: int
    width: int
    rounds: int
    alpha: int
    girth: float
    treewidth: int
    bounds: list[BoundRecord] = field(default_factory=list)

    @property
    def violations(self) -> list[BoundRecord]:
        return [b for b in self.bounds if not b.holds]

    def to_json(self) -> dict:
        d = asdict(self)
        d["girth"] = None if math.isinf(self.girth) else int(self.girth)
        d["violations"] = [b.name for b in self.violations]
        return d


def bound_records(n: int, w: int, alpha: int, g: float, tw: int) -> list[BoundRecord]:
    """The bound comparisons for one graph, recomputable from the invariants alone."""
    ind = min(3 * alpha, n - alpha) + 1
    return [
        BoundRecord("independence", ind, "W <= min(3a, n-a) + 1", w <= ind),
        BoundRecord("girth", g / 16, "W > g/16", w > g / 16),
        BoundRecord("freuder", tw + 1, "W <= tw + 1", w <= tw + 1),
        BoundRecord("floor", 4, "W >= 4", w >= 4),
        BoundRecord("dynamic", 3 * n / 4 + 1, "W <= 3n/4 + 1", w <= 3 * n / 4 + 1),
    ]


def verify_bounds(g: Graph, fatal: bool = True, budgets: Budgets = DEFAULT) -> BoundReport:
    """Width against K3 together with every bound it must satisfy.

    A violated bound means a solver bug; with ``fatal`` it raises
    ``BoundViolation`` carrying the instance and certificate.
    """
    if is_3_colorable(g, budgets):
        raise Not4Chromatic("graph is 3-colourable; its width is undefined")
    rep = width(g, K3, budgets=budgets)
    alpha = independence_number(g, budgets)
    gi = girth(g)
    tw = treewidth_exact(g, budgets)
    report = BoundReport(canonical_form(g, budgets).hex() if g.n <= budgets.canonical_max_n else "",
                         g.n, rep.width, rep.rounds, alpha, gi, tw,
                         bound_records(g.n, rep.width, alpha, gi, tw))
    if fatal and report.violations:
        dump = {"n": g.n, "edges": g.edge_list(), "report": report.to_json(),
                "certificate": rep.certificate.to_json()}
        raise BoundViolation(f"bounds violated: {[b.name for b in report.violations]}", dump)
    return report


# ------------------------------------------------------------ surveys

@dataclass
class SurveyResult:
    n: int
    W: int
    witnesses: list[str]
    examined: int
    histogram: dict[int, int]

    @property
    def witness(self) -> str:
        return self.witnesses[0]

    def to_json(self) -> dict:
        return asdict(self)


def _cached_width(g: Graph, cache: Cache, budgets: Budgets) -> int:
    key = digest(canonical_form(g).encoding, "width-k3")
    hit = cache.get(key)
    if hit is not None:
        return hit["width"]
    w = width(g, K3, budgets=budgets).width
    cache.put(key, {"width": w})
    return w


def survey_Wn(n: int, cache: Cache | None = None, budgets: Budgets = DEFAULT) -> SurveyResult:
    """W(n): the largest width over non-3-colourable n-vertex graphs, exhaustively.

    Isomorphism classes are generated by vertex extension and deduplicated by
    canonical form; graphs with fewer than 6 edges are skipped (a graph
    that is not 3-colourable contains a 4-critical subgraph, at least K4's 6 edges).
    """
    if n <= 3:
        raise NoWitness(f"every graph on {n} vertices is 3-colourable")
    if n > budgets.survey_max_n:
        raise ResourceCap(f"survey limited to n <= {budgets.survey_max_n}")
    cache = cache or Cache(None)
    best = 0
    witnesses: list[str] = []
    examined = 0
    hist: dict[int, int] = {}
    for g in graphs_up_to_iso(n, budgets=budgets):
        if g.m < 6 or is_3_colorable(g, budgets):
            continue
        examined += 1
        w = _cached_width(g, cache, budgets)
        hist[w] = hist.get(w, 0) + 1
        if w > best:
            best, witnesses = w, []
        if w == best:
            witnesses.append(canonical_form(g).hex())
    if not (4 <= best <= 3 * n // 4 + 1):
        raise BoundViolation(f"W({n}) = {best} outside [4, floor(3n/4) + 1]", {"n": n, "W": best})
    return SurveyResult(n, best, witnesses, examined, dict(sorted(hist.items())))


# ------------------------------------------------------------ girth threshold

def nz_girth_threshold(k: int, m: int) -> int:
    """2^(k+2) (4km)^(4km-1) + 2(k+1), exactly."""
    if k < 1 or m < 1:
        raise BadParams("k and m must be positive")
    return 2 ** (k + 2) * (4 * k * m) ** (4 * k * m - 1) + 2 * (k + 1)


def nz_max_k(girth_value: int, m: int) -> int:
    """Largest k with threshold(k, m) < girth_value, or 0."""
    if m < 1:
        raise BadParams("m must be positive")
    k = 0
    while nz_girth_threshold(k + 1, m) < girth_value:
        k += 1
    return k


# ------------------------------------------------------------ obstructions

@dataclass
class ObstructionResult:
    obstruction: Graph | None
    treewidth: int | None
    examined: int
    exhausted: bool

    @property
    def width_upper_bound(self) -> int | None:
        return None if self.treewidth is None else self.treewidth + 1

    def to_json(self) -> dict:
        f = self.obstruction
        return {
            "found": f is not None,
            "obstruction": None if f is None else {"n": f.n, "edges": [list(e) for e in f.edge_list()]},
            "treewidth": self.treewidth,
            "width_upper_bound": self.width_upper_bound,
            "examined": self.examined,
            "exhausted_bounds": self.exhausted,
        }


def obstruction_search(g: Graph, h: Graph, max_vertices: int, max_tw: int,
                       budgets: Budgets = DEFAULT) -> ObstructionResult:
    """First graph F (by size, then canonical encoding) with tw(F) <= max_tw,
    F -> g and F not -> h.  Absence only means none exists within the bounds."""
    if max_vertices > 7:
        raise ResourceCap("obstruction search limited to max_vertices <= 7")
    if homomorphism_exists(g, h, budgets) is not None:
        raise PreconditionViolated("g maps to h; it has no h-obstruction")
    examined = 0
    for n in range(1, max_vertices + 1):
        for f in graphs_up_to_iso(n, budgets=budgets):
            examined += 1
            if homomorphism_exists(f, h, budgets) is not None:
                continue
            tw = treewidth_exact(f, budgets)
            if tw > max_tw:
                continue
            if homomorphism_exists(f, g, budgets) is not None:
                return ObstructionResult(f, tw, examined, False)
    return ObstructionResult(None, None, examined, True)
