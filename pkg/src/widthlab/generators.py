"""Instance families: standard graphs, random regular graphs, triple covers,
and the planarization of a drawing with crossover gadgets."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .config import DEFAULT, Budgets
from .errors import BadParams, RetryExhausted, UnknownFamily
from .geometry import Point, intersection, proper_crossing, segments_conflict
from .graphs import Graph, categorical_product, chromatic_number, iter_colorings

# ------------------------------------------------------------ standard graphs


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise BadParams("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel(rim: int) -> Graph:
    """Cycle on 0..rim-1 plus the hub ``rim`` joined to every rim vertex."""
    return Graph(rim + 1, list(cycle(rim).edges) + [(i, rim) for i in range(rim)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def mycielski(g: Graph) -> Graph:
    """Vertices 0..n-1 of ``g``, shadows n..2n-1, hub 2n."""
    n = g.n
    edges = list(g.edges)
    for u, v in g.edges:
        edges += [(u, n + v), (v, n + u)]
    edges += [(n + i, 2 * n) for i in range(n)]
    return Graph(2 * n + 1, edges)


def grotzsch() -> Graph:
    """Outer 5-cycle 0..4; vertex i+5 joined to (i-1)%5 and (i+1)%5; hub 10."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i + 5, (i - 1) % 5) for i in range(5)]
    edges += [(i + 5, (i + 1) % 5) for i in range(5)]
    edges += [(i + 5, 10) for i in range(5)]
    return Graph(11, edges)


def moser_spindle() -> Graph:
    """Two rhombi 0-1-2-3 and 0-4-5-6 sharing 0, tips 3 and 6 joined."""
    return Graph(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
                     (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6)])


def empty(n: int) -> Graph:
    return Graph(n)


FAMILIES = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star": (star, 1),
    "wheel": (wheel, 1),
    "empty": (empty, 1),
    "petersen": (petersen, 0),
    "grotzsch": (grotzsch, 0),
    "moser": (moser_spindle, 0),
}


def standard_graph(name: str, *params) -> Graph:
    """A named family member, e.g. ``standard_graph("complete", 4)``.

    ``"mycielski"`` takes either a Graph or a family name plus its parameters.
    """
    if name == "mycielski":
        if not params:
            raise BadParams("mycielski needs a base graph")
        base = params[0] if isinstance(params[0], Graph) else standard_graph(*params)
        return mycielski(base)
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown graph family {name!r}")
    fn, arity = FAMILIES[name]
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} parameter(s), got {len(params)}")
    try:
        ints = [int(p) for p in params]
    except (TypeError, ValueError) as exc:
        raise BadParams(f"{name} parameters must be integers") from exc
    if any(p < 0 for p in ints):
        raise BadParams("parameters must be non-negative")
    return fn(*ints)


# ------------------------------------------------------------ random regular

def random_regular(n: int, d: int, seed: int, max_tries: int = 200_000) -> Graph:
    """A d-regular simple graph from the configuration model.

    Pairings with a loop or a repeated edge are rejected and redrawn, so the
    result is uniform over labelled d-regular graphs.  Deterministic in ``seed``.
    """
    if n < 0 or d < 0:
        raise BadParams("n and d must be non-negative")
    if (n * d) % 2:
        raise BadParams(f"n*d = {n * d} is odd; no {d}-regular graph on {n} vertices")
    if d >= n and n > 0:
        raise BadParams("d must be smaller than n")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, edges)
    raise RetryExhausted(f"no simple pairing in {max_tries} attempts")


# ------------------------------------------------------------ triple cover

@dataclass
class TripleCover:
    graph: Graph
    base: Graph
    base_connected: bool
    base_chromatic: int
    unique_coloring_hypotheses: bool

    def layout(self, v: int, i: int) -> int:
        return 3 * v + i


def triple_cover(b: Graph, budgets: Budgets = DEFAULT) -> TripleCover:
    """``b x K3`` with vertex (v, i) at 3v + i.

    The metadata records whether the base is connected with chromatic number
    above 3, the hypotheses under which the product is uniquely 3-colourable.
    """
    a = categorical_product(b, complete(3))
    conn = b.is_connected()
    chi = chromatic_number(b, budgets)
    return TripleCover(a, b, conn, chi, conn and chi > 3)


# ------------------------------------------------------------ crossover gadget

# local grid coordinates of the 13 gadget vertices; corners at (+-2, 0), (0, +-2)
GADGET_COORDS = [(0, 0), (1, 0), (2, 0), (-1, 0), (-2, 0), (0, 1), (1, 1), (-1, 1),
                 (0, -1), (1, -1), (-1, -1), (0, 2), (0, -2)]
_GADGET_EDGES = [((1, 0), (0, 0)), ((2, 0), (1, 0)), ((-1, 0), (0, 0)), ((-2, 0), (-1, 0)),
                 ((0, 1), (-1, 0)), ((0, 1), (0, 0)), ((0, 1), (1, 0)),
                 ((1, 1), (1, 0)), ((1, 1), (2, 0)),
                 ((-1, 1), (0, 1)), ((-1, 1), (-2, 0)),
                 ((0, -1), (-1, 0)), ((0, -1), (0, 0)), ((0, -1), (1, 0)),
                 ((1, -1), (0, -1)), ((1, -1), (2, 0)),
                 ((-1, -1), (-1, 0)), ((-1, -1), (-2, 0)),
                 ((0, 2), (-1, 1)), ((0, 2), (0, 1)), ((0, 2), (1, 1)),
                 ((0, -2), (-1, -1)), ((0, -2), (0, -1)), ((0, -2), (1, -1))]
CORNER_NAMES = ("left", "right", "top", "bottom")


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    corners: tuple[int, int, int, int]
    coords: tuple

    def corner(self, name: str) -> int:
        return self.corners[CORNER_NAMES.index(name)]


def crossover_gadget() -> Gadget:
    """The 13-vertex crossover gadget; corners (left, right, top, bottom)."""
    idx = {p: i for i, p in enumerate(GADGET_COORDS)}
    g = Graph(13, [(idx[a], idx[b]) for a, b in _GADGET_EDGES])
    corners = (idx[(-2, 0)], idx[(2, 0)], idx[(0, 2)], idx[(0, -2)])
    return Gadget(g, corners, tuple(GADGET_COORDS))


def gadget_pattern_extensions(gadget: Gadget | None = None) -> dict[tuple[int, int, int, int], int]:
    """Number of proper 3-colourings for each of the 81 corner colourings.

    Keys are (left, right, top, bottom) colours.
    """
    gadget = gadget or crossover_gadget()
    counts = {}
    for pattern in itertools.product(range(3), repeat=4):
        pre = dict(zip(gadget.corners, pattern))
        counts[pattern] = sum(1 for _ in iter_colorings(gadget.graph, 3, pre))
    return counts


# ------------------------------------------------------------ drawings

@dataclass
class Drawing:
    graph: Graph
    coords: list[Point]

    def segment(self, e):
        return self.coords[e[0]], self.coords[e[1]]

    def crossings(self) -> list[tuple[tuple[int, int], tuple[int, int], Point]]:
        """Properly crossing pairs of edges, each with its crossing point."""
        out = []
        edges = self.graph.edge_list()
        for e, f in itertools.combinations(edges, 2):
            if set(e) & set(f):
                continue
            a, b = self.segment(e)
            c, d = self.segment(f)
            if proper_crossing(a, b, c, d):
                out.append((e, f, intersection(a, b, c, d)[0]))
        return out

    def general_position(self) -> bool:
        """No vertex inside another edge, no overlaps, at most two edges through a crossing."""
        if len(set(self.coords)) != len(self.coords):
            return False
        edges = self.graph.edge_list()
        for e, f in itertools.combinations(edges, 2):
            a, b = self.segment(e)
            c, d = self.segment(f)
            if set(e) & set(f):
                if segments_conflict(a, b, c, d):
                    return False
            elif not proper_crossing(a, b, c, d) and segments_conflict(a, b, c, d):
                return False
        points = [p for _, _, p in self.crossings()]
        return len(points) == len(set(points))

    def is_crossing_free(self) -> bool:
        if len(set(self.coords)) != len(self.coords):
            return False
        segs = []
        for e in self.graph.edge_list():
            a, b = self.segment(e)
            segs.append((min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]), a, b))
        segs.sort(key=lambda s: s[0])
        # sweep in x: only pairs with overlapping bounding boxes can touch
        for i, (x0, x1, y0, y1, a, b) in enumerate(segs):
            for j in range(i + 1, len(segs)):
                u0, _, v0, v1, c, d = segs[j]
                if u0 > x1:
                    break
                if v0 > y1 or v1 < y0:
                    continue
                if segments_conflict(a, b, c, d):
                    return False
        return True

    def to_json(self) -> dict:
        return {"coords": [[p[0].numerator, p[0].denominator, p[1].numerator, p[1].denominator]
                           for p in self.coords]}


def _circle_point(t: Fraction) -> Point:
    # rational parametrisation of the unit circle
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


def straight_line_drawing(g: Graph, seed: int = 0, jitter: float = 0.25,
                          max_tries: int = 64) -> Drawing:
    """Vertices on the unit circle in index order, angles jittered by ``seed``.

    Coordinates are exact rationals; the drawing is redrawn until it is in
    general position.
    """
    if g.n < 1:
        raise BadParams("drawing needs at least one vertex")
    rng = random.Random(seed)
    n = g.n
    for _ in range(max_tries):
        coords = []
        for i in range(n):
            theta = -math.pi + 2 * math.pi * (i + 0.5 + rng.uniform(-jitter, jitter)) / n
            t = Fraction(math.tan(theta / 2)).limit_denominator(10 ** 6)
            coords.append(_circle_point(t))
        d = Drawing(g, coords)
        if d.general_position():
            return d
    raise RetryExhausted(f"no general-position drawing in {max_tries} attempts")


# ------------------------------------------------------------ planarization

@dataclass
class GadgetRecord:
    edges: tuple[tuple[int, int], tuple[int, int]]
    vertices: list[int]
    corners: dict[str, int]

    def endpoints(self) -> set[int]:
        return set(self.edges[0]) | set(self.edges[1])


@dataclass
class PlanarizationResult:
    g_prime: Graph
    drawing: Drawing
    crossing_count: int
    original_vertex_map: list[int]
    gadget_records: list[GadgetRecord]
    crossed_edges: dict = field(default_factory=dict)
    source: Drawing | None = None

    def expected_vertex_count(self, n: int) -> int:
        """n + 13c minus one vertex per gadget slot merged along each crossed edge."""
        return n + 13 * self.crossing_count - sum(self.crossed_edges.values())

    def to_json(self) -> dict:
        return {
            "n": self.g_prime.n,
            "edges": [list(e) for e in self.g_prime.edge_list()],
            "crossing_count": self.crossing_count,
            "original_vertex_map": self.original_vertex_map,
            "gadgets": [{"edges": [list(e) for e in r.edges], "vertices": r.vertices,
                         "corners": r.corners} for r in self.gadget_records],
            "drawing": self.drawing.to_json(),
        }


def planarize(g: Graph, seed: int = 0, identify: str = "smaller", swap_axes: bool = False,
              drawing: Drawing | None = None, max_tries: int = 40) -> PlanarizationResult:
    """Replace every crossing of a straight-line drawing by a crossover gadget.

    Along a crossed edge ab (a < b) the gadgets sit at its crossings in order
    from a; neighbouring gadgets share the corner between them.  With
    ``identify="smaller"`` the endpoint a becomes the first gadget's near
    corner and the last gadget's far corner is joined to b by an edge;
    ``"larger"`` mirrors this.  At a crossing the lexicographically smaller
    edge runs through the left/right corners unless ``swap_axes``.
    """
    if identify not in ("smaller", "larger"):
        raise BadParams("identify must be 'smaller' or 'larger'")
    d0 = drawing or straight_line_drawing(g, seed)
    crossings = sorted(d0.crossings(), key=lambda c: (c[0], c[1]))
    n = g.n
    if not crossings:
        return PlanarizationResult(g, Drawing(g, list(d0.coords)), 0, list(range(n)), [], {}, d0)

    # parameter of each crossing along each of its edges (0 at the smaller endpoint)
    along: dict[tuple[int, int], list[tuple[Fraction, int]]] = {}
    for ci, (e, f, _) in enumerate(crossings):
        a, b = d0.segment(e)
        c, d = d0.segment(f)
        _, t, u = intersection(a, b, c, d)
        along.setdefault(e, []).append((t, ci))
        along.setdefault(f, []).append((u, ci))
    for lst in along.values():
        lst.sort()
    gaps = []
    for lst in along.values():
        ts = [Fraction(0)] + [t for t, _ in lst] + [Fraction(1)]
        gaps += [y - x for x, y in zip(ts, ts[1:])]
    eps = min(gaps) / 4

    for _ in range(max_tries):
        result = _build(g, d0, crossings, along, eps, identify, swap_axes)
        if result.drawing.is_crossing_free():
            return result
        eps /= 2
    raise RetryExhausted("gadget placement did not yield a crossing-free drawing")


def _build(g, d0, crossings, along, eps, identify, swap_axes):
    n = g.n
    coords = list(d0.coords)
    edges = [e for e in g.edge_list() if e not in along]
    records = []
    slot = {}  # (crossing, local coordinate) -> vertex id

    def new_vertex(p):
        coords.append(p)
        return len(coords) - 1

    axes = {}
    for ci, (e, f, x) in enumerate(crossings):
        h, v = (f, e) if swap_axes else (e, f)
        axes[ci] = (h, v)

    def local_point(ci, lx, ly):
        h, v = axes[ci]
        x = crossings[ci][2]
        (a1, b1), (a2, b2) = d0.segment(h), d0.segment(v)
        sx = (b1[0] - a1[0], b1[1] - a1[1])
        sy = (b2[0] - a2[0], b2[1] - a2[1])
        k = eps / 2
        return (x[0] + k * (lx * sx[0] + ly * sy[0]), x[1] + k * (lx * sx[1] + ly * sy[1]))

    # corners along each crossed edge: shared between neighbouring gadgets
    for e, lst in along.items():
        a, b = e
        pa, pb = d0.segment(e)
        m = len(lst)
        chain = []
        for j in range(m + 1):
            if j == 0:
                ident = a if identify == "smaller" else None
                chain.append(ident)
            elif j == m:
                chain.append(b if identify == "larger" else None)
            else:
                chain.append(None)
        pos = []
        for j in range(m + 1):
            if j == 0:
                t0 = lst[0][0]
                p = pa if chain[0] is not None else None
                pos.append(p if p is not None else _lerp(pa, pb, t0 - eps))
            elif j == m:
                tm = lst[-1][0]
                pos.append(pb if chain[m] is not None else _lerp(pa, pb, tm + eps))
            else:
                pos.append(_lerp(pa, pb, (lst[j - 1][0] + lst[j][0]) / 2))
        ids = [c if c is not None else new_vertex(p) for c, p in zip(chain, pos)]
        if identify == "smaller":
            edges.append((ids[m], b))
        else:
            edges.append((a, ids[0]))
        for j, (_, ci) in enumerate(lst):
            h, _ = axes[ci]
            near, far = ((-2, 0), (2, 0)) if e == h else ((0, -2), (0, 2))
            slot[(ci, near)] = ids[j]
            slot[(ci, far)] = ids[j + 1]

    gadget = crossover_gadget()
    for ci, (e, f, _) in enumerate(crossings):
        vid = []
        for lc in GADGET_COORDS:
            if (ci, lc) not in slot:
                slot[(ci, lc)] = new_vertex(local_point(ci, *lc))
            vid.append(slot[(ci, lc)])
        for u, w in gadget.graph.edges:
            edges.append((vid[u], vid[w]))
        corners = dict(zip(CORNER_NAMES, (vid[c] for c in gadget.corners)))
        records.append(GadgetRecord(axes[ci], vid, corners))

    gp = Graph(len(coords), edges)
    crossed = {e: len(lst) for e, lst in along.items()}
    return PlanarizationResult(gp, Drawing(gp, coords), len(crossings), list(range(n)),
                               records, crossed, d0)


def _lerp(p: Point, q: Point, t: Fraction) -> Point:
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def bowtie_c4() -> tuple[Graph, Drawing]:
    """C4 on 0-2-1-3 drawn with vertices in index order on the circle: one forced crossing."""
    g = Graph(4, [(0, 2), (1, 2), (1, 3), (0, 3)])
    return g, straight_line_drawing(g, seed=0)


# ------------------------------------------------------------ claim check

def claim_counterexamples(result: PlanarizationResult, g: Graph, x: set[int]) -> list[dict]:
    """Proper colourings of g[X] whose extensions to g'[X'] disagree on a gadget
    with all four crossing endpoints in X."""
    x = set(x)
    xp = set(x)
    for rec in result.gadget_records:
        e1, e2 = rec.edges
        if set(e1) <= x or set(e2) <= x:
            xp |= set(rec.vertices)
    xs = sorted(xp)
    sub, keep = result.g_prime.induced(xs)
    index = {v: i for i, v in enumerate(keep)}
    gx, xkeep = g.induced(sorted(x))
    watched = [r for r in result.gadget_records if r.endpoints() <= x]
    out = []
    for col in iter_colorings(gx, 3):
        pre = {index[v]: c for v, c in zip(xkeep, col)}
        seen: dict[int, set] = {}
        for ext in iter_colorings(sub, 3, pre):
            for ri, r in enumerate(watched):
                seen.setdefault(ri, set()).add(tuple(ext[index[v]] for v in r.vertices))
        for ri, pats in seen.items():
            if len(pats) > 1:
                r = watched[ri]
                c = dict(zip(xkeep, col))
                out.append({"coloring": c, "gadget": r.edges, "extensions": len(pats),
                            "endpoint_colors": {v: c[v] for v in sorted(r.endpoints())}})
    return out
