"""Exact planar hull geometry for the exponential-growth witnesses.

All membership tests are integer/rational: witness endpoints sit exactly on
the boundary of a scaled hull, so floating point is not an option here.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .engine import GeodesicCensus, bfs_census
from .gensets import GenSet, g2_short_set
from .groups import VirtuallyAbelianGroup


class HullError(ValueError):
    pass


Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Counter-clockwise integer polygon; starts at its rightmost, then lowest, vertex."""

    vertices: tuple[Point, ...]

    @property
    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    @property
    def supports(self) -> list[tuple[Point, int]]:
        """Outward normals ``ν`` and support values ``h`` with ``P = {q : <ν,q> <= h}``."""
        out = []
        for p, q in self.edges:
            nu = (q[1] - p[1], p[0] - q[0])
            out.append((nu, nu[0] * p[0] + nu[1] * p[1]))
        return out

    @property
    def twice_area(self) -> int:
        v = self.vertices
        return sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1] for i in range(len(v)))

    def is_centrally_symmetric(self) -> bool:
        vs = set(self.vertices)
        return all((-x, -y) in vs for x, y in vs)


def convex_hull(points: Iterable[Sequence[int]], *, require_area: bool = True) -> LatticePolygon:
    """Monotone-chain hull; collinear boundary points are dropped."""
    pts = sorted({(int(p[0]), int(p[1])) for p in points})
    if len(pts) < 2:
        raise HullError("need at least two distinct points")
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    poly_area = LatticePolygon(tuple(hull)).twice_area if len(hull) >= 3 else 0
    if require_area and poly_area == 0:
        raise HullError("points are collinear: hull has zero area")
    i = min(range(len(hull)), key=lambda j: (-hull[j][0], hull[j][1]))
    return LatticePolygon(tuple(hull[i:] + hull[:i]))


def scaled_contains(P: LatticePolygon, lam, q: Sequence[int]) -> bool:
    """Whether ``q`` lies in ``lam * P`` (boundary included), exactly."""
    lam = Fraction(lam)
    return all(nu[0] * q[0] + nu[1] * q[1] <= lam * h for nu, h in P.supports)


def _plane_vectors(G, X: GenSet) -> list[tuple[str, Point]]:
    if G.rank != 2:
        raise HullError("hull arguments need a rank-2 lattice")
    return [(x.label, tuple(G.lattice_part(x.element))) for x in X]


def _first_edge(labelled: list[tuple[str, Point]]) -> tuple[str, str]:
    pts = [v for _, v in labelled if v != (0, 0)]
    P = convex_hull(pts)
    v0, v1 = P.vertices[0], P.vertices[1]
    pick = lambda v: next(lab for lab, w in labelled if w == v)
    return pick(v0), pick(v1)


def hull_edge_pair(G, X: GenSet) -> tuple[str, str]:
    """Letters at the ends of the first hull edge (counter-clockwise from the rightmost-lowest vertex)."""
    return _first_edge(_plane_vectors(G, X))


@dataclass
class WitnessReport:
    n: int
    word: tuple[str, ...]
    endpoint: object
    distance: int
    expected_distance: int
    geodesics: int
    binomial_bound: int

    @property
    def passed(self) -> bool:
        return self.distance == self.expected_distance and self.geodesics >= self.binomial_bound

    def to_text(self) -> str:
        return (
            f"n={self.n} word={' '.join(self.word)} distance={self.distance} "
            f"expected={self.expected_distance} geodesics={self.geodesics} "
            f"bound={self.binomial_bound} {'PASS' if self.passed else 'FAIL'}"
        )


def _witness_plan(G, X: GenSet):
    """Return (short spellings of the two edge elements, word-length multiplier, polygon)."""
    if not isinstance(G, VirtuallyAbelianGroup) or G.rank != 2:
        raise HullError("witnesses are defined for rank-2 virtually abelian groups")
    if G.finite.order == 1:
        i, j = hull_edge_pair(G, X)
        P = convex_hull([v for _, v in _plane_vectors(G, X) if v != (0, 0)])
        return (i,), (j,), 2, P
    if G.finite.order == 2:
        S = g2_short_set(G, X)
        labelled = [(str(k), s.element.v) for k, s in enumerate(S)]
        a, b = _first_edge(labelled)
        P = convex_hull([v for _, v in labelled if v != (0, 0)])
        return S[int(a)].spelling, S[int(b)].spelling, 4, P
    raise HullError("only Z^2 and index-two extensions of Z^2 are supported")


def witness_polygon(G, X: GenSet) -> LatticePolygon:
    return _witness_plan(G, X)[3]


def exponential_witness(G, X: GenSet, n: int, census: GeodesicCensus | None = None) -> WitnessReport:
    """Verify ``u^n v^n`` for the hull-edge pair ``u, v``: distance and geodesic count.

    In the plane ``u, v`` are letters and the expected distance is ``2n``;
    for an index-two extension they are two-letter spellings of short
    elements and the expected distance is ``4n``.
    """
    if n < 1:
        raise HullError("n must be positive")
    u, v, mult, _ = _witness_plan(G, X)
    expected = mult * n
    if census is None or census.n_max < expected:
        census = bfs_census(G, X, expected)
    word = tuple(u) * n + tuple(v) * n
    g = X.evaluate(list(word))
    # |word| = expected <= radius, so the endpoint is always inside the ball
    return WitnessReport(n, word, g, census.dist[g], expected, census.count[g], comb(2 * n, n))


def witness_reports(G, X: GenSet, n_max: int) -> list[WitnessReport]:
    mult = _witness_plan(G, X)[2]
    census = bfs_census(G, X, mult * n_max)
    return [exponential_witness(G, X, n, census) for n in range(1, n_max + 1)]


def containment_violations(census: GeodesicCensus, P: LatticePolygon, factor=1) -> list:
    """Elements of the lattice subgroup whose vector is outside ``factor * d(z) * P``."""
    G = census.group
    factor = Fraction(factor)
    e = G.finite.identity
    bad = []
    for sphere in census.spheres:
        for z in sphere:
            if z.f != e:
                continue
            if not scaled_contains(P, factor * census.dist[z], z.v):
                bad.append(z)
    return bad
