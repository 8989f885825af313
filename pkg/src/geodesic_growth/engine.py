"""Layered ball enumeration with exact geodesic counting.

The Cayley graph ball is expanded one sphere at a time.  An edge ``g -> g·x``
from sphere ``l`` into sphere ``l+1`` extends every geodesic of ``g`` to a
geodesic of ``g·x``, so geodesic counts accumulate along such edges and
nothing else.  Counts are Python integers (unbounded); distances are small.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .gensets import GenSet, GenSetError, Letter

DEFAULT_ELEMENT_CAP = 20_000_000
CAP_ENV = "GEODESIC_GROWTH_MAX_ELEMENTS"


class CensusError(ValueError):
    pass


class ElementCapExceeded(MemoryError):
    def __init__(self, cap: int, last_complete_radius: int):
        super().__init__(f"element cap {cap} exceeded; last complete radius {last_complete_radius}")
        self.cap = cap
        self.last_complete_radius = last_complete_radius


def element_cap() -> int:
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_ELEMENT_CAP


@dataclass
class GeodesicCensus:
    """Exact distances and geodesic counts on the ball of radius ``n_max``."""

    group: object = field(repr=False)
    genset: GenSet = field(repr=False)
    n_max: int
    dist: dict = field(repr=False)
    count: dict = field(repr=False)
    spheres: list = field(repr=False)
    # frozenset(labels) -> (max count dict, min count dict)
    tracked: dict = field(default_factory=dict, repr=False)
    # frozenset(labels) -> set of elements with a geodesic spelled in those labels only
    pure: dict = field(default_factory=dict, repr=False)

    @property
    def sphere_sizes(self) -> list[int]:
        return [len(s) for s in self.spheres]

    @property
    def sphere_geodesics(self) -> list[int]:
        count = self.count
        return [sum(count[g] for g in s) for s in self.spheres]

    @property
    def cumulative_gamma(self) -> list[int]:
        return _cumsum(self.sphere_sizes)

    @property
    def cumulative_Gamma(self) -> list[int]:
        return _cumsum(self.sphere_geodesics)

    def __len__(self):
        return len(self.dist)

    def distance(self, g) -> int:
        try:
            return self.dist[g]
        except KeyError:
            raise CensusError(f"{self.group.format(g)} is outside the ball of radius {self.n_max}") from None

    def rows(self):
        sizes, geos = self.sphere_sizes, self.sphere_geodesics
        gam, Gam = _cumsum(sizes), _cumsum(geos)
        for n in range(self.n_max + 1):
            yield n, sizes[n], geos[n], gam[n], Gam[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "sphere_size", "sphere_geodesics", "cumulative_gamma", "cumulative_Gamma"])
        for row in self.rows():
            w.writerow(row)
        return buf.getvalue()

    def digest(self) -> str:
        """SHA-256 over the canonical serialization of every per-element record."""
        h = hashlib.sha256()
        G = self.group
        for sphere in self.spheres:
            for key in sorted(G.canonical_key(g) for g in sphere):
                g = G.decode_key(key)
                h.update(key)
                h.update(f":{self.dist[g]}:{self.count[g]};".encode())
        for sub in sorted(self.tracked, key=sorted):
            hi, lo = self.tracked[sub]
            h.update(repr(sorted(sub)).encode())
            for sphere in self.spheres:
                for key in sorted(G.canonical_key(g) for g in sphere):
                    g = G.decode_key(key)
                    h.update(f"{hi[g]},{lo[g]};".encode())
        return h.hexdigest()


def _cumsum(xs: Iterable[int]) -> list[int]:
    out, s = [], 0
    for x in xs:
        s += x
        out.append(s)
    return out


def bfs_census(
    G,
    X: GenSet,
    n_max: int,
    *,
    track: Sequence[Iterable[str]] = (),
    pure: Sequence[Iterable[str]] = (),
    cap: int | None = None,
) -> GeodesicCensus:
    """Enumerate the ball of radius ``n_max`` and count geodesics to every element.

    ``track`` lists letter subsets for which the min/max number of
    occurrences over all geodesics is kept per element; ``pure`` lists
    subsets for which we record whether some geodesic uses only those
    letters.  Both are opt-in.

    Raises :class:`ElementCapExceeded` when the ball would exceed ``cap``
    records (default :data:`DEFAULT_ELEMENT_CAP`, overridable through the
    ``GEODESIC_GROWTH_MAX_ELEMENTS`` environment variable).
    """
    if n_max < 0:
        raise CensusError("n_max must be non-negative")
    if X.group is not G:
        raise CensusError("generating set belongs to a different group")
    cap = element_cap() if cap is None else cap
    labels = X.labels
    step = G.right_multiplier(X.elements)
    check = G.check_range

    track_sets = [frozenset(t) for t in track]
    pure_sets = [frozenset(p) for p in pure]
    for sub in track_sets + pure_sets:
        bad = sub - set(labels)
        if bad:
            raise GenSetError(f"unknown letters {sorted(bad)}")

    e = G.identity
    dist = {e: 0}
    count = {e: 1}
    spheres = [[e]]
    tracked = {}
    track_masks = []
    for sub in track_sets:
        hi, lo = {e: 0}, {e: 0}
        tracked[sub] = (hi, lo)
        track_masks.append((tuple(int(lab in sub) for lab in labels), hi, lo))
    pures = {}
    pure_masks = []
    for sub in pure_sets:
        flags = {e}
        pures[sub] = flags
        pure_masks.append((tuple(lab in sub for lab in labels), flags))
    with_stats = bool(track_masks or pure_masks)

    for l in range(n_max):
        nxt = []
        d1 = l + 1
        for g in spheres[l]:
            cg = count[g]
            for i, h in enumerate(step(g)):
                d = dist.get(h)
                if d is None:
                    check(h)
                    dist[h] = d1
                    count[h] = cg
                    nxt.append(h)
                    fresh = True
                elif d == d1:
                    count[h] += cg
                    fresh = False
                else:
                    continue
                if with_stats:
                    for mask, hi, lo in track_masks:
                        vhi = hi[g] + mask[i]
                        vlo = lo[g] + mask[i]
                        if fresh:
                            hi[h] = vhi
                            lo[h] = vlo
                        else:
                            hi[h] = max(hi[h], vhi)
                            lo[h] = min(lo[h], vlo)
                    for mask, flags in pure_masks:
                        if mask[i] and g in flags:
                            flags.add(h)
        spheres.append(nxt)
        if len(dist) > cap:
            raise ElementCapExceeded(cap, l)
    return GeodesicCensus(G, X, n_max, dist, count, spheres, tracked, pures)


def geodesic_count_to(census: GeodesicCensus, g) -> int:
    """The number of geodesic words evaluating to ``g``."""
    census.distance(g)
    return census.count[g]


def _prefix_elements(census: GeodesicCensus, word):
    X = census.genset
    G = census.group
    g = G.identity
    out = [g]
    for lab in X.parse_word(word):
        g = G.mul(g, X[lab].element)
        out.append(g)
    return out


def is_geodesic_word(census: GeodesicCensus, word) -> bool:
    """True iff the i-th prefix of ``word`` lies at distance exactly i."""
    prefixes = _prefix_elements(census, word)
    if len(prefixes) - 1 > census.n_max:
        raise CensusError(f"word longer than census radius {census.n_max}")
    return all(census.dist.get(g) == i for i, g in enumerate(prefixes))


def letter_stats(census: GeodesicCensus, tracked: Iterable[str]) -> list[int]:
    """Per length, the maximum number of ``tracked`` letters in a geodesic word."""
    sub = frozenset(tracked)
    if not sub:
        return [0] * (census.n_max + 1)
    if sub not in census.tracked:
        raise CensusError(f"letter subset {sorted(sub)} was not tracked in this census")
    hi, _ = census.tracked[sub]
    return [max(hi[g] for g in sphere) if sphere else 0 for sphere in census.spheres]


def letter_stats_min(census: GeodesicCensus, tracked: Iterable[str]) -> list[int]:
    """Per length, the minimum number of ``tracked`` letters in a geodesic word."""
    sub = frozenset(tracked)
    if sub not in census.tracked:
        raise CensusError(f"letter subset {sorted(sub)} was not tracked in this census")
    _, lo = census.tracked[sub]
    return [min(lo[g] for g in sphere) if sphere else 0 for sphere in census.spheres]


def pure_subalphabet_max_geodesic_length(census: GeodesicCensus, sub: Iterable[str]) -> int:
    """Longest geodesic word (within the ball) using only letters of ``sub``."""
    sub = frozenset(sub)
    if not sub:
        return 0
    if sub not in census.pure:
        raise CensusError(f"letter subset {sorted(sub)} was not tracked for purity in this census")
    flags = census.pure[sub]
    return max(census.dist[g] for g in flags)


def theta_efficient(census: GeodesicCensus, word, theta) -> bool:
    theta = Fraction(theta)
    if theta < 1:
        raise CensusError("theta must be at least 1")
    prefixes = _prefix_elements(census, word)
    length = len(prefixes) - 1
    if length > census.n_max:
        raise CensusError(f"word longer than census radius {census.n_max}")
    return length <= theta * census.dist[prefixes[-1]]


def image_genset(phi, X: GenSet) -> GenSet:
    """``φ(X)`` as a multiset: one letter per letter of ``X``, same labels."""
    T = phi.target
    letters = []
    for x in X:
        y = phi(x.element)
        if y == T.identity:
            raise CensusError(f"letter {x.label!r} maps to the identity of {T.name}")
        letters.append(Letter(x.label, y, x.inverse_label))
    return GenSet(T, tuple(letters), name=f"image of {X.name or 'X'}")


@dataclass
class QuotientComparison:
    source: GeodesicCensus
    target: GeodesicCensus
    violations: list[int]

    @property
    def holds(self) -> bool:
        return not self.violations


def quotient_compare(G, X: GenSet, phi, n: int) -> QuotientComparison:
    """Compare ``Γ_{G,X}`` with ``Γ_{G',φ(X)}`` for lengths up to ``n``."""
    if phi.source is not G:
        raise CensusError("epimorphism source is not G")
    bad = phi.check_homomorphism(X.elements)
    if bad:
        raise CensusError(f"map is not a homomorphism on {len(bad)} generator pairs")
    Xp = image_genset(phi, X)
    ok, msg = phi.check_surjective(X.elements)
    if not ok:
        raise CensusError(f"image of X does not generate the target: {msg}")
    src = bfs_census(G, X, n)
    tgt = bfs_census(phi.target, Xp, n)
    a, b = src.cumulative_Gamma, tgt.cumulative_Gamma
    return QuotientComparison(src, tgt, [l for l in range(n + 1) if a[l] < b[l]])
