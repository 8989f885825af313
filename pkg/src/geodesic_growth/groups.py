"""Concrete group arithmetic.

Two families are modelled exactly, so the word problem is a tuple comparison:

* virtually abelian groups ``Z^r ⋊ F`` given by a finite multiplication table
  and an integer action ``f -> φ_f`` on the lattice, and
* the discrete Heisenberg group of integer triples.

Elements are immutable named tuples and double as dictionary keys during
ball enumeration.
"""

from __future__ import annotations

import itertools
import random
import struct
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .lattice import (
    identity_matrix,
    int_det,
    lattice_index,
    lattice_rank,
    mat_mul,
    mat_vec,
)

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class GroupError(ValueError):
    """Invalid group data or an element that does not belong to the group."""


class CoordinateOverflow(OverflowError):
    """A coordinate left the signed 64-bit range."""


def _check_range(coords: Iterable[int]) -> None:
    for c in coords:
        if c < INT64_MIN or c > INT64_MAX:
            raise CoordinateOverflow(f"coordinate {c} outside signed 64-bit range")


# ---------------------------------------------------------------------------
# finite groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group on ``0..order-1`` given by its multiplication table."""

    mult: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.mult)
        if n == 0:
            raise GroupError("finite group must have at least one element")
        mult = tuple(tuple(int(x) for x in row) for row in self.mult)
        object.__setattr__(self, "mult", mult)
        for row in mult:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise GroupError("multiplication table must be square with entries in range")
        ident = [e for e in range(n) if all(mult[e][g] == g and mult[g][e] == g for g in range(n))]
        if not ident:
            raise GroupError("multiplication table has no identity")
        e = ident[0]
        for a, b, c in itertools.product(range(n), repeat=3):
            if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                raise GroupError(f"multiplication table is not associative at ({a}, {b}, {c})")
        inv = []
        for a in range(n):
            found = [b for b in range(n) if mult[a][b] == e]
            if not found:
                raise GroupError(f"element {a} has no inverse")
            inv.append(found[0])
        object.__setattr__(self, "_identity", e)
        object.__setattr__(self, "_inv", tuple(inv))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"f{i}" for i in range(n)))
        elif len(self.names) != n:
            raise GroupError("need one name per finite element")

    @property
    def order(self) -> int:
        return len(self.mult)

    @property
    def identity(self) -> int:
        return self._identity  # type: ignore[attr-defined]

    @property
    def inv(self) -> tuple[int, ...]:
        return self._inv  # type: ignore[attr-defined]

    @classmethod
    def cyclic(cls, n: int, names: Sequence[str] | None = None) -> FiniteGroupTable:
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return cls(table, tuple(names) if names else ())

    @classmethod
    def trivial(cls) -> FiniteGroupTable:
        return cls(((0,),), ("e",))


# ---------------------------------------------------------------------------
# virtually abelian groups
# ---------------------------------------------------------------------------


class GroupElement(NamedTuple):
    v: tuple[int, ...]
    f: int


class VirtuallyAbelianGroup:
    """The semidirect product ``Z^rank ⋊ F`` with ``(v,f)(w,g) = (v + φ_f w, fg)``."""

    def __init__(
        self,
        name: str,
        rank: int,
        finite: FiniteGroupTable,
        action: Sequence[Sequence[Sequence[int]]],
        names: dict[str, GroupElement] | None = None,
    ):
        self.name = name
        self.rank = rank
        self.finite = finite
        if len(action) != finite.order:
            raise GroupError("need one action matrix per finite element")
        self.action = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in action)
        for i, m in enumerate(self.action):
            if len(m) != rank or any(len(row) != rank for row in m):
                raise GroupError(f"action matrix {i} is not {rank}x{rank}")
            if int_det(m) not in (1, -1):
                raise GroupError(f"action matrix {i} is not invertible over the integers")
        if self.action[finite.identity] != identity_matrix(rank):
            raise GroupError("identity must act trivially")
        for f, g in itertools.product(range(finite.order), repeat=2):
            if mat_mul(self.action[f], self.action[g]) != self.action[finite.mult[f][g]]:
                raise GroupError(f"action is not a homomorphism at ({f}, {g})")
        self.identity = GroupElement((0,) * rank, finite.identity)
        self.names: dict[str, GroupElement] = {}
        for label, g in (names or {}).items():
            self.names[label] = self.element(g.v, g.f)

    def __repr__(self):
        return f"VirtuallyAbelianGroup({self.name!r}, rank={self.rank}, |F|={self.finite.order})"

    def element(self, v: Sequence[int] = (), f: int | None = None) -> GroupElement:
        v = tuple(int(x) for x in v) if v else (0,) * self.rank
        f = self.finite.identity if f is None else int(f)
        if len(v) != self.rank or not 0 <= f < self.finite.order:
            raise GroupError(f"({v}, {f}) is not an element of {self.name}")
        _check_range(v)
        return GroupElement(v, f)

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        w = mat_vec(self.action[g.f], h.v)
        v = tuple(a + b for a, b in zip(g.v, w))
        _check_range(v)
        return GroupElement(v, self.finite.mult[g.f][h.f])

    def inv(self, g: GroupElement) -> GroupElement:
        fi = self.finite.inv[g.f]
        v = tuple(-x for x in mat_vec(self.action[fi], g.v))
        _check_range(v)
        return GroupElement(v, fi)

    def right_multiplier(self, elements: Sequence[GroupElement]) -> Callable[[GroupElement], list]:
        """Return ``g -> [g*x for x in elements]`` with the action pre-applied.

        Enumeration calls this in its inner loop, so the shift vectors
        ``φ_f(x)`` are tabulated per finite index up front.
        """
        table = []
        for f in range(self.finite.order):
            row = []
            for x in elements:
                row.append((mat_vec(self.action[f], x.v), self.finite.mult[f][x.f]))
            table.append(tuple(row))
        table = tuple(table)

        def step(g: GroupElement) -> list:
            v = g.v
            out = []
            for shift, nf in table[g.f]:
                w = tuple(a + b for a, b in zip(v, shift))
                out.append(GroupElement(w, nf))
            return out

        return step

    def check_range(self, g: GroupElement) -> None:
        _check_range(g.v)

    def lattice_part(self, g: GroupElement) -> tuple[int, ...]:
        return g.v

    def finite_part(self, g: GroupElement) -> int:
        return g.f

    def random_element(self, rng: random.Random, bound: int = 10) -> GroupElement:
        v = tuple(rng.randint(-bound, bound) for _ in range(self.rank))
        return GroupElement(v, rng.randrange(self.finite.order))

    def canonical_key(self, g: GroupElement) -> bytes:
        return canonical_key(g)

    def decode_key(self, key: bytes) -> GroupElement:
        return decode_key(key, self.rank)

    def format(self, g: GroupElement) -> str:
        return f"({','.join(map(str, g.v))};{self.finite.names[g.f]})"

    def generation_report(self, reached: Iterable[GroupElement]) -> tuple[bool, str]:
        """Whether ``reached`` meets every coset and spans a full-rank sublattice."""
        reached = list(reached)
        cosets = {g.f for g in reached}
        if len(cosets) != self.finite.order:
            return False, f"reaches {len(cosets)} of {self.finite.order} cosets of the lattice"
        lat = [g.v for g in reached if g.f == self.finite.identity]
        r = lattice_rank(lat, self.rank)
        if r < self.rank:
            return False, f"lattice part has rank {r} < {self.rank}"
        return True, "ok"


def canonical_key(g: GroupElement) -> bytes:
    """Little-endian int64 coordinates followed by the finite index as uint32."""
    _check_range(g.v)
    return struct.pack(f"<{len(g.v)}qI", *g.v, g.f)


def decode_key(key: bytes, rank: int) -> GroupElement:
    *v, f = struct.unpack(f"<{rank}qI", key)
    return GroupElement(tuple(v), f)


def normal_closure_index(G: VirtuallyAbelianGroup, x: GroupElement) -> tuple[int, int] | None:
    """Index of the normal closure of ``x`` (an element of the lattice).

    Returns ``(lattice_index, group_index)``, or None when the orbit
    ``{φ_f(v_x)}`` spans a lattice of rank < r (infinite index).
    """
    if x.f != G.finite.identity:
        raise GroupError("x must lie in the lattice subgroup (trivial finite part)")
    orbit = [mat_vec(m, x.v) for m in G.action]
    idx = lattice_index(orbit, G.rank)
    if idx is None:
        return None
    return idx, idx * G.finite.order


# ---------------------------------------------------------------------------
# Heisenberg group
# ---------------------------------------------------------------------------


class HeisenbergElement(NamedTuple):
    a: int
    b: int
    c: int


class HeisenbergGroup:
    """Integer triples with ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``."""

    rank = 2
    name = "Heisenberg"

    def __init__(self):
        self.identity = HeisenbergElement(0, 0, 0)
        self.names = {
            "x": HeisenbergElement(1, 0, 0),
            "y": HeisenbergElement(0, 1, 0),
            "z": HeisenbergElement(0, 0, 1),
        }

    def __repr__(self):
        return "HeisenbergGroup()"

    def element(self, a: int, b: int, c: int) -> HeisenbergElement:
        _check_range((a, b, c))
        return HeisenbergElement(int(a), int(b), int(c))

    def mul(self, g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
        out = HeisenbergElement(g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b)
        _check_range(out)
        return out

    def inv(self, g: HeisenbergElement) -> HeisenbergElement:
        return HeisenbergElement(-g.a, -g.b, g.a * g.b - g.c)

    def right_multiplier(self, elements: Sequence[HeisenbergElement]):
        gens = tuple(elements)

        def step(g: HeisenbergElement) -> list:
            a, b, c = g
            return [HeisenbergElement(a + x, b + y, c + z + a * y) for x, y, z in gens]

        return step

    def check_range(self, g: HeisenbergElement) -> None:
        _check_range(g)

    def lattice_part(self, g: HeisenbergElement) -> tuple[int, int]:
        return (g.a, g.b)

    def finite_part(self, g: HeisenbergElement) -> int:
        return 0

    def random_element(self, rng: random.Random, bound: int = 10) -> HeisenbergElement:
        return HeisenbergElement(*(rng.randint(-bound, bound) for _ in range(3)))

    def canonical_key(self, g: HeisenbergElement) -> bytes:
        _check_range(g)
        return struct.pack("<3q", *g)

    def decode_key(self, key: bytes) -> HeisenbergElement:
        return HeisenbergElement(*struct.unpack("<3q", key))

    def format(self, g: HeisenbergElement) -> str:
        return f"({g.a},{g.b},{g.c})"

    def generation_report(self, reached) -> tuple[bool, str]:
        # A subset of a nilpotent group generates iff its image generates the abelianization.
        idx = lattice_index([(g.a, g.b) for g in reached], 2)
        if idx != 1:
            return False, "abelianization image is not all of Z^2"
        return True, "ok"


def ball_elements(group, elements: Sequence, radius: int) -> set:
    """All elements at word length <= radius over ``elements``."""
    step = group.right_multiplier(list(elements))
    seen = {group.identity}
    frontier = [group.identity]
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for h in step(g):
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# epimorphisms
# ---------------------------------------------------------------------------


@dataclass
class Epimorphism:
    """A map between two concrete groups, checked on a generating set."""

    source: object
    target: object
    func: Callable = field(repr=False)
    description: str = ""

    def __call__(self, g):
        return self.func(g)

    def check_homomorphism(self, elements: Sequence) -> list[tuple]:
        """Return the pairs among ``elements`` where ``φ(gh) != φ(g)φ(h)``."""
        bad = []
        S, T = self.source, self.target
        for g, h in itertools.product(elements, repeat=2):
            if self(S.mul(g, h)) != T.mul(self(g), self(h)):
                bad.append((g, h))
        return bad

    def check_surjective(self, elements: Sequence, radius: int = 4) -> tuple[bool, str]:
        images = [self(g) for g in elements]
        images = [y for y in images if y != self.target.identity]
        if not images:
            return False, "all images are trivial"
        sym = images + [self.target.inv(y) for y in images]
        reached = ball_elements(self.target, sym, radius)
        return self.target.generation_report(reached)


def matrix_epimorphism(
    source: VirtuallyAbelianGroup,
    target: VirtuallyAbelianGroup,
    matrix: Sequence[Sequence[int]],
    finite_map: Sequence[int],
    description: str = "",
) -> Epimorphism:
    """``(v, f) -> (M v, finite_map[f])`` between split virtually abelian groups."""
    M = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(M) != target.rank or any(len(row) != source.rank for row in M):
        raise GroupError(f"matrix must be {target.rank}x{source.rank}")
    fmap = tuple(int(x) for x in finite_map)
    if len(fmap) != source.finite.order:
        raise GroupError("finite map needs one entry per source finite element")

    def func(g: GroupElement) -> GroupElement:
        return GroupElement(mat_vec(M, g.v) if target.rank else (), fmap[g.f])

    return Epimorphism(source, target, func, description)


def heisenberg_abelianization(H: HeisenbergGroup, Z2: VirtuallyAbelianGroup) -> Epimorphism:
    if Z2.rank != 2 or Z2.finite.order != 1:
        raise GroupError("target must be Z^2")
    e = Z2.finite.identity
    return Epimorphism(H, Z2, lambda g: GroupElement((g.a, g.b), e), "(a,b,c) -> (a,b)")


# ---------------------------------------------------------------------------
# built-in groups
# ---------------------------------------------------------------------------

_SWAP = ((0, 1), (1, 0))
_NEG2 = ((-1, 0), (0, -1))
_I1 = ((1,),)
_I2 = ((1, 0), (0, 1))


def _z():
    F = FiniteGroupTable.trivial()
    return VirtuallyAbelianGroup("Z", 1, F, [_I1], {"t": GroupElement((1,), 0)})


def _z2():
    F = FiniteGroupTable.trivial()
    return VirtuallyAbelianGroup(
        "Z2", 2, F, [_I2], {"a": GroupElement((1, 0), 0), "b": GroupElement((0, 1), 0)}
    )


def _c2():
    F = FiniteGroupTable.cyclic(2, ("e", "s"))
    return VirtuallyAbelianGroup("C2", 0, F, [(), ()], {"s": GroupElement((), 1)})


def _zxc2():
    F = FiniteGroupTable.cyclic(2, ("e", "a"))
    return VirtuallyAbelianGroup(
        "ZxC2", 1, F, [_I1, _I1], {"t": GroupElement((1,), 0), "a": GroupElement((0,), 1)}
    )


def _g1():
    F = FiniteGroupTable.cyclic(2, ("e", "t"))
    return VirtuallyAbelianGroup(
        "G1",
        2,
        F,
        [_I2, _SWAP],
        {"a": GroupElement((1, 0), 0), "b": GroupElement((0, 1), 0), "t": GroupElement((0, 0), 1)},
    )


def _g2():
    F = FiniteGroupTable.cyclic(2, ("e", "t"))
    return VirtuallyAbelianGroup(
        "G2",
        2,
        F,
        [_I2, _NEG2],
        {"a": GroupElement((1, 0), 0), "b": GroupElement((0, 1), 0), "t": GroupElement((0, 0), 1)},
    )


def _dinf():
    F = FiniteGroupTable.cyclic(2, ("e", "s"))
    return VirtuallyAbelianGroup(
        "Dinf", 1, F, [_I1, ((-1,),)], {"t": GroupElement((1,), 0), "s": GroupElement((0,), 1)}
    )


BUILTIN_GROUPS: dict[str, Callable[[], object]] = {
    "Z": _z,
    "Z2": _z2,
    "C2": _c2,
    "ZxC2": _zxc2,
    "G1": _g1,
    "G2": _g2,
    "Dinf": _dinf,
    "Heisenberg": HeisenbergGroup,
}


def builtin_group(name: str):
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise GroupError(f"unknown built-in group {name!r}; choose from {sorted(BUILTIN_GROUPS)}") from None
