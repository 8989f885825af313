"""Generating sets as labelled letter lists, and the constructions built from them.

A generating set is a *multiset*: two letters may name the same group
element.  Every set is kept symmetric (each letter has a formal inverse in
the list, involutions are their own inverse) and free of identity letters.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .groups import VirtuallyAbelianGroup, ball_elements, normal_closure_index
from .lattice import lattice_index


class GenSetError(ValueError):
    pass


def inverse_label(label: str) -> str:
    """``a <-> A``; labels without letters get a ``^-1`` suffix."""
    if label.endswith("^-1"):
        return label[:-3]
    swapped = label.swapcase()
    if swapped != label:
        return swapped
    return label + "^-1"


@dataclass(frozen=True)
class Letter:
    label: str
    element: object
    inverse_label: str

    @property
    def is_involution(self) -> bool:
        return self.inverse_label == self.label


@dataclass(frozen=True)
class GenSet:
    """An ordered, symmetric list of letters for ``group``.

    ``dominant`` names the letters treated as the dominating generator
    ``y^{±1}`` by the counting arguments.
    """

    group: object = field(repr=False)
    letters: tuple[Letter, ...]
    dominant: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        labels = [x.label for x in self.letters]
        if len(set(labels)) != len(labels):
            raise GenSetError(f"duplicate labels in {labels}")
        if not self.letters:
            raise GenSetError("generating set is empty")
        by_label = {x.label: x for x in self.letters}
        G = self.group
        for x in self.letters:
            if x.element == G.identity:
                raise GenSetError(f"letter {x.label!r} maps to the identity")
            partner = by_label.get(x.inverse_label)
            if partner is None:
                raise GenSetError(f"letter {x.label!r} has no inverse {x.inverse_label!r} in the set")
            if partner.inverse_label != x.label or partner.element != G.inv(x.element):
                raise GenSetError(f"letters {x.label!r} and {partner.label!r} are not mutually inverse")
        for d in self.dominant:
            if d not in by_label:
                raise GenSetError(f"dominant letter {d!r} not in the set")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(x.label for x in self.letters)

    @property
    def elements(self) -> tuple:
        return tuple(x.element for x in self.letters)

    def __getitem__(self, label: str) -> Letter:
        for x in self.letters:
            if x.label == label:
                return x
        raise KeyError(label)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def inverse_indices(self) -> tuple[int, ...]:
        labels = self.labels
        return tuple(labels.index(x.inverse_label) for x in self.letters)

    def parse_word(self, word: str | Sequence[str]) -> list[str]:
        return parse_word(word, self.labels)

    def evaluate(self, word: str | Sequence[str]):
        G = self.group
        g = G.identity
        for lab in self.parse_word(word):
            g = G.mul(g, self[lab].element)
        return g

    def check_generates(self, radius: int = 4) -> None:
        reached = ball_elements(self.group, self.elements, radius)
        ok, msg = self.group.generation_report(reached)
        if not ok:
            raise GenSetError(f"letters do not generate {self.group.name} within radius {radius}: {msg}")

    def non_dominant(self) -> tuple[str, ...]:
        return tuple(lab for lab in self.labels if lab not in self.dominant)


def parse_word(word: str | Sequence[str], labels: Sequence[str]) -> list[str]:
    """Split a word into labels.

    Lists pass through.  Strings are split on whitespace; a single token that
    is not itself a label is split into characters when every character is.
    Both ``"a t a"`` and ``"ata"`` therefore work for single-character labels.
    """
    known = set(labels)
    if isinstance(word, str):
        tokens = word.split()
        if len(tokens) == 1 and tokens[0] not in known and all(c in known for c in tokens[0]):
            tokens = list(tokens[0])
    else:
        tokens = list(word)
    for t in tokens:
        if t not in known:
            raise GenSetError(f"unknown letter {t!r}")
    return tokens


def _order_le_2(G, g) -> bool:
    return G.mul(g, g) == G.identity


def symmetric_closure(
    group, letters: Iterable[tuple[str, object]], *, name: str = "", dominant: Sequence[str] = (),
    check_radius: int | None = 4,
) -> GenSet:
    """Add the missing formal inverses to ``(label, element)`` pairs."""
    pairs = list(letters)
    if not pairs:
        raise GenSetError("need at least one letter")
    given = {lab: g for lab, g in pairs}
    out: list[Letter] = []
    seen: set[str] = set()
    for lab, g in pairs:
        if lab in seen:
            continue
        if g == group.identity:
            raise GenSetError(f"letter {lab!r} maps to the identity")
        if _order_le_2(group, g):
            out.append(Letter(lab, g, lab))
            seen.add(lab)
            continue
        ilab = inverse_label(lab)
        out.append(Letter(lab, g, ilab))
        seen.add(lab)
        gi = group.inv(g)
        if ilab in given and given[ilab] != gi:
            raise GenSetError(f"letter {ilab!r} is present but is not the inverse of {lab!r}")
        if ilab not in seen:
            if ilab in given:
                # keep the caller's ordering: the inverse is emitted where it was given
                continue
            out.append(Letter(ilab, gi, lab))
            seen.add(ilab)
    X = GenSet(group, tuple(out), tuple(dominant), name)
    if check_radius is not None:
        X.check_generates(check_radius)
    return X


def from_named(group, labels: Sequence[str], **kw) -> GenSet:
    """Symmetric set on named elements of ``group`` (e.g. ``["a", "t"]``)."""
    pairs = []
    for lab in labels:
        if lab not in group.names:
            raise GenSetError(f"{group.name} has no named element {lab!r}")
        pairs.append((lab, group.names[lab]))
    return symmetric_closure(group, pairs, **kw)


def double(X: GenSet, suffix: str = "'") -> GenSet:
    """Duplicate every letter under a fresh label mapping to the same element.

    For single-character lowercase labels the copy is taken from unused
    letters (so ``{t, T}`` becomes ``{t, T, s, S}``); otherwise ``suffix`` is
    appended.
    """
    used = set(X.labels) | {lab.swapcase() for lab in X.labels}
    fresh = iter(c for c in "stuvwxyzpqrmnjkhgfedcba" if c not in used and c.upper() not in used)
    rename: dict[str, str] = {}
    for x in X.letters:
        if x.label in rename:
            continue
        if len(x.label) == 1 and x.label.isalpha():
            c = next(fresh, None)
            if c is not None:
                new = c if x.label.islower() else c.upper()
                rename[x.label] = new
                rename[x.inverse_label] = new if x.is_involution else new.swapcase()
                continue
        rename[x.label] = x.label + suffix
        rename[x.inverse_label] = x.inverse_label + suffix
    copies = tuple(Letter(rename[x.label], x.element, rename[x.inverse_label]) for x in X.letters)
    return GenSet(X.group, X.letters + copies, X.dominant, (X.name + "-doubled") if X.name else "doubled")


def from_words(
    group, base: GenSet, words: Sequence[str] | Mapping[str, str], *, check_radius: int | None = 4
) -> GenSet:
    """Letters for the values of ``words`` over ``base``, symmetrized.

    ``words`` is either a mapping ``new_label -> word`` or a list of words; in
    the latter case each word (without spaces) becomes its own label and
    repeated words get a ``#k`` suffix, so repetitions survive.
    """
    if isinstance(words, Mapping):
        items = list(words.items())
    else:
        items = []
        counts: dict[str, int] = {}
        for w in words:
            lab = "".join(base.parse_word(w))
            counts[lab] = counts.get(lab, 0) + 1
            items.append((lab if counts[lab] == 1 else f"{lab}#{counts[lab]}", w))
    pairs = []
    for lab, w in items:
        g = base.evaluate(w)
        if g == group.identity:
            raise GenSetError(f"word {w!r} evaluates to the identity")
        pairs.append((lab, g))
    return symmetric_closure(group, pairs, check_radius=check_radius)


# ---------------------------------------------------------------------------
# the polynomial-growth generating set
# ---------------------------------------------------------------------------


def _element_label(G: VirtuallyAbelianGroup, g) -> str | None:
    for lab, h in G.names.items():
        if h == g:
            return lab
        if G.inv(h) == g and not _order_le_2(G, h):
            return inverse_label(lab)
    return None


def main_theorem_genset(
    G: VirtuallyAbelianGroup,
    x,
    N: int,
    S0: Sequence,
    *,
    dominant_label: str = "y",
) -> GenSet:
    """``X = S ∪ {x^N, x^-N} ∪ R ∪ R^-1`` for ``x`` with finite-index abelian normal closure.

    ``R`` are the coset representatives ``(0, f)``, ``f`` non-trivial.  ``S``
    is the closure of ``S0`` together with the correction set
    ``D = {p q r^-1 : π(r) = π(p)π(q)}`` under inversion and conjugation by
    ``R ∪ R^-1``.  Letters for ``x^{±N}`` are tagged as dominant.
    """
    if N < 1:
        raise GenSetError("N must be a positive integer")
    closure = normal_closure_index(G, x)
    if closure is None:
        raise GenSetError("normal closure of x has infinite index")
    F = G.finite
    e = F.identity
    reps = [G.element((), f) for f in range(F.order)]  # identity coset included for D
    reps_pm = {r for r in reps} | {G.inv(r) for r in reps}
    D = []
    for p, q, r in itertools.product(sorted(reps_pm), repeat=3):
        if r.f == F.mult[p.f][q.f]:
            d = G.mul(G.mul(p, q), G.inv(r))
            if d != G.identity and d not in D:
                D.append(d)
    conj = [r for r in sorted(reps_pm) if r != G.identity]
    S: list = []
    todo = [G.element(s.v, s.f) for s in S0] + D
    for s in todo:
        if s.f != e:
            raise GenSetError(f"seed element {G.format(s)} is not in the lattice subgroup")
    while todo:
        s = todo.pop(0)
        if s in S or s == G.identity:
            continue
        S.append(s)
        todo.append(G.inv(s))
        for q in conj:
            todo.append(G.mul(G.mul(q, s), G.inv(q)))
    if lattice_index([s.v for s in S], G.rank) != 1:
        raise GenSetError("S does not generate the lattice subgroup")

    letters: list[Letter] = []
    labels: dict = {}
    counter = itertools.count(1)
    for s in S:
        if s in labels:
            continue
        lab = _element_label(G, s)
        if lab is None or lab in labels.values():
            lab = f"s{next(counter)}"
        si = G.inv(s)
        labels[s] = lab
        labels[si] = inverse_label(lab)
        letters.append(Letter(lab, s, inverse_label(lab)))
        letters.append(Letter(inverse_label(lab), si, lab))

    y = G.identity
    for _ in range(N):
        y = G.mul(y, x)
    ylab = dominant_label
    letters.append(Letter(ylab, y, inverse_label(ylab)))
    letters.append(Letter(inverse_label(ylab), G.inv(y), ylab))

    for f in range(F.order):
        if f == e:
            continue
        r = G.element((), f)
        lab = F.names[f]
        if lab in [x.label for x in letters]:
            continue
        if _order_le_2(G, r):
            letters.append(Letter(lab, r, lab))
        else:
            fi = F.inv[f]
            ilab = F.names[fi] if F.names[fi] != lab else inverse_label(lab)
            letters.append(Letter(lab, r, ilab))
            letters.append(Letter(ilab, G.inv(r), lab))
    X = GenSet(G, tuple(letters), (ylab, inverse_label(ylab)), f"main-theorem(N={N})")
    X.check_generates()
    return X


def short_subset(X: GenSet) -> tuple[str, ...]:
    """Labels of the lattice letters ``S`` in a :func:`main_theorem_genset` output."""
    G = X.group
    return tuple(x.label for x in X if x.label not in X.dominant and G.finite_part(x.element) == G.finite.identity)


# ---------------------------------------------------------------------------
# short set for index-two lattice extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShortElement:
    element: object
    spelling: tuple[str, str]


def g2_short_set(G: VirtuallyAbelianGroup, X: GenSet) -> list[ShortElement]:
    """``{z^2 : z ∈ Z} ∪ {y y' : y, y' ∈ Y}`` with a two-letter spelling for each.

    ``Y`` are the letters outside the lattice subgroup ``H``, ``Z`` those
    inside.  Identity products are dropped and repeated elements keep their
    first spelling.
    """
    if G.finite.order != 2:
        raise GenSetError("lattice subgroup must have index 2")
    e = G.finite.identity
    Y = [x for x in X if x.element.f != e]
    Z = [x for x in X if x.element.f == e]
    if not Y:
        raise GenSetError("no letters outside the lattice subgroup")
    out: list[ShortElement] = []
    seen = set()
    cands = [(G.mul(z.element, z.element), (z.label, z.label)) for z in Z]
    cands += [(G.mul(y.element, w.element), (y.label, w.label)) for y in Y for w in Y]
    for g, spelling in cands:
        if g == G.identity or g in seen:
            continue
        seen.add(g)
        out.append(ShortElement(g, spelling))
    if not out:
        raise GenSetError("short set is empty")
    return out


__all__ = [
    "GenSet",
    "GenSetError",
    "Letter",
    "ShortElement",
    "double",
    "from_named",
    "from_words",
    "g2_short_set",
    "inverse_label",
    "main_theorem_genset",
    "parse_word",
    "short_subset",
    "symmetric_closure",
]
