"""Empirical geodesic automata from lookahead cone types.

Whether ``w u`` is geodesic, for a geodesic word ``w``, depends only on the
endpoint ``g`` of ``w``: every prefix of ``g·u`` must sit one sphere further
out.  The *k-signature* of ``g`` is the trie of such extensions ``u`` of
length at most ``k``.  Signatures become states; a letter moves between the
signatures of ``g`` and ``g·x``.  The result is checked for consistency on
the training ball and then validated by exact path counting against a
census; nothing here is a proof of regularity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import GeodesicCensus


class InconsistentAtK(Exception):
    """Signatures of lookahead ``k`` do not determine the successors."""

    def __init__(self, k: int, reason: str, witness=None):
        super().__init__(f"inconsistent at k={k}: {reason}")
        self.k = k
        self.reason = reason
        self.witness = witness


@dataclass
class ConeDFA:
    labels: tuple[str, ...]
    transitions: list[dict[int, int]]  # state -> {letter index: successor}
    start: int
    k: int
    n_train: int
    representatives: list = field(default_factory=list, repr=False)

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def per_length_counts(self, n: int) -> list[int]:
        vec = [0] * self.n_states
        vec[self.start] = 1
        out = [1]
        for _ in range(n):
            nxt = [0] * self.n_states
            for s, c in enumerate(vec):
                if c:
                    for t in self.transitions[s].values():
                        nxt[t] += c
            vec = nxt
            out.append(sum(vec))
        return out

    def counts(self, n: int) -> list[int]:
        """Accepted words of length at most ``l``, for ``l = 0..n``."""
        out, s = [], 0
        for c in self.per_length_counts(n):
            s += c
            out.append(s)
        return out

    def accepts(self, word) -> bool:
        state = self.start
        for lab in word:
            state = self.transitions[state].get(self.labels.index(lab))
            if state is None:
                return False
        return True

    def to_text(self) -> str:
        lines = [f"# states {self.n_states} start {self.start} k {self.k} n_train {self.n_train}"]
        for s, row in enumerate(self.transitions):
            for i in sorted(row):
                lines.append(f"{s} {self.labels[i]} {row[i]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, labels) -> ConeDFA:
        header, *body = [ln for ln in text.splitlines() if ln.strip()]
        parts = header.lstrip("# ").split()
        meta = dict(zip(parts[::2], parts[1::2]))
        n = int(meta["states"])
        trans: list[dict[int, int]] = [{} for _ in range(n)]
        labels = tuple(labels)
        for ln in body:
            s, lab, t = ln.split()
            trans[int(s)][labels.index(lab)] = int(t)
        return cls(labels, trans, int(meta["start"]), int(meta["k"]), int(meta["n_train"]))


def dfa_count(dfa: ConeDFA, n: int) -> int:
    return dfa.counts(n)[-1]


def _geodesic_successors(census: GeodesicCensus, depth: int) -> dict:
    G = census.group
    step = G.right_multiplier(census.genset.elements)
    dist = census.dist
    succ = {}
    for d in range(min(depth, census.n_max - 1) + 1):
        for g in census.spheres[d]:
            succ[g] = tuple((i, h) for i, h in enumerate(step(g)) if dist.get(h) == d + 1)
    return succ


def infer_geodesic_dfa(census: GeodesicCensus, k: int, n_train: int | None = None) -> ConeDFA:
    """Merge elements of the training ball by k-signature.

    Raises :class:`InconsistentAtK` when two elements share a signature but a
    common letter leads to different signatures, or when some signature
    only occurs on the outermost trained sphere (so its successors are
    unknown).
    """
    n_train = census.n_max if n_train is None else n_train
    if k < 1:
        raise ValueError("lookahead must be at least 1")
    if not k + 1 < n_train <= census.n_max:
        raise ValueError(f"need k + 1 < n_train <= census radius ({census.n_max})")
    depth = n_train - k  # deepest sphere whose signature is fully inside the ball
    succ = _geodesic_successors(census, n_train - 1)

    memo: dict = {}
    intern: dict = {(): 0}

    def sig(g, j):
        # tries are interned bottom-up, so equal ids mean equal extension sets
        key = (g, j)
        s = memo.get(key)
        if s is None:
            if j == 0:
                s = 0
            else:
                t = tuple((i, sig(h, j - 1)) for i, h in succ[g])
                s = intern.setdefault(t, len(intern))
            memo[key] = s
        return s

    state_of_sig: dict = {}
    reps: list = []
    state = {}
    for d in range(depth + 1):
        for g in census.spheres[d]:
            s = sig(g, k)
            if s not in state_of_sig:
                state_of_sig[s] = len(reps)
                reps.append(g)
            state[g] = state_of_sig[s]

    transitions: list[dict[int, int]] = [{} for _ in reps]
    known = [False] * len(reps)
    source_of: dict = {}
    for d in range(depth):
        for g in census.spheres[d]:
            s = state[g]
            known[s] = True
            row = transitions[s]
            for i, h in succ[g]:
                t = state[h]
                prev = row.get(i)
                if prev is None:
                    row[i] = t
                    source_of[(s, i)] = g
                elif prev != t:
                    raise InconsistentAtK(k, f"state {s} on letter {census.genset.labels[i]!r}",
                                          (source_of[(s, i)], g))
    missing = [s for s, ok in enumerate(known) if not ok]
    if missing:
        raise InconsistentAtK(k, f"states {missing} only seen on the outermost trained sphere")
    return ConeDFA(census.genset.labels, transitions, state[census.group.identity], k, n_train, reps)


def infer_with_escalation(census: GeodesicCensus, n_train: int, k_max: int = 5, k_min: int = 1):
    """Try ``k = k_min..k_max`` and return the first consistent automaton."""
    last = None
    for k in range(k_min, k_max + 1):
        if k + 1 >= n_train:
            break
        try:
            return infer_geodesic_dfa(census, k, n_train)
        except InconsistentAtK as exc:
            last = exc
    if last is None:
        raise ValueError("no admissible lookahead for this training radius")
    raise last


@dataclass
class ValidationReport:
    dfa_counts: list[int]
    census_counts: list[int]
    first_mismatch: int | None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None


def validate(dfa: ConeDFA, census: GeodesicCensus) -> ValidationReport:
    got = dfa.counts(census.n_max)
    want = census.cumulative_Gamma
    bad = next((l for l, (a, b) in enumerate(zip(got, want)) if a != b), None)
    return ValidationReport(got, want, bad)
