"""Named generating sets for the built-in groups."""

from __future__ import annotations

from .gensets import GenSet, GenSetError, double, from_named, from_words
from .groups import builtin_group


def _words(group, base_labels, words):
    return from_words(group, from_named(group, base_labels), words)


BUILTIN_GENSETS = {
    "Z": {
        "std": lambda G: from_named(G, ["t"]),
        "doubled": lambda G: double(from_named(G, ["t"])),
    },
    "Z2": {
        "std": lambda G: from_named(G, ["a", "b"]),
        "hex": lambda G: _words(G, ["a", "b"], {"a": "a", "b": "b", "c": "ab"}),
        "a-ab": lambda G: _words(G, ["a", "b"], {"a": "a", "c": "ab"}),
    },
    "C2": {"std": lambda G: from_named(G, ["s"])},
    "ZxC2": {
        "ta": lambda G: from_named(G, ["t", "a"]),
        "tc": lambda G: _words(G, ["t", "a"], {"t": "t", "c": "at"}),
    },
    "G1": {
        "at": lambda G: from_named(G, ["a", "t"]),
        "abt": lambda G: from_named(G, ["a", "b", "t"]),
    },
    "G2": {
        "abt": lambda G: from_named(G, ["a", "b", "t"]),
        "a-ab-t": lambda G: _words(G, ["a", "b", "t"], {"a": "a", "c": "ab", "t": "t"}),
    },
    "Dinf": {"ts": lambda G: from_named(G, ["t", "s"])},
    "Heisenberg": {"std": lambda G: from_named(G, ["x", "y"])},
}


def builtin_genset(group, name: str) -> GenSet:
    table = BUILTIN_GENSETS.get(group.name, {})
    if name not in table:
        raise GenSetError(f"no generating set {name!r} for {group.name}; known: {sorted(table)}")
    X = table[name](group)
    return GenSet(X.group, X.letters, X.dominant, name)


def builtin(group_name: str, genset_name: str):
    G = builtin_group(group_name)
    return G, builtin_genset(G, genset_name)
