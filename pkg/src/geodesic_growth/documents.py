"""JSON group-definition and generating-set documents.

A group document either selects a built-in group::

    {"builtin": "G1", "gensets": {"aat": ["a", "t"]}}

or describes ``Z^rank ⋊ F`` completely::

    {
      "name": "G2",
      "rank": 2,
      "finite": {"elements": ["e", "t"], "mult": [["e", "t"], ["t", "e"]]},
      "action": {"e": [[1, 0], [0, 1]], "t": [[-1, 0], [0, -1]]},
      "elements": {
        "a": {"v": [1, 0], "f": "e"},
        "b": {"v": [0, 1], "f": "e"},
        "t": {"v": [0, 0], "f": "t"}
      },
      "gensets": {
        "abt": ["a", "b", "t"],
        "a-ab-t": {"letters": [
          {"label": "a", "word": "a"},
          {"label": "c", "word": "a b"},
          {"label": "t", "v": [0, 0], "f": "t"}
        ]}
      }
    }

Generating sets listed as plain label lists are symmetrized over the named
elements; ``letters`` entries give each letter either as a word over the
named elements or as an explicit element.
"""

from __future__ import annotations

import json
from pathlib import Path

from .catalog import BUILTIN_GENSETS, builtin_genset
from .gensets import (
    GenSet,
    GenSetError,
    Letter,
    from_named,
    inverse_label,
    symmetric_closure,
)
from .groups import (
    BUILTIN_GROUPS,
    FiniteGroupTable,
    GroupError,
    HeisenbergElement,
    HeisenbergGroup,
    VirtuallyAbelianGroup,
    builtin_group,
)


class DocumentError(ValueError):
    pass


def _line_of(text: str, needle: str) -> int | None:
    quoted = json.dumps(needle)
    for i, line in enumerate(text.splitlines(), 1):
        if quoted in line:
            return i
    return None


def _fail(text: str, key: str, msg: str):
    line = _line_of(text, key)
    where = f"line {line}: " if line else ""
    raise DocumentError(f"{where}{key}: {msg}")


class GroupDocument:
    """A parsed document: the group plus its named generating sets."""

    def __init__(self, group, gensets: dict[str, object], source: str = ""):
        self.group = group
        self._gensets = gensets
        self.source = source

    @property
    def genset_names(self) -> list[str]:
        return sorted(set(self._gensets) | set(BUILTIN_GENSETS.get(self.group.name, {})))

    def genset(self, name: str) -> GenSet:
        if name in self._gensets:
            spec = self._gensets[name]
            try:
                X = _build_genset(self.group, spec)
            except (GenSetError, GroupError) as exc:
                _fail(self.source, name, str(exc))
            return GenSet(X.group, X.letters, X.dominant, name)
        if Path(name).suffix == ".json" and Path(name).exists():
            return load_genset_document(self.group, Path(name).read_text())
        return builtin_genset(self.group, name)


def _finite_index(F: FiniteGroupTable, ref) -> int:
    if isinstance(ref, int):
        if not 0 <= ref < F.order:
            raise GroupError(f"finite index {ref} out of range")
        return ref
    if ref in F.names:
        return F.names.index(ref)
    raise GroupError(f"unknown finite element {ref!r}")


def _explicit_element(G, entry: dict):
    if isinstance(G, HeisenbergGroup):
        v = entry.get("v")
        if not isinstance(v, list) or len(v) != 3:
            raise GroupError("Heisenberg elements need v = [a, b, c]")
        return G.element(*v)
    f = _finite_index(G.finite, entry.get("f", G.finite.identity))
    return G.element(entry.get("v", [0] * G.rank), f)


def _build_genset(G, spec) -> GenSet:
    if isinstance(spec, list):
        return from_named(G, spec)
    if not isinstance(spec, dict) or "letters" not in spec:
        raise GenSetError("generating set must be a label list or an object with 'letters'")
    pairs = []
    for entry in spec["letters"]:
        label = entry.get("label")
        if not label:
            raise GenSetError("every letter needs a label")
        if "word" in entry:
            g = G.identity
            for tok in entry["word"].split():
                name, inv = (tok[:-3], True) if tok.endswith("^-1") else (tok, False)
                if name not in G.names:
                    raise GenSetError(f"unknown named element {name!r} in word {entry['word']!r}")
                h = G.names[name]
                g = G.mul(g, G.inv(h) if inv else h)
        else:
            g = _explicit_element(G, entry)
        pairs.append((label, g))
    return symmetric_closure(G, pairs, dominant=tuple(spec.get("dominant", ())))


def parse_group_document(text: str) -> GroupDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("line 1: document must be a JSON object")
    gensets = doc.get("gensets", {})
    if not isinstance(gensets, dict):
        _fail(text, "gensets", "must be an object")
    if "builtin" in doc:
        name = doc["builtin"]
        if name not in BUILTIN_GROUPS:
            _fail(text, "builtin", f"unknown built-in group {name!r}")
        return GroupDocument(builtin_group(name), gensets, text)

    for key in ("rank", "finite", "action"):
        if key not in doc:
            raise DocumentError(f"missing key {key!r}")
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 0:
        _fail(text, "rank", "must be a non-negative integer")
    fin = doc["finite"]
    names = list(fin.get("elements", []))
    try:
        mult = [[names.index(x) if isinstance(x, str) else x for x in row] for row in fin["mult"]]
        F = FiniteGroupTable(tuple(tuple(r) for r in mult), tuple(names))
    except (ValueError, KeyError, TypeError) as exc:
        _fail(text, "finite", str(exc))
    action = doc["action"]
    if isinstance(action, dict):
        try:
            action = [action[n] for n in F.names]
        except KeyError as exc:
            _fail(text, "action", f"missing matrix for {exc.args[0]!r}")
    try:
        G = VirtuallyAbelianGroup(doc.get("name", "G"), rank, F, action)
    except GroupError as exc:
        _fail(text, "action", str(exc))
    elements = {}
    for label, entry in doc.get("elements", {}).items():
        try:
            elements[label] = _explicit_element(G, entry)
        except (GroupError, AttributeError) as exc:
            _fail(text, label, str(exc))
    G.names.update(elements)
    return GroupDocument(G, gensets, text)


def load_group(ref: str) -> GroupDocument:
    """A built-in name or a path to a JSON group document."""
    if ref in BUILTIN_GROUPS:
        return GroupDocument(builtin_group(ref), {})
    path = Path(ref)
    if not path.exists():
        raise DocumentError(f"{ref!r} is neither a built-in group ({sorted(BUILTIN_GROUPS)}) nor a file")
    return parse_group_document(path.read_text())


def _element_json(G, g) -> dict:
    if isinstance(g, HeisenbergElement):
        return {"v": list(g)}
    return {"v": list(g.v), "f": G.finite.names[g.f]}


def genset_document(X: GenSet) -> str:
    G = X.group
    doc = {
        "group": G.name,
        "name": X.name,
        "letters": [{"label": x.label, **_element_json(G, x.element), "inverse": x.inverse_label} for x in X],
        "dominant": list(X.dominant),
    }
    # one letter per line keeps the document diffable and short
    letters = ",\n".join("    " + json.dumps(x) for x in doc.pop("letters"))
    head = json.dumps(doc, indent=2)[:-2]
    return f'{head},\n  "letters": [\n{letters}\n  ]\n}}\n'


def load_genset_document(G, text: str) -> GenSet:
    """Inverse of :func:`genset_document`; letters are explicit so repetitions survive."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    letters = []
    for entry in doc["letters"]:
        try:
            g = _explicit_element(G, entry)
        except GroupError as exc:
            _fail(text, entry.get("label", "letters"), str(exc))
        letters.append(Letter(entry["label"], g, entry.get("inverse", inverse_label(entry["label"]))))
    try:
        X = GenSet(G, tuple(letters), tuple(doc.get("dominant", ())), doc.get("name", ""))
    except GenSetError as exc:
        raise DocumentError(str(exc)) from None
    return X


__all__ = [
    "DocumentError",
    "GroupDocument",
    "genset_document",
    "load_genset_document",
    "load_group",
    "parse_group_document",
]
