"""Frame documents (JSON) and DOT output.

A document looks like::

    {"alphabet": ["1", "2"], "name": "rect(2,2)",
     "relations": {"1": [[0, 0], [0, 2], ...], "2": [...]},
     "valuations": {"p0": [3]}, "worlds": 4}

``worlds`` is a count when the worlds carry their default names ``0..n-1``
and a list of names otherwise; pairs and valuations then use the names.
Loading accepts either names or indices. Keys and pairs are sorted so equal
frames serialise to identical bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FrameError
from .frame import Frame, Relation


@dataclass
class FrameDocument:
    frame: Frame
    name: str = ""
    valuations: dict = field(default_factory=dict)  # variable index -> frozenset of worlds


def _world_ref(F: Frame, x: int):
    return x if F.has_default_names else F.names[x]


def to_dict(doc: FrameDocument) -> dict:
    F = doc.frame
    out = {
        "name": doc.name,
        "alphabet": list(F.alphabet),
        "worlds": F.n if F.has_default_names else list(F.names),
        "relations": {a: [[_world_ref(F, x), _world_ref(F, y)] for x, y in F[a].edges]
                      for a in F.alphabet},
    }
    if doc.valuations:
        out["valuations"] = {f"p{k}": [_world_ref(F, x) for x in sorted(v)]
                             for k, v in sorted(doc.valuations.items())}
    return out


_ATOM = r'(?:"(?:[^"\\]|\\.)*"|-?\d+)'
_FLAT_LIST = re.compile(r"\[\s*" + _ATOM + r"(?:,\s*" + _ATOM + r")*\s*\]")
_ITEM = re.compile(_ATOM)


def _one_line(m):
    return "[" + ", ".join(_ITEM.findall(m.group())) + "]"


def dumps(doc: FrameDocument | Frame) -> str:
    """Sorted-key JSON; lists of plain values (pairs, names) sit on one line."""
    if isinstance(doc, Frame):
        doc = FrameDocument(doc)
    text = json.dumps(to_dict(doc), sort_keys=True, indent=1)
    return _FLAT_LIST.sub(_one_line, text) + "\n"


def _resolve(names_index, n, ref):
    if isinstance(ref, bool):
        raise FrameError(f"bad world reference {ref!r}")
    if isinstance(ref, int):
        if not 0 <= ref < n:
            raise FrameError(f"world {ref} outside 0..{n - 1}")
        return ref
    if isinstance(ref, str):
        if ref in names_index:
            return names_index[ref]
        raise FrameError(f"unknown world {ref!r}")
    raise FrameError(f"bad world reference {ref!r}")


def from_dict(data: dict) -> FrameDocument:
    try:
        alphabet = [str(a) for a in data["alphabet"]]
        worlds = data["worlds"]
        relations = data["relations"]
    except KeyError as e:
        raise FrameError(f"frame document lacks the {e.args[0]!r} field") from None
    if isinstance(worlds, int):
        n, names = worlds, None
    else:
        names = [str(w) for w in worlds]
        n = len(names)
    if n < 1:
        raise FrameError("frames must have at least one world")
    index = {nm: i for i, nm in enumerate(names or [str(i) for i in range(n)])}
    extra = set(relations) - set(alphabet)
    if extra:
        raise FrameError(f"relations for labels outside the alphabet: {sorted(extra)}")
    rels = {}
    for a in alphabet:
        pairs = relations.get(a, [])
        rels[a] = Relation(n, [(_resolve(index, n, x), _resolve(index, n, y)) for x, y in pairs])
    F = Frame(n, rels, alphabet=alphabet, names=names)
    vals = {}
    for key, ws in (data.get("valuations") or {}).items():
        if not (key.startswith("p") and key[1:].isdigit()):
            raise FrameError(f"bad variable name {key!r}")
        vals[int(key[1:])] = frozenset(_resolve(index, n, w) for w in ws)
    return FrameDocument(F, str(data.get("name", "")), vals)


def loads(text: str) -> FrameDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FrameError(f"not a frame document: {e}") from None
    return from_dict(data)


def save(doc: FrameDocument | Frame, path) -> None:
    Path(path).write_text(dumps(doc))


def load(path) -> FrameDocument:
    return loads(Path(path).read_text())


_STYLES = ("solid", "dashed", "dotted", "bold")
_COLORS = ("black", "blue", "red", "darkgreen", "purple", "orange")


def to_dot(F: Frame, name: str = "frame") -> str:
    """DOT digraph; each modality gets its own colour and line style."""
    lines = [f"digraph {json.dumps(name)} {{"]
    for i, lab in enumerate(F.alphabet):
        lines.append(f"  // modality {lab}: {_COLORS[i % len(_COLORS)]}, {_STYLES[i % len(_STYLES)]}")
    for x in range(F.n):
        lines.append(f"  {x} [label={json.dumps(F.names[x])}];")
    for i, lab in enumerate(F.alphabet):
        color, style = _COLORS[i % len(_COLORS)], _STYLES[i % len(_STYLES)]
        for a, b in F[lab].edges:
            lines.append(f"  {a} -> {b} [label={json.dumps(lab)}, color={color}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
