"""JSON documents and Graphviz DOT export.

A poset document is ``{"n": 4, "covers": [[0, 2], [0, 3], [1, 2], [1, 3]]}``
where ``[i, j]`` means j covers i; ``"labels"`` is optional.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from .core import FinitePoset, cover_relation, from_covers
from .refinement import RefinementWitness


@dataclass
class PosetDocument:
    n: int
    covers: list
    labels: Optional[list] = None

    def to_poset(self) -> FinitePoset:
        return from_covers(self.n, [tuple(c) for c in self.covers])

    def to_dict(self):
        d = {"n": self.n, "covers": [list(c) for c in self.covers]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or "n" not in d:
            raise ValueError("poset document needs an 'n' field")
        n = d["n"]
        if not isinstance(n, int) or n < 0:
            raise ValueError("'n' must be a non-negative integer")
        covers = d.get("covers", [])
        for c in covers:
            if len(c) != 2:
                raise ValueError("cover %r is not a pair" % (c,))
        labels = d.get("labels")
        if labels is not None and len(labels) != n:
            raise ValueError("expected %d labels, got %d" % (n, len(labels)))
        return cls(n, [tuple(c) for c in covers], labels)

    @classmethod
    def from_poset(cls, P: FinitePoset, labels=None):
        return cls(P.n, cover_relation(P), labels)


def poset_to_dict(P: FinitePoset, labels=None) -> dict:
    return PosetDocument.from_poset(P, labels).to_dict()


def poset_from_dict(d) -> FinitePoset:
    return PosetDocument.from_dict(d).to_poset()


def dumps(P: FinitePoset, labels=None) -> str:
    return json.dumps(poset_to_dict(P, labels))


def loads(text: str) -> FinitePoset:
    return poset_from_dict(json.loads(text))


def load(path) -> FinitePoset:
    with open(path) as fh:
        return poset_from_dict(json.load(fh))


def exponent_to_dict(EX) -> dict:
    d = poset_to_dict(EX.poset)
    d["maps"] = [list(t) for t in EX.maps]
    return d


def witness_to_dict(w) -> dict:
    return {
        "E": poset_to_dict(w.E),
        "X": poset_to_dict(w.X),
        "Y": poset_to_dict(w.Y),
        "Z": poset_to_dict(w.Z),
        "iso_A": list(w.iso_A),
        "iso_B": list(w.iso_B),
        "iso_C": list(w.iso_C),
        "iso_D": list(w.iso_D),
        "widened": w.widened,
    }


def witness_from_dict(d):
    return RefinementWitness(
        poset_from_dict(d["E"]), poset_from_dict(d["X"]),
        poset_from_dict(d["Y"]), poset_from_dict(d["Z"]),
        tuple(d["iso_A"]), tuple(d["iso_B"]), tuple(d["iso_C"]), tuple(d["iso_D"]),
        widened=bool(d.get("widened", False)),
    )


# DOT --------------------------------------------------------------------

def _quote(s):
    return '"%s"' % str(s).replace("\\", "\\\\").replace('"', '\\"')


def to_dot(P: FinitePoset, labels=None, name="hasse") -> str:
    """Hasse diagram; each edge runs from the lower element to the upper."""
    lines = ["digraph %s {" % name, "  rankdir=BT;", "  node [shape=circle];"]
    for i in range(P.n):
        lines.append("  %d [label=%s];" % (i, _quote(labels[i] if labels else i)))
    for i, j in cover_relation(P):
        lines.append("  %d -> %d;" % (i, j))
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r"^\s*(\d+)\s*\[")
_EDGE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*;")


def parse_dot(text: str):
    """Read back ``(n, edges)`` from DOT written by :func:`to_dot`."""
    nodes, edges = set(), []
    for line in text.splitlines():
        m = _EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
            continue
        m = _NODE.match(line)
        if m:
            nodes.add(int(m.group(1)))
    return len(nodes), edges
