"""Canonical labeling of finite posets by individualization and refinement.

Colors are refined with the multisets of colors above and below each element
until the partition is stable. Each non-singleton cell is split by
individualizing its members in turn. Among the discrete leaves, the ordering
whose relabeled matrix has the least encoding is canonical. Interchangeable
twins (equal strict up- and down-sets) are tried only once per cell, because
swapping them is an automorphism that fixes everything already chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .core import FinitePoset, bits


@dataclass(frozen=True)
class CanonicalForm:
    certificate: bytes
    # labeling[k] is the original element placed at canonical position k
    labeling: tuple


def _refine(colors, ups, downs):
    """Stabilize a coloring. Color ids are ranks of invariant signatures."""
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[v],
             tuple(sorted(colors[u] for u in ups[v])),
             tuple(sorted(colors[u] for u in downs[v])))
            for v in range(n)
        ]
        rank = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncolors:
            return colors
        ncolors = len(rank)


def _individualize(colors, v):
    # v goes first within its own cell; other cells keep their relative order
    out = [2 * x + 1 for x in colors]
    out[v] -= 1
    return out


def _encode(P, order):
    n = P.n
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    width = (n + 7) // 8
    out = bytearray(n.to_bytes(4, "big"))
    for v in order:
        row = 0
        for j in bits(P.up[v]):
            row |= 1 << (n - 1 - pos[j])
        out += row.to_bytes(width, "big")
    return bytes(out)


def _canonical(P: FinitePoset) -> CanonicalForm:
    n = P.n
    if n == 0:
        return CanonicalForm(_encode(P, []), ())
    ups = [list(bits(P.strict_up(v))) for v in range(n)]
    downs = [list(bits(P.strict_down(v))) for v in range(n)]
    best = [None, None]

    def search(colors):
        colors = _refine(colors, ups, downs)
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            order = sorted(range(n), key=colors.__getitem__)
            code = _encode(P, order)
            if best[0] is None or code < best[0]:
                best[0] = code
                best[1] = tuple(order)
            return
        target = next(cells[c] for c in sorted(cells) if len(cells[c]) > 1)
        tried = set()
        for v in target:
            key = (P.strict_up(v), P.strict_down(v))
            if key in tried:
                continue
            tried.add(key)
            search(_individualize(colors, v))

    search([0] * n)
    return CanonicalForm(best[0], best[1])


@lru_cache(maxsize=4096)
def _canonical_cached(P):
    return _canonical(P)


def canonical_form(P: FinitePoset) -> CanonicalForm:
    return _canonical_cached(P)


def certificate(P: FinitePoset) -> bytes:
    return canonical_form(P).certificate


def is_order_isomorphism(P: FinitePoset, Q: FinitePoset, phi) -> bool:
    """True iff ``phi`` (a sequence, ``phi[i]`` in Q) is a bijection P -> Q
    with ``i <= j`` in P exactly when ``phi[i] <= phi[j]`` in Q."""
    n = P.n
    if Q.n != n or len(phi) != n:
        return False
    if sorted(phi) != list(range(n)):
        return False
    for i in range(n):
        row = 0
        for j in bits(P.up[i]):
            row |= 1 << phi[j]
        if row != Q.up[phi[i]]:
            return False
    return True


def are_isomorphic(P: FinitePoset, Q: FinitePoset) -> Optional[tuple]:
    """An explicit order-isomorphism P -> Q, or None."""
    if P.n != Q.n:
        return None
    cp, cq = canonical_form(P), canonical_form(Q)
    if cp.certificate != cq.certificate:
        return None
    phi = [0] * P.n
    for a, b in zip(cp.labeling, cq.labeling):
        phi[a] = b
    phi = tuple(phi)
    if not is_order_isomorphism(P, Q, phi):
        raise AssertionError("canonical labelings disagree with the order")
    return phi


def invert(phi) -> tuple:
    inv = [0] * len(phi)
    for i, j in enumerate(phi):
        inv[j] = i
    return tuple(inv)


def compose(phi, psi) -> tuple:
    """``psi`` after ``phi``: i -> psi[phi[i]]."""
    return tuple(psi[j] for j in phi)
