"""Finite posets stored as reflexive-transitive bit matrices.

Elements are the integers ``0..n-1``. Row ``i`` of the relation is a Python
int whose bit ``j`` is set iff ``i <= j``; the transposed rows are kept too so
both up-sets and down-sets are a single lookup.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AxiomError, CycleError, SizeError


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    if mask.bit_length() <= 256:
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low
        return
    # wide masks: one linear scan instead of a big-int op per bit
    s = bin(mask)[:1:-1]
    i = s.find("1")
    while i >= 0:
        yield i
        i = s.find("1", i + 1)


def _transpose(rows, n):
    cols = [0] * n
    for i, row in enumerate(rows):
        for j in bits(row):
            cols[j] |= 1 << i
    return tuple(cols)


@dataclass(frozen=True)
class FinitePoset:
    n: int
    up: tuple
    down: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.down is None:
            object.__setattr__(self, "down", _transpose(self.up, self.n))

    def __len__(self):
        return self.n

    def leq(self, i, j):
        return bool(self.up[i] >> j & 1)

    def lt(self, i, j):
        return i != j and bool(self.up[i] >> j & 1)

    def comparable(self, i, j):
        return bool((self.up[i] | self.down[i]) >> j & 1)

    def matrix(self):
        """The relation as a list of lists of bools."""
        return [[bool(self.up[i] >> j & 1) for j in range(self.n)] for i in range(self.n)]

    def strict_up(self, i):
        return self.up[i] & ~(1 << i)

    def strict_down(self, i):
        return self.down[i] & ~(1 << i)

    def minimal(self):
        return [i for i in range(self.n) if self.strict_down(i) == 0]

    def maximal(self):
        return [i for i in range(self.n) if self.strict_up(i) == 0]

    def covers(self):
        return cover_relation(self)

    def __repr__(self):
        return "FinitePoset(n=%d, covers=%s)" % (self.n, cover_relation(self))


EMPTY = FinitePoset(0, ())


def _from_rows(rows):
    return FinitePoset(len(rows), tuple(rows))


def validate(leq: Sequence[Sequence]) -> FinitePoset:
    """Check the order axioms on a boolean matrix and wrap it as a poset."""
    rows = [list(r) for r in leq]
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise AxiomError("square", (i,))
    up = []
    for i in range(n):
        mask = 0
        for j in range(n):
            if rows[i][j]:
                mask |= 1 << j
        up.append(mask)
    for i in range(n):
        if not up[i] >> i & 1:
            raise AxiomError("reflexivity", (i,))
    for i in range(n):
        for j in bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise AxiomError("antisymmetry", (min(i, j), max(i, j)))
    for i in range(n):
        for j in bits(up[i]):
            missing = up[j] & ~up[i]
            if missing:
                k = next(bits(missing))
                raise AxiomError("transitivity", (i, j, k))
    return _from_rows(up)


def linear_extension(P: FinitePoset) -> list:
    """Smallest-index-first topological order of P."""
    indeg = [bin(P.strict_down(i)).count("1") for i in range(P.n)]
    heap = [i for i in range(P.n) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        i = heapq.heappop(heap)
        order.append(i)
        for j in bits(P.strict_up(i)):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    return order


def from_covers(n: int, covers: Iterable) -> FinitePoset:
    """Reflexive-transitive closure of a cover (or any acyclic) edge list."""
    if n < 0:
        raise SizeError("element count must be non-negative")
    succ = [0] * n
    for i, j in covers:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError("cover (%d, %d) out of range for n=%d" % (i, j, n))
        if i == j:
            raise CycleError((i, i))
        succ[i] |= 1 << j

    # Kahn's algorithm, then close in reverse topological order.
    indeg = [0] * n
    for i in range(n):
        for j in bits(succ[i]):
            indeg[j] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    order = []
    while stack:
        i = stack.pop()
        order.append(i)
        for j in bits(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    if len(order) < n:
        raise CycleError(_find_cycle(succ, [i for i in range(n) if indeg[i] > 0]))
    up = [0] * n
    for i in reversed(order):
        mask = 1 << i
        for j in bits(succ[i]):
            mask |= up[j]
        up[i] = mask
    return _from_rows(up)


def _find_cycle(succ, residual):
    # Every node left over by Kahn's algorithm has a leftover predecessor,
    # so walking predecessors must revisit a node.
    alive = 0
    for i in residual:
        alive |= 1 << i
    pred = [0] * len(succ)
    for i in residual:
        for j in bits(succ[i] & alive):
            pred[j] |= 1 << i
    seen = {}
    path = []
    node = residual[0]
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        node = next(bits(pred[node]))
    cycle = path[seen[node]:]
    cycle.reverse()
    return cycle + [cycle[0]]


def cover_relation(P: FinitePoset) -> list:
    """Hasse diagram edges ``(i, j)`` with j covering i, sorted."""
    out = []
    for i in range(P.n):
        above = P.strict_up(i)
        hidden = 0
        for k in bits(above):
            hidden |= P.strict_up(k)
        for j in bits(above & ~hidden):
            out.append((i, j))
    return out


@dataclass(frozen=True)
class ComponentPartition:
    labels: tuple
    count: int

    def blocks(self):
        out = [[] for _ in range(self.count)]
        for i, c in enumerate(self.labels):
            out[c].append(i)
        return out


def connected_components(P: FinitePoset) -> ComponentPartition:
    """Zigzag components; ids are assigned in order of smallest member."""
    labels = [-1] * P.n
    count = 0
    for s in range(P.n):
        if labels[s] >= 0:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            reach = 0
            for i in bits(frontier):
                reach |= P.up[i] | P.down[i]
            frontier = reach & ~comp
            comp |= reach
        for i in bits(comp):
            labels[i] = count
        count += 1
    return ComponentPartition(tuple(labels), count)


def is_connected(P: FinitePoset) -> bool:
    return P.n >= 1 and connected_components(P).count == 1


def induced(P: FinitePoset, elements: Sequence[int]) -> FinitePoset:
    """Subposet on ``elements``; new index k stands for ``elements[k]``."""
    if len(elements) == P.n and list(elements) == list(range(P.n)):
        return P
    pos = {e: k for k, e in enumerate(elements)}
    rows = []
    for e in elements:
        mask = 0
        for j in bits(P.up[e]):
            k = pos.get(j)
            if k is not None:
                mask |= 1 << k
        rows.append(mask)
    return _from_rows(rows)


def relabel(P: FinitePoset, perm: Sequence[int]) -> FinitePoset:
    """Copy of P in which old element ``i`` is renamed ``perm[i]``."""
    n = P.n
    rows = [0] * n
    for i in range(n):
        mask = 0
        for j in bits(P.up[i]):
            mask |= 1 << perm[j]
        rows[perm[i]] = mask
    return _from_rows(rows)


def shuffle(P: FinitePoset, rng=None):
    """Randomly relabel P. Returns ``(Q, perm)`` with ``Q = relabel(P, perm)``."""
    rng = rng if rng is not None else random.Random(0)
    perm = list(range(P.n))
    rng.shuffle(perm)
    return relabel(P, perm), perm


def disjoint_sum(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    """P's elements keep their indices; Q's are shifted up by ``P.n``."""
    shift = P.n
    return _from_rows(list(P.up) + [r << shift for r in Q.up])


def dual(P: FinitePoset) -> FinitePoset:
    return FinitePoset(P.n, P.down, P.up)


# Standard posets --------------------------------------------------------

def chain(n):
    """0 < 1 < ... < n-1."""
    if n < 0:
        raise SizeError("chain size must be >= 0")
    return from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n):
    if n < 0:
        raise SizeError("antichain size must be >= 0")
    return from_covers(n, [])


def singleton():
    return from_covers(1, [])


def crown(n):
    """Crown on ``n = 2k`` elements, k >= 2.

    Minimal elements are ``0..k-1``, maximal ``k..2k-1``; minimal ``i`` lies
    below ``k+i`` and ``k+(i+1) % k``. ``crown(4)`` has covers
    (0,2), (0,3), (1,2), (1,3).
    """
    if n < 4 or n % 2:
        raise SizeError("crown needs an even size >= 4, got %r" % (n,))
    k = n // 2
    covers = set()
    for i in range(k):
        covers.add((i, k + i))
        covers.add((i, k + (i + 1) % k))
    return from_covers(n, sorted(covers))


def fence(n):
    """Zigzag 0 < 1 > 2 < 3 > ...: even indices minimal, odd maximal."""
    if n < 1:
        raise SizeError("fence size must be >= 1")
    covers = []
    for i in range(0, n, 2):
        if i + 1 < n:
            covers.append((i, i + 1))
        if i >= 1:
            covers.append((i, i - 1))
    return from_covers(n, covers)


_STANDARD = {
    "chain": chain,
    "antichain": antichain,
    "crown": crown,
    "fence": fence,
}


def standard(kind: str, n: int | None = None) -> FinitePoset:
    """Build a named poset: chain/antichain/crown/fence of size n, or singleton."""
    if kind == "singleton":
        if n not in (None, 1):
            raise SizeError("singleton takes no size")
        return singleton()
    try:
        make = _STANDARD[kind]
    except KeyError:
        raise SizeError("unknown poset kind %r" % (kind,)) from None
    if n is None:
        raise SizeError("%s needs a size" % kind)
    return make(int(n))
