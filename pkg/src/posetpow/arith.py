"""Products, sums and exponents of finite posets.

An exponent ``E^X`` is the poset of order-preserving maps X -> E under the
pointwise order. Maps are stored as tables: ``table[x]`` is the image of x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .canon import certificate, is_order_isomorphism
from .config import resolve_guard
from .core import (
    FinitePoset, bits, connected_components, disjoint_sum, induced,
    is_connected, linear_extension,
)
from .errors import CapError, EmptyExponentError, PreconditionError


# Products -----------------------------------------------------------------

def encode_pair(Q: FinitePoset, p: int, q: int) -> int:
    """Flat index of ``(p, q)`` in ``product(P, Q)``."""
    return p * Q.n + q


def decode_pair(Q: FinitePoset, k: int) -> tuple:
    return divmod(k, Q.n)


def product(P: FinitePoset, Q: FinitePoset, guard=None) -> FinitePoset:
    """Componentwise order on pairs; pair ``(p, q)`` has index ``p*|Q| + q``."""
    guard = resolve_guard(guard)
    m = Q.n
    if P.n * m > guard:
        raise CapError("product size %d exceeds guard %d" % (P.n * m, guard))
    ups, downs = [], []
    for p in range(P.n):
        for q in range(m):
            hi = lo = 0
            for p2 in bits(P.up[p]):
                hi |= Q.up[q] << (p2 * m)
            for p2 in bits(P.down[p]):
                lo |= Q.down[q] << (p2 * m)
            ups.append(hi)
            downs.append(lo)
    return FinitePoset(P.n * m, tuple(ups), tuple(downs))


# Monotone maps ------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneMap:
    dom: FinitePoset
    cod: FinitePoset
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.dom.n:
            raise ValueError("table length %d != |dom| %d" % (len(self.table), self.dom.n))
        if not is_monotone(self.dom, self.cod, self.table):
            raise ValueError("map %s is not order-preserving" % (self.table,))

    def __call__(self, x):
        return self.table[x]


def is_monotone(X: FinitePoset, E: FinitePoset, table) -> bool:
    for x in range(X.n):
        above = E.up[table[x]]
        for y in bits(X.strict_up(x)):
            if not above >> table[y] & 1:
                return False
    return True


def iter_monotone_maps(E: FinitePoset, X: FinitePoset, guard=None, fixed=None, allowed=None):
    """Yield monotone tables X -> E.

    Values are chosen along a fixed linear extension of X, smallest first, so
    the output is lexicographic in that order. The candidates for x are the
    common upper bounds of the images of its already-assigned predecessors
    (and lower bounds of assigned successors, when ``fixed`` pre-assigns some
    points). ``allowed`` optionally restricts every image to a bitmask.
    """
    guard = resolve_guard(guard)
    order = linear_extension(X)
    fixed = dict(fixed or {})
    full = (1 << E.n) - 1 if allowed is None else allowed
    table = [None] * X.n
    for x, v in fixed.items():
        table[x] = v
    free = [x for x in order if x not in fixed]
    count = 0

    def candidates(x):
        mask = full
        for p in bits(X.strict_down(x)):
            v = table[p]
            if v is not None:
                mask &= E.up[v]
        if fixed:
            for s in bits(X.strict_up(x)):
                v = table[s]
                if v is not None:
                    mask &= E.down[v]
        return mask

    if fixed and not _fixed_ok(X, E, fixed):
        return

    def rec(k):
        nonlocal count
        if k == len(free):
            count += 1
            if count > guard:
                raise CapError("more than %d monotone maps" % guard)
            yield tuple(table)
            return
        x = free[k]
        for v in bits(candidates(x)):
            table[x] = v
            yield from rec(k + 1)
        table[x] = None

    yield from rec(0)


def _fixed_ok(X, E, fixed):
    for x, v in fixed.items():
        for y in bits(X.strict_up(x)):
            if y in fixed and not E.leq(v, fixed[y]):
                return False
    return True


# Exponents ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExponentPoset:
    poset: FinitePoset
    maps: tuple
    base: FinitePoset
    exponent: FinitePoset
    index: dict = field(repr=False, default=None)

    def __post_init__(self):
        if self.index is None:
            object.__setattr__(self, "index", {t: k for k, t in enumerate(self.maps)})

    def __len__(self):
        return self.poset.n

    def map(self, k) -> MonotoneMap:
        return MonotoneMap(self.exponent, self.base, self.maps[k])


def pointwise_order(E: FinitePoset, X: FinitePoset, maps) -> FinitePoset:
    """Order the given tables pointwise, via per-coordinate bitmasks."""
    nm = len(maps)
    full = (1 << nm) - 1
    ups = [full] * nm
    downs = [full] * nm
    for x in range(X.n):
        # at[e]: maps g with g(x) == e
        at = [0] * E.n
        for k, t in enumerate(maps):
            at[t[x]] |= 1 << k
        geq, leq = [], []
        for e in range(E.n):
            hi = lo = 0
            for e2 in bits(E.up[e]):
                hi |= at[e2]
            for e2 in bits(E.down[e]):
                lo |= at[e2]
            geq.append(hi)
            leq.append(lo)
        ups = [r & geq[t[x]] for r, t in zip(ups, maps)]
        downs = [r & leq[t[x]] for r, t in zip(downs, maps)]
    return FinitePoset(nm, tuple(ups), tuple(downs))


def exponent(E: FinitePoset, X: FinitePoset, guard=None) -> ExponentPoset:
    """All order-preserving maps X -> E, ordered pointwise.

    Raises CapError if ``|E|**|X|`` exceeds the guard. With X empty the
    result is a singleton (the empty map); with E empty and X non-empty it is
    the empty poset.
    """
    guard = resolve_guard(guard)
    estimate = E.n ** X.n
    if estimate > guard:
        raise CapError("|E|^|X| = %d^%d exceeds guard %d" % (E.n, X.n, guard))
    maps = tuple(iter_monotone_maps(E, X, guard))
    return ExponentPoset(pointwise_order(E, X, maps), maps, E, X)


def verify_exponent(EX: ExponentPoset) -> bool:
    """Re-check an exponent: maps monotone, distinct and complete, and the
    order exactly pointwise (plain double loop, no bitset tricks)."""
    E, X, P = EX.base, EX.exponent, EX.poset
    maps = EX.maps
    if P.n != len(maps) or len(set(maps)) != len(maps):
        return False
    if not all(len(t) == X.n and is_monotone(X, E, t) for t in maps):
        return False
    if set(maps) != set(iter_monotone_maps(E, X)):
        return False
    for a, f in enumerate(maps):
        for b, g in enumerate(maps):
            if P.leq(a, b) != all(E.leq(f[x], g[x]) for x in range(X.n)):
                return False
    return True


def diagonal_D(EX: ExponentPoset) -> list:
    """Indices of maps that are constant on every connected component of X."""
    labels = connected_components(EX.exponent).labels
    out = []
    for k, t in enumerate(EX.maps):
        first = {}
        if all(first.setdefault(c, v) == v for c, v in zip(labels, t)):
            out.append(k)
    return out


def component_C(EX: ExponentPoset):
    """Union of the components of E^X that meet D(E^X).

    Returns ``(subposet, indices)``; subposet element k is map ``indices[k]``.
    """
    if EX.exponent.n == 0:
        raise EmptyExponentError("C(E^X) needs a non-empty exponent X")
    labels = connected_components(EX.poset).labels
    hit = {labels[k] for k in diagonal_D(EX)}
    indices = [k for k in range(EX.poset.n) if labels[k] in hit]
    return induced(EX.poset, indices), indices


def constant_embed(EX: ExponentPoset, e: int) -> int:
    """Index of the constant map with value e."""
    if EX.exponent.n == 0:
        raise EmptyExponentError("constant maps need a non-empty exponent X")
    return EX.index[(e,) * EX.exponent.n]


# Currying -----------------------------------------------------------------

@dataclass
class Bijection:
    """An explicit map between two posets plus whether it checked out."""
    source: FinitePoset
    target: FinitePoset
    table: Optional[tuple]
    verified: bool


def curry_iso(E, X, Y, guard=None):
    """The map (E^X)^Y -> E^(X x Y), g -> ((x, y) -> g(y)(x)).

    Returns ``(bijection, outer, flat)`` where ``outer`` is (E^X)^Y and
    ``flat`` is E^(X x Y).
    """
    EX = exponent(E, X, guard)
    outer = exponent(EX.poset, Y, guard)
    XY = product(X, Y, guard)
    flat = exponent(E, XY, guard)
    ny = Y.n
    table = []
    ok = True
    for g in outer.maps:
        hat = tuple(EX.maps[g[y]][x] for x in range(X.n) for y in range(ny))
        k = flat.index.get(hat)
        if k is None:
            ok = False
            break
        table.append(k)
    table = tuple(table) if ok else None
    ok = ok and is_order_isomorphism(outer.poset, flat.poset, table)
    return Bijection(outer.poset, flat.poset, table, ok), outer, flat


def transport_exponent(E, flat_src: ExponentPoset, flat_dst: ExponentPoset, phi):
    """Precomposition E^X -> E^X' along an isomorphism ``phi``: X' -> X.

    ``f`` goes to ``f o phi``.
    """
    out = []
    for t in flat_src.maps:
        k = flat_dst.index.get(tuple(t[phi[x2]] for x2 in range(len(phi))))
        if k is None:
            return None
        out.append(k)
    return tuple(out)


# Distributivity -----------------------------------------------------------

@dataclass
class DistributivityVerdict:
    ok: bool
    lhs_size: int
    rhs_size: int
    iso: Optional[tuple]  # index in U^A + S^A -> index in (U+S)^A


def distributivity_check(U, S, A, guard=None, require_connected=True):
    """Check (U + S)^A = U^A + S^A with the canonical map.

    A map from a connected A into U + S lands in one summand, so the
    canonical map sends f in U^A to its inclusion and g in S^A to its shift.
    """
    if require_connected and not is_connected(A):
        raise PreconditionError("exponent must be connected and non-empty")
    lhs = exponent(disjoint_sum(U, S), A, guard)
    UA = exponent(U, A, guard)
    SA = exponent(S, A, guard)
    rhs = disjoint_sum(UA.poset, SA.poset)
    table = []
    for t in UA.maps:
        table.append(lhs.index[t])
    for t in SA.maps:
        table.append(lhs.index[tuple(v + U.n for v in t)])
    table = tuple(table)
    ok = is_order_isomorphism(rhs, lhs.poset, table)
    return DistributivityVerdict(ok, lhs.poset.n, rhs.n, table if ok else None)


def isomorphic_by_certificate(P, Q) -> bool:
    return P.n == Q.n and certificate(P) == certificate(Q)
