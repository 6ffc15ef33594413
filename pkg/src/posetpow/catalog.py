"""Posets up to isomorphism, one representative per class.

Every poset on n elements arises from one on n-1 elements by adjoining a new
maximal element above some down-set, so the catalog for n is grown from the
catalog for n-1 and deduplicated by certificate.
"""

from __future__ import annotations

from functools import lru_cache

from .canon import canonical_form, certificate
from .config import DEFAULT_CATALOG_CAP
from .core import EMPTY, FinitePoset, bits, is_connected, relabel
from .errors import CapError


def down_sets(P: FinitePoset):
    """All down-closed subsets of P as bitmasks, in increasing order."""
    return [m for m in range(1 << P.n)
            if all((P.down[i] & ~m) == 0 for i in bits(m))]


def _add_top(P: FinitePoset, below: int) -> FinitePoset:
    n = P.n
    new = 1 << n
    rows = [row | new if below >> i & 1 else row for i, row in enumerate(P.up)]
    rows.append(new)
    return FinitePoset(n + 1, tuple(rows))


def _canonical_copy(P):
    cf = canonical_form(P)
    perm = [0] * P.n
    for k, v in enumerate(cf.labeling):
        perm[v] = k
    return relabel(P, perm)


@lru_cache(maxsize=None)
def _catalog(n):
    if n == 0:
        return (EMPTY,)
    seen = {}
    for P in _catalog(n - 1):
        for d in down_sets(P):
            Q = _add_top(P, d)
            cert = certificate(Q)
            if cert not in seen:
                seen[cert] = _canonical_copy(Q)
    return tuple(seen[c] for c in sorted(seen))


def enumerate_posets(n: int, cap: int = DEFAULT_CATALOG_CAP) -> list:
    """One poset per isomorphism class on ``n`` elements, sorted by certificate.

    Each representative is stored in its canonical labeling.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise CapError("catalog size %d exceeds cap %d" % (n, cap))
    return list(_catalog(n))


def catalog_upto(max_size: int, connected: bool = False, nonempty: bool = True,
                 cap: int = DEFAULT_CATALOG_CAP) -> list:
    out = []
    for n in range(0 if not nonempty else 1, max_size + 1):
        for P in enumerate_posets(n, cap):
            if connected and not is_connected(P):
                continue
            out.append(P)
    return out
