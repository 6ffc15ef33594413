"""Retractions: verification, search, and the explicit constructions on
exponents (evaluate-at-a-point onto the constants, and lifting a retraction
of A to one of A^S by postcomposition)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import (
    ExponentPoset, component_C, constant_embed, exponent, iter_monotone_maps,
)
from .canon import are_isomorphic
from .config import resolve_guard
from .core import FinitePoset, bits, induced, is_connected
from .errors import CapError, EmptyExponentError, PreconditionError


@dataclass(frozen=True)
class Retraction:
    poset: FinitePoset
    rho: tuple
    image: tuple  # sorted element indices

    def image_poset(self) -> FinitePoset:
        return induced(self.poset, self.image)


def verify_retraction(P: FinitePoset, rho, image=None) -> bool:
    """Monotone, fixes its image pointwise, and (if given) maps into ``image``."""
    n = P.n
    if len(rho) != n or any(not 0 <= v < n for v in rho):
        return False
    img = set(rho)
    if image is not None:
        image = set(image)
        if not img <= image:
            return False
        img = image
    if any(rho[i] != i for i in img):
        return False
    return _is_monotone_self(P, rho)


def _is_monotone_self(P, rho):
    # monotone iff up(i) lies inside {j : rho(i) <= rho(j)} for every i
    pre = {}
    for i, v in enumerate(rho):
        pre[v] = pre.get(v, 0) | 1 << i
    values = 0
    for v in pre:
        values |= 1 << v
    above = {}
    for v in pre:
        mask = 0
        for t in bits(P.up[v] & values):
            mask |= pre[t]
        above[v] = mask
    return all(P.up[i] & ~above[rho[i]] == 0 for i in range(P.n))


def identity_retraction(P: FinitePoset) -> Retraction:
    return Retraction(P, tuple(range(P.n)), tuple(range(P.n)))


def find_retraction(P: FinitePoset, subset, guard=None) -> Optional[Retraction]:
    """First retraction of P onto ``subset`` in lexicographic search order."""
    guard = resolve_guard(guard)
    subset = sorted(set(subset))
    if not subset:
        raise PreconditionError("retract target must be non-empty")
    free = P.n - len(subset)
    if len(subset) ** free > guard:
        raise CapError("%d^%d candidate retractions exceed guard %d" % (len(subset), free, guard))
    allowed = 0
    for i in subset:
        allowed |= 1 << i
    fixed = {i: i for i in subset}
    for table in iter_monotone_maps(P, P, guard, fixed=fixed, allowed=allowed):
        return Retraction(P, table, tuple(subset))
    return None


def is_retract(P: FinitePoset, subset, guard=None) -> bool:
    return find_retraction(P, subset, guard) is not None


@dataclass(frozen=True)
class ConstantRetraction:
    """Evaluation at ``x0`` followed by the constant embedding, on C(E^X)."""
    retraction: Retraction
    C_indices: tuple     # C-local index -> index in E^X
    embedding: tuple     # e -> C-local index of the constant map <e>


def lemma1_retraction(EX: ExponentPoset, x0: int) -> ConstantRetraction:
    """Retract C(E^X) onto the constant maps via f -> <f(x0)>."""
    if EX.exponent.n == 0:
        raise EmptyExponentError("needs a non-empty exponent X")
    if not 0 <= x0 < EX.exponent.n:
        raise IndexError("x0=%d out of range" % x0)
    Cpos, C_idx = component_C(EX)
    local = {k: i for i, k in enumerate(C_idx)}
    embedding = tuple(local[constant_embed(EX, e)] for e in range(EX.base.n))
    rho = tuple(embedding[EX.maps[k][x0]] for k in C_idx)
    r = Retraction(Cpos, rho, tuple(sorted(embedding)))
    return ConstantRetraction(r, tuple(C_idx), embedding)


@dataclass(frozen=True)
class LiftedRetraction:
    retraction: Retraction   # on A^S
    exponent: ExponentPoset  # A^S


def lift_retraction(r: Retraction, S: FinitePoset, guard=None, exponent_fn=None) -> LiftedRetraction:
    """sigma(f) = rho o f on A^S; its image is the copy of I^S inside A^S."""
    AS = (exponent_fn or exponent)(r.poset, S, guard)
    rho = r.rho
    sigma = tuple(AS.index[tuple(rho[v] for v in t)] for t in AS.maps)
    img = set(r.image)
    image = tuple(k for k, t in enumerate(AS.maps) if all(v in img for v in t))
    return LiftedRetraction(Retraction(AS.poset, sigma, image), AS)


@dataclass
class Prop4Verdict:
    ok: bool
    retract_ok: bool       # sigma verified as a retraction of P^S
    image_iso_ok: bool     # its image is isomorphic to Q^S
    ps_connected: bool
    qs_connected: bool
    transfer_ok: bool      # P^S connected implies Q^S connected
    image_connected_ok: bool  # image of connected P^S is connected
    P_size: int
    PS_size: int


def prop4_transfer(Q, R, S, guard=None, x0=0, exponent_fn=None) -> Prop4Verdict:
    """Exhibit Q^S as a retract of P^S for P = C(Q^R), and check that
    connectivity of P^S carries over to Q^S."""
    if Q.n == 0 or R.n == 0 or S.n == 0:
        raise PreconditionError("Q, R and S must be non-empty")
    exp = exponent_fn or exponent
    QR = exp(Q, R, guard)
    lem1 = lemma1_retraction(QR, x0)
    lifted = lift_retraction(lem1.retraction, S, guard, exp)
    sig = lifted.retraction
    PS = lifted.exponent.poset
    retract_ok = verify_retraction(PS, sig.rho, sig.image)
    QS = exp(Q, S, guard).poset
    image = sig.image_poset()
    image_iso_ok = are_isomorphic(image, QS) is not None
    ps_conn = is_connected(PS)
    qs_conn = is_connected(QS)
    transfer_ok = qs_conn or not ps_conn
    image_conn_ok = is_connected(image) or not ps_conn
    ok = retract_ok and image_iso_ok and transfer_ok and image_conn_ok
    return Prop4Verdict(ok, retract_ok, image_iso_ok, ps_conn, qs_conn,
                        transfer_ok, image_conn_ok, lem1.retraction.poset.n, PS.n)
