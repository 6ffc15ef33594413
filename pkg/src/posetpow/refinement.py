"""Refinements of A^C = B^D and exhaustive checks of the supporting lemmas.

A refinement is a quadruple (E, X, Y, Z) with A = E^X, B = E^Y, C = Y x Z
and D = X x Z (all up to isomorphism). The currying law then explains the
isomorphism A^C = E^(X x Y x Z) = B^D.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Optional

from .arith import (
    component_C, curry_iso, exponent, product, transport_exponent,
)
from .canon import are_isomorphic, certificate, compose, invert, is_order_isomorphism
from .catalog import catalog_upto, enumerate_posets
from .config import DEFAULT_CATALOG_CAP, resolve_guard
from .core import FinitePoset, induced, is_connected, singleton
from .errors import CapError, PreconditionError, SearchExhausted
from .retract import (
    find_retraction, lemma1_retraction, lift_retraction, prop4_transfer,
    verify_retraction,
)

log = logging.getLogger(__name__)


# The currying law ---------------------------------------------------------

@dataclass
class NaturalLawVerdict:
    ok: bool
    method: str             # "explicit" or "certificate"
    sizes: tuple            # |(E^X)^(YxZ)|, |E^(XxYxZ)|, |(E^Y)^(XxZ)|
    left_to_middle: Optional[tuple] = None
    middle_to_right: Optional[tuple] = None
    certificates_equal: Optional[bool] = None


def verify_natural_law(E, X, Y, Z, guard=None, check_certificates=False) -> NaturalLawVerdict:
    """Check (E^X)^(YxZ) = E^(XxYxZ) = (E^Y)^(XxZ) with explicit maps.

    The left isomorphism is currying along X x (Y x Z); the right one is
    currying along Y x (X x Z) preceded by the coordinate swap.
    """
    YZ = product(Y, Z, guard)
    XZ = product(X, Z, guard)
    left, outer_l, mid = curry_iso(E, X, YZ, guard)
    right, outer_r, mid_r = curry_iso(E, Y, XZ, guard)
    ny, nz, nyz, nxz = Y.n, Z.n, Y.n * Z.n, X.n * Z.n

    # index of (y, (x, z)) in Y x (X x Z) -> index of (x, (y, z)) in X x (Y x Z)
    swap = tuple(x * nyz + y * nz + z
                 for y in range(ny) for x in range(X.n) for z in range(nz))
    assert len(swap) == Y.n * nxz
    mid_to_mid = transport_exponent(E, mid, mid_r, swap)

    sizes = (outer_l.poset.n, mid.poset.n, outer_r.poset.n)
    explicit = (left.verified and right.verified and mid_to_mid is not None
                and is_order_isomorphism(mid.poset, mid_r.poset, mid_to_mid))
    m2r = None
    if explicit:
        m2r = compose(mid_to_mid, invert(right.table))
        explicit = is_order_isomorphism(mid.poset, outer_r.poset, m2r)
    verdict = NaturalLawVerdict(explicit, "explicit", sizes,
                                left.table if explicit else None, m2r)
    if check_certificates or not explicit:
        certs = {certificate(outer_l.poset), certificate(mid.poset), certificate(outer_r.poset)}
        verdict.certificates_equal = len(certs) == 1
        if not explicit:
            verdict.ok = verdict.certificates_equal
            verdict.method = "certificate"
    return verdict


# Factorizations -----------------------------------------------------------

def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def factorizations(P: FinitePoset, cap: int = DEFAULT_CATALOG_CAP, connected=None,
                   guard=None) -> list:
    """All ``(Y, Z)`` up to isomorphism with ``Y x Z = P``.

    Nontrivial factors come from the catalog; the trivial pairs use P itself.
    Ordered by ``|Y|`` then catalog order. When P is connected (or
    ``connected=True``) only connected factors are considered.
    """
    n = P.n
    if n == 0:
        raise PreconditionError("cannot factor the empty poset")
    if connected is None:
        connected = is_connected(P)
    target = certificate(P)
    one = singleton()

    def pool(size):
        if size == 1:
            return [one]
        if size == n:
            return [P]
        if size > cap:
            raise CapError("factor size %d exceeds catalog cap %d" % (size, cap))
        return [Q for Q in enumerate_posets(size, cap) if not connected or is_connected(Q)]

    out = []
    for d in _divisors(n):
        Ys, Zs = pool(d), pool(n // d)
        for Y in Ys:
            for Z in Zs:
                if certificate(product(Y, Z, guard)) == target:
                    out.append((Y, Z))
    return out


# Search -------------------------------------------------------------------

@dataclass
class SearchBounds:
    max_E: Optional[int] = None
    max_X: Optional[int] = None
    max_Y: Optional[int] = None
    max_Z: Optional[int] = None
    guard: Optional[int] = None
    timeout: Optional[float] = None
    widen: bool = False           # allow disconnected E, X, Y, Z
    retract_bound: bool = True    # prune with |E| <= min(|A|, |B|)
    cap: int = DEFAULT_CATALOG_CAP

    def __post_init__(self):
        for name in ("max_E", "max_X", "max_Y", "max_Z", "guard", "timeout"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError("%s must be positive" % name)


@dataclass
class RefinementWitness:
    E: FinitePoset
    X: FinitePoset
    Y: FinitePoset
    Z: FinitePoset
    iso_A: tuple   # A -> E^X
    iso_B: tuple   # B -> E^Y
    iso_C: tuple   # C -> Y x Z
    iso_D: tuple   # D -> X x Z
    widened: bool = False
    stats: dict = field(default_factory=dict, compare=False)


def _check_hypotheses(A, B, C, D, guard):
    for name, P in zip("ABCD", (A, B, C, D)):
        if P.n == 0:
            raise PreconditionError("%s must be non-empty" % name)
    if not is_connected(C):
        raise PreconditionError("C must be connected")
    if not is_connected(D):
        raise PreconditionError("D must be connected")
    AC = exponent(A, C, guard).poset
    if not is_connected(AC):
        raise PreconditionError("A^C must be connected")
    BD = exponent(B, D, guard).poset
    if BD.n != AC.n or not is_connected(BD):
        raise PreconditionError("A^C and B^D are not isomorphic")
    return AC, BD


def _require_isomorphic(AC, BD):
    # Canonizing a large exponent is the slowest step, so refine only does it
    # when no witness turns up: a witness already gives A^C = E^(XxYxZ) = B^D.
    if are_isomorphic(AC, BD) is None:
        raise PreconditionError("A^C and B^D are not isomorphic")


def refine(A, B, C, D, bounds: SearchBounds = None) -> RefinementWitness:
    """Find E, X, Y, Z with A = E^X, B = E^Y, C = Y x Z, D = X x Z.

    Candidates are tried by increasing |Z|, |Y|, |X|, |E|, then catalog
    order, and the first fully verified witness is returned. Raises
    SearchExhausted when the bounds run out, which proves nothing about
    existence.
    """
    bounds = bounds or SearchBounds()
    guard = resolve_guard(bounds.guard)
    deadline = None if bounds.timeout is None else time.monotonic() + bounds.timeout

    def tick():
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("refinement search exceeded %.1f s" % bounds.timeout)

    AC, BD = _check_hypotheses(A, B, C, D, guard)
    tick()
    conn = None if bounds.widen else True
    fc = factorizations(C, bounds.cap, connected=conn, guard=guard)
    fd = factorizations(D, bounds.cap, connected=conn, guard=guard)

    def within(P, limit):
        return limit is None or P.n <= limit

    triples = []
    for (Y, Z) in fc:
        if not (within(Y, bounds.max_Y) and within(Z, bounds.max_Z)):
            continue
        cz = certificate(Z)
        for (X, Z2) in fd:
            if within(X, bounds.max_X) and Z2.n == Z.n and certificate(Z2) == cz:
                triples.append(((Z.n, Y.n, X.n, cz, certificate(Y), certificate(X)), Y, Z, X))
    triples.sort(key=lambda t: t[0])

    e_limit = bounds.cap
    if bounds.retract_bound:
        e_limit = min(e_limit, A.n, B.n)
    if bounds.max_E is not None:
        e_limit = min(e_limit, bounds.max_E)
    e_pool = catalog_upto(e_limit, connected=not bounds.widen, cap=bounds.cap)
    # E = A (or B) when X (or Y) is a singleton; keep those even past the cap
    seen = {certificate(E) for E in e_pool}
    for extra in (A, B):
        if extra.n > bounds.cap and (bounds.max_E is None or extra.n <= bounds.max_E) \
                and (bounds.widen or is_connected(extra)) and certificate(extra) not in seen:
            e_pool.append(extra)
            seen.add(certificate(extra))
    e_pool.sort(key=lambda E: (E.n, certificate(E)))

    tried = 0
    for _, Y, Z, X in triples:
        tick()
        iso_C = are_isomorphic(C, product(Y, Z, guard))
        iso_D = are_isomorphic(D, product(X, Z, guard))
        if iso_C is None or iso_D is None:
            continue
        for E in e_pool:
            tick()
            tried += 1
            try:
                EX = exponent(E, X, guard)
            except CapError:
                continue
            if EX.poset.n != A.n:
                continue
            iso_A = are_isomorphic(A, EX.poset)
            if iso_A is None:
                continue
            try:
                EY = exponent(E, Y, guard)
            except CapError:
                continue
            iso_B = are_isomorphic(B, EY.poset)
            if iso_B is None:
                continue
            w = RefinementWitness(E, X, Y, Z, iso_A, iso_B, iso_C, iso_D,
                                  widened=bounds.widen,
                                  stats={"triples": len(triples), "candidates_tried": tried})
            if not verify_witness(A, B, C, D, w, guard):
                raise AssertionError("search produced an unverifiable witness")
            _assert_connectivity_chain(A, B, D, EX, EY, guard)
            return w
    _require_isomorphic(AC, BD)
    raise SearchExhausted(
        "no witness within bounds (%d factor triples, %d candidates); "
        "this is not a counterexample" % (len(triples), tried))


def _assert_connectivity_chain(A, B, D, EX, EY, guard):
    if not (is_connected(EX.poset) and is_connected(EY.poset)):
        raise AssertionError("witness exponents E^X, E^Y are not connected")
    if not (is_connected(A) and is_connected(B)):
        raise AssertionError("A or B is not connected")
    if not is_connected(exponent(B, D, guard).poset):
        raise AssertionError("B^D is not connected")


def _naive_iso(P, Q, phi):
    # deliberately plain: separate code path from canon.is_order_isomorphism
    n = P.n
    if Q.n != n or phi is None or len(phi) != n:
        return False
    if len(set(phi)) != n or not all(isinstance(v, int) and 0 <= v < n for v in phi):
        return False
    for i in range(n):
        for j in range(n):
            if P.leq(i, j) != Q.leq(phi[i], phi[j]):
                return False
    return True


def verify_witness(A, B, C, D, w: RefinementWitness, guard=None) -> bool:
    """Recompute E^X, E^Y, Y x Z, X x Z and re-check all four isomorphisms."""
    parts = (w.E, w.X, w.Y, w.Z)
    if any(P.n == 0 for P in parts):
        return False
    if not w.widened and not all(is_connected(P) for P in parts):
        return False
    try:
        EX = exponent(w.E, w.X, guard).poset
        EY = exponent(w.E, w.Y, guard).poset
        YZ = product(w.Y, w.Z, guard)
        XZ = product(w.X, w.Z, guard)
    except CapError:
        return False
    return (_naive_iso(A, EX, w.iso_A) and _naive_iso(B, EY, w.iso_B)
            and _naive_iso(C, YZ, w.iso_C) and _naive_iso(D, XZ, w.iso_D))


# Lemma suite --------------------------------------------------------------

@dataclass
class LemmaResult:
    name: str
    instances: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples

    def line(self):
        return "%-14s instances=%d skipped=%d counterexamples=%d" % (
            self.name, self.instances, self.skipped, len(self.counterexamples))


@dataclass
class LemmaReport:
    max_size: int
    results: dict

    @property
    def ok(self):
        return all(r.ok for r in self.results.values())

    @property
    def total_counterexamples(self):
        return sum(len(r.counterexamples) for r in self.results.values())

    def lines(self):
        out = [r.line() for r in self.results.values()]
        out.append("%d counterexamples" % self.total_counterexamples)
        return out


def _name(P):
    return "P%d%s" % (P.n, list(P.covers()))


def _run(result, label, check):
    """Evaluate one instance; CapError means skipped, anything else failing
    (including exceptions) is recorded as a counterexample."""
    try:
        good = check()
    except CapError:
        result.skipped += 1
        return
    except Exception as exc:  # a broken order can make lookups fail
        result.instances += 1
        result.counterexamples.append("%s: %s: %s" % (label, type(exc).__name__, exc))
        return
    result.instances += 1
    if not good:
        result.counterexamples.append(label)


def lemma_suite(max_size: int, guard=None, cap: int = DEFAULT_CATALOG_CAP,
                exponent_fn=None) -> LemmaReport:
    """Instantiate the retract and connectivity lemmas over the catalog.

    ``exponent_fn`` replaces :func:`exponent` everywhere in the suite; it is
    the hook for mutation tests.
    """
    if max_size > cap:
        raise CapError("max_size %d exceeds catalog cap %d" % (max_size, cap))
    exp = exponent_fn or exponent
    cat = catalog_upto(max_size, cap=cap)
    cat0 = enumerate_posets(0) + cat
    names = ["lemma1", "lemma2", "lemma3", "proposition4", "lemma5"]
    res = {n: LemmaResult(n) for n in names}

    # E is isomorphic to the image of f -> <f(x0)> on C(E^X).
    for E, X in itertools.product(cat, cat):
        for x0 in range(X.n):
            def check(E=E, X=X, x0=x0):
                lem = lemma1_retraction(exp(E, X, guard), x0)
                r = lem.retraction
                return (verify_retraction(r.poset, r.rho, r.image)
                        and are_isomorphic(r.image_poset(), E) is not None)
            _run(res["lemma1"], "E=%s X=%s x0=%d" % (_name(E), _name(X), x0), check)

    # E^X connected implies C(E^X) is everything.
    def lemma2(E, X):
        EX = exp(E, X, guard)
        return not is_connected(EX.poset) or len(component_C(EX)[1]) == EX.poset.n

    for E, X in itertools.product(cat0, cat):
        _run(res["lemma2"], "E=%s X=%s" % (_name(E), _name(X)), lambda E=E, X=X: lemma2(E, X))

    # sigma = rho o - is a retraction of A^S onto I^S.
    for A in cat:
        retractions = []
        for size in range(1, A.n + 1):
            for sub in itertools.combinations(range(A.n), size):
                # catalog posets are tiny; the exponent guard does not apply here
                r = find_retraction(A, sub)
                if r is not None:
                    retractions.append(r)
        for r, S in itertools.product(retractions, cat):
            def check(r=r, S=S):
                lifted = lift_retraction(r, S, guard, exp)
                sig = lifted.retraction
                IS = exp(induced(A, r.image), S, guard).poset
                return (verify_retraction(sig.poset, sig.rho, sig.image)
                        and are_isomorphic(sig.image_poset(), IS) is not None)
            _run(res["lemma3"], "A=%s I=%s S=%s" % (_name(A), r.image, _name(S)), check)

    # Q^S is a retract of C(Q^R)^S; connectivity transfers.
    for Q, R, S in itertools.product(cat, cat, cat):
        _run(res["proposition4"], "Q=%s R=%s S=%s" % (_name(Q), _name(R), _name(S)),
             lambda Q=Q, R=R, S=S: prop4_transfer(Q, R, S, guard, exponent_fn=exp).ok)

    # U^(S x A) connected implies U^S connected. Each U^(S x A) is
    # also one more instance of the C(E^X) = E^X check.
    for U, S, A in itertools.product(cat, cat, cat):
        def check(U=U, S=S, A=A):
            big = exp(U, product(S, A, guard), guard).poset
            return not is_connected(big) or is_connected(exp(U, S, guard).poset)
        label = "U=%s S=%s A=%s" % (_name(U), _name(S), _name(A))
        _run(res["lemma5"], label, check)
        _run(res["lemma2"], "E=%s X=%s x %s" % (_name(U), _name(S), _name(A)),
             lambda U=U, S=S, A=A: lemma2(U, product(S, A, guard)))

    return LemmaReport(max_size, res)
