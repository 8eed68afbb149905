"""Spans of finite groupoids, composed by iso-comma (homotopy pullback)."""

from __future__ import annotations

from dataclasses import dataclass

from .equivalence import find_equivalence
from .errors import LeftLegNotMono, MismatchedBoundary, NotDiscrete
from .groupoid import (
    GroupoidFunctor, NaturalIso, diagonal, identity_functor, iso_comma, iso_comma_reduced,
    product, product_functor, quasi_inverse, skeleton, terminal, terminal_map, truncation_level,
)


@dataclass(frozen=True)
class Span:
    """``X <-left- apex -right-> Y``."""

    apex: object
    left: GroupoidFunctor
    right: GroupoidFunctor

    def __post_init__(self):
        if self.left.domain != self.apex or self.right.domain != self.apex:
            raise MismatchedBoundary("span legs must both start at the apex")

    @property
    def source(self):
        return self.left.codomain

    @property
    def target(self):
        return self.right.codomain


@dataclass(frozen=True)
class SpanEquivalence:
    """``e : Z -> Z'`` over the feet: ``left' o e => left`` and ``right' o e => right``."""

    e: GroupoidFunctor
    e_inverse: GroupoidFunctor
    left_witness: NaturalIso
    right_witness: NaturalIso
    unit: NaturalIso
    counit: NaturalIso


def identity_span(X):
    i = identity_functor(X)
    return Span(X, i, i)


def from_map(f):
    """``X <-id- X -f-> Y``."""
    return Span(f.domain, identity_functor(f.domain), f)


def dual_span(f):
    """``Y <-f- X -id-> X``: the map ``f`` read backwards."""
    return Span(f.domain, f, identity_functor(f.domain))


def compose_with_data(S, T, reduced=False):
    """Compose ``S : X -> Y`` then ``T : Y -> W``; also return the pullback data.

    Returns ``(span, pS, pT, filler)`` where ``pS``/``pT`` project the new apex to the
    apexes of ``S``/``T`` and ``filler : S.right o pS => T.left o pT``.
    With ``reduced=True`` the apex is the skeletal model of the iso-comma.
    """
    if S.target != T.source:
        raise MismatchedBoundary("target of the first span differs from source of the second")
    build = iso_comma_reduced if reduced else iso_comma
    P, pS, pT, filler = build(S.right, T.left)
    return Span(P, pS.then(S.left), pT.then(T.right)), pS, pT, filler


def compose(S, T, reduced=False):
    """Composite span ``T o S`` (first ``S``, then ``T``)."""
    return compose_with_data(S, T, reduced)[0]


def compose_all(spans, reduced=False):
    out = spans[0]
    for s in spans[1:]:
        out = compose(out, s, reduced)
    return out


def tensor(S, T, source=None, target=None):
    """Levelwise product of spans."""
    apex = product(S.apex, T.apex)
    source = source if source is not None else product(S.source, T.source)
    target = target if target is not None else product(S.target, T.target)
    return Span(apex, product_functor(S.left, T.left, apex, source),
                product_functor(S.right, T.right, apex, target))


def normalize(S):
    """Replace the apex by its skeleton, transporting both legs."""
    sk = skeleton(S.apex)
    return Span(sk.groupoid, sk.from_skeleton.then(S.left), sk.from_skeleton.then(S.right))


def duality_spans(X, XX=None, point=None):
    """``tr : X x X <-delta- X -> *`` and ``cotr : * <- X -delta-> X x X``."""
    XX = XX if XX is not None else product(X, X)
    point = point if point is not None else terminal()
    d = diagonal(X, XX)
    q = terminal_map(X, point)
    return Span(X, d, q), Span(X, q, d)


def spans_equivalent(S, S2, budget=None):
    """Decide whether two spans with identical feet are equivalent; return the witness."""
    if S.source != S2.source or S.target != S2.target:
        raise MismatchedBoundary("spans_equivalent needs spans with identical feet")
    eq = find_equivalence(S.apex, S2.apex, (S.left, S.right), (S2.left, S2.right), budget=budget)
    if eq is None:
        return None
    return SpanEquivalence(eq.forward, eq.backward, eq.leg_witnesses[0], eq.leg_witnesses[1],
                           eq.unit, eq.counit)


def snake_composites(X, reduced=True):
    """The two zig-zag composites ``X -> X x X x X -> X`` built from ``tr`` and ``cotr``.

    Products are encoded by index arithmetic, so ``X x *``, ``* x X`` and ``X`` coincide
    as stored groupoids, and ``X x (X x X)`` coincides with ``(X x X) x X``; the
    composites therefore need no explicit unitors or associators.  Bracketing:
    first snake is ``(tr x id) o (id x cotr)``, second is ``(id x tr) o (cotr x id)``.
    """
    XX = product(X, X)
    point = terminal()
    tr, cotr = duality_spans(X, XX, point)
    idX = identity_span(X)
    XXX = product(X, XX)
    first = compose(tensor(idX, cotr, X, XXX), tensor(tr, idX, XXX, X), reduced)
    second = compose(tensor(cotr, idX, X, XXX), tensor(idX, tr, XXX, X), reduced)
    return first, second


def verify_self_duality(X, budget=None, reduced=True):
    """Both zig-zag composites are equivalent to the identity span of ``X``."""
    idX = identity_span(X)
    return all(spans_equivalent(s, idX, budget) is not None for s in snake_composites(X, reduced))


def is_invertible(S):
    """If both legs are equivalences return ``right o left^-1``, else ``None``."""
    if truncation_level(S.left) != -2 or truncation_level(S.right) != -2:
        return None
    inv = quasi_inverse(S.left)
    if inv is None:
        return None
    return inv[0].then(S.right)


def member_of(S, m):
    """Is the left leg m-truncated?"""
    if m not in (-2, -1, 0, 1):
        raise ValueError(f"truncation level must be one of -2, -1, 0, 1; got {m!r}")
    return truncation_level(S.left) <= m


def _is_discrete(X):
    return X.morphism_count == X.object_count


def to_pointed_map(S):
    """Read a span of finite sets with injective left leg as a pointed map ``A+ -> B+``.

    Returns a tuple indexed by the elements of ``A``; ``None`` stands for the base point.
    """
    for name, X in (("source", S.source), ("apex", S.apex), ("target", S.target)):
        if not _is_discrete(X):
            raise NotDiscrete(f"{name} of the span is not a discrete groupoid")
    if truncation_level(S.left) > -1:
        raise LeftLegNotMono("left leg is not injective")
    out = [None] * S.source.object_count
    for z in range(S.apex.object_count):
        out[S.left.obj(z)] = S.right.obj(z)
    return tuple(out)


def compose_pointed(p, q):
    """First ``p``, then ``q``; ``None`` is the base point."""
    return tuple(None if b is None else q[b] for b in p)
