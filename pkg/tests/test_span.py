import random

import pytest

from spancalc.corpus import groupoid_corpus, random_span
from spancalc.errors import LeftLegNotMono, MismatchedBoundary, NotDiscrete
from spancalc.groupoid import (
    GroupoidFunctor, cardinality, discrete, identity_functor, point_inclusion, terminal_map,
)
from spancalc.linearize import linearize_span
from spancalc.span import (
    Span, compose, compose_all, compose_pointed, dual_span, from_map, identity_span, is_invertible, member_of,
    normalize, snake_composites, spans_equivalent, tensor, to_pointed_map, verify_self_duality,
)

CORPUS = [X for _, X in groupoid_corpus()]


def random_triple(seed):
    rng = random.Random(seed)
    X, Y, W, V = (rng.choice(CORPUS) for _ in range(4))
    return (random_span(X, Y, rng, CORPUS), random_span(Y, W, rng, CORPUS), random_span(W, V, rng, CORPUS))


@pytest.mark.parametrize("seed", range(8))
def test_unit_laws(seed):
    S, _, _ = random_triple(seed)
    assert spans_equivalent(compose(identity_span(S.source), S), S) is not None
    assert spans_equivalent(compose(S, identity_span(S.target)), S) is not None


@pytest.mark.parametrize("seed", range(8))
def test_associativity(seed):
    S, T, U = random_triple(seed)
    left = compose(compose(S, T, True), U, True)
    right = compose(S, compose(T, U, True), True)
    assert spans_equivalent(left, right) is not None


@pytest.mark.parametrize("seed", range(6))
def test_reduced_composite_is_equivalent_to_full(seed):
    S, T, _ = random_triple(seed)
    witness = spans_equivalent(compose(S, T), compose(S, T, reduced=True))
    assert witness is not None
    witness.left_witness.validate()
    witness.right_witness.validate()


@pytest.mark.parametrize("seed", range(6))
def test_congruence(seed):
    # replacing a span by an equivalent one does not change the composite
    S, T, _ = random_triple(seed)
    assert spans_equivalent(compose(normalize(S), T), compose(S, T)) is not None


def test_mismatched_boundary(bz2):
    with pytest.raises(MismatchedBoundary):
        compose(identity_span(bz2), identity_span(discrete(2)))
    with pytest.raises(MismatchedBoundary):
        spans_equivalent(identity_span(bz2), identity_span(discrete(2)))


def test_from_map_is_functorial(bz2, bs3):
    f = GroupoidFunctor(bz2, bz2, [0], [0, 0])
    g = terminal_map(bz2)
    assert spans_equivalent(compose(from_map(f), from_map(g)), from_map(f.then(g))) is not None


def test_dual_span_examples(bz2):
    p = point_inclusion(bz2, 0)
    # * -> BZ2 -> * read backwards after forwards: the loop space of BZ2
    loop = compose(from_map(p), dual_span(p))
    assert cardinality(loop.apex) == 2
    assert linearize_span(loop) == linearize_span(Span(discrete(2), terminal_map(discrete(2)),
                                                       terminal_map(discrete(2))))
    q = terminal_map(bz2)
    assert cardinality(compose(dual_span(q), from_map(q)).apex) == cardinality(bz2)


def test_member_of_and_invertible(bz2):
    assert member_of(identity_span(bz2), -2)
    assert not member_of(dual_span(terminal_map(bz2)), 0)
    assert member_of(dual_span(terminal_map(bz2)), 1)
    with pytest.raises(ValueError):
        member_of(identity_span(bz2), 2)
    inv = is_invertible(identity_span(bz2))
    assert inv is not None and inv.domain == bz2
    assert is_invertible(from_map(terminal_map(bz2))) is None


def test_normalize(bs3):
    S = from_map(terminal_map(discrete(3)))
    N = normalize(S)
    assert N.apex.object_count == 3
    assert spans_equivalent(N, S) is not None


def test_tensor_shapes(bz2):
    S = tensor(identity_span(bz2), from_map(terminal_map(discrete(2))))
    assert S.source.object_count == 2 and S.target.object_count == 1


def test_pointed_maps():
    A, B, C = discrete(3), discrete(2), discrete(2)
    Z1 = discrete(2)
    P = Span(Z1, GroupoidFunctor(Z1, A, [0, 2], [0, 2]), GroupoidFunctor(Z1, B, [1, 1], [1, 1]))
    Z2 = discrete(1)
    Q = Span(Z2, GroupoidFunctor(Z2, B, [1], [1]), GroupoidFunctor(Z2, C, [0], [0]))
    assert to_pointed_map(P) == (1, None, 1)
    assert to_pointed_map(Q) == (None, 0)
    assert to_pointed_map(compose(P, Q)) == compose_pointed(to_pointed_map(P), to_pointed_map(Q)) == (0, None, 0)


def test_pointed_map_errors(bz2):
    with pytest.raises(NotDiscrete):
        to_pointed_map(identity_span(bz2))
    Z = discrete(2)
    S = Span(Z, terminal_map(Z), identity_functor(Z))
    with pytest.raises(LeftLegNotMono):
        to_pointed_map(S)


@pytest.mark.parametrize("name,X", groupoid_corpus()[:8])
def test_self_duality(name, X):
    assert verify_self_duality(X)
    for s in snake_composites(X):
        assert s.source == X and s.target == X


def test_compose_all(bz2):
    i = identity_span(bz2)
    assert spans_equivalent(compose_all([i, i, i]), i) is not None


def test_bad_apex(bz2):
    with pytest.raises(MismatchedBoundary):
        Span(bz2, identity_functor(discrete(1)), identity_functor(bz2))
