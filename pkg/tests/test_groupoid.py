import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spancalc.corpus import group, groupoid_corpus, random_functor
from spancalc.equivalence import are_equivalent
from spancalc.errors import BadObjectIndex, InvariantViolation, MismatchedCodomain, NotAGroup
from spancalc.groupoid import (
    FiniteGroupoid, GroupoidFunctor, action_groupoid, cardinality, delooping, discrete, disjoint_union,
    homotopy_fiber, identity_functor, inertia, is_equivalence, iso_comma, iso_comma_reduced,
    point_inclusion, product, quasi_inverse, skeleton, terminal, terminal_map, truncation_level, diagonal,
)

Z2 = [[0, 1], [1, 0]]
Z4 = [[(a + b) % 4 for b in range(4)] for a in range(4)]
V4 = [[a ^ b for b in range(4)] for a in range(4)]


def table_groupoid(X):
    """Materialize ``X`` as an explicit table so it can be corrupted."""
    t = X.compose_table()
    return X.object_count, X.morphisms, list(X.identity), list(X.inverse), dict(t)


def inclusion_z2_s3(bs3):
    S3 = group("S3").table
    e = next(g for g in range(6) if all(S3[g][h] == h for h in range(6)))
    t = next(g for g in range(6) if g != e and S3[g][g] == e)
    z2 = delooping(Z2)
    return GroupoidFunctor(z2, bs3, [0], [e, t])


# construction and validation


def test_bz2_example(bz2):
    assert bz2.object_count == 1 and bz2.morphism_count == 2
    assert cardinality(bz2) == Fraction(1, 2)


@pytest.mark.parametrize("n", range(6))
def test_discrete_cardinality(n):
    assert cardinality(discrete(n)) == n


def test_corrupt_unit():
    n, mors, ident, inv, table = table_groupoid(delooping(Z2))
    table[0, 1] = 0
    table[1, 0] = 0
    with pytest.raises(InvariantViolation) as info:
        FiniteGroupoid(n, mors, ident, inv, table)
    assert info.value.axiom == "unit"


def test_corrupt_inverse():
    n, mors, ident, inv, table = table_groupoid(delooping(Z2))
    inv[1] = 0
    with pytest.raises(InvariantViolation) as info:
        FiniteGroupoid(n, mors, ident, inv, table)
    assert info.value.axiom == "inverse"
    assert info.value.path == ".inverse[1]"


def test_corrupt_totality():
    n, mors, ident, inv, table = table_groupoid(delooping(Z2))
    del table[1, 1]
    with pytest.raises(InvariantViolation) as info:
        FiniteGroupoid(n, mors, ident, inv, table)
    assert info.value.axiom == "totality"


def test_non_associative_loop():
    # a unital loop of order 5 with two-sided inverses that is not associative
    with pytest.raises(NotAGroup) as info:
        delooping([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    assert info.value.axiom == "associativity"


def test_bad_endpoint():
    with pytest.raises(InvariantViolation) as info:
        FiniteGroupoid(1, [(0, 0), (0, 3)], [0], [0, 1], {(0, 0): 0})
    assert info.value.axiom == "source/target"
    assert info.value.path == ".morphisms[1]"


def test_bad_identity():
    with pytest.raises(InvariantViolation) as info:
        FiniteGroupoid(2, [(0, 0), (1, 1), (0, 1)], [0, 2], [0, 1, 2], {})
    assert info.value.axiom == "identity"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([X for _, X in groupoid_corpus()]), st.data())
def test_random_table_corruption_is_caught(X, data):
    n, mors, ident, inv, table = table_groupoid(X)
    pairs = sorted(table)
    key = data.draw(st.sampled_from(pairs))
    value = data.draw(st.integers(0, X.morphism_count - 1).filter(lambda v: v != table[key]))
    table[key] = value
    with pytest.raises(InvariantViolation) as info:
        FiniteGroupoid(n, mors, ident, inv, table)
    assert info.value.axiom in ("typing", "unit", "inverse", "associativity")


@pytest.mark.parametrize("bad", [[], [[0, 0], [0, 0]], [[0, 1], [1, 2]], [[1, 0], [0, 0]]])
def test_not_a_group(bad):
    with pytest.raises(NotAGroup):
        delooping(bad)


def test_action_groupoid_rejects_non_action():
    with pytest.raises(InvariantViolation):
        action_groupoid(Z2, [[0, 1], [0, 0]])


def test_check_object():
    with pytest.raises(BadObjectIndex):
        discrete(2).check_object(2)
    with pytest.raises(BadObjectIndex):
        homotopy_fiber(terminal_map(discrete(2)), 3)


# products and coproducts


def test_product_and_coproduct_examples(bz2, bs3):
    assert cardinality(product(bz2, bz2)) == Fraction(1, 4)
    assert cardinality(product(bz2, bs3)) == Fraction(1, 12)
    assert cardinality(disjoint_union(bz2, terminal())) == Fraction(3, 2)
    assert product(bz2, terminal()) == bz2


@pytest.mark.parametrize("a", range(0, len(groupoid_corpus()), 3))
def test_product_unit_and_associativity(a):
    X = groupoid_corpus()[a][1]
    Y = groupoid_corpus()[(a + 4) % len(groupoid_corpus())][1]
    assert product(terminal(), X) == X
    assert product(product(X, Y), X) == product(X, product(Y, X))


# homotopy pullbacks


def test_iso_comma_of_points_over_bz2(bz2):
    p = point_inclusion(bz2, 0)
    P, _, _, _ = iso_comma(p, p)
    assert are_equivalent(P, discrete(2))
    assert cardinality(P) == 2


def test_iso_comma_of_identities_on_bz2(bz2):
    i = identity_functor(bz2)
    P, pA, pB, filler = iso_comma(i, i)
    assert P.component_count == 1
    assert cardinality(P) == Fraction(1, 2)
    filler.validate()


def test_iso_comma_mismatched(bz2):
    with pytest.raises(MismatchedCodomain):
        iso_comma(identity_functor(bz2), identity_functor(discrete(1)))


@pytest.mark.parametrize("seed", range(12))
def test_reduced_iso_comma_matches_full(seed):
    rng = random.Random(seed)
    corpus = [X for _, X in groupoid_corpus()]
    A, B, C = rng.choice(corpus), rng.choice(corpus), rng.choice(corpus)
    f, g = random_functor(A, C, rng), random_functor(B, C, rng)
    full = iso_comma(f, g)
    red = iso_comma_reduced(f, g)
    assert are_equivalent(full[0], red[0])
    full[3].validate()
    red[3].validate()
    assert cardinality(full[0]) == cardinality(red[0])


def test_homotopy_fiber_of_subgroup_inclusion(bs3):
    f = inclusion_z2_s3(bs3)
    F, pX = homotopy_fiber(f, 0)
    assert are_equivalent(F, discrete(3))
    assert truncation_level(f) == 0


def test_universal_property_of_iso_comma(bs3):
    # a cone W -> A, W -> B with f a => g b factors through the iso-comma
    f = inclusion_z2_s3(bs3)
    P, pA, pB, filler = iso_comma(f, f)
    W = delooping(Z2)
    a = identity_functor(W)
    objs = [next(o for o in range(P.object_count)
                 if P.object_labels[o] == (0, 0, bs3.identity[0]))]
    mors = [next(k for k in P.out(objs[0]) if pA.mor(k) == u and pB.mor(k) == u) for u in range(2)]
    h = GroupoidFunctor(W, P, objs, mors)
    assert h.then(pA) == a and h.then(pB) == a
    assert [filler.component[h.obj(w)] for w in range(1)] == [bs3.identity[0]]


# truncation and equivalences


def test_truncation_levels(bz2):
    assert truncation_level(identity_functor(bz2)) == -2
    assert truncation_level(terminal_map(discrete(0))) == -1
    assert truncation_level(point_inclusion(discrete(2), 0)) == -1
    assert truncation_level(terminal_map(discrete(3))) == 0
    assert truncation_level(point_inclusion(bz2, 0)) == 0
    assert truncation_level(terminal_map(bz2)) == 1


@pytest.mark.parametrize("name,X", groupoid_corpus())
def test_truncation_minus_two_iff_equivalence(name, X):
    sk = skeleton(X)
    for f in (sk.to_skeleton, sk.from_skeleton, terminal_map(X), diagonal(X)):
        assert (truncation_level(f) == -2) == is_equivalence(f)


@pytest.mark.parametrize("name,X", groupoid_corpus())
def test_skeleton_witnesses(name, X):
    sk = skeleton(X)
    unit, counit = sk.round_trip_witnesses
    unit.validate()
    counit.validate()
    assert sk.groupoid.object_count == X.component_count
    assert cardinality(sk.groupoid) == cardinality(X)
    q = quasi_inverse(sk.to_skeleton)
    assert q is not None
    for w in q[1:]:
        w.validate()


def test_equivalence_examples():
    assert are_equivalent(delooping(Z4), delooping(V4)) is None
    s3 = group("S3").table
    regular = action_groupoid(s3, [list(row) for row in s3])
    found = are_equivalent(regular, terminal())
    assert found is not None
    for w in found[2:]:
        w.validate()
    assert are_equivalent(discrete(2), delooping(Z2)) is None


def test_inertia(bs3):
    I = inertia(bs3)
    orders = sorted(len(I.automorphisms(r)) for r in I.representatives())
    assert orders == [2, 3, 6]
    assert cardinality(I) == 1
    d = diagonal(bs3)
    P = iso_comma(d, d)[0]
    assert are_equivalent(I, P)
