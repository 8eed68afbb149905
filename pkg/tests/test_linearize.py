import random
from fractions import Fraction

import pytest

from spancalc import oracles
from spancalc.corpus import group, groupoid_corpus, groups, random_rep, random_span, rep_system, standard_rep
from spancalc.errors import BaseMismatch, InvariantViolation, LengthMismatch
from spancalc.groupoid import (
    GroupoidFunctor, delooping, discrete, identity_functor, terminal_map,
)
from spancalc.linearize import (
    colimit_ls, cotrace_matrix, integrate, limit_ls, linearize_span, norm_map, trace_form,
)
from spancalc.local_systems import (
    LocalSystem, conjugate_system, direct_sum, dual_local_system, restrict, tensor_systems, trivial_system,
)
from spancalc.matrix import RatMatrix
from spancalc.span import Span, compose, duality_spans, from_map, identity_span, tensor

CORPUS = [X for _, X in groupoid_corpus()]


def test_point_spans(bz2):
    q = terminal_map(bz2)
    assert linearize_span(Span(bz2, q, q)) == RatMatrix([[Fraction(1, 2)]])
    d = terminal_map(discrete(2))
    assert linearize_span(Span(discrete(2), d, d)) == RatMatrix([[2]])


def test_identity_linearizes_to_identity(bz2_plus_pt):
    assert linearize_span(identity_span(bz2_plus_pt)) == RatMatrix.identity(2)


def test_map_and_its_dual(bz2):
    q = terminal_map(bz2)
    # pushing forward along BZ2 -> * weighs the fiber BZ2 by 1/2
    assert linearize_span(from_map(q)) == RatMatrix([[Fraction(1, 2)]])
    assert linearize_span(Span(bz2, q, identity_functor(bz2))) == RatMatrix([[1]])


@pytest.mark.parametrize("seed", range(15))
def test_agrees_with_oracle_and_is_functorial(seed):
    rng = random.Random(seed)
    X, Y, W = (rng.choice(CORPUS) for _ in range(3))
    S, T = random_span(X, Y, rng, CORPUS), random_span(Y, W, rng, CORPUS)
    lS, lT = linearize_span(S), linearize_span(T)
    assert lS == RatMatrix(oracles.linearize(S), lS.rows, lS.cols)
    assert linearize_span(compose(S, T)) == lT @ lS
    assert linearize_span(tensor(S, T)) == lS.kron(lT)


def test_integrate(bz2_plus_pt):
    assert integrate(bz2_plus_pt, [[1], [1]]) == (Fraction(3, 2),)
    assert integrate(bz2_plus_pt, [[2, 0], [0, 1]]) == (1, 1)
    with pytest.raises(LengthMismatch):
        integrate(bz2_plus_pt, [[1]])
    with pytest.raises(LengthMismatch):
        integrate(bz2_plus_pt, [[1], [1, 2]])


def test_trace_forms(bz2, bz2_plus_pt):
    assert trace_form(bz2) == RatMatrix([[Fraction(1, 2)]])
    assert cotrace_matrix(bz2) == RatMatrix([[2]])
    assert trace_form(discrete(2)) == RatMatrix.identity(2)
    assert trace_form(bz2_plus_pt) == RatMatrix([[Fraction(1, 2), 0], [0, 1]])


@pytest.mark.parametrize("name,X", groupoid_corpus())
def test_matrix_snake(name, X):
    assert trace_form(X) @ cotrace_matrix(X) == RatMatrix.identity(X.component_count)


def test_unweighted_snake_fails(bz2):
    tr, cotr = duality_spans(bz2)
    assert linearize_span(tr, weighted=False) @ linearize_span(cotr, weighted=False) == RatMatrix([[2]])


def test_norm_examples(bz2, sign, regular):
    r = norm_map(trivial_system(bz2))
    assert (r.colim_dim, r.lim_dim, r.norm, r.is_iso) == (1, 1, RatMatrix([[2]]), True)
    r = norm_map(sign)
    assert (r.colim_dim, r.lim_dim, r.is_iso) == (0, 0, True)
    r = norm_map(regular)
    assert (r.colim_dim, r.lim_dim, r.is_iso) == (1, 1, True)


@pytest.mark.parametrize("G", groups(), ids=lambda G: G.name)
def test_norm_is_iso_for_random_reps(G):
    rng = random.Random(G.name)
    BG = delooping(G.table)
    for _ in range(3):
        rep = random_rep(G, rng, max_dim=4)
        r = norm_map(rep_system(BG, rep))
        assert r.is_iso
        assert r.colim_dim == r.lim_dim == oracles.character_average(rep)


def test_norm_on_non_skeletal_base():
    Z2 = [[0, 1], [1, 0]]
    from spancalc.groupoid import action_groupoid
    X = action_groupoid(Z2, [[0, 1, 2], [0, 2, 1]])
    L = trivial_system(X, 2)
    r = norm_map(L)
    assert r.colim_dim == r.lim_dim == 4 and r.is_iso


def test_colimit_and_limit_projections(standard):
    dim, proj = colimit_ls(standard)
    assert dim == 0 and proj[0].shape == (0, 2)
    L = direct_sum(trivial_system(standard.base), standard)
    dim, proj = colimit_ls(L)
    assert dim == 1
    for f in range(L.base.morphism_count):
        assert proj[0] @ L.action(f) == proj[0]
    dim, inc = limit_ls(L)
    assert dim == 1
    for f in range(L.base.morphism_count):
        assert L.action(f) @ inc[0] == inc[0]


def test_local_system_validation(bz2):
    with pytest.raises(InvariantViolation) as info:
        LocalSystem(bz2, [1], [RatMatrix.identity(1), RatMatrix.scalar(2)])
    assert info.value.axiom == "local-system-functoriality"
    with pytest.raises(InvariantViolation) as info:
        LocalSystem(bz2, [1], [RatMatrix.scalar(-1), RatMatrix.scalar(-1)])
    assert info.value.axiom == "local-system-identity"
    with pytest.raises(InvariantViolation) as info:
        LocalSystem(bz2, [2], [RatMatrix.identity(2), RatMatrix.identity(1)])
    assert info.value.axiom == "local-system-shape"
    with pytest.raises(InvariantViolation):
        LocalSystem(bz2, [1], [RatMatrix.identity(1)])


def test_restrict_and_constructions(bz2, sign, standard):
    with pytest.raises(BaseMismatch):
        restrict(sign, identity_functor(discrete(1)))
    q = GroupoidFunctor(discrete(2), bz2, [0, 0], [0, 0])
    assert restrict(sign, q).dims == (1, 1)
    tensor_systems(sign, sign).validate()
    dual_local_system(standard).validate()
    changes = [RatMatrix([[1, 2], [0, 1]])]
    C = conjugate_system(standard, changes)
    C.validate()
    assert norm_map(C).colim_dim == 0
    with pytest.raises(BaseMismatch):
        direct_sum(sign, standard)


def test_standard_rep_is_faithful():
    G = group("S3")
    rep = standard_rep(G)
    assert len({m.to_json().__repr__() for m in rep}) == 6
