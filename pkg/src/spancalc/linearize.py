"""Cardinality-weighted linearization of spans, integration, (co)limits and norm maps.

Convention: a span ``X <- Z -> Y`` becomes a ``|pi0 Y| x |pi0 X|`` matrix (pull back
along the left leg, push forward along the right).  Pushing forward along the right
leg weighs each component of a homotopy fiber by its homotopy cardinality, so
composition of spans goes to the matrix product in diagram order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DescentFailure, LengthMismatch
from .groupoid import FiniteGroupoid, iso_comma_reduced, point_inclusion
from .local_systems import LocalSystem
from .matrix import RatMatrix, block_diagonal, rref_rank_kernel, solve_left, Solver
from .span import duality_spans


def integrate(X, values):
    """Sum per-component vectors weighted by the homotopy cardinality of each component."""
    reps = X.representatives()
    if len(values) != len(reps):
        raise LengthMismatch(f"expected {len(reps)} component values, got {len(values)}")
    vecs = [tuple(Fraction(v) for v in vec) for vec in values]
    d = len(vecs[0]) if vecs else 0
    if any(len(v) != d for v in vecs):
        raise LengthMismatch("component values have different lengths")
    out = [Fraction(0)] * d
    for r, v in zip(reps, vecs):
        w = Fraction(1, len(X.automorphisms(r)))
        out = [a + w * b for a, b in zip(out, v)]
    return tuple(out)


def linearize_span(S, weighted=True):
    """Matrix of ``S``: entry ``(y, x)`` sums ``1/|Aut|`` over fiber components of the
    right leg over ``y`` that the left leg sends into component ``x``.

    ``weighted=False`` counts fiber components instead; it exists only as a negative
    control and is not functorial.
    """
    X, Y = S.source, S.target
    grid = [[Fraction(0)] * X.component_count for _ in range(Y.component_count)]
    for j, y in enumerate(Y.representatives()):
        F, pZ, _, _ = iso_comma_reduced(S.right, point_inclusion(Y, y))
        for o in range(F.object_count):
            i = X.component_of(S.left.obj(pZ.obj(o)))
            grid[j][i] += Fraction(1, len(F.automorphisms(o))) if weighted else 1
    return RatMatrix(grid, Y.component_count, X.component_count)


def _component_groups(L):
    X = L.base
    for r in X.representatives():
        yield r, [L.action(g) for g in X.automorphisms(r)]


def _embed_rows(block, offset, total):
    """Place ``block`` (k x d) at row ``offset`` of a ``total x d`` zero matrix."""
    z = RatMatrix.zeros
    parts = []
    if offset:
        parts.append(z(offset, block.cols))
    parts.append(block)
    if total - offset - block.rows:
        parts.append(z(total - offset - block.rows, block.cols))
    out = parts[0]
    for p in parts[1:]:
        out = out.vstack(p)
    return out


def _coinvariant_projection(d, mats):
    # rows q with q (I - g) = 0 for all g
    if d == 0:
        return RatMatrix.zeros(0, 0)
    eye = RatMatrix.identity(d)
    stacked = None
    for m in mats:
        block = eye - m
        stacked = block if stacked is None else stacked.hstack(block)
    _, ker, _ = rref_rank_kernel(stacked.T)
    return ker.T


def _invariant_inclusion(d, mats):
    if d == 0:
        return RatMatrix.zeros(0, 0)
    eye = RatMatrix.identity(d)
    stacked = None
    for m in mats:
        block = m - eye
        stacked = block if stacked is None else stacked.vstack(block)
    return rref_rank_kernel(stacked)[1]


def _skeletal_blocks(L):
    """Per component: representative, coinvariant projection Q and invariant inclusion K."""
    out = []
    for r, mats in _component_groups(L):
        d = L.dim(r)
        out.append((r, mats, _coinvariant_projection(d, mats), _invariant_inclusion(d, mats)))
    return out


def colimit_ls(L, blocks=None):
    """Coinvariants: total dimension and, per object, the projection into the colimit."""
    X = L.base
    blocks = blocks if blocks is not None else _skeletal_blocks(L)
    dims = [Q.rows for _, _, Q, _ in blocks]
    total = sum(dims)
    offsets = [sum(dims[:k]) for k in range(len(dims))]
    proj = []
    for x in range(X.object_count):
        k = X.component_of(x)
        Q = blocks[k][2]
        back = L.action(X.inverse[X.path_from_rep(x)])
        proj.append(_embed_rows(Q @ back, offsets[k], total))
    return total, tuple(proj)


def limit_ls(L, blocks=None):
    """Invariants: total dimension and, per object, the inclusion of the limit."""
    X = L.base
    blocks = blocks if blocks is not None else _skeletal_blocks(L)
    dims = [K.cols for _, _, _, K in blocks]
    total = sum(dims)
    offsets = [sum(dims[:k]) for k in range(len(dims))]
    inc = []
    for x in range(X.object_count):
        k = X.component_of(x)
        K = blocks[k][3]
        there = L.action(X.path_from_rep(x)) @ K
        inc.append(_embed_rows(there.T, offsets[k], total).T)
    return total, tuple(inc)


@dataclass(frozen=True)
class NormReport:
    base: FiniteGroupoid
    system: LocalSystem
    colim_dim: int
    lim_dim: int
    norm: RatMatrix
    is_iso: bool


def norm_map(L):
    """The map from coinvariants to invariants induced by summing the action over hom-sets.

    On the skeleton the hom-sets between distinct representatives are empty, so the
    summed endomorphism is block diagonal with blocks ``sum_{g in Aut(r)} L(g)``.
    """
    blocks = _skeletal_blocks(L)
    N_blocks, Q_blocks, K_blocks = [], [], []
    for r, mats, Q, K in blocks:
        d = L.dim(r)
        acc = RatMatrix.zeros(d, d)
        for m in mats:
            acc = acc + m
        N_blocks.append(acc)
        Q_blocks.append(Q)
        K_blocks.append(K)
    N = block_diagonal(N_blocks)
    Q = block_diagonal(Q_blocks)
    K = block_diagonal(K_blocks)
    through = solve_left(Q, N)  # N = through @ Q
    if through is None:
        raise DescentFailure("summed action does not factor through the coinvariants")
    norm = Solver(K).solve(through)
    if norm is None:
        raise DescentFailure("summed action does not land in the invariants")
    if K @ norm @ Q != N:
        raise DescentFailure("induced norm map does not reproduce the summed action")
    is_iso = norm.rows == norm.cols and norm.rank() == norm.rows
    return NormReport(L.base, L, Q.rows, K.cols, norm, is_iso)


def trace_form(X):
    """``linearize(tr_X)`` reshaped to a square matrix over ``pi0 X`` (lexicographic pairs)."""
    tr, _ = duality_spans(X)
    n = X.component_count
    return linearize_span(tr).reshape(n, n)


def cotrace_matrix(X):
    _, cotr = duality_spans(X)
    n = X.component_count
    return linearize_span(cotr).reshape(n, n)
