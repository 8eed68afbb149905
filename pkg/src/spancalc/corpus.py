"""Deterministic test corpus: small groups with rational representations, finite
groupoids, random functors, spans and decorated objects."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .equivalence import _extend, generating_set
from .groupoid import (
    GroupoidFunctor, action_groupoid, delooping, discrete, disjoint_union, terminal,
)
from .local_systems import LocalSystem, restrict, trivial_system
from .matrix import RatMatrix, block_diagonal
from .span import Span
from .tft import DecoratedObject


@dataclass(frozen=True)
class Group:
    name: str
    table: tuple
    defining: tuple        # one matrix per element, a faithful rational representation
    degree: int = 0        # > 0 when ``defining`` consists of permutation matrices

    @property
    def order(self):
        return len(self.table)


def _companion(coeffs):
    """Companion matrix of ``x^n + c_{n-1} x^{n-1} + ... + c_0`` given ``[c_0, ..., c_{n-1}]``."""
    n = len(coeffs)
    grid = [[0] * n for _ in range(n)]
    for i in range(1, n):
        grid[i][i - 1] = 1
    for i, c in enumerate(coeffs):
        grid[i][n - 1] = -c
    return RatMatrix(grid)


def _perm_matrix(p):
    return RatMatrix.permutation(list(p))


def _generate(name, gens, degree=0):
    """Close ``gens`` under multiplication; elements are listed in breadth-first order."""
    n = gens[0].rows if gens else 1
    e = RatMatrix.identity(n)
    elements, index = [e], {e: 0}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x @ s
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    table = tuple(tuple(index[a @ b] for b in elements) for a in elements)
    return Group(name, table, tuple(elements), degree)


@lru_cache(maxsize=None)
def groups():
    """The fixed list of groups of order at most 24."""
    rot4 = RatMatrix([[0, -1], [1, 0]])
    q_i = RatMatrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    q_j = RatMatrix([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
    return (
        _generate("1", []),
        _generate("Z2", [RatMatrix.scalar(-1)]),
        _generate("Z3", [_companion([1, 1])]),
        _generate("Z4", [rot4]),
        _generate("V4", [RatMatrix([[-1, 0], [0, 1]]), RatMatrix([[1, 0], [0, -1]])]),
        _generate("Z5", [_companion([1, 1, 1, 1])]),
        _generate("Z6", [_companion([1, -1])]),
        _generate("S3", [_perm_matrix((1, 0, 2)), _perm_matrix((1, 2, 0))], 3),
        _generate("D4", [rot4, RatMatrix([[1, 0], [0, -1]])]),
        _generate("Q8", [q_i, q_j]),
        _generate("Z8", [_companion([1, 0, 0, 0])]),
        _generate("D5", [_perm_matrix((1, 2, 3, 4, 0)), _perm_matrix((0, 4, 3, 2, 1))], 5),
        _generate("A4", [_perm_matrix((1, 2, 0, 3)), _perm_matrix((1, 0, 3, 2))], 4),
        _generate("D6", [_companion([1, -1]), RatMatrix([[0, 1], [1, 0]])]),
        _generate("F20", [_perm_matrix((1, 2, 3, 4, 0)), _perm_matrix((0, 2, 4, 1, 3))], 5),
        _generate("S4", [_perm_matrix((1, 0, 2, 3)), _perm_matrix((1, 2, 3, 0))], 4),
    )


def group(name):
    return next(G for G in groups() if G.name == name)


# representations: one matrix per group element


def homomorphisms_to_sign(G):
    """All homomorphisms ``G -> {+1, -1}`` as tuples of signs."""
    z2 = ((0, 1), (1, 0))
    gens = generating_set(G.table)
    e = next(x for x in range(G.order) if G.table[x][x] == x)
    out = []
    for bits in range(2 ** len(gens)):
        images = [(bits >> k) & 1 for k in range(len(gens))]
        phi = _extend(G.table, z2, gens, images, e, 0)
        if phi is not None:
            out.append(tuple(-1 if phi[g] else 1 for g in range(G.order)))
    return out


def character_rep(G, signs):
    return tuple(RatMatrix.scalar(s) for s in signs)


def trivial_rep(G, rank=1):
    return tuple(RatMatrix.identity(rank) for _ in range(G.order))


def regular_rep(G):
    return tuple(RatMatrix.permutation([G.table[g][h] for h in range(G.order)]) for g in range(G.order))


def standard_rep(G):
    """The sum-zero summand of a permutation representation, in the basis ``e_k - e_last``."""
    if not G.degree:
        raise ValueError(f"{G.name} is not given by permutation matrices")
    n = G.degree
    basis = RatMatrix([[1 if i == k else (-1 if i == n - 1 else 0) for k in range(n - 1)]
                       for i in range(n)])
    keep = list(range(n - 1))
    return tuple((P @ basis).submatrix(keep, keep) for P in G.defining)


def sum_reps(*reps):
    return tuple(block_diagonal(list(ms)) for ms in zip(*reps))


def tensor_reps(a, b):
    return tuple(x.kron(y) for x, y in zip(a, b))


def conjugate_rep(rep, P):
    Pi = P.inverse()
    return tuple(P @ m @ Pi for m in rep)


def random_change_of_basis(d, rng):
    """A random invertible integer matrix with small entries (unit triangular factors)."""
    lower = [[1 if i == j else (rng.randint(-2, 2) if i > j else 0) for j in range(d)] for i in range(d)]
    upper = [[1 if i == j else (rng.randint(-2, 2) if i < j else 0) for j in range(d)] for i in range(d)]
    return RatMatrix(lower) @ RatMatrix(upper)


def named_reps(G):
    """Building blocks: sign characters, defining/standard/regular representations of small dimension."""
    blocks = [(f"chi{k}", character_rep(G, s)) for k, s in enumerate(homomorphisms_to_sign(G))]
    if G.defining[0].rows <= 5 and G.order > 1:
        blocks.append(("defining", G.defining))
    if G.degree and 2 <= G.degree <= 5:
        blocks.append(("standard", standard_rep(G)))
    if 1 < G.order <= 5:
        blocks.append(("regular", regular_rep(G)))
    return blocks


def random_rep(G, rng, max_dim=5):
    """A random representation of dimension at most ``max_dim`` in a random basis."""
    blocks = named_reps(G)
    chars = [b for name, b in blocks if name.startswith("chi")]
    target = rng.randint(1, max_dim)
    parts, d = [], 0
    while d < target:
        fitting = [b for _, b in blocks if b[0].rows <= target - d]
        b = rng.choice(fitting)
        if rng.random() < 0.3:
            b = tensor_reps(b, rng.choice(chars))
        parts.append(b)
        d += b[0].rows
    rep = sum_reps(*parts)
    return conjugate_rep(rep, random_change_of_basis(d, rng))


def rep_system(BG, rep):
    return LocalSystem(BG, [rep[0].rows], list(rep), validate=False)


# groupoids


def _z(n):
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


@lru_cache(maxsize=None)
def groupoid_corpus():
    """``(name, groupoid)`` pairs: discrete sets, small deloopings and action groupoids."""
    s3 = group("S3").table
    v4 = group("V4").table
    z2, z3, z4 = _z(2), _z(3), _z(4)
    sign_action = [[0, 1] if s == 1 else [1, 0] for s in homomorphisms_to_sign(group("S3"))[1]]
    out = [(f"discrete({n})", discrete(n, label=f"discrete({n})")) for n in range(1, 5)]
    out += [
        ("BZ2", delooping(z2, label="BZ2")),
        ("BZ3", delooping(z3, label="BZ3")),
        ("BS3", delooping(s3, label="BS3")),
        ("Z2//2", action_groupoid(z2, [[0, 1], [1, 0]], label="Z2//2")),
        ("Z2//3", action_groupoid(z2, [[0, 1, 2], [1, 0, 2]], label="Z2//3")),
        ("Z3//3", action_groupoid(z3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]], label="Z3//3")),
        ("Z4//2", action_groupoid(z4, [[0, 1], [1, 0], [0, 1], [1, 0]], label="Z4//2")),
        ("V4//2", action_groupoid(v4, [[0, 1], [1, 0], [0, 1], [1, 0]], label="V4//2")),
        ("S3//2", action_groupoid(s3, sign_action, label="S3//2")),
        ("Z2//4", action_groupoid(z2, [[0, 1, 2, 3], [1, 0, 3, 2]], label="Z2//4")),
    ]
    z2g = delooping(z2, label="BZ2")
    out.append(("BZ2+pt", disjoint_union(z2g, terminal())))
    return tuple(out)


def corpus_groupoid(name):
    return dict(groupoid_corpus())[name]


def small_groupoids(max_morphisms=12):
    return [(n, X) for n, X in groupoid_corpus() if X.morphism_count <= max_morphisms]


# random functors and spans


def _random_hom(G_auts, G_table, H_auts, H_table, rng, tries=20):
    """A random homomorphism between automorphism groups (as index lists into the tables)."""
    gens = generating_set(G_table)
    e_g = next(x for x in range(len(G_table)) if G_table[x][x] == x)
    e_h = next(x for x in range(len(H_table)) if H_table[x][x] == x)
    for _ in range(tries):
        images = [rng.randrange(len(H_table)) for _ in gens]
        phi = _extend(G_table, H_table, gens, images, e_g, e_h)
        if phi is not None:
            return phi
    return {g: e_h for g in range(len(G_table))}


def random_functor(X, Y, rng):
    """A random functor ``X -> Y``: per component, a target object, a random homomorphism of
    automorphism groups, and random transport paths for the other objects."""
    from .groupoid import automorphism_table
    obj = [0] * X.object_count
    trans = [0] * X.object_count          # trans[x] : F(rep) -> F(x) in Y
    loop = {}
    reps = X.representatives()
    for r in reps:
        y = rng.randrange(Y.object_count)
        auts_x, tab_x = automorphism_table(X, r)
        auts_y, tab_y = automorphism_table(Y, y)
        phi = _random_hom(auts_x, tab_x, auts_y, tab_y, rng)
        loop[r] = {auts_x[g]: auts_y[h] for g, h in phi.items()}
        obj[r] = y
        trans[r] = Y.identity[y]
    comp_y = [[y2 for y2 in range(Y.object_count) if Y.component_of(y2) == Y.component_of(y)]
              for y in range(Y.object_count)]
    for x in range(X.object_count):
        r = reps[X.component_of(x)]
        if x == r:
            continue
        y2 = rng.choice(comp_y[obj[r]])
        obj[x] = y2
        trans[x] = rng.choice(Y.hom(obj[r], y2))
    mor = []
    for f in range(X.morphism_count):
        s, t = X.source[f], X.target[f]
        r = reps[X.component_of(s)]
        a = X.then(X.path_from_rep(s), f, X.inverse[X.path_from_rep(t)])
        mor.append(Y.then(Y.inverse[trans[s]], loop[r][a], trans[t]))
    return GroupoidFunctor(X, Y, obj, mor, validate=False)


def random_span(X, Y, rng, apexes):
    Z = rng.choice(apexes)
    return Span(Z, random_functor(Z, X, rng), random_functor(Z, Y, rng))


def random_set_span(A, B, rng, max_apex=6):
    """A random span of finite sets ``A <- Z -> B``; ``A`` and ``B`` must be nonempty."""
    Z = discrete(rng.randint(0, max_apex))
    lo = [rng.randrange(A.object_count) for _ in range(Z.object_count)]
    ro = [rng.randrange(B.object_count) for _ in range(Z.object_count)]
    return Span(Z, GroupoidFunctor(Z, A, lo, lo, validate=False), GroupoidFunctor(Z, B, ro, ro, validate=False))


def random_injective_set_span(A, B, rng):
    """A span of finite sets whose left leg is injective."""
    k = rng.randint(0, A.object_count)
    lo = sorted(rng.sample(range(A.object_count), k))
    if not B.object_count:
        lo = []
    Z = discrete(len(lo))
    ro = [rng.randrange(B.object_count) for _ in lo]
    return Span(Z, GroupoidFunctor(Z, A, lo, lo, validate=False), GroupoidFunctor(Z, B, ro, ro, validate=False))


# decorated objects


def decorated_corpus(rng, count=50):
    """Decorated objects: the three named cases first, then random pairs."""
    z2, s3 = group("Z2"), group("S3")
    BZ2, BS3 = delooping(z2.table, label="BZ2"), delooping(s3.table, label="BS3")
    out = [
        ("BZ2, trivial", DecoratedObject(BZ2, trivial_system(BZ2))),
        ("BZ2, regular", DecoratedObject(BZ2, rep_system(BZ2, regular_rep(z2)))),
        ("BS3, standard", DecoratedObject(BS3, rep_system(BS3, standard_rep(s3)))),
    ]
    small = [G for G in groups() if G.order <= 12]
    while len(out) < count:
        kind = rng.random()
        if kind < 0.6:
            G = rng.choice(small)
            BG = delooping(G.table, label=f"B{G.name}")
            rep = random_rep(G, rng, max_dim=3)
            out.append((f"B{G.name}, dim {rep[0].rows}", DecoratedObject(BG, rep_system(BG, rep))))
        elif kind < 0.85:
            G, action = rng.choice(_decorated_actions())
            X = action_groupoid(G.table, action, label=f"{G.name}//{len(action[0])}")
            rep = random_rep(G, rng, max_dim=2)
            out.append((f"{X.label}, dim {rep[0].rows}",
                        DecoratedObject(X, pulled_back_system(X, G, rep, projection_to_group(X, G)))))
        else:
            n = rng.randint(1, 3)
            X = discrete(n)
            out.append((f"discrete({n}), trivial", DecoratedObject(X, trivial_system(X, rng.randint(1, 2)))))
    return out


def _decorated_actions():
    z2, z3, s3 = group("Z2"), group("Z3"), group("S3")
    sign = homomorphisms_to_sign(s3)[1]
    return [
        (z2, [[0, 1, 2], [1, 0, 2]]),
        (z3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]]),
        (s3, [[0, 1] if e == 1 else [1, 0] for e in sign]),
    ]


def projection_to_group(X, G):
    """``G // S -> BG`` for an action groupoid built by :func:`action_groupoid`."""
    BG = delooping(G.table)
    k = X.object_count
    return GroupoidFunctor(X, BG, [0] * k, [f // k for f in range(X.morphism_count)], validate=False)


def pulled_back_system(X, G, rep, to_group):
    """Restrict a representation of ``G`` along a functor ``X -> BG``."""
    BG = to_group.codomain
    return restrict(rep_system(BG, rep), to_group)
