"""Independent reference computations used to check the main algorithms.

Nothing here calls the iso-comma, skeleton or elimination code.  Homotopy
cardinality is computed as ``sum over objects of 1 / |morphisms out of x|``, which
equals the component formula since a component with ``k`` objects and automorphism
group of order ``a`` has ``k * a`` morphisms out of each object.
"""

from __future__ import annotations

from fractions import Fraction


def _components(X):
    """Union-find over morphisms; component labels are least object indices."""
    parent = list(range(X.object_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in range(X.morphism_count):
        a, b = find(X.source[f]), find(X.target[f])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in range(X.object_count)})
    pos = {r: i for i, r in enumerate(roots)}
    return [pos[find(x)] for x in range(X.object_count)], len(roots)


def _out_counts(X):
    counts = [0] * X.object_count
    for s in X.source:
        counts[s] += 1
    return counts


def cardinality(X):
    out = _out_counts(X)
    return sum((Fraction(1, out[x]) for x in range(X.object_count)), Fraction(0))


def _hom_counts(Y):
    counts = {}
    for f in range(Y.morphism_count):
        key = (Y.source[f], Y.target[f])
        counts[key] = counts.get(key, 0) + 1
    return counts


def linearize(S):
    """Brute-force fiber enumeration.

    The homotopy fiber of ``r`` over ``y`` has objects ``(z, alpha : r(z) -> y)``; each
    has exactly ``|out(z)|`` outgoing morphisms, so its contribution to the weighted
    component count is ``1 / |out(z)|``.
    """
    X, Y, Z = S.source, S.target, S.apex
    cx, nx = _components(X)
    cy, ny = _components(Y)
    out = _out_counts(Z)
    hom = _hom_counts(Y)
    reps = [min(y for y in range(Y.object_count) if cy[y] == k) for k in range(ny)]
    grid = [[Fraction(0)] * nx for _ in range(ny)]
    for j, y in enumerate(reps):
        for z in range(Z.object_count):
            h = hom.get((S.right.obj(z), y), 0)
            if h:
                grid[j][cx[S.left.obj(z)]] += Fraction(h, out[z])
    return grid


def burnside_matrix(S):
    """Span of finite sets: ``entry (b, a) = #{z : left z = a, right z = b}``."""
    grid = [[0] * S.source.object_count for _ in range(S.target.object_count)]
    for z in range(S.apex.object_count):
        grid[S.right.obj(z)][S.left.obj(z)] += 1
    return grid


def set_pullback_matrix(S, T):
    """Fiber counts of the ordinary pullback of two spans of finite sets."""
    grid = [[0] * S.source.object_count for _ in range(T.target.object_count)]
    for z in range(S.apex.object_count):
        for v in range(T.apex.object_count):
            if S.right.obj(z) == T.left.obj(v):
                grid[T.right.obj(v)][S.left.obj(z)] += 1
    return grid


def character_average(rep):
    """``(1 / |G|) * sum of traces``; ``rep`` lists one matrix per group element."""
    total = Fraction(0)
    for m in rep:
        total += sum((m[i, i] for i in range(m.rows)), Fraction(0))
    return total / len(rep)


def system_character_average(L):
    """Sum over components of the character average of the automorphism-group action."""
    X = L.base
    comp, n = _components(X)
    total = Fraction(0)
    for k in range(n):
        r = comp.index(k)
        loops = [f for f in range(X.morphism_count) if X.source[f] == r and X.target[f] == r]
        total += character_average([L.action(f) for f in loops])
    return total


def inertia_cardinality(X):
    """``|{(x, g in Aut x)}| / |out|`` summed, i.e. the cardinality of the free-loop groupoid."""
    out = _out_counts(X)
    total = Fraction(0)
    for x in range(X.object_count):
        loops = sum(1 for f in range(X.morphism_count) if X.source[f] == x and X.target[f] == x)
        # each (x, g) has |out(x)| morphisms out of it in the inertia groupoid
        total += Fraction(loops, out[x])
    return total
