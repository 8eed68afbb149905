"""Finite groupoids, functors, natural isomorphisms and the constructions on them.

A groupoid is stored as explicit total data: ``object_count`` objects, a list of
morphisms given by ``(source, target)``, an identity per object, an inverse per
morphism and a composition ``compose(g, f) = g o f`` defined exactly when
``target(f) == source(g)``.  Groupoids read from documents carry a literal
composition table; groupoids built here (products, iso-commas, ...) compose via
their construction and materialize the table only on request.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import BadObjectIndex, InvariantViolation, MismatchedCodomain, NotAGroup

AXIOMS = ("counts", "source/target", "identity", "totality", "typing", "unit",
          "inverse", "associativity")


class FiniteGroupoid:
    """A finite category in which every morphism is invertible."""

    def __init__(self, object_count, morphisms, identity, inverse, compose,
                 label=None, validate=True):
        self.object_count = int(object_count)
        self.source = tuple(int(s) for s, _ in morphisms)
        self.target = tuple(int(t) for _, t in morphisms)
        self.identity = tuple(int(i) for i in identity)
        self.inverse = tuple(int(i) for i in inverse)
        self.label = label
        if callable(compose):
            self._table = None
            self._composer = compose
        else:
            self._table = {(int(g), int(f)): int(h) for (g, f), h in dict(compose).items()}
            self._composer = None
        if validate:
            self.validate()

    # basic access

    @property
    def morphism_count(self):
        return len(self.source)

    @property
    def morphisms(self):
        return list(zip(self.source, self.target))

    def compose(self, g, f):
        """``g o f``; requires ``target(f) == source(g)``."""
        if self.target[f] != self.source[g]:
            raise InvariantViolation("typing", f"morphisms {g} and {f} are not composable")
        if self._table is not None:
            try:
                return self._table[g, f]
            except KeyError:
                raise InvariantViolation("totality", f"compose({g}, {f}) undefined", ".compose")
        return self._composer(g, f)

    def then(self, *fs):
        """Compose a path given in diagram order: ``then(a, b, c) = c o b o a``."""
        out = fs[0]
        for f in fs[1:]:
            out = self.compose(f, out)
        return out

    @cached_property
    def _hom_index(self):
        hom = {}
        out = [[] for _ in range(self.object_count)]
        for m, (s, t) in enumerate(zip(self.source, self.target)):
            hom.setdefault((s, t), []).append(m)
            out[s].append(m)
        return ({k: tuple(v) for k, v in hom.items()}, tuple(tuple(o) for o in out))

    def hom(self, x, y):
        return self._hom_index[0].get((x, y), ())

    def out(self, x):
        return self._hom_index[1][x]

    def automorphisms(self, x):
        return self.hom(x, x)

    def composable_pairs(self):
        for f in range(self.morphism_count):
            for g in self.out(self.target[f]):
                yield g, f

    def compose_table(self):
        """The full composition table as a dict ``(g, f) -> g o f``."""
        if self._table is not None:
            return dict(self._table)
        return {(g, f): self._composer(g, f) for g, f in self.composable_pairs()}

    def check_object(self, x):
        if not (isinstance(x, int) and 0 <= x < self.object_count):
            raise BadObjectIndex(f"object {x!r} not in 0..{self.object_count - 1}")
        return x

    # equality is structural; labels are ignored

    def _cheap_key(self):
        return (self.object_count, self.source, self.target, self.identity, self.inverse)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        if self._cheap_key() != other._cheap_key():
            return False
        if self._table is not None and other._table is not None:
            return self._table == other._table
        sig, osig = getattr(self, "_signature", None), getattr(other, "_signature", None)
        if sig is not None and sig == osig:
            return True
        return all(self.compose(g, f) == other.compose(g, f) for g, f in self.composable_pairs())

    def __hash__(self):
        return hash(self._cheap_key())

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<FiniteGroupoid{name}: {self.object_count} objects, {self.morphism_count} morphisms>"

    # validation

    def validate(self):
        """Check every groupoid axiom, raising :class:`InvariantViolation` on the first failure."""
        n, m = self.object_count, self.morphism_count
        if n < 0 or len(self.identity) != n or len(self.inverse) != m:
            raise InvariantViolation("counts", "identity/inverse arrays have the wrong length")
        for i, (s, t) in enumerate(zip(self.source, self.target)):
            if not (0 <= s < n and 0 <= t < n):
                raise InvariantViolation("source/target", f"morphism {i} has endpoint outside 0..{n - 1}",
                                         f".morphisms[{i}]")
        for x, e in enumerate(self.identity):
            if not (0 <= e < m) or self.source[e] != x or self.target[e] != x:
                raise InvariantViolation("identity", f"identity of object {x} is not an endomorphism of it",
                                         f".identity[{x}]")
        for i, j in enumerate(self.inverse):
            if not (0 <= j < m) or self.source[j] != self.target[i] or self.target[j] != self.source[i]:
                raise InvariantViolation("inverse", f"inverse of morphism {i} has the wrong endpoints",
                                         f".inverse[{i}]")
        if self._table is not None:
            expected = sum(len(self.out(self.target[f])) for f in range(m))
            for (g, f), h in self._table.items():
                if not (0 <= g < m and 0 <= f < m) or self.target[f] != self.source[g]:
                    raise InvariantViolation("totality", f"compose defined on non-composable pair ({g}, {f})",
                                             ".compose")
            if len(self._table) != expected:
                missing = next((g, f) for g, f in self.composable_pairs() if (g, f) not in self._table)
                raise InvariantViolation("totality", f"compose missing composable pair {missing}", ".compose")
        for g, f in self.composable_pairs():
            h = self.compose(g, f)
            if not (0 <= h < m) or self.source[h] != self.source[f] or self.target[h] != self.target[g]:
                raise InvariantViolation("typing", f"compose({g}, {f}) = {h} has the wrong endpoints",
                                         ".compose")
        for f in range(m):
            if (self.compose(self.identity[self.target[f]], f) != f
                    or self.compose(f, self.identity[self.source[f]]) != f):
                raise InvariantViolation("unit", f"identities do not act trivially on morphism {f}")
        for f in range(m):
            j = self.inverse[f]
            if (self.compose(j, f) != self.identity[self.source[f]]
                    or self.compose(f, j) != self.identity[self.target[f]]):
                raise InvariantViolation("inverse", f"inverse[{f}] = {j} is not a two-sided inverse",
                                         f".inverse[{f}]")
        for f in range(m):
            for g in self.out(self.target[f]):
                gf = self.compose(g, f)
                for h in self.out(self.target[g]):
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        raise InvariantViolation("associativity", f"({h} o {g}) o {f} != {h} o ({g} o {f})")
        return self

    # components

    @cached_property
    def _components(self):
        comp = [-1] * self.object_count
        reps = []
        for x in range(self.object_count):
            if comp[x] >= 0:
                continue
            k = len(reps)
            reps.append(x)
            comp[x] = k
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for f in self.out(y):
                    z = self.target[f]
                    if comp[z] < 0:
                        comp[z] = k
                        queue.append(z)
        return tuple(comp), tuple(reps)

    def component_of(self, x):
        return self._components[0][x]

    @property
    def component_count(self):
        return len(self._components[1])

    def representatives(self):
        return self._components[1]

    @cached_property
    def _rep_paths(self):
        """For each object x, a chosen morphism rep(x) -> x (identity on representatives)."""
        comp, reps = self._components
        paths = []
        for x in range(self.object_count):
            r = reps[comp[x]]
            paths.append(self.identity[x] if r == x else self.hom(r, x)[0])
        return tuple(paths)

    def path_from_rep(self, x):
        return self._rep_paths[x]


def _index_groupoid(n, keys, src, tgt, compose_key, identity_key, inverse_key, label=None):
    """Build a groupoid from hashable morphism keys and key-level operations."""
    index = {k: i for i, k in enumerate(keys)}
    identity = [index[identity_key(x)] for x in range(n)]
    inverse = [index[inverse_key(k)] for k in keys]

    def composer(g, f):
        return index[compose_key(keys[g], keys[f])]

    return FiniteGroupoid(n, list(zip(src, tgt)), identity, inverse, composer, label=label,
                          validate=False)


class GroupoidFunctor:
    """A functor between finite groupoids given by explicit object and morphism maps."""

    def __init__(self, domain, codomain, object_map, morphism_map, validate=True):
        self.domain = domain
        self.codomain = codomain
        self.object_map = tuple(int(x) for x in object_map)
        self.morphism_map = tuple(int(f) for f in morphism_map)
        if validate:
            self.validate()

    def obj(self, x):
        return self.object_map[x]

    def mor(self, f):
        return self.morphism_map[f]

    def validate(self):
        X, Y = self.domain, self.codomain
        if len(self.object_map) != X.object_count or len(self.morphism_map) != X.morphism_count:
            raise InvariantViolation("functor-counts", "object/morphism map has the wrong length")
        for x, y in enumerate(self.object_map):
            if not 0 <= y < Y.object_count:
                raise InvariantViolation("functor-objects", f"object {x} maps outside the codomain",
                                         f".object_map[{x}]")
        for f, g in enumerate(self.morphism_map):
            if not 0 <= g < Y.morphism_count:
                raise InvariantViolation("functor-morphisms", f"morphism {f} maps outside the codomain",
                                         f".morphism_map[{f}]")
            if Y.source[g] != self.object_map[X.source[f]] or Y.target[g] != self.object_map[X.target[f]]:
                raise InvariantViolation("functor-endpoints", f"morphism {f} is sent to a morphism with the wrong endpoints",
                                         f".morphism_map[{f}]")
        for x in range(X.object_count):
            if self.morphism_map[X.identity[x]] != Y.identity[self.object_map[x]]:
                raise InvariantViolation("functor-identity", f"identity of object {x} not preserved")
        for g, f in X.composable_pairs():
            if self.morphism_map[X.compose(g, f)] != Y.compose(self.morphism_map[g], self.morphism_map[f]):
                raise InvariantViolation("functor-composition", f"composite {g} o {f} not preserved")
        return self

    def then(self, other):
        """Diagram-order composite ``other o self``."""
        if other.domain != self.codomain:
            raise MismatchedCodomain("functors are not composable")
        return GroupoidFunctor(self.domain, other.codomain,
                               [other.object_map[y] for y in self.object_map],
                               [other.morphism_map[g] for g in self.morphism_map], validate=False)

    def __eq__(self, other):
        if not isinstance(other, GroupoidFunctor):
            return NotImplemented
        return (self.object_map == other.object_map and self.morphism_map == other.morphism_map
                and self.domain == other.domain and self.codomain == other.codomain)

    def __hash__(self):
        return hash((self.object_map, self.morphism_map))

    def __repr__(self):
        return f"<GroupoidFunctor {self.domain!r} -> {self.codomain!r}>"


def identity_functor(X):
    return GroupoidFunctor(X, X, range(X.object_count), range(X.morphism_count), validate=False)


def compose_functors(g, f):
    """``g o f``."""
    return f.then(g)


class NaturalIso:
    """A natural isomorphism ``source_functor => target_functor``."""

    def __init__(self, source_functor, target_functor, component, validate=True):
        self.source_functor = source_functor
        self.target_functor = target_functor
        self.component = tuple(int(c) for c in component)
        if validate:
            self.validate()

    def validate(self):
        F, G = self.source_functor, self.target_functor
        if F.domain != G.domain or F.codomain != G.codomain:
            raise InvariantViolation("natural-iso-type", "functors have different domain or codomain")
        X, Y = F.domain, F.codomain
        if len(self.component) != X.object_count:
            raise InvariantViolation("natural-iso-counts", "one component per object required")
        for x, c in enumerate(self.component):
            if not 0 <= c < Y.morphism_count or Y.source[c] != F.obj(x) or Y.target[c] != G.obj(x):
                raise InvariantViolation("natural-iso-component", f"component at {x} has the wrong endpoints",
                                         f".component[{x}]")
        for f in range(X.morphism_count):
            x, y = X.source[f], X.target[f]
            if Y.compose(self.component[y], F.mor(f)) != Y.compose(G.mor(f), self.component[x]):
                raise InvariantViolation("naturality", f"naturality square fails at morphism {f}")
        return self

    def inverse(self):
        Y = self.source_functor.codomain
        return NaturalIso(self.target_functor, self.source_functor,
                          [Y.inverse[c] for c in self.component], validate=False)

    def vcompose(self, other):
        """Vertical composite ``other . self`` (first self, then other)."""
        Y = self.source_functor.codomain
        return NaturalIso(self.source_functor, other.target_functor,
                          [Y.compose(b, a) for a, b in zip(self.component, other.component)],
                          validate=False)

    def whisker_left(self, h):
        """``self * h`` for a functor ``h`` into the common domain."""
        return NaturalIso(h.then(self.source_functor), h.then(self.target_functor),
                          [self.component[h.obj(w)] for w in range(h.domain.object_count)],
                          validate=False)

    def whisker_right(self, k):
        """``k * self`` for a functor ``k`` out of the common codomain."""
        return NaturalIso(self.source_functor.then(k), self.target_functor.then(k),
                          [k.mor(c) for c in self.component], validate=False)

    def __repr__(self):
        return f"<NaturalIso on {self.source_functor.domain!r}>"


def identity_iso(F):
    Y = F.codomain
    return NaturalIso(F, F, [Y.identity[F.obj(x)] for x in range(F.domain.object_count)],
                      validate=False)


# elementary groupoids


def discrete(n, label=None):
    """The discrete groupoid on ``n`` objects."""
    return FiniteGroupoid(n, [(x, x) for x in range(n)], range(n), range(n),
                          {(x, x): x for x in range(n)}, label=label or f"discrete({n})")


def terminal():
    return discrete(1, label="*")


def check_group_table(table):
    """Validate a multiplication table ``table[g][h] = g*h``; returns the identity index."""
    n = len(table)
    if n == 0:
        raise NotAGroup("nonempty", "a group has at least one element")
    for i, row in enumerate(table):
        if len(row) != n or any(not (isinstance(v, int) and 0 <= v < n) for v in row):
            raise NotAGroup("closure", f"row {i} is not a map into the {n} elements")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise NotAGroup("associativity", f"({a}*{b})*{c} != {a}*({b}*{c})")
    units = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not units:
        raise NotAGroup("unit", "no two-sided identity element")
    e = units[0]
    for g in range(n):
        if not any(table[g][h] == e and table[h][g] == e for h in range(n)):
            raise NotAGroup("inverses", f"element {g} has no inverse")
    return e


def delooping(table, label=None):
    """The one-object groupoid ``BG`` of a group given by its multiplication table."""
    table = [list(r) for r in table]
    e = check_group_table(table)
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == e) for g in range(n)]
    comp = {(g, f): table[g][f] for g in range(n) for f in range(n)}
    return FiniteGroupoid(1, [(0, 0)] * n, [e], inv, comp, label=label, validate=False)


def action_groupoid(table, action, label=None):
    """The action groupoid of ``G`` acting on ``{0..k-1}`` by ``action[g][s] = g.s``.

    Morphism ``g * k + s`` goes from ``s`` to ``g.s``.
    """
    table = [list(r) for r in table]
    e = check_group_table(table)
    n = len(table)
    k = len(action[0]) if action else 0
    if len(action) != n or any(sorted(row) != list(range(k)) for row in action):
        raise InvariantViolation("action", "each group element must act by a permutation")
    if any(action[e][s] != s for s in range(k)):
        raise InvariantViolation("action", "identity does not act trivially")
    for g in range(n):
        for h in range(n):
            for s in range(k):
                if action[table[g][h]][s] != action[g][action[h][s]]:
                    raise InvariantViolation("action", f"(g h).s != g.(h.s) for g={g}, h={h}, s={s}")
    inv = [next(h for h in range(n) if table[g][h] == e) for g in range(n)]
    morphisms = [(s, action[g][s]) for g in range(n) for s in range(k)]

    def composer(a, b):
        return table[a // k][b // k] * k + b % k

    return FiniteGroupoid(k, morphisms, [e * k + s for s in range(k)],
                          [inv[g] * k + action[g][s] for g in range(n) for s in range(k)],
                          composer, label=label, validate=False)


def disjoint_union(X, Y):
    """``X + Y``; objects and morphisms of ``Y`` are shifted past those of ``X``."""
    nx, mx = X.object_count, X.morphism_count
    morphisms = X.morphisms + [(s + nx, t + nx) for s, t in Y.morphisms]

    def composer(g, f):
        return X.compose(g, f) if g < mx else Y.compose(g - mx, f - mx) + mx

    return FiniteGroupoid(nx + Y.object_count, morphisms,
                          list(X.identity) + [i + mx for i in Y.identity],
                          list(X.inverse) + [i + mx for i in Y.inverse], composer,
                          label=_join_labels(X, Y, "+"), validate=False)


def coproduct_injections(X, Y):
    U = disjoint_union(X, Y)
    nx, mx = X.object_count, X.morphism_count
    i = GroupoidFunctor(X, U, range(nx), range(mx), validate=False)
    j = GroupoidFunctor(Y, U, [y + nx for y in range(Y.object_count)],
                        [g + mx for g in range(Y.morphism_count)], validate=False)
    return U, i, j


def product(X, Y):
    """``X x Y``: object ``(x, y)`` has index ``x * |ob Y| + y``, morphisms likewise."""
    ny, my = Y.object_count, Y.morphism_count
    morphisms = [(sx * ny + sy, tx * ny + ty) for sx, tx in X.morphisms for sy, ty in Y.morphisms]

    def composer(g, f):
        return X.compose(g // my, f // my) * my + Y.compose(g % my, f % my)

    P = FiniteGroupoid(X.object_count * ny, morphisms,
                       [X.identity[x] * my + Y.identity[y] for x in range(X.object_count) for y in range(ny)],
                       [X.inverse[f] * my + Y.inverse[g] for f in range(X.morphism_count) for g in range(my)],
                       composer, label=_join_labels(X, Y, "x"), validate=False)
    P._signature = ("product", X, Y)
    return P


def _join_labels(X, Y, op):
    if X.label and Y.label:
        return f"({X.label} {op} {Y.label})"
    return None


def product_functor(F, G, domain=None, codomain=None):
    """``F x G : A x B -> C x D``."""
    A = domain if domain is not None else product(F.domain, G.domain)
    C = codomain if codomain is not None else product(F.codomain, G.codomain)
    nd, md = G.codomain.object_count, G.codomain.morphism_count
    obj = [F.obj(a) * nd + G.obj(b) for a in range(F.domain.object_count) for b in range(G.domain.object_count)]
    mor = [F.mor(f) * md + G.mor(g) for f in range(F.domain.morphism_count) for g in range(G.domain.morphism_count)]
    return GroupoidFunctor(A, C, obj, mor, validate=False)


def projections(X, Y, P=None):
    P = P if P is not None else product(X, Y)
    ny, my = Y.object_count, Y.morphism_count
    p1 = GroupoidFunctor(P, X, [o // ny for o in range(P.object_count)],
                         [f // my for f in range(P.morphism_count)], validate=False)
    p2 = GroupoidFunctor(P, Y, [o % ny for o in range(P.object_count)],
                         [f % my for f in range(P.morphism_count)], validate=False)
    return p1, p2


def pairing(F, G, codomain=None):
    """``(F, G) : A -> C x D``."""
    C = codomain if codomain is not None else product(F.codomain, G.codomain)
    nd, md = G.codomain.object_count, G.codomain.morphism_count
    A = F.domain
    return GroupoidFunctor(A, C, [F.obj(a) * nd + G.obj(a) for a in range(A.object_count)],
                           [F.mor(f) * md + G.mor(f) for f in range(A.morphism_count)], validate=False)


def diagonal(X, XX=None):
    """``delta : X -> X x X``."""
    XX = XX if XX is not None else product(X, X)
    n, m = X.object_count, X.morphism_count
    return GroupoidFunctor(X, XX, [x * n + x for x in range(n)], [f * m + f for f in range(m)],
                           validate=False)


def swap_functor(X, Y, XY=None, YX=None):
    """``X x Y -> Y x X``."""
    XY = XY if XY is not None else product(X, Y)
    YX = YX if YX is not None else product(Y, X)
    nx, ny, mx, my = X.object_count, Y.object_count, X.morphism_count, Y.morphism_count
    return GroupoidFunctor(XY, YX, [(o % ny) * nx + o // ny for o in range(XY.object_count)],
                           [(f % my) * mx + f // my for f in range(XY.morphism_count)], validate=False)


def terminal_map(X, point=None):
    point = point if point is not None else terminal()
    return GroupoidFunctor(X, point, [0] * X.object_count, [point.identity[0]] * X.morphism_count,
                           validate=False)


def point_inclusion(Y, y, point=None):
    """The functor ``* -> Y`` picking out the object ``y``."""
    Y.check_object(y)
    point = point if point is not None else terminal()
    return GroupoidFunctor(point, Y, [y], [Y.identity[y]], validate=False)


def full_subgroupoid(X, objects, label=None):
    """Full subgroupoid on the given objects (kept in the given order) with its inclusion."""
    objects = list(objects)
    pos = {x: i for i, x in enumerate(objects)}
    mors = [f for x in objects for y in objects for f in X.hom(x, y)]
    # keep X's morphism order for determinism
    mors.sort()
    mpos = {f: i for i, f in enumerate(mors)}

    def composer(g, f):
        return mpos[X.compose(mors[g], mors[f])]

    S = FiniteGroupoid(len(objects), [(pos[X.source[f]], pos[X.target[f]]) for f in mors],
                       [mpos[X.identity[x]] for x in objects], [mpos[X.inverse[f]] for f in mors],
                       composer, label=label, validate=False)
    inc = GroupoidFunctor(S, X, objects, mors, validate=False)
    return S, inc


# homotopy pullbacks


def iso_comma(f, g):
    """The iso-comma groupoid of ``f : A -> C`` and ``g : B -> C``.

    Objects are triples ``(a, b, alpha : f(a) -> g(b))`` enumerated by ``a``, then
    ``b``, then ``alpha``; a morphism ``(u, v)`` out of ``(a, b, alpha)`` goes to
    ``(a', b', g(v) o alpha o f(u)^-1)``.  Returns ``(P, pA, pB, filler)`` where
    ``filler : f o pA => g o pB`` has component ``alpha`` at ``(a, b, alpha)``.
    """
    if f.codomain != g.codomain:
        raise MismatchedCodomain("iso_comma needs functors with a common codomain")
    A, B, C = f.domain, g.domain, f.codomain
    triples = [(a, b, al) for a in range(A.object_count) for b in range(B.object_count)
               for al in C.hom(f.obj(a), g.obj(b))]
    return _iso_comma_on(f, g, triples, None)


def _iso_comma_on(f, g, triples, stabilizers):
    """Iso-comma restricted to the given objects.

    With ``stabilizers=None`` all morphisms out of each object are included (this is
    only a groupoid when ``triples`` is closed under morphisms); otherwise
    ``stabilizers[i]`` lists the ``(u, v)`` endomorphisms kept at object ``i``.
    """
    A, B, C = f.domain, g.domain, f.codomain
    opos = {t: i for i, t in enumerate(triples)}
    keys, src, tgt = [], [], []
    for i, (a, b, al) in enumerate(triples):
        if stabilizers is None:
            pairs = [(u, v) for u in A.out(a) for v in B.out(b)]
        else:
            pairs = stabilizers[i]
        for u, v in pairs:
            al2 = C.compose(C.compose(g.mor(v), al), C.inverse[f.mor(u)])
            keys.append((i, u, v))
            src.append(i)
            tgt.append(opos[(A.target[u], B.target[v], al2)])

    def compose_key(k2, k1):
        return (k1[0], A.compose(k2[1], k1[1]), B.compose(k2[2], k1[2]))

    def identity_key(i):
        a, b, _ = triples[i]
        return (i, A.identity[a], B.identity[b])

    tgt_of = dict(zip(keys, tgt))

    def inverse_key(k):
        return (tgt_of[k], A.inverse[k[1]], B.inverse[k[2]])

    P = _index_groupoid(len(triples), keys, src, tgt, compose_key, identity_key, inverse_key)
    pA = GroupoidFunctor(P, A, [t[0] for t in triples], [k[1] for k in keys], validate=False)
    pB = GroupoidFunctor(P, B, [t[1] for t in triples], [k[2] for k in keys], validate=False)
    filler = NaturalIso(pA.then(f), pB.then(g), [t[2] for t in triples], validate=False)
    P.object_labels = tuple(triples)
    return P, pA, pB, filler


def iso_comma_reduced(f, g):
    """A skeletal model of :func:`iso_comma`: the full subgroupoid of ``P`` on one
    object per connected component.

    Components are enumerated over representatives ``a``, ``b`` of ``A`` and ``B``;
    objects over ``(a, b)`` are orbits of ``alpha`` under ``alpha -> g(v) alpha f(u)^-1``,
    represented by the least-index ``alpha``, with their stabilizers as automorphisms.
    """
    if f.codomain != g.codomain:
        raise MismatchedCodomain("iso_comma needs functors with a common codomain")
    A, B, C = f.domain, g.domain, f.codomain
    triples, stabs = [], []
    b_data = []
    for b in B.representatives():
        auts = B.automorphisms(b)
        pre = {}
        for v in auts:
            pre.setdefault(g.mor(v), []).append(v)
        b_data.append((b, pre))
    for a in A.representatives():
        auts_a = A.automorphisms(a)
        fa = f.obj(a)
        k_img = sorted({f.mor(u) for u in auts_a})
        k_inv = [C.inverse[k] for k in k_img]
        for b, pre in b_data:
            gb = g.obj(b)
            hom = C.hom(fa, gb)
            if not hom:
                continue
            h_img = sorted(pre)
            seen = set()
            for al in hom:
                if al in seen:
                    continue
                for h in h_img:
                    hal = C.compose(h, al)
                    for ki in k_inv:
                        seen.add(C.compose(hal, ki))
                al_inv = C.inverse[al]
                stab = []
                for u in auts_a:
                    t = C.compose(C.compose(al, f.mor(u)), al_inv)
                    for v in pre.get(t, ()):
                        stab.append((u, v))
                triples.append((a, b, al))
                stabs.append(stab)
    return _iso_comma_on(f, g, triples, stabs)


def homotopy_fiber(f, y):
    """Homotopy fiber of ``f : X -> Y`` over ``y`` with its map to ``X``."""
    f.codomain.check_object(y)
    pt = point_inclusion(f.codomain, y)
    F, pX, _, _ = iso_comma(f, pt)
    return F, pX


def _fiber_profile(f, y):
    """``(component count, automorphism group orders)`` of the homotopy fiber over ``y``."""
    pt = point_inclusion(f.codomain, y)
    F, _, _, _ = iso_comma_reduced(f, pt)
    return [len(F.automorphisms(x)) for x in range(F.object_count)]


def truncation_level(f):
    """Least ``m`` in ``{-2, -1, 0, 1}`` such that every homotopy fiber of ``f`` is m-truncated."""
    level = -2
    for y in f.codomain.representatives():
        orders = _fiber_profile(f, y)
        if len(orders) == 1 and orders[0] == 1:
            fl = -2
        elif not orders:
            fl = -1
        elif all(o == 1 for o in orders):
            fl = 0
        else:
            fl = 1
        level = max(level, fl)
    return level


def is_equivalence(f):
    """Fully faithful and essentially surjective (checked directly on hom-sets)."""
    X, Y = f.domain, f.codomain
    hit = {Y.component_of(f.obj(x)) for x in range(X.object_count)}
    if len(hit) != Y.component_count:
        return False
    for x in range(X.object_count):
        for x2 in range(X.object_count):
            image = sorted(f.mor(u) for u in X.hom(x, x2))
            if image != sorted(Y.hom(f.obj(x), f.obj(x2))):
                return False
    return True


def quasi_inverse(f):
    """For an equivalence ``f``, return ``(g, unit, counit)`` with
    ``unit : g o f => id`` and ``counit : f o g => id``; ``None`` otherwise."""
    if not is_equivalence(f):
        return None
    X, Y = f.domain, f.codomain
    chosen = {}
    for x in range(X.object_count):
        chosen.setdefault(Y.component_of(f.obj(x)), x)
    gobj, beta = [], []
    for y in range(Y.object_count):
        x = chosen[Y.component_of(y)]
        gobj.append(x)
        beta.append(Y.hom(f.obj(x), y)[0])
    lift = {}
    for x in set(gobj):
        for x2 in set(gobj):
            for u in X.hom(x, x2):
                lift[f.mor(u)] = u
    gmor = []
    for h in range(Y.morphism_count):
        y, y2 = Y.source[h], Y.target[h]
        t = Y.then(beta[y], h, Y.inverse[beta[y2]])
        gmor.append(lift[t])
    g = GroupoidFunctor(Y, X, gobj, gmor, validate=False)
    counit = NaturalIso(g.then(f), identity_functor(Y), beta, validate=False)
    # unit at x is the unique u : g(f(x)) -> x lifting beta at f(x)
    unit_comp = []
    for x in range(X.object_count):
        x0 = gobj[f.obj(x)]
        u = next(u for u in X.hom(x0, x) if f.mor(u) == beta[f.obj(x)])
        unit_comp.append(u)
    unit = NaturalIso(f.then(g), identity_functor(X), unit_comp, validate=False)
    return g, unit, counit


# skeleta and invariants


@dataclass(frozen=True)
class Component:
    representative: int
    automorphisms: tuple
    table: tuple
    members: tuple

    @property
    def order(self):
        return len(self.automorphisms)


@dataclass(frozen=True)
class Skeleton:
    source: FiniteGroupoid
    groupoid: FiniteGroupoid
    components: tuple
    to_skeleton: GroupoidFunctor
    from_skeleton: GroupoidFunctor
    unit: NaturalIso
    counit: NaturalIso

    @property
    def round_trip_witnesses(self):
        """``(from o to => id_X, to o from => id_S)``."""
        return self.unit, self.counit


def automorphism_table(X, x):
    auts = X.automorphisms(x)
    pos = {f: i for i, f in enumerate(auts)}
    return auts, tuple(tuple(pos[X.compose(g, f)] for f in auts) for g in auts)


def skeleton(X):
    """One object per component (the least index) with transport functors and witnesses."""
    reps = X.representatives()
    comps = []
    for k, r in enumerate(reps):
        auts, table = automorphism_table(X, r)
        members = tuple(x for x in range(X.object_count) if X.component_of(x) == k)
        comps.append(Component(r, auts, table, members))
    S, inc = full_subgroupoid(X, reps, label=f"sk({X.label})" if X.label else None)
    spos = {f: i for i, f in enumerate(inc.morphism_map)}
    paths = X._rep_paths
    to_obj = [X.component_of(x) for x in range(X.object_count)]
    to_mor = []
    for f in range(X.morphism_count):
        t = X.then(paths[X.source[f]], f, X.inverse[paths[X.target[f]]])
        to_mor.append(spos[t])
    to = GroupoidFunctor(X, S, to_obj, to_mor, validate=False)
    unit = NaturalIso(to.then(inc), identity_functor(X), paths, validate=False)
    counit = NaturalIso(inc.then(to), identity_functor(S), S.identity, validate=False)
    return Skeleton(X, S, tuple(comps), to, inc, unit, counit)


def cardinality(X):
    """Homotopy cardinality: sum over components of ``1 / |Aut(representative)|``."""
    return sum((Fraction(1, len(X.automorphisms(r))) for r in X.representatives()), Fraction(0))


def inertia(X):
    """The free-loop groupoid: objects ``(x, phi in Aut(x))``, morphisms conjugations."""
    return inertia_with_projection(X)[0]


def inertia_with_projection(X):
    pairs = [(x, p) for x in range(X.object_count) for p in X.automorphisms(x)]
    opos = {t: i for i, t in enumerate(pairs)}
    keys, src, tgt = [], [], []
    for i, (x, p) in enumerate(pairs):
        for u in X.out(x):
            keys.append((i, u))
            src.append(i)
            tgt.append(opos[(X.target[u], X.then(X.inverse[u], p, u))])
    tgt_of = dict(zip(keys, tgt))
    L = _index_groupoid(len(pairs), keys, src, tgt,
                        lambda k2, k1: (k1[0], X.compose(k2[1], k1[1])),
                        lambda i: (i, X.identity[pairs[i][0]]),
                        lambda k: (tgt_of[k], X.inverse[k[1]]),
                        label=f"inertia({X.label})" if X.label else None)
    L.object_labels = tuple(pairs)
    proj = GroupoidFunctor(L, X, [x for x, _ in pairs], [u for _, u in keys], validate=False)
    return L, proj
