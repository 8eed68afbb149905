"""Local systems of finite-dimensional rational vector spaces on finite groupoids."""

from __future__ import annotations

from .errors import BaseMismatch, InvariantViolation
from .groupoid import product
from .matrix import RatMatrix, block_diagonal


class LocalSystem:
    """A functor from ``base`` to finite-dimensional Q-vector spaces.

    ``actions`` may be a sequence (one matrix per morphism) or a callable computing
    the matrix of a morphism on demand; either way results are cached.
    """

    def __init__(self, base, dims, actions, validate=True):
        self.base = base
        self.dims = tuple(int(d) for d in dims)
        if callable(actions):
            self._fn = actions
            self._cache = {}
        else:
            self._fn = None
            self._cache = dict(enumerate(actions))
            if len(self._cache) != base.morphism_count:
                raise InvariantViolation("local-system-counts", "one action matrix per morphism required",
                                         ".action")
        if validate:
            self.validate()

    def dim(self, x):
        return self.dims[x]

    def action(self, f):
        m = self._cache.get(f)
        if m is None:
            m = self._fn(f)
            self._cache[f] = m
        return m

    def actions(self):
        return [self.action(f) for f in range(self.base.morphism_count)]

    def validate(self):
        X = self.base
        if len(self.dims) != X.object_count or any(d < 0 for d in self.dims):
            raise InvariantViolation("local-system-dims", "one non-negative dimension per object required",
                                     ".dim")
        for f in range(X.morphism_count):
            m = self.action(f)
            if m.shape != (self.dims[X.target[f]], self.dims[X.source[f]]):
                raise InvariantViolation("local-system-shape",
                                         f"action of morphism {f} has shape {m.shape}, expected "
                                         f"{(self.dims[X.target[f]], self.dims[X.source[f]])}",
                                         f".action[{f}]")
        for x in range(X.object_count):
            if not self.action(X.identity[x]).is_identity():
                raise InvariantViolation("local-system-identity", f"identity at object {x} acts non-trivially",
                                         f".action[{X.identity[x]}]")
        for g, f in X.composable_pairs():
            h = X.compose(g, f)
            if self.action(h) != self.action(g) @ self.action(f):
                raise InvariantViolation("local-system-functoriality",
                                         f"action({g} o {f}) != action({g}) action({f})", f".action[{h}]")
        return self

    def __eq__(self, other):
        if not isinstance(other, LocalSystem):
            return NotImplemented
        return (self.dims == other.dims and self.base == other.base
                and all(self.action(f) == other.action(f) for f in range(self.base.morphism_count)))

    def __repr__(self):
        return f"<LocalSystem on {self.base!r}, dims {list(self.dims)}>"


def trivial_system(base, rank=1):
    one = RatMatrix.identity(rank)
    return LocalSystem(base, [rank] * base.object_count, lambda f: one, validate=False)


def restrict(L, f):
    """Pull ``L`` back along ``f : X -> base(L)``."""
    if f.codomain != L.base:
        raise BaseMismatch("restrict: functor codomain differs from the local system's base")
    return LocalSystem(f.domain, [L.dim(f.obj(x)) for x in range(f.domain.object_count)],
                       lambda m: L.action(f.mor(m)), validate=False)


def dual_local_system(L):
    """Pointwise duals; a morphism acts by the inverse transpose."""
    X = L.base
    return LocalSystem(X, L.dims, lambda f: L.action(X.inverse[f]).T, validate=False)


def tensor_systems(L, M, base=None):
    """``(L x M)(x, y) = L(x) (x) M(y)`` on the product groupoid (Kronecker order)."""
    base = base if base is not None else product(L.base, M.base)
    my = M.base.morphism_count
    return LocalSystem(base, [a * b for a in L.dims for b in M.dims],
                       lambda f: L.action(f // my).kron(M.action(f % my)), validate=False)


def direct_sum(L, M):
    if L.base != M.base:
        raise BaseMismatch("direct sum needs a common base")
    return LocalSystem(L.base, [a + b for a, b in zip(L.dims, M.dims)],
                       lambda f: block_diagonal([L.action(f), M.action(f)]), validate=False)


def conjugate_system(L, changes):
    """Change basis at every object: ``action'(f) = P_t action(f) P_s^-1``."""
    X = L.base
    inv = [p.inverse() for p in changes]
    return LocalSystem(X, L.dims, lambda f: changes[X.target[f]] @ L.action(f) @ inv[X.source[f]],
                       validate=False)


def materialize(L):
    """Replace a lazily defined system by one holding every action matrix."""
    return LocalSystem(L.base, L.dims, L.actions(), validate=False)


class LSMap:
    """A natural transformation of local systems over one base."""

    def __init__(self, source, target, component, validate=True):
        self.source = source
        self.target = target
        self.component = tuple(component)
        if validate:
            self.validate()

    def validate(self):
        S, T = self.source, self.target
        if S.base != T.base:
            raise BaseMismatch("LSMap between local systems on different bases")
        X = S.base
        if len(self.component) != X.object_count:
            raise InvariantViolation("lsmap-counts", "one component per object required", ".component")
        for x, c in enumerate(self.component):
            if c.shape != (T.dim(x), S.dim(x)):
                raise InvariantViolation("lsmap-shape", f"component at {x} has shape {c.shape}",
                                         f".component[{x}]")
        for f in range(X.morphism_count):
            s, t = X.source[f], X.target[f]
            if T.action(f) @ self.component[s] != self.component[t] @ S.action(f):
                raise InvariantViolation("naturality", f"naturality fails at morphism {f}")
        return self

    def is_invertible(self):
        return all(c.is_invertible() for c in self.component)

    def inverse(self):
        return LSMap(self.target, self.source, [c.inverse() for c in self.component], validate=False)

    def then(self, other):
        """Vertical composite ``other o self``."""
        return LSMap(self.source, other.target,
                     [b @ a for a, b in zip(self.component, other.component)], validate=False)

    def restrict(self, f):
        return LSMap(restrict(self.source, f), restrict(self.target, f),
                     [self.component[f.obj(x)] for x in range(f.domain.object_count)], validate=False)

    def __eq__(self, other):
        if not isinstance(other, LSMap):
            return NotImplemented
        return self.component == other.component

    def __repr__(self):
        return f"<LSMap on {self.source.base!r}>"


def identity_map(L):
    return LSMap(L, L, [RatMatrix.identity(d) for d in L.dims], validate=False)


def tensor_maps(a, b, source=None, target=None):
    """Pointwise Kronecker product of two LSMaps on the product base."""
    source = source if source is not None else tensor_systems(a.source, b.source)
    target = target if target is not None else tensor_systems(a.target, b.target, base=source.base)
    return LSMap(source, target, [ca.kron(cb) for ca in a.component for cb in b.component],
                 validate=False)
