"""Spans decorated by local systems, duality data, and the finite path integral.

A decorated span ``(X, L) -> (Y, M)`` is a span ``X <-l- Z -r-> Y`` with a local
system ``K`` on ``Z``, an invertible ``T : K => l*L`` and an arbitrary
``S : K => r*M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .equivalence import find_equivalence
from .errors import InvariantViolation, MismatchedBoundary, NonConstantScalar
from .groupoid import product, swap_functor, terminal
from .linearize import colimit_ls
from .local_systems import (
    LSMap, LocalSystem, dual_local_system, identity_map, restrict, tensor_systems, trivial_system,
)
from .matrix import RatMatrix
from .span import Span, compose_with_data, duality_spans, from_map, identity_span, tensor


@dataclass(frozen=True, eq=False)
class DecoratedObject:
    space: object
    system: LocalSystem

    def __post_init__(self):
        if self.system.base != self.space:
            raise InvariantViolation("decorated-object-base", "system must live on the space", ".system")

    def __eq__(self, other):
        if not isinstance(other, DecoratedObject):
            return NotImplemented
        if self is other:
            return True
        return self.space == other.space and self.system == other.system

    def __hash__(self):
        return hash((self.space, self.system.dims))


@dataclass(frozen=True, eq=False)
class DecoratedSpan:
    source: DecoratedObject
    target: DecoratedObject
    carrier: Span
    apex_system: LocalSystem
    left_dec: LSMap
    right_dec: LSMap

    def validate(self):
        S = self.carrier
        if S.source != self.source.space or S.target != self.target.space:
            raise MismatchedBoundary("carrier feet differ from the decorated objects")
        if self.apex_system.base != S.apex:
            raise InvariantViolation("apex-system-base", "apex system must live on the apex", ".apex_system")
        self.apex_system.validate()
        for name, dec, leg, obj in (("left_dec", self.left_dec, S.left, self.source),
                                    ("right_dec", self.right_dec, S.right, self.target)):
            expected = restrict(obj.system, leg)
            check = LSMap(self.apex_system, expected, dec.component, validate=False)
            try:
                check.validate()
            except InvariantViolation as exc:
                raise InvariantViolation(exc.axiom, exc.detail, f".{name}{exc.path}") from None
        for z, c in enumerate(self.left_dec.component):
            if not c.is_invertible():
                raise InvariantViolation("pi-cartesian", f"left decoration at {z} is not invertible",
                                         f".left_dec.component[{z}]")
        return self


def unit_object():
    pt = terminal()
    return DecoratedObject(pt, trivial_system(pt))


def tensor_objects(A, B, space=None):
    space = space if space is not None else product(A.space, B.space)
    return DecoratedObject(space, tensor_systems(A.system, B.system, space))


def _lsmap(apex_system, obj, leg, component):
    return LSMap(apex_system, restrict(obj.system, leg), component, validate=False)


def decorated_identity(A):
    S = identity_span(A.space)
    ident = identity_map(A.system)
    return DecoratedSpan(A, A, S, A.system, _lsmap(A.system, A, S.left, ident.component),
                         _lsmap(A.system, A, S.right, ident.component))


def decorated_from_map(f, A, B, component):
    """``A <-id- A -f-> B`` with right decoration ``component[x] : L_A(x) -> L_B(f x)``."""
    S = from_map(f)
    ident = identity_map(A.system)
    return DecoratedSpan(A, B, S, A.system, _lsmap(A.system, A, S.left, ident.component),
                         _lsmap(A.system, B, S.right, component))


def decorated_compose(D, E, reduced=False):
    """First ``D``, then ``E``.

    At ``p = (z, v, a : r_D z -> l_E v)`` the right decoration is
    ``S_E(v) T_E(v)^-1 M(a) S_D(z)`` and the left one is ``T_D(z)``.
    """
    if D.target != E.source:
        raise MismatchedBoundary("decorated spans do not share the middle object")
    carrier, pZ, pV, filler = compose_with_data(D.carrier, E.carrier, reduced)
    P = carrier.apex
    M = D.target.system
    K = restrict(D.apex_system, pZ)
    t_inv = {}
    left, right = [], []
    for p in range(P.object_count):
        z, v = pZ.obj(p), pV.obj(p)
        if v not in t_inv:
            t_inv[v] = E.left_dec.component[v].inverse()
        left.append(D.left_dec.component[z])
        right.append(E.right_dec.component[v] @ t_inv[v] @ M.action(filler.component[p])
                     @ D.right_dec.component[z])
    return DecoratedSpan(D.source, E.target, carrier, K, _lsmap(K, D.source, carrier.left, left),
                         _lsmap(K, E.target, carrier.right, right))


def decorated_tensor(D, E, source=None, target=None):
    source = source if source is not None else tensor_objects(D.source, E.source)
    target = target if target is not None else tensor_objects(D.target, E.target)
    carrier = tensor(D.carrier, E.carrier, source.space, target.space)
    K = tensor_systems(D.apex_system, E.apex_system, carrier.apex)

    def kron(a, b):
        return [x.kron(y) for x in a.component for y in b.component]

    return DecoratedSpan(source, target, carrier, K,
                         _lsmap(K, source, carrier.left, kron(D.left_dec, E.left_dec)),
                         _lsmap(K, target, carrier.right, kron(D.right_dec, E.right_dec)))


def _pairing_row(d):
    return RatMatrix.row([1 if j % (d + 1) == 0 else 0 for j in range(d * d)])


def dual_data(A, XX=None, unit=None):
    """Return ``(dual, ev : A (x) dual -> 1, coev : 1 -> dual (x) A)``."""
    X, L = A.space, A.system
    XX = XX if XX is not None else product(X, X)
    unit = unit if unit is not None else unit_object()
    dual = DecoratedObject(X, dual_local_system(L))
    tr, cotr = duality_spans(X, XX, unit.space)
    # ev: pointwise evaluation pairing on L(x) (x) L(x)^*
    left_obj = tensor_objects(A, dual, XX)
    K = restrict(left_obj.system, tr.left)
    ev = DecoratedSpan(left_obj, unit, tr, K,
                       _lsmap(K, left_obj, tr.left, identity_map(K).component),
                       _lsmap(K, unit, tr.right, [_pairing_row(L.dim(x)) for x in range(X.object_count)]))
    # coev: the identity tensor sum_i e^i (x) e_i
    right_obj = tensor_objects(dual, A, XX)
    K1 = restrict(unit.system, cotr.left)
    coev = DecoratedSpan(unit, right_obj, cotr, K1,
                         _lsmap(K1, unit, cotr.left, identity_map(K1).component),
                         _lsmap(K1, right_obj, cotr.right,
                                [_pairing_row(L.dim(x)).T for x in range(X.object_count)]))
    return dual, ev, coev


def decorated_swap(A, B, AB=None, BA=None):
    """``A (x) B -> B (x) A`` along the flip, decorated by the commutation matrices."""
    AB = AB if AB is not None else tensor_objects(A, B)
    BA = BA if BA is not None else tensor_objects(B, A)
    flip = swap_functor(A.space, B.space, AB.space, BA.space)
    nb = B.space.object_count
    comps = []
    for xy in range(AB.space.object_count):
        a, b = A.system.dim(xy // nb), B.system.dim(xy % nb)
        perm = [j * a + i for i in range(a) for j in range(b)]
        comps.append(RatMatrix.permutation(perm))
    return decorated_from_map(flip, AB, BA, comps)


def decorated_equivalent(D1, D2, budget=None):
    """Carrier equivalence under which the decorations agree after transport.

    Returns the carrier :class:`Equivalence` or ``None``.
    """
    if D1.source != D2.source or D1.target != D2.target:
        raise MismatchedBoundary("decorated_equivalent needs identical boundary objects")
    S1, S2 = D1.carrier, D2.carrier
    L, M = D1.source.system, D1.target.system
    reps1, reps2 = S1.apex.representatives(), S2.apex.representatives()

    def accept(ci, cj, phi, theta):
        z, z2 = reps1[ci], reps2[cj]
        th_l, th_r = theta
        if D1.apex_system.dim(z) != D2.apex_system.dim(z2):
            return False
        psi = (D2.left_dec.component[z2].inverse() @ L.action(S1.source.inverse[th_l])
               @ D1.left_dec.component[z])
        return M.action(th_r) @ D2.right_dec.component[z2] @ psi == D1.right_dec.component[z]

    return find_equivalence(S1.apex, S2.apex, (S1.left, S1.right), (S2.left, S2.right),
                            budget=budget, accept=accept)


def snake_composites(A, reduced=True):
    """The zig-zags ``A -> A (x) dual (x) A -> A`` and ``dual -> dual (x) A (x) dual -> dual``."""
    X = A.space
    XX = product(X, X)
    XXX = product(X, XX)
    unit = unit_object()
    dual, ev, coev = dual_data(A, XX, unit)
    triple = tensor_objects(A, tensor_objects(dual, A, XX), XXX)
    first = decorated_compose(decorated_tensor(decorated_identity(A), coev, A, triple),
                              decorated_tensor(ev, decorated_identity(A), triple, A), reduced)
    triple_d = tensor_objects(dual, tensor_objects(A, dual, XX), XXX)
    second = decorated_compose(decorated_tensor(coev, decorated_identity(dual), dual, triple_d),
                               decorated_tensor(decorated_identity(dual), ev, triple_d, dual), reduced)
    return (first, A), (second, dual)


def verify_duality(A, budget=None, reduced=True):
    """Both decorated zig-zags are equivalent to identities."""
    for snake, obj in snake_composites(A, reduced):
        if decorated_equivalent(snake, decorated_identity(obj), budget) is None:
            return False
    return True


def quantize_object(A):
    """Dimension of the coinvariants with the per-object projections."""
    return colimit_ls(A.system)


def _is_unit(obj):
    X, L = obj.space, obj.system
    return (X.object_count == 1 and X.morphism_count == 1 and L.dim(0) == 1
            and L.action(0).is_identity())


def counit_scalar(D):
    """Sum over apex components of ``chi * (right_dec o left_dec^-1)``."""
    if not (_is_unit(D.source) and _is_unit(D.target)):
        raise MismatchedBoundary("counit_scalar needs an endomorphism of the unit")
    Z = D.carrier.apex
    local = []
    for z in range(Z.object_count):
        if D.apex_system.dim(z) != 1:
            raise InvariantViolation("pi-cartesian", f"apex system has rank {D.apex_system.dim(z)} at {z}",
                                     f".apex_system.dim[{z}]")
        local.append(D.right_dec.component[z][0, 0] / D.left_dec.component[z][0, 0])
    total = Fraction(0)
    for k, r in enumerate(Z.representatives()):
        s = local[r]
        for z in range(Z.object_count):
            if Z.component_of(z) == k and local[z] != s:
                raise NonConstantScalar(f"scalar varies within the component of object {r}")
        total += s / len(Z.automorphisms(r))
    return total


def circle_composite(A, reduced=True):
    """``ev o swap o coev`` as a decorated endomorphism of the unit."""
    X = A.space
    XX = product(X, X)
    unit = unit_object()
    dual, ev, coev = dual_data(A, XX, unit)
    swap = decorated_swap(dual, A, coev.target, ev.source)
    return decorated_compose(decorated_compose(coev, swap, reduced), ev, reduced)


def quantize_circle(A, reduced=True):
    return counit_scalar(circle_composite(A, reduced))
