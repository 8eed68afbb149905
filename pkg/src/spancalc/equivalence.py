"""Exhaustive equivalence search for finite groupoids, optionally over target legs.

Both groupoids are reduced to their skeleta.  Components are matched greedily
(matchability is an equivalence relation, so greedy matching is complete); for a
candidate pair of components we enumerate the leg comparison morphisms and then
search group isomorphisms generator by generator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SearchBudgetExceeded
from .groupoid import GroupoidFunctor, NaturalIso, identity_functor, skeleton

DEFAULT_BUDGET = 10 ** 7


class Budget:
    """Counts candidate extensions; raises once the cap is exceeded."""

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.spent = 0

    def spend(self, n=1):
        self.spent += n
        if self.spent > self.limit:
            raise SearchBudgetExceeded(f"equivalence search exceeded its budget of {self.limit} candidates")


def _as_budget(budget):
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


def element_orders(table, e):
    orders = []
    for g in range(len(table)):
        k, x = 1, g
        while x != e:
            x = table[x][g]
            k += 1
        orders.append(k)
    return orders


def _identity_index(table):
    return next(e for e in range(len(table)) if all(table[e][g] == g for g in range(len(table))))


def generating_set(table):
    """Greedy generating set: walk the elements in order, keep those not yet generated."""
    e = _identity_index(table)
    gens, generated = [], {e}
    for g in range(len(table)):
        if g in generated:
            continue
        gens.append(g)
        frontier = list(generated)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = table[x][s]
                    if y not in generated:
                        generated.add(y)
                        nxt.append(y)
            frontier = nxt
    return gens


def _extend(table_g, table_h, gens, images, e_g, e_h):
    """Extend generator images to a map on the generated subgroup; ``None`` if inconsistent."""
    phi = {e_g: e_h}
    frontier = [e_g]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, images):
                y = table_g[x][s]
                im = table_h[phi[x]][t]
                old = phi.get(y)
                if old is None:
                    phi[y] = im
                    nxt.append(y)
                elif old != im:
                    return None
        frontier = nxt
    return phi


def find_group_isomorphism(table_g, table_h, budget=None, allowed=None):
    """Search an isomorphism ``G -> H`` of groups given by multiplication tables.

    ``allowed(g)`` optionally restricts the image of each element to a set.
    Returns the map as a list or ``None``.
    """
    budget = _as_budget(budget)
    n = len(table_g)
    if n != len(table_h):
        return None
    e_g, e_h = _identity_index(table_g), _identity_index(table_h)
    ord_g, ord_h = element_orders(table_g, e_g), element_orders(table_h, e_h)
    if sorted(ord_g) != sorted(ord_h):
        return None
    if allowed is not None:
        for g in range(n):
            ok = allowed(g)
            if not any(ord_h[h] == ord_g[g] for h in ok):
                return None
    gens = generating_set(table_g)
    cands = []
    for s in gens:
        pool = range(n) if allowed is None else sorted(allowed(s))
        cands.append([h for h in pool if ord_h[h] == ord_g[s]])

    def check(phi):
        if allowed is None:
            return True
        return all(phi[g] in allowed(g) for g in phi)

    images = []

    def search(k):
        if k == len(gens):
            phi = _extend(table_g, table_h, gens, images, e_g, e_h)
            if phi is None or len(set(phi.values())) != n or not check(phi):
                return None
            return [phi[g] for g in range(n)]
        for t in cands[k]:
            budget.spend()
            images.append(t)
            partial = _extend(table_g, table_h, gens[:k + 1], images, e_g, e_h)
            if partial is not None and len(set(partial.values())) == len(partial) and check(partial):
                found = search(k + 1)
                if found is not None:
                    return found
            images.pop()
        return None

    return search(0)


@dataclass(frozen=True)
class Equivalence:
    """``forward : Z -> Z'`` with quasi-inverse and, per leg, a witness ``leg' o forward => leg``."""

    forward: GroupoidFunctor
    backward: GroupoidFunctor
    unit: NaturalIso
    counit: NaturalIso
    leg_witnesses: tuple


def _component_data(sk, legs):
    data = []
    for comp in sk.components:
        r = comp.representative
        leg_info = []
        for leg in legs:
            leg_info.append((leg.obj(r), [leg.mor(u) for u in comp.automorphisms]))
        data.append((comp, leg_info))
    return data


def _match_component(c1, legs1, c2, legs2, codomains, budget, accept, ci, cj):
    comp1, info1 = c1
    comp2, info2 = c2
    if comp1.order != comp2.order:
        return None
    for (y1, _), (y2, _), C in zip(info1, info2, codomains):
        if C.component_of(y1) != C.component_of(y2):
            return None
    theta_choices = [[]]
    for (y1, _), (y2, _), C in zip(info1, info2, codomains):
        theta_choices = [t + [th] for t in theta_choices for th in C.hom(y2, y1)]
    order = comp1.order
    for theta in theta_choices:
        budget.spend()
        # allowed images: h with leg2(h) = theta^-1 leg1(g) theta on every leg
        by_leg = []
        for (y1, m1), (y2, m2), C, th in zip(info1, info2, codomains, theta):
            index = {}
            for h in range(order):
                index.setdefault(m2[h], set()).add(h)
            th_inv = C.inverse[th]
            need = [C.then(th, m1[g], th_inv) for g in range(order)]
            by_leg.append((index, need))
        allowed_sets = []
        feasible = True
        for g in range(order):
            s = set(range(order))
            for index, need in by_leg:
                s &= index.get(need[g], set())
            if not s:
                feasible = False
                break
            allowed_sets.append(s)
        if not feasible:
            continue
        phi = find_group_isomorphism(comp1.table, comp2.table, budget,
                                     allowed=(lambda g: allowed_sets[g]) if legs1 else None)
        if phi is None:
            continue
        if accept is not None and not accept(ci, cj, phi, tuple(theta)):
            continue
        return phi, tuple(theta)
    return None


def find_equivalence(Z1, Z2, legs1=(), legs2=(), budget=None, accept=None):
    """Search an equivalence ``Z1 -> Z2`` compatible with the given legs.

    ``legs1[k]`` and ``legs2[k]`` must share a codomain.  ``accept(c1, c2, phi, theta)``
    can veto a component match (used for decorated spans).  Returns an
    :class:`Equivalence` or ``None``.
    """
    budget = _as_budget(budget)
    codomains = [l.codomain for l in legs1]
    sk1, sk2 = skeleton(Z1), skeleton(Z2)
    if len(sk1.components) != len(sk2.components):
        return None
    d1, d2 = _component_data(sk1, legs1), _component_data(sk2, legs2)
    used = [False] * len(d2)
    matches = []
    for i, c1 in enumerate(d1):
        found = None
        for j, c2 in enumerate(d2):
            if used[j]:
                continue
            m = _match_component(c1, legs1, c2, legs2, codomains, budget, accept, i, j)
            if m is not None:
                found = (j, m[0], m[1])
                used[j] = True
                break
        if found is None:
            return None
        matches.append(found)
    return _assemble(sk1, sk2, matches, legs1, legs2)


def _assemble(sk1, sk2, matches, legs1, legs2):
    Z1, Z2 = sk1.source, sk2.source
    S1, S2 = sk1.groupoid, sk2.groupoid
    # skeleton functor S1 -> S2 and its inverse; skeleton morphisms are the automorphisms
    # of each representative, in index order, component after component
    off1, off2 = [], []
    acc = 0
    for c in sk1.components:
        off1.append(acc)
        acc += c.order
    acc = 0
    for c in sk2.components:
        off2.append(acc)
        acc += c.order
    fmor = [0] * S1.morphism_count
    bmor = [0] * S2.morphism_count
    fobj = [0] * S1.object_count
    bobj = [0] * S2.object_count
    for i, (j, phi, _) in enumerate(matches):
        fobj[i] = j
        bobj[j] = i
        for g, h in enumerate(phi):
            fmor[off1[i] + g] = off2[j] + h
            bmor[off2[j] + h] = off1[i] + g
    es = GroupoidFunctor(S1, S2, fobj, fmor, validate=False)
    es_inv = GroupoidFunctor(S2, S1, bobj, bmor, validate=False)
    forward = sk1.to_skeleton.then(es).then(sk2.from_skeleton)
    backward = sk2.to_skeleton.then(es_inv).then(sk1.from_skeleton)
    unit = NaturalIso(forward.then(backward), identity_functor(Z1), sk1.unit.component, validate=False)
    counit = NaturalIso(backward.then(forward), identity_functor(Z2), sk2.unit.component, validate=False)
    witnesses = []
    for k, (l1, l2) in enumerate(zip(legs1, legs2)):
        C = l1.codomain
        comp = []
        for z in range(Z1.object_count):
            c = Z1.component_of(z)
            theta = matches[c][2][k]
            comp.append(C.compose(l1.mor(Z1.path_from_rep(z)), theta))
        witnesses.append(NaturalIso(forward.then(l2), l1, comp, validate=False))
    return Equivalence(forward, backward, unit, counit, tuple(witnesses))


def are_equivalent(X, Y, budget=None):
    """Return ``(e, e', eta, eta')`` with ``eta : e' o e => id_X`` and ``eta' : e o e' => id_Y``,
    or ``None`` when ``X`` and ``Y`` are not equivalent."""
    eq = find_equivalence(X, Y, budget=budget)
    if eq is None:
        return None
    return eq.forward, eq.backward, eq.unit, eq.counit
