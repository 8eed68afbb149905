"""Seeded property suites behind ``spancalc --command selftest`` and the acceptance tests.

Each ``criterion_N(seed)`` returns a :class:`Outcome`; :func:`run_all` collects them
into a report whose text is a pure function of the seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field

from . import oracles
from .corpus import (
    decorated_corpus, groupoid_corpus, groups, random_injective_set_span, random_rep,
    random_set_span, random_span, rep_system,
)
from .groupoid import cardinality, delooping, discrete, disjoint_union, inertia, product
from .linearize import cotrace_matrix, linearize_span, norm_map, trace_form
from .matrix import RatMatrix, format_rational
from .span import (
    compose, compose_pointed, duality_spans, snake_composites, tensor, to_pointed_map,
    verify_self_duality,
)
from .tft import quantize_circle, quantize_object

TITLES = {
    1: "homotopy cardinality",
    2: "Burnside conformance",
    3: "functoriality and monoidality of linearization",
    4: "self-duality",
    5: "1-semiadditivity of rational vector spaces",
    6: "quantization dimension axiom",
}

MAX_FAILURES = 5


@dataclass
class Outcome:
    criterion: int
    checks: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok, message):
        self.checks += 1
        if not ok and len(self.failures) < MAX_FAILURES:
            self.failures.append(message)
        elif not ok:
            self.failures[-1] = f"... and more (last: {message})"
        return ok

    @property
    def passed(self):
        return self.checks > 0 and not self.failures

    def to_json(self):
        return {"criterion": self.criterion, "title": TITLES[self.criterion], "passed": self.passed,
                "checks": self.checks, "failures": list(self.failures)}


def _rng(seed, criterion):
    return random.Random(f"{seed}:{criterion}")


def _matrix(grid, rows, cols):
    return RatMatrix(grid, rows, cols)


def criterion_1(seed=0):
    out = Outcome(1)
    rng = _rng(seed, 1)
    z2 = delooping([[0, 1], [1, 0]])
    out.check(cardinality(z2) == Fraction(1, 2), "cardinality(BZ2) != 1/2")
    for n in range(7):
        out.check(cardinality(discrete(n)) == n, f"cardinality(discrete({n})) != {n}")
    corpus = [X for _, X in groupoid_corpus()] + [discrete(0)]
    for i in range(200):
        X, Y = rng.choice(corpus), rng.choice(corpus)
        cx, cy = cardinality(X), cardinality(Y)
        P, U = product(X, Y), disjoint_union(X, Y)
        out.check(cardinality(P) == cx * cy == oracles.cardinality(P),
                  f"pair {i}: product of {X.label} and {Y.label}")
        out.check(cardinality(U) == cx + cy == oracles.cardinality(U),
                  f"pair {i}: coproduct of {X.label} and {Y.label}")
    return out


def criterion_2(seed=0):
    out = Outcome(2)
    rng = _rng(seed, 2)
    for i in range(200):
        A, B, C = (discrete(rng.randint(1, 6)) for _ in range(3))
        S, T = random_set_span(A, B, rng), random_set_span(B, C, rng)
        lS, lT = linearize_span(S), linearize_span(T)
        out.check(lS == _matrix(oracles.burnside_matrix(S), B.object_count, A.object_count),
                  f"pair {i}: linearization differs from the fiber counts")
        composite = linearize_span(compose(S, T))
        expected = _matrix(oracles.set_pullback_matrix(S, T), C.object_count, A.object_count)
        out.check(composite == lT @ lS == expected, f"pair {i}: composite differs from the pullback")
        P, Q = random_injective_set_span(A, B, rng), random_injective_set_span(B, C, rng)
        out.check(to_pointed_map(compose(P, Q)) == compose_pointed(to_pointed_map(P), to_pointed_map(Q)),
                  f"pair {i}: pointed maps do not compose")
    return out


def criterion_3(seed=0):
    out = Outcome(3)
    rng = _rng(seed, 3)
    corpus = [X for _, X in groupoid_corpus()]
    for i in range(100):
        X, Y, W = rng.choice(corpus), rng.choice(corpus), rng.choice(corpus)
        S, T = random_span(X, Y, rng, corpus), random_span(Y, W, rng, corpus)
        lS, lT = linearize_span(S), linearize_span(T)
        out.check(lS == _matrix(oracles.linearize(S), lS.rows, lS.cols), f"pair {i}: S differs from the oracle")
        full = compose(S, T)
        brute = _matrix(oracles.linearize(full), W.component_count, X.component_count)
        out.check(linearize_span(compose(S, T, reduced=True)) == lT @ lS == brute,
                  f"pair {i}: {X.label} -> {Y.label} -> {W.label} is not functorial")
        ST = tensor(S, T)
        out.check(linearize_span(ST) == lS.kron(lT) == _matrix(oracles.linearize(ST), lS.rows * lT.rows,
                                                                 lS.cols * lT.cols),
                  f"pair {i}: tensor of {X.label}/{Y.label} with {Y.label}/{W.label} is not monoidal")
    return out


def criterion_4(seed=0):
    out = Outcome(4)
    for name, X in groupoid_corpus():
        out.check(verify_self_duality(X), f"{name}: snake composites are not equivalent to the identity")
        n = X.component_count
        eye = RatMatrix.identity(n)
        out.check(trace_form(X) @ cotrace_matrix(X) == eye, f"{name}: matrix snake is not the identity")
        for k, snake in enumerate(snake_composites(X)):
            out.check(linearize_span(snake) == eye, f"{name}: linearized snake {k} is not the identity")
    z2 = delooping([[0, 1], [1, 0]])
    tr, cotr = duality_spans(z2)
    unweighted = linearize_span(tr, weighted=False) @ linearize_span(cotr, weighted=False)
    out.check(unweighted == RatMatrix.scalar(2), "negative control: unweighted snake for BZ2 should be [2]")
    return out


def criterion_5(seed=0):
    out = Outcome(5)
    rng = _rng(seed, 5)
    for G in groups():
        BG = delooping(G.table)
        for k in range(10):
            rep = random_rep(G, rng)
            report = norm_map(rep_system(BG, rep))
            expected = oracles.character_average(rep)
            out.check(report.is_iso and report.colim_dim == report.lim_dim == expected,
                      f"{G.name} rep {k} (dim {rep[0].rows}): colim {report.colim_dim}, lim {report.lim_dim}, "
                      f"character {format_rational(expected)}, iso {report.is_iso}")
    return out


def criterion_6(seed=0):
    out = Outcome(6)
    rng = _rng(seed, 6)
    named = {"BZ2, trivial": 1, "BZ2, regular": 1, "BS3, standard": 0}
    for name, A in decorated_corpus(rng, 50):
        circle = quantize_circle(A)
        point = quantize_object(A)[0]
        oracle = oracles.system_character_average(A.system)
        out.check(circle == point == oracle,
                  f"{name}: circle {format_rational(circle)}, point {point}, oracle {format_rational(oracle)}")
        if name in named:
            out.check(circle == named[name], f"{name}: expected {named[name]}, got {format_rational(circle)}")
        if all(d == 1 for d in A.system.dims) and all(A.system.action(f).is_identity()
                                                      for f in range(A.space.morphism_count)):
            out.check(circle == cardinality(inertia(A.space)) == oracles.inertia_cardinality(A.space),
                      f"{name}: circle differs from the cardinality of the inertia groupoid")
    return out


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6}


def run_all(seed=0, only=None):
    outcomes = [CRITERIA[k](seed) for k in sorted(CRITERIA) if only is None or k in only]
    return {"kind": "selftest_report", "seed": seed, "passed": all(o.passed for o in outcomes),
            "criteria": [o.to_json() for o in outcomes]}
