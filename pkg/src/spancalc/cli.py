"""Batch command-line front end.

Reads JSON documents, runs one operation and writes a JSON report.  Exit status:
0 on success, 1 on a domain error (bad data, failed invariant), 2 on a usage error
(unknown command, wrong number or kind of inputs, unreadable arguments).
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time

from . import serialize
from .equivalence import DEFAULT_BUDGET, are_equivalent
from .errors import SpanCalcError
from .groupoid import FiniteGroupoid, cardinality, skeleton
from .linearize import linearize_span, norm_map, trace_form
from .local_systems import LocalSystem
from .matrix import format_rational
from .selftest import run_all
from .span import Span, compose_all, spans_equivalent, tensor
from .tft import DecoratedObject, DecoratedSpan, decorated_compose, decorated_equivalent, decorated_tensor
from .tft import quantize_circle, quantize_object

COMMANDS = ("validate", "skeleton", "cardinality", "equiv", "compose", "tensor", "linearize",
            "norm-check", "trace-form", "quantize-point", "quantize-circle", "selftest")


class UsageError(Exception):
    pass


def _need(values, count, kinds, command):
    if count is not None and len(values) != count:
        raise UsageError(f"{command} needs exactly {count} input(s), got {len(values)}")
    for v in values:
        if not isinstance(v, kinds):
            names = " or ".join(serialize._kind_of_class(k) for k in kinds)
            raise UsageError(f"{command} needs {names} inputs, got {serialize._kind_of(v)}")
    return values


def _functor_json(F):
    return {"object_map": list(F.object_map), "morphism_map": list(F.morphism_map)}


def cmd_validate(values, opts):
    return {"kinds": [serialize._kind_of(v) for v in values], "valid": True}


def cmd_skeleton(values, opts):
    (X,) = _need(values, 1, (FiniteGroupoid,), "skeleton")
    sk = skeleton(X)
    return {"components": [{"representative": c.representative, "order": c.order, "members": list(c.members)}
                           for c in sk.components],
            "skeleton": serialize.dump_groupoid(sk.groupoid),
            "to_skeleton": _functor_json(sk.to_skeleton)}


def cmd_cardinality(values, opts):
    (X,) = _need(values, 1, (FiniteGroupoid,), "cardinality")
    return {"result": format_rational(cardinality(X))}


def cmd_equiv(values, opts):
    a, b = _need(values, 2, (FiniteGroupoid, Span, DecoratedSpan), "equiv")
    if type(a) is not type(b):
        raise UsageError("equiv needs two inputs of the same kind")
    if isinstance(a, FiniteGroupoid):
        found = are_equivalent(a, b, opts.budget)
        forward = found[0] if found else None
    elif isinstance(a, Span):
        found = spans_equivalent(a, b, opts.budget)
        forward = found.e if found else None
    else:
        found = decorated_equivalent(a, b, opts.budget)
        forward = found.forward if found else None
    out = {"equivalent": forward is not None}
    if forward is not None:
        out["forward"] = _functor_json(forward)
    return out


def cmd_compose(values, opts):
    if len(values) < 2:
        raise UsageError("compose needs at least two inputs")
    if all(isinstance(v, DecoratedSpan) for v in values):
        out = values[0]
        for v in values[1:]:
            out = decorated_compose(out, v)
        return {"result": serialize.dump_decorated_span(out)}
    _need(values, None, (Span,), "compose")
    return {"result": serialize.dump_span(compose_all(values))}


def cmd_tensor(values, opts):
    a, b = _need(values, 2, (Span, DecoratedSpan), "tensor")
    if isinstance(a, Span) and isinstance(b, Span):
        return {"result": serialize.dump_span(tensor(a, b))}
    if isinstance(a, DecoratedSpan) and isinstance(b, DecoratedSpan):
        return {"result": serialize.dump_decorated_span(decorated_tensor(a, b))}
    raise UsageError("tensor needs two spans or two decorated spans")


def cmd_linearize(values, opts):
    spans = _need(values, None, (Span,), "linearize")
    if not spans:
        raise UsageError("linearize needs at least one span")
    return {"result": linearize_span(compose_all(spans, reduced=True)).to_json()}


def cmd_norm_check(values, opts):
    (v,) = _need(values, 1, (LocalSystem, DecoratedObject), "norm-check")
    L = v.system if isinstance(v, DecoratedObject) else v
    r = norm_map(L)
    out = serialize.dump_norm_report(r)
    del out["kind"]
    return out


def cmd_trace_form(values, opts):
    (X,) = _need(values, 1, (FiniteGroupoid,), "trace-form")
    return {"result": trace_form(X).to_json()}


def _decorated(values, command):
    (v,) = _need(values, 1, (DecoratedObject, LocalSystem), command)
    return v if isinstance(v, DecoratedObject) else DecoratedObject(v.base, v)


def cmd_quantize_point(values, opts):
    A = _decorated(values, "quantize-point")
    dim, proj = quantize_object(A)
    return {"result": dim, "projections": [p.to_json() for p in proj]}


def cmd_quantize_circle(values, opts):
    A = _decorated(values, "quantize-circle")
    return {"result": format_rational(quantize_circle(A))}


def cmd_selftest(values, opts):
    if values:
        raise UsageError("selftest takes no inputs")
    return run_all(opts.seed)


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def build_parser():
    p = argparse.ArgumentParser(prog="spancalc", description="Spans of finite groupoids and their linearization.")
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--input", action="append", default=[], metavar="FILE", help="input document (repeatable)")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of standard output")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="equivalence search cap")
    p.add_argument("--seed", type=int, default=0, help="corpus seed for selftest")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    return p


def _hash_inputs(paths):
    out = []
    for path in paths:
        try:
            with open(path, "rb") as fh:
                digest = hashlib.sha256(fh.read()).hexdigest()
        except OSError:
            digest = None
        out.append({"path": path, "sha256": digest})
    return out


def execute(opts):
    """Run the request; return ``(report, exit_code)``."""
    report = {"command": opts.command, "inputs": _hash_inputs(opts.input)}
    start = time.perf_counter()
    try:
        for path in opts.input:
            if not os.path.isfile(path):
                raise UsageError(f"input file {path} does not exist")
        loader = serialize.new_loader()
        values = [serialize.load_document(path, loader=loader) for path in opts.input]
        report.update(HANDLERS[opts.command](values, opts))
        report["status"] = "ok"
        code = 0
        if opts.command == "selftest" and not report["passed"]:
            code = 1
    except UsageError as exc:
        report["status"] = "usage_error"
        report["error"] = {"error": "usage", "message": str(exc)}
        code = 2
    except SpanCalcError as exc:
        report["status"] = "error"
        report["error"] = exc.to_json()
        code = 1
    except Exception as exc:  # a bug, but still reported as data rather than a traceback
        report["status"] = "error"
        report["error"] = {"error": "internal", "message": f"{type(exc).__name__}: {exc}"}
        code = 1
    if opts.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


def main(argv=None):
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if opts.budget < 0:
        parser.print_usage(sys.stderr)
        print("spancalc: error: --budget must be non-negative", file=sys.stderr)
        return 2
    report, code = execute(opts)
    text = serialize.dumps(report)
    if opts.out:
        try:
            with open(opts.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"spancalc: cannot write {opts.out}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
