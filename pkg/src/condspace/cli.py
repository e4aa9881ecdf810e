"""``condspace`` command line.

Exit status: 0 success, 2 bad input (syntax, malformed files, bad flags),
3 domain error (e.g. zero-probability projection), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import compiler, duality
from . import serialization as ser
from .condition_core import (
    Leaf,
    OutcomeLabel,
    annihilator,
    condition_to_text,
    dual_correspondence,
    eval_expr,
    expr_n,
    expr_op_count,
    satisfying_set,
)
from .errors import DomainError, ParseError
from .parsing import format_expr, parse_condition_expr
from .statevector import (
    Circuit,
    apply_circuit,
    basis_state,
    event_probability_exact,
    project,
    sample_event,
)

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _labels(labels) -> list[dict]:
    return [{"label": f.bits, "text": condition_to_text(f, 0)} for f in sorted(labels, key=lambda x: x.value)]


def _outcome_arg(args) -> OutcomeLabel:
    try:
        v = OutcomeLabel.from_bits(args.outcome)
    except DomainError as exc:
        raise ParseError(str(exc)) from None
    if args.n is not None and args.n != v.n:
        raise ParseError(f"--outcome has {v.n} bits but --n is {args.n}")
    return v


def _state_arg(args, required=True):
    if args.state is None:
        if required:
            raise ParseError("--state FILE is required")
        return None
    return ser.state_from_json(ser.load_json(args.state))


def _expr_arg(args, n=None):
    if args.condition is None:
        raise ParseError("--condition EXPR is required")
    return parse_condition_expr(args.condition, n if n is not None else args.n)


def cmd_dual(args):
    v = _outcome_arg(args)
    f = dual_correspondence(v)
    return {
        "n": v.n,
        "outcome": v.bits,
        "condition": f.bits,
        "condition_text": condition_to_text(f, 0),
        "annihilator": _labels(annihilator(v)),
        "satisfying_set": [h.bits for h in satisfying_set(f).outcomes()],
    }


def cmd_event(args):
    state = _state_arg(args, required=False)
    e = _expr_arg(args, state.n if state is not None and args.n is None else None)
    ev = eval_expr(e)
    doc = {
        "n": ev.n,
        "condition": format_expr(e),
        "op_count": expr_op_count(e),
        "size": len(ev),
        "members": ev.bitstrings(),
    }
    if state is not None:
        doc["probability"] = event_probability_exact(state, ev)
    return doc


def cmd_simulate(args):
    if args.circuit is None:
        raise ParseError("--circuit FILE is required")
    circ = ser.circuit_from_json(ser.load_json(args.circuit))
    state = _state_arg(args, required=False)
    if state is None:
        state = basis_state(circ.n, 0)
    return ser.state_to_json(apply_circuit(state, circ))


def cmd_project(args):
    state = _state_arg(args)
    ev = eval_expr(_expr_arg(args, state.n))
    p, post = project(state, ev)
    return {"probability": p, "state": ser.state_to_json(post)}


def cmd_estimate(args):
    state = _state_arg(args)
    if args.seed is None:
        raise ParseError("estimate requires an explicit --seed")
    if args.shots is None:
        raise ParseError("estimate requires --shots")
    ev = eval_expr(_expr_arg(args, state.n))
    est = sample_event(state, ev, args.shots, args.seed)
    return {
        "p_hat": est.p_hat,
        "hits": est.hits,
        "shots": est.shots,
        "sigma_mean_est": est.sigma_mean_est,
        "seed": est.seed,
        "p_exact": event_probability_exact(state, ev),
    }


def cmd_transform(args):
    if args.state is None:
        raise ParseError("--state FILE is required")
    doc = ser.load_json(args.state)
    if ser.is_condition_doc(doc):
        return ser.state_to_json(duality.condition_to_state(ser.qcondition_from_json(doc)))
    return ser.qcondition_to_json(duality.state_to_condition(ser.state_from_json(doc)))


def cmd_entropy(args):
    pair = duality.uncertainty_sum(_state_arg(args), args.base)
    return {"H_S": pair.H_S, "H_C": pair.H_C, "sum": pair.total, "base": pair.base}


def cmd_scan(args):
    if args.seed is None:
        raise ParseError("scan requires an explicit --seed")
    if args.n is None:
        raise ParseError("scan requires --n")
    res = duality.min_uncertainty_scan(args.n, args.samples, args.seed, args.base)
    if args.fmt == "json":
        counts, edges = res.histogram
        return {
            "n": res.n,
            "samples": res.samples,
            "seed": res.seed,
            "base": res.base,
            "min_sum": res.min_sum,
            "argmin_index": res.argmin,
            "argmin_state": ser.state_to_json(res.argmin_state),
            "histogram": {"counts": list(counts), "edges": list(edges)},
        }
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sample_index", "H_S", "H_C", "sum", "seed"])
    for row in res.rows():
        w.writerow([row[0], repr(row[1]), repr(row[2]), repr(row[3]), row[4]])
    return buf.getvalue()


def cmd_compile(args):
    e = _expr_arg(args)
    if not isinstance(e, Leaf):
        raise ParseError("compile takes a single parity condition such as 'q2^q3^q5=0'")
    p = compiler.compile_parity(e.cond, expr_n(e))
    doc = ser.parity_circuit_to_json(p)
    doc["verified"] = compiler.verify_parity_circuit(p)
    return doc


def cmd_realize(args):
    state = _state_arg(args)
    if args.qcondition is None:
        raise ParseError("--qcondition FILE is required")
    phi = ser.qcondition_from_json(ser.load_json(args.qcondition))
    plan = compiler.plan_realization(phi)
    p, joint = compiler.simulate_realization(state, plan, args.target_outcome)
    return {
        "probability": p,
        "working_n": plan.working_n,
        "target": plan.target,
        "target_outcome": args.target_outcome,
        "circuit": ser.circuit_to_json(plan.circuit),
        "joint_state": ser.state_to_json(joint),
    }


def cmd_trace(args):
    if args.circuit is None:
        raise ParseError("--circuit FILE is required")
    circ: Circuit = ser.circuit_from_json(ser.load_json(args.circuit))
    return [
        {"gate": ser.gate_to_json(g), "condition": text}
        for g, text in compiler.circuit_condition_trace(circ)
    ]


COMMANDS = {
    "dual": cmd_dual,
    "event": cmd_event,
    "simulate": cmd_simulate,
    "project": cmd_project,
    "estimate": cmd_estimate,
    "transform": cmd_transform,
    "entropy": cmd_entropy,
    "scan": cmd_scan,
    "compile": cmd_compile,
    "realize": cmd_realize,
    "trace": cmd_trace,
}


def build_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--shots", type=int)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--base", choices=["e", "2"], default="e")
    common.add_argument("--state", metavar="FILE")
    common.add_argument("--circuit", metavar="FILE")
    common.add_argument("--qcondition", metavar="FILE")
    common.add_argument("--target-outcome", type=int, choices=[0, 1], default=0)
    common.add_argument("--condition", metavar="EXPR")
    common.add_argument("--outcome", metavar="BITS")
    common.add_argument("--out", metavar="FILE")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")

    parser = _ArgParser(prog="condspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
        if args.fmt is None:
            args.fmt = "csv" if args.command == "scan" else "json"
        elif args.fmt == "csv" and args.command != "scan":
            raise ParseError("--csv output is only available for scan")
        result = COMMANDS[args.command](args)
        text = result if isinstance(result, str) else ser.dumps(result)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            stdout.write(text)
    except ParseError as exc:
        print(f"condspace: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"condspace: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"condspace: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
