"""Command-line front end.

    pathlift solve --epsilon 1e-6 --coeffs "[-1, 0, 1]"
    pathlift solve --input phi.json --verify --oracle-compare --stats

Coefficients are ascending; each entry is a real number or a ``[re, im]``
pair. An input file holds ``{"coeffs": [[re, im], ...], "epsilon": 1e-4}``.
The result is one JSON document on stdout.

Exit codes: 0 success, 2 bad input, 3 tau underflow, 4 solver failure.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import __version__, kernels
from .complexpoly import as_poly, degree, factor_to_root_precision, residual_norm
from .errors import (EvaluationOverflow, InsufficientCrossings, NodeCollision,
                     NoConvergence, TauUnderflow, TheoremViolation)
from .lifter import solve
from .oracle import match_multisets, oracle_roots

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TAU = 3
EXIT_SOLVER = 4


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    parser = _Parser(prog="pathlift", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    s = sub.add_parser("solve", help="factor a polynomial")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs", help="inline JSON list of ascending coefficients")
    src.add_argument("--input", help="JSON file with 'coeffs' and optional 'epsilon'")
    s.add_argument("--epsilon", type=float, help="target factorization norm")
    s.add_argument("--root-precision", type=float,
                   help="target root distance; derives epsilon as (r/8d)^d")
    s.add_argument("--verify", action="store_true", help="recompute the residual")
    s.add_argument("--oracle-compare", action="store_true",
                   help="report the distance to an independent solver's roots")
    s.add_argument("--stats", action="store_true", help="include all per-stage counters")
    return parser


def _parse_coeffs(raw):
    if not isinstance(raw, list) or not raw:
        raise InputError("coefficients must be a nonempty list")
    out = []
    for c in raw:
        if isinstance(c, (int, float)) and not isinstance(c, bool):
            out.append(complex(c, 0.0))
        elif (isinstance(c, list) and len(c) == 2
              and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in c)):
            out.append(complex(c[0], c[1]))
        else:
            raise InputError(f"bad coefficient {c!r}; want a number or [re, im]")
    return out


def load_input(args):
    """Return ``(coeffs, epsilon_or_None)`` from the parsed arguments."""
    eps = None
    try:
        if args.coeffs is not None:
            raw = json.loads(args.coeffs)
        else:
            with open(args.input) as fh:
                doc = json.load(fh)
            if not isinstance(doc, dict) or "coeffs" not in doc:
                raise InputError("input file must hold an object with a 'coeffs' field")
            raw = doc["coeffs"]
            eps = doc.get("epsilon")
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(str(e)) from None
    return _parse_coeffs(raw), eps


def _num(x):
    x = float(x)
    if not math.isfinite(x):
        return json.dumps(None)
    return format(x, ".17g")


def _complex(z):
    return {"re": float(z.real), "im": float(z.imag)}


def dumps(obj, indent=0):
    """JSON text with floats written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return json.dumps(obj if not isinstance(obj, np.bool_) else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    return _num(obj)


def _stage_doc(st, full):
    doc = {
        "degree": st.degree,
        "quadrants_tried": st.quadrants_tried,
        "plm_iterations": st.plm_iterations,
        "polish_iterations": st.polish_iterations,
        "evaluations": st.evaluations,
        "accepted": st.accepted,
    }
    if full:
        doc.update({
            "points_certified": st.points_certified,
            "points_weeded": st.points_weeded,
            "remainder_norm": st.remainder_norm,
            "lead_deviation": st.lead_deviation,
            "node_rotation": st.node_rotation,
        })
    return doc


def solve_document(coeffs, epsilon, verify=False, oracle_compare=False, stats=False):
    phi = as_poly(coeffs)
    d = degree(phi)
    if d < 1:
        raise InputError("polynomial must have degree >= 1")
    lead = complex(phi[-1])
    phi = phi / lead
    phi[-1] = 1.0
    fz = solve(phi, epsilon)
    doc = {
        "degree": d,
        "epsilon": epsilon,
        "tau": fz.tau,
        "K": fz.K,
        "leading_coefficient": _complex(lead),
        "roots": [_complex(z) for z in fz.roots],
        "residual": fz.residual,
        "stages": [_stage_doc(s, stats) for s in fz.per_stage],
        "backend": kernels.active_backend(),
    }
    if verify:
        again = residual_norm(phi, fz.roots)
        doc["verified_residual"] = again
        doc["verified"] = bool(again < epsilon)
    if oracle_compare:
        ref = oracle_roots(phi)
        doc["oracle_distance"] = match_multisets(fz.roots, ref.roots)
        doc["oracle_backward_error"] = ref.max_backward_error
    return doc


def run(argv=None):
    """Entry point; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        coeffs, file_eps = load_input(args)
        d = degree(as_poly(coeffs))
        if args.root_precision is not None:
            if not args.root_precision > 0:
                raise InputError("--root-precision must be positive")
            epsilon = factor_to_root_precision(args.root_precision, max(d, 1))
        elif args.epsilon is not None:
            epsilon = args.epsilon
        elif file_eps is not None:
            epsilon = float(file_eps)
        else:
            raise InputError("--epsilon is required (or give it in the input file)")
        if not (epsilon > 0 and math.isfinite(epsilon)):
            raise InputError("epsilon must be a positive finite number")
        doc = solve_document(coeffs, epsilon, args.verify, args.oracle_compare, args.stats)
    except InputError as e:
        print(f"pathlift: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except TauUnderflow as e:
        print(f"pathlift: tau underflow: {e}", file=sys.stderr)
        return EXIT_TAU
    except (TheoremViolation, NoConvergence, InsufficientCrossings, NodeCollision,
            EvaluationOverflow) as e:
        print(f"pathlift: solver failure ({type(e).__name__}): {e}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as e:
        print(f"pathlift: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(dumps(doc) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
