"""Command-line front end.

Results go to stdout as JSON (floats rounded to 12 significant digits).
Errors go to stderr as ``{"error": ..., "field": ..., "message": ...}`` with
exit code 2 for malformed input and 3 for numeric precondition failures.
A file argument of ``-`` reads standard input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .errors import IntersysError, PreconditionError, ShapeError
from .evolution import (
    KINDS,
    ergodic_mean,
    evolve,
    max_amplitude,
    period,
    psi,
    transition_probability,
    two_agent_variants,
    write_trace_csv,
)
from .evolution.core import EvolutionTrace
from .games import nash_equilibria, pareto_front, payoff_table
from .interaction import InteractionState
from .linalg import DEFAULT_TOL, eigh, frobenius_norm, is_self_adjoint
from .measurement import joint_probabilities, measure, shapley_value
from .transforms import (
    banzhaf_interaction,
    banzhaf_inverse,
    fourier_apply,
    fourier_matrix,
    hadamard_apply,
    moebius_apply,
    zeta_apply,
)
from .tugame import TUGame

EXIT_OK, EXIT_SCHEMA, EXIT_PRECONDITION = 0, 2, 3
DEFAULT_ERGODIC_TOL = 1e-6


def _setting(args, cfg: dict, name: str, default):
    """Flag value if given, else the config file entry, else ``default``."""
    value = getattr(args, name, None)
    if value is not None:
        return value
    return cfg.get(name, default)


def _real_matrix(path: str, field: str = "data") -> np.ndarray:
    _, doc = io.load_document(path, {"matrix"})
    m = io.parse_square(doc["data"], field)
    if np.iscomplexobj(m):
        raise io.SchemaError(field, "interaction matrices must be real")
    return m


def _open_csv(path: str):
    # stdout is reserved for the JSON result
    if path == "-":
        raise io.SchemaError("csv", "CSV output needs a file path")
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise io.SchemaError("csv", f"cannot write {path!r}: {exc.strerror}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_decompose(args, cfg):
    s = InteractionState(_real_matrix(args.matrix))
    norm2 = s.norm**2
    return {
        "symmetric": s.symmetric,
        "skew": s.skew,
        "hermitian": s.hermitian,
        "norms": {
            "A": s.norm,
            "symmetric": frobenius_norm(s.symmetric),
            "skew": frobenius_norm(s.skew),
            "hermitian": frobenius_norm(s.hermitian),
        },
        "pythagoras_residual": abs(norm2 - frobenius_norm(s.symmetric) ** 2 - frobenius_norm(s.skew) ** 2),
    }


def cmd_spectrum(args, cfg):
    tol = _setting(args, cfg, "tol", DEFAULT_TOL)
    _, doc = io.load_document(args.matrix, {"matrix"})
    m = io.parse_square(doc["data"])
    if np.iscomplexobj(m):
        if not is_self_adjoint(m, tol):
            raise io.SchemaError("data", "complex matrices must be self-adjoint")
        h = m
    else:
        h = InteractionState(m).hermitian
    lam, u = eigh(h, tol)
    return {"eigenvalues": lam, "eigenvectors": [u[:, x] for x in range(u.shape[1])]}


def cmd_measure(args, cfg):
    f = _real_matrix(args.measurement)
    s = InteractionState(_real_matrix(args.state))
    if f.shape != s.A.shape:
        raise ShapeError(f"measurement is {f.shape[0]}x{f.shape[0]} but the state is {s.dim}x{s.dim}")
    value = measure(f, s)
    joint = joint_probabilities(f, s)
    return {
        "value": value,
        "joint_probabilities": joint.p,
        "state_eigenvalues": joint.state_eigenvalues,
        "measurement_eigenvalues": joint.measurement_eigenvalues,
        "spectral_value": joint.expectation(),
        "total_mass": float(joint.p.sum()),
    }


def cmd_shapley(args, cfg):
    _, doc = io.load_document(args.game, {"tu_game"})
    v = io.tu_game_from_doc(doc)
    exact = v.values.dtype.kind in "iu"
    phi = shapley_value(v, exact=exact)
    return {"value": [float(x) for x in phi], "efficiency_residual": abs(float(sum(phi)) - float(v.values[-1]))}


_SUBSET_TRANSFORMS = {
    "zeta": (zeta_apply, moebius_apply),
    "moebius": (moebius_apply, zeta_apply),
    "hadamard": (hadamard_apply, hadamard_apply),
    "banzhaf": (lambda x: banzhaf_interaction(TUGame.from_values(x)), banzhaf_inverse),
}


def cmd_transform(args, cfg):
    kind, doc = io.load_document(args.input, {"tu_game", "decision_state", "matrix"})
    if kind == "tu_game":
        x = io.tu_game_from_doc(doc).values
    else:
        x = io.state_vector_from_doc(kind, doc)
        if np.iscomplexobj(x) and not np.any(x.imag):
            x = x.real
    if args.kind == "fourier":
        k = x.size
        forward, inverse = fourier_apply, lambda y: np.conj(fourier_matrix(k)).T @ y
    else:
        if x.size & (x.size - 1):
            raise ShapeError(f"{args.kind} transform needs a vector of length 2^n, got {x.size}")
        if args.kind == "banzhaf" and np.iscomplexobj(x):
            raise io.SchemaError("coeffs", "the Banzhaf transform is defined for real games")
        forward, inverse = _SUBSET_TRANSFORMS[args.kind]
    y = forward(x)
    out = {"transform": args.kind, "result": y}
    if args.roundtrip:
        out["roundtrip_residual"] = float(np.max(np.abs(inverse(y) - x)))
    return out


def _profile_key(a: str, b: str) -> str:
    return f"{a},{b}"


def cmd_game(args, cfg):
    _, doc = io.load_document(args.game, {"decision_game"})
    game = io.decision_game_from_doc(doc, cfg.get("payoffs"))
    tol = _setting(args, cfg, "tol", 1e-12)
    table = payoff_table(game)
    out: dict = {
        "final_states": {_profile_key(a, b): s.coeffs for (a, b), s in table.states.items()},
    }
    if args.table:
        out["strategies"] = [list(n) for n in table.names]
        out["payoffs"] = [
            [[table.values[0, i, k], table.values[1, i, k]] for k in range(len(table.names[1]))]
            for i in range(len(table.names[0]))
        ]
    if args.nash:
        ne = nash_equilibria(table, tol)
        front = pareto_front(table, tol)
        out["nash_equilibria"] = [list(p) for p in ne]
        out["pareto_front"] = [list(p) for p in front]
        out["nash_on_pareto_front"] = [list(p) for p in ne if p in front]
    return out


def _load_vector(path: str) -> np.ndarray:
    kind, doc = io.load_document(path, {"matrix", "tu_game", "decision_state"})
    if kind == "matrix":
        # row-major vectorisation of a matrix-valued state
        return io.matrix_from_doc(doc)
    return io.state_vector_from_doc(kind, doc)


def cmd_evolve(args, cfg):
    if args.document is not None:
        if args.operator or args.init or args.steps is not None:
            raise io.SchemaError("document", "give either an evolution document or --operator/--init/--steps")
        _, doc = io.load_document(args.document, {"evolution"})
        phi, a0, steps = io.evolution_from_doc(doc)
    else:
        missing = [f"--{n}" for n in ("operator", "init", "steps") if getattr(args, n) is None]
        if missing:
            raise io.SchemaError(missing[0].lstrip("-"), f"missing {', '.join(missing)}")
        _, doc = io.load_document(args.operator, {"matrix"})
        phi = io.parse_square(doc["data"], "operator")
        a0 = _load_vector(args.init)
        steps = args.steps
        if steps < 0:
            raise io.SchemaError("steps", "must be nonnegative")
    if a0.size != phi.shape[0]:
        raise ShapeError(f"state has {a0.size} entries but the operator is {phi.shape[0]}x{phi.shape[0]}")
    trace = evolve(phi, a0, steps)
    tol = _setting(args, cfg, "tol", DEFAULT_ERGODIC_TOL)
    out = {"steps": trace.steps, "capped": trace.capped}
    if trace.steps >= 2:
        verdict = ergodic_mean(trace, tol)
        out.update(
            converged=verdict.converged,
            bounded=verdict.bounded,
            residual=verdict.residual,
            growth=verdict.growth,
            limit=verdict.limit,
        )
    else:
        out.update(converged=None, limit=trace.means[-1])
    if args.csv:
        with _open_csv(args.csv) as fh:
            write_trace_csv(trace, fh)
    return out


def cmd_two_agent(args, cfg):
    hbar = _setting(args, cfg, "hbar", 1.0)
    model = two_agent_variants(args.w1, args.w2, args.variant, hbar)
    try:
        per = period(model)
    except PreconditionError:
        per = None
    out = {
        "kind": model.kind,
        "w1": model.w1,
        "w2": model.w2,
        "hbar": model.hbar,
        "W": model.W,
        "dW": model.dW,
        "lambda": list(model.eigenvalues),
        "E0": model.E0,
        "Delta": model.delta,
        "theta": model.theta,
        "phi": model.phi,
        "exp_minus_i_phi": model.phase,
        "max_amplitude": max_amplitude(model),
        "period": per,
        "degenerate": model.degenerate,
    }
    if args.csv:
        tmax = args.tmax if args.tmax is not None else 3 * (per if per is not None else np.pi * model.hbar)
        t = np.linspace(0.0, tmax, args.samples)
        states = psi(model, t)
        trace = EvolutionTrace(states, np.cumsum(states, axis=0) / np.arange(1, len(t) + 1)[:, None])
        with _open_csv(args.csv) as fh:
            write_trace_csv(trace, fh, times=t, transition_probability=transition_probability(model, t))
    return out


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with defaults (tol, hbar, payoffs); flags win")

    parser = argparse.ArgumentParser(prog="intersys", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="symmetric/skew split and hermitian representation")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues and eigenvectors of the hermitian representation")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("measure", parents=[common], help="value and joint spectral probabilities of a measurement")
    p.add_argument("measurement")
    p.add_argument("state")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("shapley", parents=[common], help="Shapley value of a TU-game")
    p.add_argument("game")
    p.set_defaults(func=cmd_shapley)

    p = sub.add_parser("transform", parents=[common], help="subset or Fourier transform of a vector or game")
    p.add_argument("input")
    p.add_argument("--kind", required=True, choices=["zeta", "moebius", "hadamard", "banzhaf", "fourier"])
    p.add_argument("--roundtrip", action="store_true", help="apply the inverse and report the residual")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("game", parents=[common], help="quantum decision games")
    p.add_argument("protocol", choices=["eisert"])
    p.add_argument("game")
    p.add_argument("--table", action="store_true", help="include the payoff table")
    p.add_argument("--nash", action="store_true", help="include pure equilibria and the Pareto front")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("evolve", parents=[common], help="iterate a linear operator and test mean ergodicity")
    p.add_argument("document", nargs="?", help="evolution document (alternative to the flags below)")
    p.add_argument("--operator")
    p.add_argument("--init")
    p.add_argument("--steps", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--csv", help="write the trace as CSV to this file")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("two-agent", parents=[common], help="closed-form two-agent Schroedinger evolution")
    p.add_argument("--w1", type=float, required=True)
    p.add_argument("--w2", type=float, required=True)
    p.add_argument("--variant", choices=list(KINDS), default="conformist")
    p.add_argument("--hbar", type=float)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--tmax", type=float, help="last sample time (default: three periods)")
    p.add_argument("--csv", help="write t, psi(t) and the transition probability as CSV")
    p.set_defaults(func=cmd_two_agent)
    return parser


def _fail(code: int, error: str, field: str | None, message: str) -> int:
    sys.stderr.write(json.dumps({"error": error, "field": field, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = io.load_config(args.config)
        result = args.func(args, cfg)
    except io.SchemaError as exc:
        return _fail(EXIT_SCHEMA, "schema", exc.field, str(exc))
    except ShapeError as exc:
        return _fail(EXIT_SCHEMA, "shape", None, str(exc))
    except (PreconditionError, ArithmeticError) as exc:
        return _fail(EXIT_PRECONDITION, "precondition", None, str(exc))
    except IntersysError as exc:
        return _fail(EXIT_PRECONDITION, "precondition", None, str(exc))
    sys.stdout.write(io.dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
