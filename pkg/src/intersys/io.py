"""JSON documents read and written by the command line.

Every document is an object with a top-level ``"kind"``:

``matrix``          ``{"data": [[x, ...], ...]}``
``tu_game``         ``{"n": 2, "values": [{"coalition": [1, 2], "value": 2}, ...]}``
``decision_state``  ``{"n": 1, "k": 2, "coeffs": [1, 0], "valuation": false}``
``decision_game``   ``{"m": 2, "payoffs": {"00": [3, 3], ...}, "initializer": "J",
                    "strategies": [["I", "pauli1"], ["I", {"name": "S", "matrix": [[...]]}]]}``
``evolution``       ``{"operator": [[...]], "init": [...], "steps": 100}``

Complex scalars are ``[re, im]``; coalitions are sorted arrays of 1-based
player indices.  Output floats are rounded to 12 significant digits so the
CLI is byte-stable.
"""

from __future__ import annotations

import json
import math
import sys
from typing import Any

import jsonschema
import numpy as np

from .decision import DecisionState
from .errors import IntersysError
from .games import NAMED_STRATEGIES, PRISONERS_DILEMMA, DecisionGame, entangler, payoff_mapping, payoff_vectors
from .tugame import TUGame, index_subset, subset_index

SIG_DIGITS = 12


class SchemaError(IntersysError, ValueError):
    """A document does not match its schema; ``field`` locates the problem."""

    def __init__(self, field: str, message: str):
        self.field = field or "<root>"
        super().__init__(f"{self.field}: {message}")


_number = {"type": "number"}
_scalar = {"oneOf": [_number, {"type": "array", "items": _number, "minItems": 2, "maxItems": 2}]}
_vector = {"type": "array", "items": _scalar, "minItems": 1}
_matrix = {"type": "array", "items": {"type": "array", "items": _scalar, "minItems": 1}, "minItems": 1}
_named_matrix = {
    "type": "object",
    "properties": {"name": {"type": "string"}, "matrix": _matrix},
    "required": ["name", "matrix"],
    "additionalProperties": False,
}
_payoffs = {
    "type": "object",
    "patternProperties": {"^[01]+$": {"type": "array", "items": _number, "minItems": 1}},
    "additionalProperties": False,
}

SCHEMAS: dict[str, dict] = {
    "matrix": {
        "type": "object",
        "properties": {"kind": {"const": "matrix"}, "data": _matrix},
        "required": ["kind", "data"],
        "additionalProperties": False,
    },
    "tu_game": {
        "type": "object",
        "properties": {
            "kind": {"const": "tu_game"},
            "n": {"type": "integer", "minimum": 1, "maximum": 24},
            "values": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "coalition": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                        "value": _number,
                    },
                    "required": ["coalition", "value"],
                    "additionalProperties": False,
                },
            },
        },
        "required": ["kind", "n", "values"],
        "additionalProperties": False,
    },
    "decision_state": {
        "type": "object",
        "properties": {
            "kind": {"const": "decision_state"},
            "n": {"type": "integer", "minimum": 0},
            "k": {"type": "integer", "minimum": 2},
            "coeffs": _vector,
            "valuation": {"type": "boolean"},
        },
        "required": ["kind", "coeffs"],
        "additionalProperties": False,
    },
    "decision_game": {
        "type": "object",
        "properties": {
            "kind": {"const": "decision_game"},
            "m": {"const": 2},
            "payoffs": _payoffs,
            "initializer": {"oneOf": [{"enum": ["J", "I"]}, _matrix]},
            "strategies": {
                "type": "array",
                "items": {
                    "type": "array",
                    "items": {"oneOf": [{"enum": sorted(NAMED_STRATEGIES)}, _named_matrix]},
                    "minItems": 1,
                },
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "required": ["kind"],
        "additionalProperties": False,
    },
    "evolution": {
        "type": "object",
        "properties": {
            "kind": {"const": "evolution"},
            "operator": _matrix,
            "init": _vector,
            "shape": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
            "steps": {"type": "integer", "minimum": 0},
        },
        "required": ["kind", "operator", "init", "steps"],
        "additionalProperties": False,
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "hbar": {"type": "number", "exclusiveMinimum": 0},
        "payoffs": _payoffs,
    },
    "additionalProperties": False,
}


def _path(parts) -> str:
    return "/".join(str(p) for p in parts)


def validate(doc: Any, schema: dict) -> None:
    error = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(schema).iter_errors(doc))
    if error is not None:
        raise SchemaError(_path(error.absolute_path), error.message)


def read_json(path: str) -> Any:
    """Parse a JSON file; ``"-"`` reads standard input."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError("path", f"cannot read {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError("<root>", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def check_document(doc: Any, kinds=None) -> str:
    """Validate ``doc`` against the schema of its kind; returns the kind."""
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "document must be a JSON object")
    kind = doc.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError("kind", f"expected one of {sorted(SCHEMAS)}, got {kind!r}")
    if kinds is not None and kind not in kinds:
        raise SchemaError("kind", f"expected one of {sorted(kinds)}, got {kind!r}")
    validate(doc, SCHEMAS[kind])
    return kind


def load_document(path: str, kinds=None) -> tuple[str, dict]:
    doc = read_json(path)
    return check_document(doc, kinds), doc


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    cfg = read_json(path)
    validate(cfg, CONFIG_SCHEMA)
    return cfg


# -- parsing -----------------------------------------------------------------


def parse_vector(data, field: str = "coeffs") -> np.ndarray:
    """Real array when every entry is a number, complex when any entry is ``[re, im]``."""
    if any(isinstance(x, list) for x in data):
        return np.array([complex(*x) if isinstance(x, list) else complex(x) for x in data], dtype=complex)
    return np.array(data, dtype=float)


def parse_matrix(data, field: str = "data") -> np.ndarray:
    if len({len(r) for r in data}) != 1:
        raise SchemaError(field, "rows must have equal length")
    rows = [parse_vector(r, field) for r in data]
    return np.array(rows, dtype=complex if any(np.iscomplexobj(r) for r in rows) else float)


def parse_square(data, field: str = "data") -> np.ndarray:
    m = parse_matrix(data, field)
    if m.shape[0] != m.shape[1]:
        raise SchemaError(field, f"matrix must be square, got {m.shape[0]}x{m.shape[1]}")
    return m


def matrix_from_doc(doc: dict) -> np.ndarray:
    return parse_matrix(doc["data"])


def tu_game_from_doc(doc: dict) -> TUGame:
    """All ``2^n`` coalitions must be listed exactly once; integer values stay integer."""
    n = doc["n"]
    values: list = [None] * (1 << n)
    for i, entry in enumerate(doc["values"]):
        members = entry["coalition"]
        field = f"values/{i}/coalition"
        if members != sorted(set(members)):
            raise SchemaError(field, "coalition must be a sorted list of distinct players")
        if members and members[-1] > n:
            raise SchemaError(field, f"player {members[-1]} exceeds n = {n}")
        idx = subset_index(members)
        if values[idx] is not None:
            raise SchemaError(field, f"coalition {members} listed twice")
        values[idx] = entry["value"]
    missing = [sorted(index_subset(i)) for i, x in enumerate(values) if x is None]
    if missing:
        raise SchemaError("values", f"missing coalitions, e.g. {missing[0]} ({len(missing)} in total)")
    if all(isinstance(x, int) for x in values):
        return TUGame.from_values(np.array(values, dtype=np.int64))
    return TUGame.from_values(np.array(values, dtype=float))


def decision_state_from_doc(doc: dict) -> DecisionState:
    coeffs = parse_vector(doc["coeffs"])
    k = doc.get("k", 2)
    valuation = doc.get("valuation", False)
    try:
        state = DecisionState.from_vector(coeffs, k, valuation=valuation)
    except IntersysError as exc:
        raise SchemaError("coeffs", str(exc)) from None
    if "n" in doc and doc["n"] != state.n:
        raise SchemaError("n", f"{coeffs.size} coefficients mean n = {state.n}, document says {doc['n']}")
    return state


def _strategy(entry, field: str) -> tuple[str, np.ndarray]:
    if isinstance(entry, str):
        return entry, NAMED_STRATEGIES[entry]
    return entry["name"], parse_square(entry["matrix"], field + "/matrix")


def decision_game_from_doc(doc: dict, default_payoffs=None) -> DecisionGame:
    """Defaults: entangling initializer ``J``, strategies ``I, pauli1, pauli2``, Prisoners' Dilemma payoffs."""
    payoffs = doc.get("payoffs", default_payoffs or PRISONERS_DILEMMA)
    try:
        vectors = payoff_vectors(payoffs, 2)
    except IntersysError as exc:
        raise SchemaError("payoffs", str(exc)) from None
    init = doc.get("initializer", "J")
    if init == "J":
        u = entangler()
    elif init == "I":
        u = np.eye(4, dtype=complex)
    else:
        u = parse_square(init, "initializer")
    sets = doc.get("strategies", [["I", "pauli1", "pauli2"]] * 2)
    strategies = []
    for j, entries in enumerate(sets):
        named = {}
        for i, entry in enumerate(entries):
            name, op = _strategy(entry, f"strategies/{j}/{i}")
            if name in named:
                raise SchemaError(f"strategies/{j}/{i}", f"duplicate strategy name {name!r}")
            named[name] = op
        strategies.append(named)
    return DecisionGame(vectors, u, tuple(strategies))


def evolution_from_doc(doc: dict) -> tuple[np.ndarray, np.ndarray, int]:
    """``(Phi, a0, steps)``.

    ``init`` is always a flat list.  An optional ``shape`` (e.g. ``[2, 2]`` for a
    matrix-valued state) reshapes it row-major; ``Phi`` acts on the flat vector.
    """
    phi = parse_square(doc["operator"], "operator")
    a0 = parse_vector(doc["init"], "init")
    if "shape" in doc:
        if math.prod(doc["shape"]) != a0.size:
            raise SchemaError("shape", f"shape {doc['shape']} does not hold {a0.size} entries")
        a0 = a0.reshape(doc["shape"])
    if a0.size != phi.shape[0]:
        raise SchemaError("init", f"state has {a0.size} entries but the operator is {phi.shape[0]}x{phi.shape[0]}")
    return phi, a0, doc["steps"]


def state_vector_from_doc(kind: str, doc: dict) -> np.ndarray:
    """Flat vector carried by a matrix (row-major), TU-game or decision-state document."""
    if kind == "matrix":
        return matrix_from_doc(doc).reshape(-1)
    if kind == "tu_game":
        return tu_game_from_doc(doc).as_float()
    if kind == "decision_state":
        c = decision_state_from_doc(doc).coeffs
        return c if np.any(c.imag) else c.real
    raise SchemaError("kind", f"a {kind} document does not describe a vector")


# -- emission ----------------------------------------------------------------


def fmt_float(x: float) -> float | None:
    """Round to 12 significant digits; ``-0.0`` becomes ``0.0`` and non-finite values ``None``."""
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.{SIG_DIGITS}g}") + 0.0


def jsonable(x: Any) -> Any:
    """Convert numpy and complex values into JSON-ready Python objects.

    Complex arrays whose imaginary parts are all exactly zero are emitted as
    real arrays; other complex numbers become ``[re, im]``.
    """
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x) and not np.any(x.imag):
            x = x.real
        return [jsonable(v) for v in x.tolist()] if x.ndim else jsonable(x.item())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return fmt_float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [fmt_float(x.real), fmt_float(x.imag)]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if x is None or isinstance(x, str):
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return fmt_float(float(x))
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


def matrix_to_doc(m) -> dict:
    return {"kind": "matrix", "data": jsonable(np.asarray(m))}


def tu_game_to_doc(v: TUGame) -> dict:
    values = [{"coalition": sorted(index_subset(i)), "value": v.values[i]} for i in range(1 << v.n)]
    return jsonable({"kind": "tu_game", "n": v.n, "values": values})


def decision_state_to_doc(s: DecisionState) -> dict:
    doc = {"kind": "decision_state", "n": s.n, "k": s.k, "coeffs": s.coeffs}
    if s.valuation:
        doc["valuation"] = True
    return jsonable(doc)


def _strategy_entry(name: str, op: np.ndarray):
    named = NAMED_STRATEGIES.get(name)
    if named is not None and np.array_equal(named, op):
        return name
    return {"name": name, "matrix": jsonable(op)}


def decision_game_to_doc(g: DecisionGame) -> dict:
    if np.array_equal(g.initializer, entangler()):
        init: Any = "J"
    elif np.array_equal(g.initializer, np.eye(4)):
        init = "I"
    else:
        init = jsonable(g.initializer)
    return {
        "kind": "decision_game",
        "m": g.m,
        "payoffs": jsonable(payoff_mapping(g.payoffs, g.m)),
        "initializer": init,
        "strategies": [[_strategy_entry(k, op) for k, op in named.items()] for named in g.strategies],
    }


def evolution_to_doc(phi, a0, steps: int) -> dict:
    a0 = np.asarray(a0)
    doc = {"kind": "evolution", "operator": jsonable(np.asarray(phi)), "init": jsonable(a0.reshape(-1)), "steps": int(steps)}
    if a0.ndim != 1:
        doc["shape"] = list(a0.shape)
    return doc
