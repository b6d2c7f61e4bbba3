import json

import numpy as np
import pytest

from intersys import io
from intersys.decision import DecisionState
from intersys.games import DecisionGame, PI3_HAT
from intersys.tugame import TUGame


def roundtrip(doc):
    text = json.dumps(doc)
    again = json.loads(text)
    io.check_document(again)
    return again


def test_fmt_float():
    assert io.fmt_float(np.pi) == 3.14159265359
    assert str(io.fmt_float(-0.0)) == "0.0"
    assert io.fmt_float(float("inf")) is None
    assert io.fmt_float(1 / 3) == 0.333333333333


def test_jsonable_complex_and_real_arrays():
    assert io.jsonable(np.array([1 + 0j, 2 + 0j])) == [1.0, 2.0]
    assert io.jsonable(np.array([1 + 1j, 2])) == [[1.0, 1.0], [2.0, 0.0]]
    assert io.jsonable({"a": (np.int64(3), np.bool_(True), None)}) == {"a": [3, True, None]}
    with pytest.raises(TypeError):
        io.jsonable(object())


def test_matrix_roundtrip():
    m = np.array([[1, 2 + 1j], [0.5, -3]])
    doc = roundtrip(io.matrix_to_doc(m))
    assert np.array_equal(io.matrix_from_doc(doc), m)
    real = roundtrip(io.matrix_to_doc(np.eye(2)))
    assert io.matrix_from_doc(real).dtype == float


def test_tu_game_roundtrip():
    v = TUGame.from_values(np.array([0, 1, 0, 2, 5, -1, 3, 7]))
    doc = roundtrip(io.tu_game_to_doc(v))
    assert io.tu_game_from_doc(doc) == v
    w = TUGame.from_values(np.array([0.25, 1.5]))
    assert io.tu_game_from_doc(roundtrip(io.tu_game_to_doc(w))) == w


def test_decision_state_roundtrip():
    s = DecisionState(2, 2, np.array([0.5, 0.5j, -0.5, 0.5]))
    assert io.decision_state_from_doc(roundtrip(io.decision_state_to_doc(s))) == s
    g = DecisionState.from_game(TUGame.from_values([0, 1, 0, 2]))
    assert io.decision_state_from_doc(roundtrip(io.decision_state_to_doc(g))) == g


def test_decision_game_roundtrip():
    custom = np.array([[0, 1], [1j, 0]]) * 1j
    g = DecisionGame.eisert(("I", "pauli2"))
    g = DecisionGame(g.payoffs, g.initializer, ({"I": np.eye(2), "S": custom}, {"pauli3": PI3_HAT}))
    doc = roundtrip(io.decision_game_to_doc(g))
    back = io.decision_game_from_doc(doc)
    assert np.array_equal(back.payoffs, g.payoffs)
    assert np.array_equal(back.initializer, g.initializer)
    for a, b in zip(back.strategies, g.strategies):
        assert a.keys() == b.keys() and all(np.array_equal(a[k], b[k]) for k in a)
    assert doc["initializer"] == "J" and doc["strategies"][1] == ["pauli3"]


def test_evolution_roundtrip_matrix_state():
    phi, a0 = np.eye(4), np.array([[1.0, 2.0], [3.0, 4.0]])
    doc = roundtrip(io.evolution_to_doc(phi, a0, 5))
    assert doc["init"] == [1.0, 2.0, 3.0, 4.0]
    p2, b0, steps = io.evolution_from_doc(doc)
    assert np.array_equal(p2, phi) and np.array_equal(b0, a0) and steps == 5


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"kind": "matrix"}, "<root>"),
        ({"kind": "matrix", "data": [[1, "x"]]}, "data/0/1"),
        ({"kind": "nope"}, "kind"),
        ({"kind": "tu_game", "n": 1, "values": [{"coalition": [], "value": 0}, {"coalitoin": [1], "value": 1}]}, "values/1"),
        ({"kind": "evolution", "operator": [[1]], "init": [1], "steps": -1}, "steps"),
        ({"kind": "decision_game", "strategies": [["I"], ["bogus"]]}, "strategies/1/0"),
    ],
)
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(io.SchemaError) as info:
        io.check_document(doc)
    assert info.value.field == field


def test_semantic_errors_name_the_field():
    bad = {"kind": "tu_game", "n": 1, "values": [{"coalition": [], "value": 0}, {"coalition": [2], "value": 1}]}
    with pytest.raises(io.SchemaError) as info:
        io.tu_game_from_doc(bad)
    assert info.value.field == "values/1/coalition"
    with pytest.raises(io.SchemaError) as info:
        io.decision_state_from_doc({"kind": "decision_state", "coeffs": [1, 1]})
    assert info.value.field == "coeffs"
    with pytest.raises(io.SchemaError) as info:
        io.parse_square([[1, 2]], "operator")
    assert info.value.field == "operator"
    with pytest.raises(io.SchemaError):
        io.evolution_from_doc({"kind": "evolution", "operator": [[1, 0], [0, 1]], "init": [1, 2, 3], "steps": 1})


def test_config_schema(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"tol": 1e-8, "hbar": 2}))
    assert io.load_config(str(p)) == {"tol": 1e-8, "hbar": 2}
    p.write_text(json.dumps({"hbar": -1}))
    with pytest.raises(io.SchemaError) as info:
        io.load_config(str(p))
    assert info.value.field == "hbar"
    assert io.load_config(None) == {}
