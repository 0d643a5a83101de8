import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birkhoff.errors import SchemaError
from birkhoff.grids import Ball, Box
from birkhoff.polyspace import Polynomial, random_polynomial
from birkhoff.serialize import (
    domain_from_json,
    dump_json,
    json_float,
    load_json,
    polynomial_from_json,
    polynomial_to_json,
    samples_from_json,
    scheme_from_json,
    scheme_to_json,
)
from birkhoff.solver import random_exact_scheme


class TestPolynomial:
    def test_round_trip(self, rng):
        for n, d in [(1, 3), (2, 2), (3, 4)]:
            P = random_polynomial(rng, n, d)
            assert polynomial_from_json(json.loads(dump_json(polynomial_to_json(P)))) == P

    def test_layout(self):
        P = Polynomial(1, 2, {(0,): 1.0, (1,): -2.0, (2,): 2.0})
        assert polynomial_to_json(P) == {
            "n": 1,
            "d": 2,
            "coeffs": [{"alpha": [0], "c": 1.0}, {"alpha": [1], "c": -2.0}, {"alpha": [2], "c": 2.0}],
        }

    def test_numeric_strings(self):
        P = polynomial_from_json({"n": 1, "d": 1, "coeffs": [{"alpha": [1], "c": "0.25"}]})
        assert P.coeffs[(1,)] == 0.25

    @pytest.mark.parametrize(
        "obj",
        [
            {"n": 1, "d": 1},
            {"n": 1, "d": 1, "coeffs": [{"alpha": [2], "c": 1}]},
            {"n": 1, "d": 1, "coeffs": [{"alpha": [1], "c": 1}, {"alpha": [1], "c": 2}]},
            {"n": 2, "d": 1, "coeffs": [{"alpha": [1], "c": 1}]},
            {"n": 1, "d": 1, "coeffs": [{"alpha": [1], "c": True}]},
            {"n": 1, "d": 1, "coeffs": [{"alpha": [1], "c": "x"}]},
            {"n": 0, "d": 1, "coeffs": []},
            [],
        ],
    )
    def test_rejects(self, obj):
        with pytest.raises(SchemaError):
            polynomial_from_json(obj)


class TestScheme:
    def test_round_trip(self, rng):
        s = random_exact_scheme(rng, 3, 2)
        assert scheme_from_json(json.loads(dump_json(scheme_to_json(s)))) == s

    def test_domain_round_trip(self):
        obj = {"n": 1, "d": 0, "nodes": [{"order": 0, "point": [0.5]}], "domain": {"kind": "box", "lower": [0], "upper": [1]}}
        s = scheme_from_json(obj)
        assert s.domain == Box((0.0,), (1.0,))
        assert scheme_to_json(s)["domain"]["kind"] == "box"

    @pytest.mark.parametrize(
        "node",
        [
            {"order": 0, "point": [0, 0], "direction": [1, 0]},
            {"order": 1, "point": [0, 0]},
            {"order": 1, "point": [0, 0], "direction": [0, 0]},
            {"order": 2, "point": [0, 0], "direction": [1, 0]},
            {"order": 1, "point": [0], "direction": [1, 0]},
            {"order": -1, "point": [0, 0]},
        ],
    )
    def test_rejects_nodes(self, node):
        with pytest.raises(SchemaError):
            scheme_from_json({"n": 2, "d": 1, "nodes": [node]})


class TestDomain:
    def test_ball(self):
        assert domain_from_json({"kind": "ball"}, 2) == Ball(2)
        assert domain_from_json({"kind": "ball", "radius": 2, "center": [1, 1]}, 2) == Ball(2, 2.0, (1.0, 1.0))

    @pytest.mark.parametrize(
        "obj",
        [{"kind": "disc"}, {"kind": "ball", "radius": 0}, {"kind": "box", "lower": [1], "upper": [0]}, {"kind": "box"}],
    )
    def test_rejects(self, obj):
        with pytest.raises(SchemaError):
            domain_from_json(obj, 1)


def test_samples():
    assert samples_from_json({"values": [1, "2", 3.5]}).values == (1.0, 2.0, 3.5)
    with pytest.raises(SchemaError):
        samples_from_json({"values": 3})


def test_bad_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_json(p)


@settings(max_examples=50)
@given(st.floats(allow_nan=False))
def test_json_float(x):
    out = json_float(x)
    assert out == x if np.isfinite(x) else out in ("inf", "-inf")
    json.dumps(out, allow_nan=False)
