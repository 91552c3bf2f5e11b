import json
import math

import pytest

from radialmax.serialize import csv_float, csv_lines, fmt_float, to_json


def test_floats_carry_seventeen_significant_digits():
    x = 1.0 / 3.0
    assert fmt_float(x) == "0.33333333333333331"
    assert float(fmt_float(x)) == x  # round-trips exactly


def test_non_finite_floats_become_strings():
    assert fmt_float(float("inf")) == '"inf"'
    assert fmt_float(float("-inf")) == '"-inf"'
    assert fmt_float(float("nan")) == '"nan"'
    assert csv_float(float("-inf")) == "-inf"


def test_to_json_is_strictly_parseable():
    payload = {"a": 1, "b": [1.5, None, True], "c": {"nested": "x\"y"},
               "d": float("-inf")}
    text = to_json(payload)
    back = json.loads(text)
    assert back["a"] == 1
    assert back["b"] == [1.5, None, True]
    assert back["c"]["nested"] == 'x"y'
    assert back["d"] == "-inf"


def test_to_json_rejects_unknown_types():
    with pytest.raises(TypeError):
        to_json({"x": object()})


def test_csv_lines_format():
    text = csv_lines({"run": "demo"}, ["a", "b"], [[1, 0.5], [None, math.pi]])
    lines = text.splitlines()
    assert lines[0] == "# run=demo"
    assert lines[1] == "a,b"
    assert lines[2] == "1,0.5"
    assert lines[3].startswith(",3.14159265358979")
