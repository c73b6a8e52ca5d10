import json

import numpy as np
import pytest
from hypothesis import given

from opineq.errors import MatrixError
from opineq.matrix_io import dumps, matrix_from_json, read_matrix, write_matrix, write_report
from opineq.sampler import ginibre

from conftest import dims, rng_for, seeds


def test_scalar_matrix():
    m = matrix_from_json({"rows": 1, "cols": 1, "entries": [[2.0, 0.0]]})
    assert m.shape == (1, 1) and m[0, 0] == 2


@pytest.mark.parametrize("obj", [
    {"rows": 2, "cols": 2, "entries": [[1, 0]]},
    {"rows": 1, "cols": 1, "entries": [["nan", 0]]},
    {"rows": 1, "cols": 1},
    {"rows": 0, "cols": 0, "entries": []},
    {"rows": 1, "cols": 1, "entries": [[1]]},
])
def test_malformed(obj):
    with pytest.raises(MatrixError):
        matrix_from_json(obj)


def test_bad_json(tmp_path):
    p = tmp_path / "m.json"
    p.write_text("{not json")
    with pytest.raises(MatrixError):
        read_matrix(p)


@given(seeds, dims)
def test_round_trip_is_exact(tmp_path_factory, seed, n):
    m = ginibre(n, rng_for(seed)) * 1e-3 ** (seed % 7)
    p = tmp_path_factory.mktemp("io") / "m.json"
    write_matrix(m, p)
    assert np.array_equal(read_matrix(p), m)


def test_report_is_sorted(tmp_path):
    p = tmp_path / "r.json"
    write_report({"b": 1, "a": {"d": 2, "c": 3}}, p)
    text = p.read_text()
    assert text.index('"a"') < text.index('"b"') and text.index('"c"') < text.index('"d"')
    assert json.loads(text) == {"a": {"c": 3, "d": 2}, "b": 1}
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})
