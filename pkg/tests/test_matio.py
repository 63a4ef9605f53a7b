import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nrbounds.errors import DimensionMismatch, ParseError
from nrbounds.matio import dump_json, dump_matrix_market, parse_json, parse_matrix_market, read_matrix, write_matrix


def test_json_example():
    m = parse_json('{"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]}')
    assert np.array_equal(m, [[0, 1], [0, 0]])


def test_matrix_market_array_is_column_major():
    text = "%%MatrixMarket matrix array real general\n2 2\n8\n1\n1\n0\n"
    assert np.array_equal(parse_matrix_market(text), [[8, 1], [1, 0]])


def test_matrix_market_coordinate_complex_hermitian():
    text = ("%%MatrixMarket matrix coordinate complex hermitian\n% comment\n"
            "2 2 2\n1 1 2 0\n2 1 1 1\n")
    m = parse_matrix_market(text)
    assert np.array_equal(m, [[2, 1 - 1j], [1 + 1j, 0]])


def test_matrix_market_symmetric_and_skew():
    sym = parse_matrix_market("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n")
    assert np.array_equal(sym, [[1, 2], [2, 3]])
    skew = parse_matrix_market("%%MatrixMarket matrix array real skew-symmetric\n2 2\n5\n")
    assert np.array_equal(skew, [[0, -5], [5, 0]])
    pat = parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n")
    assert np.array_equal(pat, [[0, 1], [0, 0]])


@pytest.mark.parametrize("text, exc, line", [
    ('{"rows":2,"cols":2,"data":[[0,0]]}', DimensionMismatch, None),
    ('{"rows":1,"cols":1,\n"data":[[0,0]}', ParseError, 2),
    ('{"rows":1,"cols":1,"data":[["a",0]]}', ParseError, None),
    ('[1, 2]', ParseError, 1),
])
def test_json_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_json(text)
    if line is not None:
        assert info.value.line == line


def test_matrix_market_errors():
    with pytest.raises(ParseError):
        parse_matrix_market("2 2\n1\n")
    with pytest.raises(DimensionMismatch):
        parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n")
    with pytest.raises(DimensionMismatch) as info:
        parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n")
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\nabc\n")
    assert (info.value.line, info.value.column) == (3, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_round_trip_exact(seed, r, c):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((r, c)) * 10.0 ** rng.integers(-20, 20) + 1j * rng.standard_normal((r, c))
    for dump, parse in ((dump_json, parse_json), (dump_matrix_market, parse_matrix_market)):
        back = parse(dump(a))
        assert back.tobytes() == a.tobytes()


def test_file_round_trip(tmp_path):
    a = np.random.default_rng(0).standard_normal((5, 5)) + 1j
    for name in ("a.json", "a.mtx"):
        write_matrix(tmp_path / name, a)
        assert read_matrix(tmp_path / name).tobytes() == a.tobytes()
