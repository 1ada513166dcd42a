import numpy as np
import pytest

from grassmann_kit.exceptions import InvalidInputError
from grassmann_kit.io import format_matrix, parse_matrix, read_matrix, write_matrix


def test_format_frozen():
    assert format_matrix(np.array([[1.0, 0.1], [-2.5, 1e-20]])) == "2 2\n1 0.10000000000000001\n-2.5 9.9999999999999995e-21\n"


def test_round_trip_bit_exact(tmp_path, rng):
    M = rng.standard_normal((5, 3))
    path = tmp_path / "m.txt"
    write_matrix(path, M)
    assert np.array_equal(read_matrix(path), M)


@pytest.mark.parametrize("text", ["", "2", "2 2\n1 2 3", "a b\n", "1 1\nx"])
def test_parse_errors(text):
    with pytest.raises(InvalidInputError):
        parse_matrix(text)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        read_matrix(tmp_path / "nope.txt")
