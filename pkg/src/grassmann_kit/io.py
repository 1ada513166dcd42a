"""Plain-text matrix files: a ``rows cols`` header, then one row per line,
17 significant digits per entry."""

import numpy as np

from .exceptions import InvalidInputError


def format_matrix(M):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += [" ".join("%.17g" % x for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text, source="<string>"):
    tokens = text.split()
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
        vals = np.array([float(x) for x in tokens[2:]])
    except (IndexError, ValueError) as exc:
        raise InvalidInputError(f"{source}: malformed matrix file ({exc})") from None
    if rows < 0 or cols < 0 or vals.size != rows * cols:
        raise InvalidInputError(
            f"{source}: header says {rows} x {cols} but found {vals.size} entries"
        )
    return vals.reshape(rows, cols)


def write_matrix(path, M):
    """Write ``M`` to ``path``. OSError propagates with the path attached."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(M))


def read_matrix(path):
    with open(path, encoding="ascii") as fh:
        return parse_matrix(fh.read(), source=str(path))
