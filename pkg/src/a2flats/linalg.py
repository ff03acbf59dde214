"""Tiny exact linear algebra over an arbitrary field (dimensions 2 and 3).

Vectors are tuples; a basis is a tuple of vectors (the columns of the
change-of-basis matrix).
"""
from __future__ import annotations

from itertools import combinations


def dot(u, v):
    s = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        s = s + a * b
    return s


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        return dot(rows[0], cross(rows[1], rows[2]))
    raise ValueError("only dimensions up to 3 are supported")


def columns_det(vectors):
    """Determinant of the matrix whose columns are ``vectors``."""
    return det(list(zip(*vectors)))


def is_zero_vector(v) -> bool:
    return all(c == 0 for c in v)


def scale(c, v):
    return tuple(c * x for x in v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def combine(coeffs, vectors):
    """``sum(c_i * v_i)``."""
    out = scale(coeffs[0], vectors[0])
    for c, v in zip(coeffs[1:], vectors[1:]):
        out = add(out, scale(c, v))
    return out


def inverse_rows(rows):
    """Inverse of a square matrix given by rows; raises ZeroDivisionError if singular."""
    n = len(rows)
    d = det(rows)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    if n == 1:
        return ((1 / d,),)
    if n == 2:
        (a, b), (c, e) = rows
        return ((e / d, -b / d), (-c / d, a / d))
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            minor = [[rows[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
            m = minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0]
            cof[i][j] = m if (i + j) % 2 == 0 else -m
    # inverse = adj / det, adj = cofactor transposed
    return tuple(tuple(cof[j][i] / d for j in range(3)) for i in range(3))


def mat_vec(rows, v):
    return tuple(dot(r, v) for r in rows)


def coordinates(basis, v):
    """Coordinates of ``v`` in ``basis`` (a tuple of column vectors)."""
    rows = tuple(zip(*basis))
    return mat_vec(inverse_rows(rows), v)


def transpose(rows):
    return tuple(zip(*rows))


def minors(rows, k):
    """All ``k x k`` minors as ``(row_indices, col_indices, value)``."""
    n = len(rows)
    out = []
    for rs in combinations(range(n), k):
        for cs in combinations(range(n), k):
            out.append((rs, cs, det([[rows[r][c] for c in cs] for r in rs])))
    return out
