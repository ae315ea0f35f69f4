"""Exact integer matrix helpers on tuples of tuples.

Matrices here are tiny (rank 2g+k-1), so plain Python integers are both exact
and fast enough. Results are range-checked against signed 64-bit arithmetic so
behaviour does not silently depend on Python's unbounded ints.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, EntryOverflow

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

INT64_MAX = 2**63 - 1


def checked(value: int) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise EntryOverflow(f"value {value} exceeds signed 64-bit range")
    return value


def as_vector(x: Iterable[int]) -> Vector:
    return tuple(int(v) for v in x)


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple((0,) * n for _ in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def is_square(a: Sequence[Sequence[int]], n: int | None = None) -> bool:
    size = len(a) if n is None else n
    return len(a) == size and all(len(row) == size for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    cols = transpose(b)
    return tuple(
        tuple(checked(sum(x * y for x, y in zip(row, col))) for col in cols) for row in a
    )


def mat_vec(a: Matrix, x: Vector) -> Vector:
    if len(x) != (len(a[0]) if a else 0):
        raise DimensionMismatch(f"vector of length {len(x)} for a {len(a)}-square matrix")
    return tuple(checked(sum(r * v for r, v in zip(row, x))) for row in a)


def bilinear(x: Vector, a: Matrix, y: Vector) -> int:
    """x^T A y, checked."""
    if not (len(x) == len(a) == len(y)):
        raise DimensionMismatch(f"lengths {len(x)}, {len(y)} against rank {len(a)}")
    total = 0
    for xi, row in zip(x, a):
        if xi:
            total += xi * sum(r * v for r, v in zip(row, y))
    return checked(total)


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
