"""Exact rational feasibility for ``Q^T x >= b, x >= 0`` with Farkas certificates.

Either a feasible ``x`` is returned, or a ``y >= 0`` with ``Q y <= 0`` and
``b^T y > 0`` proving that none exists.  Arithmetic is exact throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InputError, InvariantViolation

RationalMatrix = Sequence[Sequence[Fraction]]


@dataclass(frozen=True)
class Feasible:
    x: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    y: tuple[Fraction, ...]


FeasibilityResult = Union[Feasible, Infeasible]


def as_matrix(Q) -> list[list[Fraction]]:
    rows = [[Fraction(v) for v in row] for row in Q]
    if not rows or not rows[0]:
        raise InputError("matrix dimensions must be positive")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("ragged matrix")
    return rows


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` (or an int) into a Fraction; floats are refused."""
    if isinstance(text, float):
        raise InputError("floating-point values are not accepted")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}") from exc


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def solve_feasibility(Q, b) -> FeasibilityResult:
    """Decide ``exists x >= 0 : Q^T x >= b`` by phase-1 simplex (Bland's rule)."""
    Q = as_matrix(Q)
    b = [Fraction(v) for v in b]
    n, ell = len(Q), len(Q[0])
    if len(b) != ell:
        raise InputError(f"b has length {len(b)}, expected {ell}")

    # Row j: sign_j * (sum_i Q[i][j] x_i - s_j) + a_j = |b_j|.
    # Columns: x_0..x_{n-1}, s_0..s_{ell-1}, a_0..a_{ell-1}.
    sign = [1 if bj >= 0 else -1 for bj in b]
    width = n + 2 * ell
    T = []
    for j in range(ell):
        row = [Fraction(0)] * width
        for i in range(n):
            row[i] = sign[j] * Q[i][j]
        row[n + j] = Fraction(-sign[j])
        row[n + ell + j] = Fraction(1)
        T.append(row)
    rhs = [abs(bj) for bj in b]
    basis = [n + ell + j for j in range(ell)]
    cost = [Fraction(0)] * (n + ell) + [Fraction(1)] * ell
    reduced = [cost[k] - sum(T[j][k] for j in range(ell)) for k in range(width)]

    while True:
        entering = next((k for k in range(width) if reduced[k] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for j in range(ell):
            if T[j][entering] > 0:
                ratio = rhs[j] / T[j][entering]
                if best is None or ratio < best or (ratio == best and basis[j] < basis[leaving]):
                    best, leaving = ratio, j
        if leaving is None:
            # unbounded below is impossible: the phase-1 objective is >= 0
            raise InvariantViolation("phase-1 simplex reported an unbounded direction")
        _pivot(T, rhs, reduced, leaving, entering)
        basis[leaving] = entering

    value = sum(rhs[j] for j in range(ell) if basis[j] >= n + ell)
    if value == 0:
        x = [Fraction(0)] * n
        for j, var in enumerate(basis):
            if var < n:
                x[var] = rhs[j]
        return Feasible(tuple(x))
    # dual values pi_j = c_{a_j} - reduced_{a_j}; the witness undoes the row signs
    y = tuple(sign[j] * (1 - reduced[n + ell + j]) for j in range(ell))
    return Infeasible(y)


def _pivot(T, rhs, reduced, r, c):
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    rhs[r] = rhs[r] / piv
    nz = [k for k, v in enumerate(row) if v]
    for j, other in enumerate(T):
        if j == r:
            continue
        f = other[c]
        if f:
            for k in nz:
                other[k] -= f * row[k]
            rhs[j] -= f * rhs[r]
    f = reduced[c]
    if f:
        for k in nz:
            reduced[k] -= f * row[k]


def verify_certificate(Q, b, result: FeasibilityResult) -> bool:
    """Re-check the returned alternative by exact arithmetic."""
    Q = as_matrix(Q)
    b = [Fraction(v) for v in b]
    n, ell = len(Q), len(Q[0])
    if len(b) != ell:
        return False
    if isinstance(result, Feasible):
        x = result.x
        if len(x) != n or any(v < 0 for v in x):
            return False
        return all(sum(Q[i][j] * x[i] for i in range(n)) >= b[j] for j in range(ell))
    if isinstance(result, Infeasible):
        y = result.y
        if len(y) != ell or any(v < 0 for v in y):
            return False
        if any(sum(Q[i][j] * y[j] for j in range(ell)) > 0 for i in range(n)):
            return False
        return sum(bj * yj for bj, yj in zip(b, y)) > 0
    return False
