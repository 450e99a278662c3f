"""Exact linear algebra: rational inverses, congruence signatures and
incremental elimination of linear systems with Scalar entries."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .scalar import ParamSet, Scalar


class SingularMatrixError(ValueError):
    pass


def inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def congruence_signature(matrix: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Symmetric Gaussian elimination: each step applies the same row and
    column operation, so the diagonal that remains is congruent to the input.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if off is None:
                break
            i, j = off
            # row/col i += row/col j makes the (i, i) entry 2*a[i][j] != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        # Schur complement = result of the paired row/column eliminations
        for r in range(k + 1, n):
            if a[r][k] != 0:
                f = a[r][k] / d
                for c in range(k + 1, n):
                    a[r][c] -= f * a[k][c]
        for c in range(k + 1, n):
            a[k][c] = Fraction(0)
        for r in range(k + 1, n):
            a[r][k] = Fraction(0)
        if d > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, n - pos - neg


@dataclass
class LinearSolution:
    """Outcome of :func:`solve_linear`.

    ``status`` is one of ``unique``, ``family``, ``inconsistent`` or
    ``undetermined`` (elimination needed a non-constant pivot).  For the first
    two, ``particular`` solves the system with every free unknown at zero and
    ``nullspace`` holds one basis vector per entry of ``free``.
    """

    status: str
    particular: list[Scalar] | None = None
    nullspace: list[list[Scalar]] = field(default_factory=list)
    free: list[int] = field(default_factory=list)
    witness: Hashable | None = None

    @property
    def consistent(self) -> bool:
        return self.status in ("unique", "family")


def solve_linear(params: ParamSet, n_unknowns: int,
                 equations: Iterable[tuple[Hashable, Sequence[Scalar], Scalar]]) -> LinearSolution:
    """Solve ``sum_j coeffs[j] * x_j = rhs`` for every (label, coeffs, rhs).

    Equations are absorbed in the given order; the label of the first
    equation that makes the system inconsistent is the witness.  Pivots are
    restricted to nonzero rational constants so no polynomial division occurs.
    """
    zero = Scalar.zero(params)
    pivots: dict[int, tuple[list[Scalar], Scalar]] = {}
    stuck: list[tuple[Hashable, list[Scalar], Scalar]] = []

    def reduce(coeffs, rhs):
        coeffs = list(coeffs)
        for col, (prow, prhs) in pivots.items():
            f = coeffs[col]
            if f.is_zero():
                continue
            coeffs = [c - f * p for c, p in zip(coeffs, prow)]
            rhs = rhs - f * prhs
        return coeffs, rhs

    def absorb(label, coeffs, rhs) -> str:
        coeffs, rhs = reduce(coeffs, rhs)
        nz = [j for j, c in enumerate(coeffs) if not c.is_zero()]
        if not nz:
            return "ok" if rhs.is_zero() else "inconsistent"
        col = next((j for j in nz if coeffs[j].is_constant()), None)
        if col is None:
            stuck.append((label, coeffs, rhs))
            return "stuck"
        p = coeffs[col].constant_value()
        prow = [c.div_rational(p) for c in coeffs]
        prhs = rhs.div_rational(p)
        for other, (orow, orhs) in list(pivots.items()):
            f = orow[col]
            if not f.is_zero():
                pivots[other] = ([a - f * b for a, b in zip(orow, prow)], orhs - f * prhs)
        pivots[col] = (prow, prhs)
        return "ok"

    for label, coeffs, rhs in equations:
        coeffs = list(coeffs)
        if len(coeffs) != n_unknowns:
            raise ValueError(f"equation {label} has {len(coeffs)} coefficients, expected {n_unknowns}")
        if absorb(label, coeffs, rhs) == "inconsistent":
            return LinearSolution("inconsistent", witness=label)

    # rows that had only polynomial entries may become pivotable later
    progress = True
    while stuck and progress:
        progress = False
        pending, stuck[:] = list(stuck), []
        for label, coeffs, rhs in pending:
            outcome = absorb(label, coeffs, rhs)
            if outcome == "inconsistent":
                return LinearSolution("inconsistent", witness=label)
            if outcome == "ok":
                progress = True
    if stuck:
        return LinearSolution("undetermined", witness=stuck[0][0])

    free = [j for j in range(n_unknowns) if j not in pivots]
    particular = [zero] * n_unknowns
    for col, (_, prhs) in pivots.items():
        particular[col] = prhs
    nullspace = []
    for f in free:
        vec = [zero] * n_unknowns
        vec[f] = Scalar.one(params)
        for col, (prow, _) in pivots.items():
            vec[col] = -prow[f]
        nullspace.append(vec)
    return LinearSolution("unique" if not free else "family", particular, nullspace, free)
