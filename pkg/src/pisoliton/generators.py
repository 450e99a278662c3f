"""Random valid inputs for property checks.

Everything is driven by a ``random.Random`` so a seed reproduces a frame.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .frame import LieFrame
from .linalg import inverse
from .scalar import ParamSet
from .structure import PiStructure
from .fixtures import standard_phi


def rational(rng: random.Random, bound: int = 3, denominators=(1, 1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(denominators))


def pd_metric(rng: random.Random, dim: int) -> list[list[Fraction]]:
    """B B^T + I for a random small rational B; always positive definite."""
    B = [[rational(rng, 2) for _ in range(dim)] for _ in range(dim)]
    return [[sum((B[i][k] * B[j][k] for k in range(dim)), Fraction(0)) + (i == j)
             for j in range(dim)] for i in range(dim)]


def _invertible(rng: random.Random, dim: int) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    while True:
        P = [[rational(rng, 2) for _ in range(dim)] for _ in range(dim)]
        try:
            return P, inverse(P)
        except ValueError:
            continue


def change_basis(C: list, P, Pinv) -> list:
    """Structure constants in the basis f_a = sum_i P[i][a] e_i."""
    d = len(P)
    out = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for b in range(d):
            # [f_a, f_b] in e-coordinates
            v = [Fraction(0)] * d
            for i in range(d):
                if not P[i][a]:
                    continue
                for j in range(d):
                    if not P[j][b]:
                        continue
                    w = P[i][a] * P[j][b]
                    for k in range(d):
                        v[k] += w * C[i][j][k]
            for c in range(d):
                out[a][b][c] = sum((Pinv[c][k] * v[k] for k in range(d)), Fraction(0))
    return out


def _frame_from_constants(C, metric, params: ParamSet | None = None) -> LieFrame:
    d = len(C)
    params = params or ParamSet()
    brackets = {(i, j): C[i][j] for i in range(d) for j in range(i + 1, d) if any(C[i][j])}
    return LieFrame.build(params, d, brackets, metric)


def semidirect_constants(rng: random.Random, dim: int) -> list:
    """R acting on R^{dim-1} by a random matrix A: [e_0, e_i] = A e_i."""
    C = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(1, dim):
        for k in range(1, dim):
            a = rational(rng) if rng.random() < 0.6 else Fraction(0)
            C[0][i][k], C[i][0][k] = a, -a
    return C


def sparse_constants(rng: random.Random, dim: int, entries: int = 2) -> list:
    C = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    pairs = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
    for _ in range(entries):
        i, j = rng.choice(pairs)
        k = rng.randrange(dim)
        c = rational(rng)
        C[i][j][k], C[j][i][k] = c, -c
    return C


def random_frame(rng: random.Random, dim: int | None = None, kind: str | None = None) -> LieFrame:
    """A Lie algebra with a random positive definite metric.

    ``kind`` picks the construction: ``semidirect`` (always Lie, then a random
    change of basis), ``sparse`` (random constants kept only if Jacobi holds)
    or ``abelian``.
    """
    dim = dim or rng.choice((2, 3, 3, 4))
    kind = kind or rng.choice(("semidirect", "semidirect", "sparse", "abelian"))
    metric = pd_metric(rng, dim)
    if kind == "abelian":
        return _frame_from_constants([[[0] * dim for _ in range(dim)] for _ in range(dim)], metric)
    if kind == "sparse":
        for _ in range(200):
            frame = _frame_from_constants(sparse_constants(rng, dim), metric)
            if frame.jacobi.ok:
                return frame
        kind = "semidirect"
    C = semidirect_constants(rng, dim)
    P, Pinv = _invertible(rng, dim)
    return _frame_from_constants(change_basis(C, P, Pinv), metric)


def skew_commuting(rng: random.Random, n: int) -> list[list[Fraction]]:
    """[[X, Y], [Y, X]] with X, Y skew: skew-symmetric and commuting with the swap φ."""
    def skew():
        M = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                M[i][j] = rational(rng)
                M[j][i] = -M[i][j]
        return M

    X, Y = skew(), skew()
    return [[(X if (r < n) == (c < n) else Y)[r % n][c % n] for c in range(2 * n)] for r in range(2 * n)]


def para_sasaki_candidate(rng: random.Random, n: int | None = None, perturb: float = 0.3) -> PiStructure:
    """ad_{e_0} = -φ + B on span(e_1..e_2n) with B skew and commuting with φ,
    all other brackets zero, identity metric, ξ = e_0.

    With probability ``perturb`` a random symmetric term is added to ad_{e_0};
    such inputs usually fail the para-Sasaki-like test, which is the point.
    """
    n = n or rng.choice((1, 2))
    d = 2 * n + 1
    phi = standard_phi(d)
    B = skew_commuting(rng, n)
    extra = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    if rng.random() < perturb:
        for r in range(2 * n):
            for c in range(r, 2 * n):
                extra[r][c] = extra[c][r] = rational(rng, 1)
    brackets = {}
    for i in range(1, d):
        # [e_0, e_i] = Σ_k (-φ + B + S)^k_i e_k
        coeffs = [Fraction(0)] * d
        for k in range(1, d):
            coeffs[k] = -phi[k][i] + B[k - 1][i - 1] + extra[k - 1][i - 1]
        brackets[(0, i)] = coeffs
    frame = LieFrame.build(ParamSet(), d, brackets)
    unit = [1] + [0] * (d - 1)
    return PiStructure.build(frame, phi, unit, unit)
