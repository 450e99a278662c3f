"""Left-invariant geometry of a Lie algebra with a constant metric.

On a left-invariant frame every inner product g(e_i, e_j) is constant, so
the Koszul formula only sees brackets and every frame derivative of a
component vanishes.  All tensors below are therefore arrays of constants
(polynomial in the declared parameters).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .linalg import inverse
from .scalar import ParamSet, Scalar, as_scalar
from .tensor import FrameTensor, L, U, contract, raise_index, _wrap


class JacobiError(ValueError):
    """The structure constants do not define a Lie algebra."""


@dataclass(frozen=True)
class JacobiResult:
    ok: bool
    witness: tuple[int, int, int] | None = None


@dataclass(frozen=True, eq=False)
class LieFrame:
    """Structure constants ``brackets[i, j, k] = C^k_ij`` plus a constant metric."""

    params: ParamSet
    brackets: FrameTensor
    metric: FrameTensor

    def __post_init__(self):
        d = self.brackets.dim
        if self.brackets.signature != (L, L, U):
            raise ValueError("brackets must have signature (lower, lower, upper)")
        if self.metric.signature != (L, L) or self.metric.dim != d:
            raise ValueError(f"metric must be a ({d}x{d}) covariant 2-tensor")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if self.brackets[i, j, k] != -self.brackets[j, i, k]:
                        raise ValueError(f"structure constants not antisymmetric at [e_{i}, e_{j}]")
                if self.metric[i, j] != self.metric[j, i]:
                    raise ValueError(f"metric not symmetric at ({i}, {j})")
        if not self.metric.is_constant():
            raise ValueError("metric entries must be rational constants")
        inverse(self.metric_matrix)  # raises SingularMatrixError

    @classmethod
    def build(cls, params: ParamSet, dim: int,
              brackets: Mapping[tuple[int, int], Sequence] | None = None,
              metric: Sequence[Sequence] | None = None) -> "LieFrame":
        """Assemble from ``{(i, j): [c_0, ..., c_{d-1}]}`` with ``i < j`` meaning
        ``[e_i, e_j] = sum_k c_k e_k``.  Missing brackets are zero; the default
        metric is the identity."""
        zero = Scalar.zero(params)
        data = np.empty((dim, dim, dim), dtype=object)
        data[...] = zero
        for (i, j), coeffs in (brackets or {}).items():
            if i == j:
                raise ValueError(f"bracket [e_{i}, e_{i}] must vanish")
            if len(coeffs) != dim:
                raise ValueError(f"bracket [e_{i}, e_{j}] needs {dim} coefficients")
            for k, c in enumerate(coeffs):
                c = as_scalar(c, params)
                data[i, j, k] = c
                data[j, i, k] = -c
        if metric is None:
            metric = [[int(i == j) for j in range(dim)] for i in range(dim)]
        return cls(params, FrameTensor(params, dim, (L, L, U), data),
                   FrameTensor.from_nested(params, (L, L), metric))

    @property
    def dim(self) -> int:
        return self.brackets.dim

    @cached_property
    def metric_matrix(self) -> list[list[Fraction]]:
        return [[self.metric[i, j].constant_value() for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def metric_inverse(self) -> FrameTensor:
        return FrameTensor.from_nested(self.params, (U, U), inverse(self.metric_matrix))

    def bracket(self, i: int, j: int) -> list[Scalar]:
        return [self.brackets[i, j, k] for k in range(self.dim)]

    @cached_property
    def jacobi(self) -> JacobiResult:
        return check_jacobi(self)

    def substitute(self, values: Mapping[str, Fraction]) -> "LieFrame":
        params = self.params.without(*values)
        return LieFrame(params, self.brackets.map(lambda s: s.subs(values, params), params),
                        self.metric.map(lambda s: s.subs(values, params), params))

    def embed(self, params: ParamSet) -> "LieFrame":
        return LieFrame(params, self.brackets.embed(params), self.metric.embed(params))


def check_jacobi(frame: LieFrame) -> JacobiResult:
    """Cyclic sum of [e_i, [e_j, e_k]] over all triples i < j < k."""
    d = frame.dim
    C = frame.brackets.array
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                for l in range(d):
                    total = Scalar.zero(frame.params)
                    for m in range(d):
                        total = (total + C[j, k, m] * C[i, m, l]
                                 + C[k, i, m] * C[j, m, l] + C[i, j, m] * C[k, m, l])
                    if not total.is_zero():
                        return JacobiResult(False, (i, j, k))
    return JacobiResult(True)


def _require_lie(frame: LieFrame):
    if not frame.jacobi.ok:
        raise JacobiError(f"Jacobi identity fails for triple {frame.jacobi.witness}")


@dataclass(frozen=True, eq=False)
class Connection:
    """``gamma[i, j, k] = Γ^k_ij`` with ∇_{e_i} e_j = Σ_k Γ^k_ij e_k."""

    frame: LieFrame
    gamma: FrameTensor

    def nabla(self, i: int, v: Sequence[Scalar]) -> list[Scalar]:
        """∇_{e_i} v for a vector with constant components."""
        d = self.frame.dim
        zero = Scalar.zero(self.frame.params)
        out = [zero] * d
        for j in range(d):
            if v[j].is_zero():
                continue
            for k in range(d):
                out[k] = out[k] + v[j] * self.gamma[i, j, k]
        return out


def levi_civita(frame: LieFrame) -> Connection:
    """Koszul formula for left-invariant fields:

    2 g(∇_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j)
    """
    _require_lie(frame)
    C = frame.brackets.array
    g = frame.metric.array
    # c[i, j, k] = g([e_i, e_j], e_k)
    c = _wrap(np.tensordot(C, g, axes=([2], [0])), frame.params, frame.dim, (L, L, L)).array
    koszul = (c - np.transpose(c, (2, 0, 1)) + np.transpose(c, (1, 2, 0)))
    koszul = np.vectorize(lambda s: s.div_rational(2), otypes=[object])(koszul)
    lowered = FrameTensor(frame.params, frame.dim, (L, L, L), koszul)
    return Connection(frame, raise_index(lowered, 2, frame.metric_inverse))


@dataclass(frozen=True, eq=False)
class CurvatureData:
    """``riemann[i, j, k, l] = R^l_ijk`` where R(e_i, e_j) e_k = Σ_l R^l_ijk e_l;
    ``riemann_lowered[i, j, k, l] = g(R(e_i, e_j) e_k, e_l)``;
    ``ricci[j, k] = tr(x -> R(x, e_j) e_k)``; ``ricci_operator[i, j] = Q^i_j``."""

    riemann: FrameTensor
    riemann_lowered: FrameTensor
    ricci: FrameTensor
    ricci_operator: FrameTensor
    tau: Scalar


def curvature(frame: LieFrame, conn: Connection) -> CurvatureData:
    """R(x,y)z = ∇_x∇_y z - ∇_y∇_x z - ∇_[x,y] z on the frame."""
    G = conn.gamma.array
    C = frame.brackets.array
    p, d = frame.params, frame.dim
    # first[i,j,k,l] = Σ_m Γ^m_jk Γ^l_im
    first = np.transpose(np.tensordot(G, G, axes=([2], [1])), (2, 0, 1, 3))
    second = np.transpose(first, (1, 0, 2, 3))
    third = np.tensordot(C, G, axes=([2], [0]))
    R = _wrap(np.ascontiguousarray(first - second - third), p, d, (L, L, L, U))
    R_low = _wrap(np.tensordot(R.array, frame.metric.array, axes=([3], [0])), p, d, (L, L, L, L))
    ricci = contract(R.permute((3, 0, 1, 2)), 0, 1)
    Q = raise_index(ricci, 0, frame.metric_inverse)
    tau = contract(Q, 0, 1).value()
    return CurvatureData(R, R_low, ricci, Q, tau)


def covariant_derivative(conn: Connection, t: FrameTensor) -> FrameTensor:
    """∇t with the differentiation direction as a new first lower slot.

    Components are constant on the frame, so only the connection terms of
    the Leibniz rule survive.
    """
    frame = conn.frame
    p, d = frame.params, frame.dim
    sig = (L,) + t.signature
    if t.rank == 0:
        return FrameTensor.zeros(p, d, sig)
    G = conn.gamma.array
    total = None
    for s, kind in enumerate(t.signature):
        if kind is L:
            # -Σ_m Γ^m_{i a_s} t[.. m ..]
            term = -np.tensordot(G, t.array, axes=([2], [s]))
        else:
            # +Σ_m Γ^{a_s}_{i m} t[.. m ..]
            term = np.tensordot(G, t.array, axes=([1], [s]))
        # axes are (i, a_s, remaining slots...); move a_s back into place
        term = np.moveaxis(term, 1, 1 + s)
        total = term if total is None else total + term
    return _wrap(np.ascontiguousarray(total), p, d, sig)


def lie_derivative_metric(conn: Connection, v: Sequence) -> FrameTensor:
    """(L_v g)_ij = g(∇_{e_i} v, e_j) + g(e_i, ∇_{e_j} v) for constant-component v."""
    frame = conn.frame
    d = frame.dim
    v = [as_scalar(x, frame.params) for x in (v.array.tolist() if isinstance(v, FrameTensor) else v)]
    g = frame.metric
    nab = [conn.nabla(i, v) for i in range(d)]

    def comp(i, j):
        total = Scalar.zero(frame.params)
        for k in range(d):
            total = total + nab[i][k] * g[k, j] + g[i, k] * nab[j][k]
        return total

    return FrameTensor.from_function(frame.params, d, (L, L), comp)


def second_bianchi_contracted_check(conn: Connection, curv: CurvatureData) -> tuple[bool, int | None]:
    """g^{ij} (∇_{e_i} ρ)(e_j, e_k) = ½ dτ(e_k) = 0 for every k.

    Returns (holds, first failing k)."""
    frame = conn.frame
    _require_lie(frame)
    nabla_rho = covariant_derivative(conn, curv.ricci)
    div = contract(raise_index(nabla_rho, 0, frame.metric_inverse), 0, 1)
    for k in range(frame.dim):
        if not div[k].is_zero():
            return False, k
    return True, None


def torsion(conn: Connection) -> FrameTensor:
    """T(e_i, e_j) = Γ^k_ij - Γ^k_ji - C^k_ij; zero for the Levi-Civita connection."""
    G = conn.gamma
    return G - G.permute((1, 0, 2)) - conn.frame.brackets


def ricci_of(frame: LieFrame) -> tuple[Connection, CurvatureData]:
    conn = levi_civita(frame)
    return conn, curvature(frame, conn)
