"""Almost paracontact almost paracomplex Riemannian structures (φ, ξ, η, g)
on a Lie frame: axioms, the associated metric, and the para-Sasaki-like test."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .frame import Connection, CurvatureData, LieFrame, covariant_derivative
from .linalg import congruence_signature
from .scalar import Scalar, as_scalar
from .tensor import FrameTensor, L, U, compose, contract, tensor_product


class PreconditionError(ValueError):
    """An operation was invoked on input that does not meet its hypotheses."""


@dataclass(frozen=True, eq=False)
class PiStructure:
    """``phi[i, j] = φ^i_j`` (so φ e_j = Σ_i φ^i_j e_i), ``xi`` a vector,
    ``eta`` a covector.  The frame dimension must be odd, 2n + 1."""

    frame: LieFrame
    phi: FrameTensor
    xi: FrameTensor
    eta: FrameTensor

    def __post_init__(self):
        d = self.frame.dim
        if d % 2 != 1:
            raise ValueError(f"dimension must be odd (2n+1), got {d}")
        for name, t, sig in (("phi", self.phi, (U, L)), ("xi", self.xi, (U,)), ("eta", self.eta, (L,))):
            if t.dim != d or t.signature != sig:
                raise ValueError(f"{name} must have dim {d} and signature {sig}")
            if not t.is_constant():
                raise ValueError(f"{name} must have rational constant components")
            if t.params != self.frame.params:
                raise ValueError(f"{name} is defined over a different parameter set")

    @classmethod
    def build(cls, frame: LieFrame, phi: Sequence[Sequence], xi: Sequence, eta: Sequence) -> "PiStructure":
        p = frame.params
        return cls(frame, FrameTensor.from_nested(p, (U, L), phi),
                   FrameTensor.from_nested(p, (U,), list(xi)),
                   FrameTensor.from_nested(p, (L,), list(eta)))

    @property
    def n(self) -> int:
        return (self.frame.dim - 1) // 2

    @property
    def dim(self) -> int:
        return self.frame.dim

    def with_frame(self, frame: LieFrame) -> "PiStructure":
        p = frame.params
        return PiStructure(frame, self.phi.embed(p), self.xi.embed(p), self.eta.embed(p))

    # pointwise helpers on frame vectors

    def g(self, i: int, j: int) -> Scalar:
        return self.frame.metric[i, j]

    def phi_vec(self, j: int) -> list[Scalar]:
        return [self.phi[i, j] for i in range(self.dim)]

    def g_vec(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
        total = Scalar.zero(self.frame.params)
        for i in range(self.dim):
            if x[i].is_zero():
                continue
            for j in range(self.dim):
                total = total + x[i] * self.frame.metric[i, j] * y[j]
        return total

    def g_phi(self) -> FrameTensor:
        """g(x, φy) as a covariant 2-tensor."""
        return FrameTensor.from_function(
            self.frame.params, self.dim, (L, L),
            lambda i, j: sum((self.g(i, k) * self.phi[k, j] for k in range(self.dim)), Scalar.zero(self.frame.params)))

    def g_phi_phi(self) -> FrameTensor:
        """g(φx, φy)."""
        return FrameTensor.from_function(
            self.frame.params, self.dim, (L, L),
            lambda i, j: self.g_vec(self.phi_vec(i), self.phi_vec(j)))

    def eta_eta(self) -> FrameTensor:
        return tensor_product(self.eta, self.eta)

    def associated(self) -> FrameTensor:
        return self.g_phi() + self.eta_eta()


@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class AxiomReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]


def _compare(name: str, lhs: FrameTensor, rhs: FrameTensor, detail: str = "") -> CheckResult:
    w = lhs.first_difference(rhs)
    return CheckResult(name, w is None, w, detail)


def check_axioms(s: PiStructure, conn: Connection | None = None) -> AxiomReport:
    """Componentwise check of the structure identities.  η(∇_x ξ) = 0 is
    included when a connection is supplied."""
    p, d = s.frame.params, s.dim
    g = s.frame.metric
    ident = FrameTensor.identity(p, d)
    zero_vec = FrameTensor.zeros(p, d, (U,))
    results = []

    phi_xi = contract(tensor_product(s.phi, s.xi), 1, 2)
    results.append(_compare("phi_xi_zero", phi_xi, zero_vec, "φξ = 0"))
    results.append(_compare("phi_squared", compose(s.phi, s.phi), ident - tensor_product(s.xi, s.eta),
                            "φ² = I - η⊗ξ"))
    eta_phi = contract(tensor_product(s.eta, s.phi), 0, 1)
    results.append(_compare("eta_phi_zero", eta_phi, FrameTensor.zeros(p, d, (L,)), "η∘φ = 0"))
    eta_xi = contract(tensor_product(s.eta, s.xi), 0, 1)
    results.append(CheckResult("eta_xi_one", eta_xi.value() == 1, None if eta_xi.value() == 1 else (), "η(ξ) = 1"))
    tr = contract(s.phi, 0, 1).value()
    results.append(CheckResult("trace_phi_zero", tr.is_zero(), None if tr.is_zero() else (), "tr φ = 0"))
    results.append(_compare("compatibility", s.g_phi_phi(), g - s.eta_eta(),
                            "g(φx, φy) = g(x, y) - η(x)η(y)"))
    g_phi = s.g_phi()
    results.append(_compare("phi_symmetric", g_phi.permute((1, 0)), g_phi, "g(φx, y) = g(x, φy)"))
    g_xi = contract(tensor_product(g, s.xi), 1, 2)
    results.append(_compare("g_xi_eta", g_xi, s.eta, "g(x, ξ) = η(x)"))
    xi_norm = s.g_vec(list(s.xi.array), list(s.xi.array))
    results.append(CheckResult("xi_unit", xi_norm == 1, None if xi_norm == 1 else (), "g(ξ, ξ) = 1"))
    if conn is not None:
        xi = list(s.xi.array)
        bad = None
        for i in range(d):
            val = sum((s.eta[k] * v for k, v in enumerate(conn.nabla(i, xi))), Scalar.zero(p))
            if not val.is_zero():
                bad = (i,)
                break
        results.append(CheckResult("eta_nabla_xi_zero", bad is None, bad, "η(∇_x ξ) = 0"))
    return AxiomReport(results)


@dataclass(frozen=True, eq=False)
class AssociatedMetric:
    tensor: FrameTensor
    signature: tuple[int, int, int]  # (positive, negative, zero)

    def __getitem__(self, idx) -> Scalar:
        return self.tensor[idx]


def associated_metric(s: PiStructure) -> AssociatedMetric:
    """g̃(x, y) = g(x, φy) + η(x)η(y)."""
    gt = s.associated()
    if gt.first_difference(gt.permute((1, 0))) is not None:
        raise PreconditionError("associated metric is not symmetric; structure axioms fail")
    mat = [[gt[i, j].constant_value() for j in range(s.dim)] for i in range(s.dim)]
    return AssociatedMetric(gt, congruence_signature(mat))


def nabla_phi(s: PiStructure, conn: Connection) -> FrameTensor:
    """``out[i, a, b]``: the e_a component of (∇_{e_i} φ) e_b."""
    return covariant_derivative(conn, s.phi)


def para_sasaki_rhs(s: PiStructure) -> FrameTensor:
    """-g(x, y)ξ - η(y)x + 2η(x)η(y)ξ, laid out like :func:`nabla_phi`."""
    p, d = s.frame.params, s.dim

    def comp(i, a, b):
        return (-s.g(i, b) * s.xi[a] - s.eta[b] * int(a == i)
                + 2 * s.eta[i] * s.eta[b] * s.xi[a])

    return FrameTensor.from_function(p, d, (L, U, L), comp)


def is_para_sasaki(s: PiStructure, conn: Connection) -> tuple[bool, tuple[int, int] | None]:
    """Returns (holds, first violating (x, y) frame pair)."""
    if not check_axioms(s).ok:
        raise PreconditionError("structure axioms fail")
    lhs = nabla_phi(s, conn)
    rhs = para_sasaki_rhs(s)
    for i in range(s.dim):
        for b in range(s.dim):
            if any(lhs[i, a, b] != rhs[i, a, b] for a in range(s.dim)):
                return False, (i, b)
    return True, None


def para_sasaki_identities(s: PiStructure, conn: Connection, curv: CurvatureData) -> list[CheckResult]:
    """The curvature identities every para-Sasaki-like structure satisfies."""
    p, d, n = s.frame.params, s.dim, s.n
    xi = list(s.xi.array)
    zero = Scalar.zero(p)
    R = curv.riemann
    rho = curv.ricci

    def R_vec(x: Sequence[Scalar], y: Sequence[Scalar], z: Sequence[Scalar]) -> list[Scalar]:
        out = [zero] * d
        for i in range(d):
            if x[i].is_zero():
                continue
            for j in range(d):
                if y[j].is_zero():
                    continue
                for k in range(d):
                    if z[k].is_zero():
                        continue
                    c = x[i] * y[j] * z[k]
                    for l in range(d):
                        out[l] = out[l] + c * R[i, j, k, l]
        return out

    def basis(i):
        return [Scalar.one(p) if k == i else zero for k in range(d)]

    def first_bad(pairs):
        for idx, lhs, rhs in pairs:
            if list(lhs) != list(rhs):
                return idx
        return None

    phi_sq = compose(s.phi, s.phi)
    checks = []
    w = first_bad(((i,), conn.nabla(i, xi), s.phi_vec(i)) for i in range(d))
    checks.append(CheckResult("nabla_xi", w is None, w, "∇_x ξ = φx"))

    nabla_eta = covariant_derivative(conn, s.eta)
    w = nabla_eta.first_difference(s.g_phi())
    checks.append(CheckResult("nabla_eta", w is None, w, "(∇_x η)(y) = g(x, φy)"))

    w = first_bad(((i, j), R_vec(basis(i), basis(j), xi),
                   [-s.eta[j] * int(l == i) + s.eta[i] * int(l == j) for l in range(d)])
                  for i in range(d) for j in range(d))
    checks.append(CheckResult("R_xy_xi", w is None, w, "R(x, y)ξ = -η(y)x + η(x)y"))

    w = first_bad(((j,), R_vec(xi, basis(j), xi), [phi_sq[l, j] for l in range(d)]) for j in range(d))
    checks.append(CheckResult("R_xi_y_xi", w is None, w, "R(ξ, y)ξ = φ²y"))

    w = first_bad(((i,), [sum((rho[i, k] * xi[k] for k in range(d)), zero)], [-2 * n * s.eta[i]])
                  for i in range(d))
    checks.append(CheckResult("rho_x_xi", w is None, w, "ρ(x, ξ) = -2n η(x)"))

    rxx = sum((rho[i, k] * xi[i] * xi[k] for i in range(d) for k in range(d)), zero)
    checks.append(CheckResult("rho_xi_xi", rxx == -2 * n, None if rxx == -2 * n else (), "ρ(ξ, ξ) = -2n"))
    return checks


def rho_xi_xi(s: PiStructure, curv: CurvatureData) -> Scalar:
    zero = Scalar.zero(s.frame.params)
    return sum((curv.ricci[i, k] * s.xi[i] * s.xi[k] for i in range(s.dim) for k in range(s.dim)), zero)


def tau_tilde(s: PiStructure, curv: CurvatureData) -> Scalar:
    """Scalar curvature attached to g̃, taken as g^{ij} ρ(e_i, φe_j) + ρ(ξ, ξ)."""
    rho_phi = contract(tensor_product(curv.ricci, s.phi), 1, 2)  # ρ(e_i, φ e_j)
    g_inv = s.frame.metric_inverse
    total = Scalar.zero(s.frame.params)
    for i in range(s.dim):
        for j in range(s.dim):
            total = total + g_inv[i, j] * rho_phi[i, j]
    return total + rho_xi_xi(s, curv)


def scalar_as(value, s: PiStructure) -> Scalar:
    return as_scalar(value, s.frame.params)
