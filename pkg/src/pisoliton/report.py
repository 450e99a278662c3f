"""Check suite orchestration and report rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping, Sequence

from .frame import (Connection, CurvatureData, LieFrame, covariant_derivative, curvature,
                    levi_civita, second_bianchi_contracted_check, torsion)
from .scalar import Scalar
from .soliton import (ONE_FORM_NOTE, RECURRENCE_NOTE, Potential, build_h_and_check, check_correspondence,
                      check_parallel_tensor, check_recurrence, classify, einstein_equivalence_consistent,
                      nabla_rho, solve_einstein_like, solve_soliton)
from .specfile import ManifoldSpec
from .soliton import check_scalar_curvatures
from .structure import PiStructure, associated_metric, check_axioms, is_para_sasaki, para_sasaki_identities

SCHEMA = "pisoliton-report/1"

TAU_TILDE_NOTE = "tau_tilde is computed as g^{ij} rho(e_i, phi e_j) + rho(xi, xi)"
SIGN_NOTE = ("sign note: nabla_rho components are Leibniz-rule values of the Levi-Civita connection; on the "
             "built-in example each nonzero component is -4, so a listing of +4 there agrees in magnitude only")

FAILING = frozenset({"fail", "no_fit", "undetermined"})


@dataclass
class CheckEntry:
    name: str
    status: str
    facts: dict[str, object] = field(default_factory=dict)
    reason: str = ""


@dataclass
class RunReport:
    name: str
    dim: int
    params: list[str]
    substitutions: dict[str, str] = field(default_factory=dict)
    checks: list[CheckEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    symbols: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if any(c.status in FAILING for c in self.checks) else 0

    def check(self, name: str) -> CheckEntry:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def fact(self, key: str):
        for c in self.checks:
            if key in c.facts:
                return c.facts[key]
        raise KeyError(key)

    def scalars(self) -> list[Scalar]:
        found = []

        def walk(v):
            if isinstance(v, Scalar):
                found.append(v)
            elif isinstance(v, (list, tuple)):
                for x in v:
                    walk(x)

        for c in self.checks:
            for v in c.facts.values():
                walk(v)
        return found

    def flat(self) -> dict[str, object]:
        """Key-value view shared by both renderings."""
        doc: dict[str, object] = {
            "schema": SCHEMA,
            "input.name": self.name,
            "input.dim": self.dim,
            "input.params": list(self.params),
            "input.substitutions": dict(sorted(self.substitutions.items())),
            "symbols": list(self.symbols),
            "checks.count": len(self.checks),
            "checks.order": [c.name for c in self.checks],
            "notes": list(self.notes),
            "exit_code": self.exit_code,
        }
        for c in self.checks:
            doc[f"checks.{c.name}.status"] = c.status
            if c.reason:
                doc[f"checks.{c.name}.reason"] = c.reason
            for key, value in c.facts.items():
                doc[key] = _plain(value)
        return doc


def _plain(value):
    if isinstance(value, Scalar):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


def emit(report: RunReport, fmt: str = "structured") -> bytes:
    doc = report.flat()
    if fmt in ("structured", "json"):
        return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        lines = [f"# {report.name} (dim {report.dim}) -- exit code {report.exit_code}"]
        for key in sorted(doc):
            value = doc[key]
            rendered = value if isinstance(value, str) else json.dumps(value, sort_keys=True, ensure_ascii=False)
            lines.append(f"{key}: {rendered}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# suite


def _nonzero(t) -> list[list[str]]:
    return [[str(i) for i in idx] + [v] for idx, v in t.nonzero()]


def _idx(w):
    return None if w is None else list(w)


class _Context:
    """Lazily computed pipeline state shared by the checks."""

    def __init__(self, frame: LieFrame, structure: PiStructure):
        self.frame = frame
        self.s = structure

    @cached_property
    def jacobi_ok(self) -> bool:
        return self.frame.jacobi.ok

    @cached_property
    def conn(self) -> Connection:
        return levi_civita(self.frame)

    @cached_property
    def curv(self) -> CurvatureData:
        return curvature(self.frame, self.conn)

    @cached_property
    def axioms(self):
        return check_axioms(self.s, self.conn if self.jacobi_ok else None)

    @cached_property
    def axioms_ok(self) -> bool:
        return check_axioms(self.s).ok

    @cached_property
    def para_sasaki(self) -> tuple[bool, tuple | None]:
        return is_para_sasaki(self.s, self.conn)

    @cached_property
    def einstein_like(self):
        return solve_einstein_like(self.s, self.curv)

    @cached_property
    def reeb(self):
        return solve_soliton(self.s, self.conn, self.curv, Potential.reeb(), para_sasaki=True)

    @cached_property
    def collinear_family(self):
        return solve_soliton(self.s, self.conn, self.curv, Potential.collinear(), para_sasaki=True)

    @cached_property
    def collinear_pinned(self):
        if not self.reeb.fits:
            return None
        return solve_soliton(self.s, self.conn, self.curv,
                             Potential.collinear(constants=self.reeb.constants()), para_sasaki=True)


def _needs(ctx: _Context, *conditions: str) -> str:
    """Reason to skip, or '' when every named precondition holds."""
    for cond in conditions:
        if cond == "jacobi" and not ctx.jacobi_ok:
            return "Jacobi identity fails"
        if cond == "axioms" and not ctx.axioms_ok:
            return "structure axioms fail"
        if cond == "para_sasaki" and not ctx.para_sasaki[0]:
            return "structure is not para-Sasaki-like"
    return ""


def _check_jacobi(ctx):
    res = ctx.frame.jacobi
    return CheckEntry("jacobi", "pass" if res.ok else "fail",
                      {"jacobi.holds": res.ok, "jacobi.witness": _idx(res.witness)})


def _check_axioms(ctx):
    rep = ctx.axioms
    facts = {}
    for r in rep.results:
        facts[f"axioms.{r.name}"] = r.ok
        if not r.ok:
            facts[f"axioms.{r.name}.witness"] = _idx(r.witness)
    return CheckEntry("axioms", "pass" if rep.ok else "fail", facts)


def _check_connection(ctx):
    conn, frame = ctx.conn, ctx.frame
    torsion_free = torsion(conn).is_zero()
    metric_compatible = covariant_derivative(conn, frame.metric).is_zero()
    ok = torsion_free and metric_compatible
    return CheckEntry("connection", "pass" if ok else "fail", {
        "connection.nonzero": _nonzero(conn.gamma),
        "connection.torsion_free": torsion_free,
        "connection.metric_compatible": metric_compatible,
    })


def _check_curvature(ctx):
    curv = ctx.curv
    R, Rl, rho = curv.riemann, curv.riemann_lowered, curv.ricci
    bianchi1 = (R + R.permute((1, 2, 0, 3)) + R.permute((2, 0, 1, 3))).is_zero()
    pair = Rl.first_difference(Rl.permute((2, 3, 0, 1))) is None
    anti = (Rl + Rl.permute((1, 0, 2, 3))).is_zero() and (Rl + Rl.permute((0, 1, 3, 2))).is_zero()
    ricci_sym = rho.first_difference(rho.permute((1, 0))) is None
    ok = bianchi1 and pair and anti and ricci_sym
    return CheckEntry("curvature", "pass" if ok else "fail", {
        "curvature.first_bianchi": bianchi1,
        "curvature.pair_symmetry": pair,
        "curvature.antisymmetry": anti,
        "curvature.ricci_symmetric": ricci_sym,
        "ricci.nonzero": _nonzero(rho),
        "ricci_operator.nonzero": _nonzero(curv.ricci_operator),
        "scalar_curvature.tau": curv.tau,
    })


def _check_associated_metric(ctx):
    s = ctx.s
    am = associated_metric(s)
    gt = am.tensor
    # g̃(φx, φy) = g̃(x, y) - η(x)η(y)
    compat = True
    d = s.dim
    for i in range(d):
        for j in range(d):
            lhs = sum((s.phi[a, i] * gt[a, b] * s.phi[b, j] for a in range(d) for b in range(d)),
                      Scalar.zero(s.frame.params))
            if lhs != gt[i, j] - s.eta[i] * s.eta[j]:
                compat = False
    expected = [s.n + 1, s.n, 0]
    ok = compat and list(am.signature) == expected
    return CheckEntry("associated_metric", "pass" if ok else "fail", {
        "associated_metric.nonzero": _nonzero(gt),
        "associated_metric.signature": list(am.signature),
        "associated_metric.expected_signature": expected,
        "associated_metric.compatible": compat,
    })


def _check_para_sasaki(ctx):
    ok, w = ctx.para_sasaki
    return CheckEntry("para_sasaki", "pass" if ok else "fail",
                      {"para_sasaki.holds": ok, "para_sasaki.witness": _idx(w)})


def _check_identities(ctx):
    results = para_sasaki_identities(ctx.s, ctx.conn, ctx.curv)
    facts = {}
    for r in results:
        facts[f"identities.{r.name}"] = r.ok
        if not r.ok:
            facts[f"identities.{r.name}.witness"] = _idx(r.witness)
    return CheckEntry("identities", "pass" if all(r.ok for r in results) else "fail", facts)


def _check_scalar_curvatures(ctx):
    ps = ctx.para_sasaki[0]
    rep = check_scalar_curvatures(ctx.s, ctx.curv, ctx.einstein_like, ps)
    facts = {"scalar_curvature.tau": rep.tau, "scalar_curvature.tau_tilde": rep.tau_tilde}
    for k, v in rep.checks.items():
        facts[f"scalar_curvature.{k}"] = v
    return CheckEntry("scalar_curvatures", "pass" if all(rep.checks.values()) else "fail", facts)


def _check_bianchi(ctx):
    ok, k = second_bianchi_contracted_check(ctx.conn, ctx.curv)
    return CheckEntry("bianchi", "pass" if ok else "fail",
                      {"bianchi.contracted_holds": ok, "bianchi.witness": k})


def _check_einstein_like(ctx):
    el = ctx.einstein_like
    if not el.fits:
        return CheckEntry("einstein_like", el.status, {"einstein_like.witness": _idx(el.witness)})
    return CheckEntry("einstein_like", "fit", {
        "einstein_like.a": el.a, "einstein_like.b": el.b, "einstein_like.c": el.c,
        "einstein_like.kind": el.kind, "einstein_like.unique": el.unique,
    })


def _soliton_facts(prefix, sol):
    facts = {f"{prefix}.lambda": sol.lam, f"{prefix}.mu": sol.mu, f"{prefix}.nu": sol.nu,
             f"{prefix}.k": sol.k, f"{prefix}.free": list(sol.free)}
    for k, v in sol.relations.items():
        facts[f"{prefix}.{k}"] = v
    return facts


def _check_soliton_reeb(ctx):
    sol = ctx.reeb
    if not sol.fits:
        return CheckEntry("soliton_reeb", sol.status, {"soliton_reeb.witness": _idx(sol.witness)})
    status = "fit" if all(sol.relations.values()) else "fail"
    return CheckEntry("soliton_reeb", status, _soliton_facts("soliton_reeb", sol))


def _check_soliton_collinear(ctx):
    fam = ctx.collinear_family
    if not fam.fits:
        return CheckEntry("soliton_collinear", fam.status, {"soliton_collinear.witness": _idx(fam.witness)})
    facts = _soliton_facts("soliton_collinear.family", fam)
    ok = all(fam.relations.values())
    pinned = ctx.collinear_pinned
    if pinned is not None:
        if pinned.fits:
            facts.update(_soliton_facts("soliton_collinear", pinned))
            ok = ok and all(pinned.relations.values())
        else:
            facts["soliton_collinear.status_at_reeb_constants"] = pinned.status
            ok = False
    return CheckEntry("soliton_collinear", "fit" if ok else "fail", facts)


def _check_correspondence(ctx):
    rep = check_correspondence(ctx.s, ctx.conn, ctx.curv)
    facts = {f"correspondence.{k}": v for k, v in rep.relations.items()}
    for name, case in rep.special_cases.items():
        facts[f"correspondence.case.{name}.applies"] = case["applies"]
        facts[f"correspondence.case.{name}.holds"] = case["holds"]
    return CheckEntry("correspondence", "pass" if rep.ok else "fail", facts)


def _check_nabla_rho(ctx):
    rep = nabla_rho(ctx.s, ctx.conn, ctx.curv, ctx.reeb, ctx.collinear_pinned)
    facts = {"nabla_rho.nonzero": _nonzero(rep.tensor),
             "nabla_rho.reeb_closed_form": rep.reeb_closed_form,
             "nabla_rho.collinear_closed_form": rep.collinear_closed_form}
    if rep.reeb_witness is not None:
        facts["nabla_rho.reeb_witness"] = list(rep.reeb_witness)
    if rep.collinear_witness is not None:
        facts["nabla_rho.collinear_witness"] = list(rep.collinear_witness)
    ok = rep.reeb_closed_form is not False and rep.collinear_closed_form is not False
    return CheckEntry("nabla_rho", "pass" if ok else "fail", facts)


def _check_recurrence(ctx):
    res = check_recurrence(ctx.s, ctx.conn, ctx.curv, ctx.reeb)
    status = {"verified": "pass", "excluded_case": "excluded", "failed": "fail",
              "precondition_unmet": "skipped"}[res.status]
    return CheckEntry("recurrence", status, {"recurrence.result": res.status, "recurrence.detail": res.detail,
                                             "recurrence.witness": _idx(res.witness)})


def _check_classification(ctx):
    ps = ctx.para_sasaki[0]
    sol = ctx.reeb if ps else None
    rep = classify(ctx.s, ctx.conn, ctx.curv, sol)
    facts = {}
    for name, v in rep.verdicts.items():
        facts[f"classification.{name}"] = v.holds
        if v.witness is not None:
            facts[f"classification.{name}.witness"] = list(v.witness)
        for key in ("alpha", "beta", "a"):
            if key in v.data and v.data[key] is not None:
                facts[f"classification.{name}.{key}"] = v.data[key]
    status = "reported"
    if ps and sol is not None and sol.fits:
        consistent, bad = einstein_equivalence_consistent(rep)
        facts["classification.einstein_equivalence_consistent"] = consistent
        if bad:
            facts["classification.einstein_equivalence_mismatch"] = bad
        status = "pass" if consistent else "fail"
    return CheckEntry("classification", status, facts)


def _check_parallel_tensor(ctx):
    s, conn, curv = ctx.s, ctx.conn, ctx.curv
    g_rep = check_parallel_tensor(s, conn, s.frame.metric, curv)
    ee_rep = check_parallel_tensor(s, conn, s.eta_eta(), curv)
    ok = (g_rep.parallel and g_rep.multiple_of_metric and g_rep.constant == 1
          and (not ee_rep.parallel or bool(ee_rep.multiple_of_metric)))
    return CheckEntry("parallel_tensor", "pass" if ok else "fail", {
        "parallel_tensor.metric.parallel": g_rep.parallel,
        "parallel_tensor.metric.constant": g_rep.constant,
        "parallel_tensor.eta_eta.parallel": ee_rep.parallel,
        "parallel_tensor.eta_eta.witness": _idx(ee_rep.witness),
    })


def _check_h_tensor(ctx):
    sol = ctx.reeb
    if not sol.fits or sol.free:
        return CheckEntry("h_tensor", "skipped", reason="no unique soliton with potential xi")
    rep = build_h_and_check(ctx.s, ctx.conn, ctx.curv, sol.mu, sol.nu)
    ok = bool(rep.parallel and rep.lambda_is_2n_minus_mu_minus_nu and rep.soliton_verified
              and rep.converse_verified)
    return CheckEntry("h_tensor", "pass" if ok else "fail", {
        "h_tensor.mu": sol.mu, "h_tensor.nu": sol.nu,
        "h_tensor.nonzero": _nonzero(rep.h),
        "h_tensor.parallel": rep.parallel,
        "h_tensor.lambda": rep.lam,
        "h_tensor.lambda_is_2n_minus_mu_minus_nu": rep.lambda_is_2n_minus_mu_minus_nu,
        "h_tensor.soliton_verified": rep.soliton_verified,
        "h_tensor.converse_verified": rep.converse_verified,
    })


CHECKS: dict[str, tuple[tuple[str, ...], Callable[[_Context], CheckEntry]]] = {
    "jacobi": ((), _check_jacobi),
    "axioms": ((), _check_axioms),
    "connection": (("jacobi",), _check_connection),
    "curvature": (("jacobi",), _check_curvature),
    "associated_metric": (("axioms",), _check_associated_metric),
    "para_sasaki": (("jacobi", "axioms"), _check_para_sasaki),
    "identities": (("jacobi", "axioms", "para_sasaki"), _check_identities),
    "scalar_curvatures": (("jacobi", "axioms"), _check_scalar_curvatures),
    "bianchi": (("jacobi",), _check_bianchi),
    "einstein_like": (("jacobi", "axioms"), _check_einstein_like),
    "soliton_reeb": (("jacobi", "axioms", "para_sasaki"), _check_soliton_reeb),
    "soliton_collinear": (("jacobi", "axioms", "para_sasaki"), _check_soliton_collinear),
    "correspondence": (("jacobi", "axioms", "para_sasaki"), _check_correspondence),
    "nabla_rho": (("jacobi", "axioms", "para_sasaki"), _check_nabla_rho),
    "recurrence": (("jacobi", "axioms", "para_sasaki"), _check_recurrence),
    "classification": (("jacobi", "axioms"), _check_classification),
    "parallel_tensor": (("jacobi", "axioms", "para_sasaki"), _check_parallel_tensor),
    "h_tensor": (("jacobi", "axioms", "para_sasaki"), _check_h_tensor),
}

_NOTES = {
    "scalar_curvatures": [TAU_TILDE_NOTE],
    "classification": [ONE_FORM_NOTE],
    "recurrence": [RECURRENCE_NOTE],
    "nabla_rho": [SIGN_NOTE],
}


@dataclass
class SuiteOptions:
    checks: Sequence[str] | None = None  # None runs everything
    substitutions: Mapping[str, Fraction] = field(default_factory=dict)


def run_suite(spec: ManifoldSpec | tuple[LieFrame, PiStructure],
              options: SuiteOptions | None = None, name: str | None = None) -> RunReport:
    """Run the selected checks in dependency order and collect a report."""
    options = options or SuiteOptions()
    if isinstance(spec, ManifoldSpec):
        frame, structure = spec.build(options.substitutions)
        name = name or spec.name
        declared = list(spec.params)
    else:
        frame, structure = spec
        declared = list(frame.params.names)
        name = name or "<in-memory>"
    selected = list(CHECKS) if options.checks is None else list(options.checks)
    unknown = [c for c in selected if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    ordered = [c for c in CHECKS if c in selected]

    ctx = _Context(frame, structure)
    report = RunReport(name, frame.dim, declared,
                       {k: str(Fraction(v)) for k, v in options.substitutions.items()})
    notes: list[str] = []
    for check in ordered:
        needs, fn = CHECKS[check]
        reason = _needs(ctx, *needs)
        if reason:
            report.checks.append(CheckEntry(check, "skipped", reason=reason))
            continue
        report.checks.append(fn(ctx))
        for note in _NOTES.get(check, []):
            if note not in notes:
                notes.append(note)
    report.notes = notes
    symbols = list(frame.params.names)
    for s in report.scalars():
        for n in s.params.names:
            if n not in symbols:
                symbols.append(n)
    report.symbols = symbols
    return report
