"""Reader for ``.pis`` manifold description files.

Format (line oriented, ``#`` starts a comment, blank lines ignored)::

    name = para-sasaki-5d
    dim = 5
    params = p, q

    [brackets]            # [e_i, e_j] with i < j; omitted brackets vanish
    [e0, e1] = p*e2 - e3 + q*e4

    [metric]              # "identity" or dim rows of rationals
    identity

    [phi]                 # images of basis vectors; omitted images vanish
    e1 = e3

    [xi]                  # one linear combination of basis vectors
    e0

    [eta]                 # one row of dim rationals
    1 0 0 0 0

Coefficients use the polynomial grammar of :mod:`pisoliton.scalar`; metric,
phi, xi and eta entries must be rational constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .frame import LieFrame
from .linalg import SingularMatrixError
from .scalar import ParamSet, ParseError, Scalar, parse
from .structure import PiStructure


class SpecError(ValueError):
    """Invalid manifold file; carries 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str = "<spec>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


@dataclass
class BracketEntry:
    i: int
    j: int
    coeffs: list[tuple[int, str]]
    line: int = 0


@dataclass
class ManifoldSpec:
    name: str
    dim: int
    params: list[str]
    brackets: list[BracketEntry] = field(default_factory=list)
    metric: list[list[str]] = field(default_factory=list)
    phi: list[list[str]] = field(default_factory=list)  # phi[i][j] = component i of φ e_j
    xi: list[str] = field(default_factory=list)
    eta: list[str] = field(default_factory=list)
    source: str = "<spec>"

    @property
    def paramset(self) -> ParamSet:
        return ParamSet(tuple(self.params))

    def build(self, substitutions: Mapping[str, Fraction] | None = None) -> tuple[LieFrame, PiStructure]:
        """Construct the frame and structure, optionally fixing parameters."""
        substitutions = dict(substitutions or {})
        unknown = set(substitutions) - set(self.params)
        if unknown:
            raise SpecError(f"cannot substitute undeclared parameter(s) {sorted(unknown)}", source=self.source)
        full = self.paramset
        d = self.dim
        brackets = {}
        for entry in self.brackets:
            coeffs = [Scalar.zero(full)] * d
            for k, expr in entry.coeffs:
                coeffs[k] = coeffs[k] + parse(expr, full)
            brackets[(entry.i, entry.j)] = coeffs
        try:
            frame = LieFrame.build(full, d, brackets, self.metric)
        except SingularMatrixError:
            raise SpecError("metric is singular", source=self.source) from None
        except ValueError as exc:
            raise SpecError(str(exc), source=self.source) from None
        if substitutions:
            frame = frame.substitute(substitutions)
        try:
            structure = PiStructure.build(frame, self.phi, self.xi, self.eta)
        except ValueError as exc:
            raise SpecError(str(exc), source=self.source) from None
        return frame, structure


_HEADER = re.compile(r"^\[(\w+)\]\s*$")
_BRACKET = re.compile(r"^\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=(.*)$")
_IMAGE = re.compile(r"^e(\d+)\s*=(.*)$")
_KEYVAL = re.compile(r"^(\w+)\s*=\s*(.*)$")
_SECTIONS = ("brackets", "metric", "phi", "xi", "eta")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _rational(token: str, line: int, col: int, source: str) -> str:
    try:
        value = parse(token, ParamSet())
    except ParseError as exc:
        raise SpecError(exc.message, line, col + exc.pos, source) from None
    if not value.is_constant():
        raise SpecError(f"{token!r} is not a rational constant", line, col, source)
    return str(value)


def _combination(text: str, offset: int, line: int, dim: int, params: ParamSet, source: str,
                 constant: bool) -> list[tuple[int, str]]:
    """Split ``sum coeff*e_k`` into [(k, coeff-string)]."""
    basis = [f"e{k}" for k in range(dim)]
    clash = set(basis) & set(params.names)
    if clash:
        raise SpecError(f"parameter names {sorted(clash)} collide with basis vectors", line, None, source)
    ext = params.extended(*basis)
    try:
        value = parse(text, ext)
    except ParseError as exc:
        raise SpecError(exc.message, line, offset + exc.pos + 1, source) from None
    width = len(params)
    out: dict[int, Scalar] = {}
    for mono, coef in value.terms.items():
        basis_part = mono[width:]
        if sum(basis_part) != 1:
            raise SpecError("each term must contain exactly one basis vector e_k to the first power",
                            line, offset + 1, source)
        k = basis_part.index(1)
        term = Scalar(params, {mono[:width]: coef})
        out[k] = out.get(k, Scalar.zero(params)) + term
    result = []
    for k in sorted(out):
        if out[k].is_zero():
            continue
        if constant and not out[k].is_constant():
            raise SpecError(f"coefficient of e{k} must be a rational constant", line, offset + 1, source)
        result.append((k, str(out[k])))
    return result


def loads(text: str, source: str = "<spec>") -> ManifoldSpec:
    header: dict[str, tuple[str, int]] = {}
    sections: dict[str, list[tuple[int, str, int]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _HEADER.match(body)
        if m and m.group(1) in _SECTIONS:
            current = m.group(1)
            if current in sections:
                raise SpecError(f"duplicate section [{current}]", lineno, indent + 1, source)
            sections[current] = []
            continue
        if m and not _BRACKET.match(body):
            raise SpecError(f"unknown section [{m.group(1)}]", lineno, indent + 1, source)
        if current is None:
            kv = _KEYVAL.match(body)
            if not kv:
                raise SpecError("expected 'key = value'", lineno, indent + 1, source)
            key = kv.group(1)
            if key not in ("name", "dim", "params"):
                raise SpecError(f"unknown key {key!r}", lineno, indent + 1, source)
            if key in header:
                raise SpecError(f"duplicate key {key!r}", lineno, indent + 1, source)
            header[key] = (kv.group(2).strip(), lineno)
        else:
            sections[current].append((lineno, body, indent))

    for key in ("name", "dim"):
        if key not in header:
            raise SpecError(f"missing '{key} = ...'", None, None, source)
    dim_text, dim_line = header["dim"]
    if not dim_text.isdigit() or int(dim_text) < 1:
        raise SpecError(f"dim must be a positive integer, got {dim_text!r}", dim_line, None, source)
    dim = int(dim_text)
    if dim % 2 != 1:
        raise SpecError(f"dim must be odd (2n+1), got {dim}", dim_line, None, source)
    param_text, param_line = header.get("params", ("", 0))
    names = [p.strip() for p in re.split(r"[,\s]+", param_text) if p.strip()]
    try:
        params = ParamSet(tuple(names))
    except ValueError as exc:
        raise SpecError(str(exc), param_line, None, source) from None

    spec = ManifoldSpec(header["name"][0], dim, names, source=source)

    seen = set()
    for lineno, body, indent in sections.get("brackets", []):
        m = _BRACKET.match(body)
        if not m:
            raise SpecError("expected '[e_i, e_j] = combination'", lineno, indent + 1, source)
        i, j = int(m.group(1)), int(m.group(2))
        if not (0 <= i < dim and 0 <= j < dim):
            raise SpecError(f"basis index out of range for dim {dim}", lineno, indent + 1, source)
        if i >= j:
            raise SpecError(f"bracket entries need i < j, got [e{i}, e{j}]", lineno, indent + 1, source)
        if (i, j) in seen:
            raise SpecError(f"bracket [e{i}, e{j}] given twice", lineno, indent + 1, source)
        seen.add((i, j))
        offset = indent + m.start(3)
        spec.brackets.append(BracketEntry(i, j, _combination(m.group(3), offset, lineno, dim, params,
                                                             source, constant=False), lineno))

    metric_lines = sections.get("metric", [])
    if not metric_lines or (len(metric_lines) == 1 and metric_lines[0][1] == "identity"):
        spec.metric = [["1" if i == j else "0" for j in range(dim)] for i in range(dim)]
    else:
        if len(metric_lines) != dim:
            raise SpecError(f"metric needs {dim} rows, got {len(metric_lines)}", metric_lines[0][0], None, source)
        spec.metric = [_row(body, lineno, indent, dim, source) for lineno, body, indent in metric_lines]

    phi = [["0"] * dim for _ in range(dim)]
    done = set()
    for lineno, body, indent in sections.get("phi", []):
        m = _IMAGE.match(body)
        if not m:
            raise SpecError("expected 'e_j = combination'", lineno, indent + 1, source)
        j = int(m.group(1))
        if not 0 <= j < dim:
            raise SpecError(f"basis index out of range for dim {dim}", lineno, indent + 1, source)
        if j in done:
            raise SpecError(f"image of e{j} given twice", lineno, indent + 1, source)
        done.add(j)
        for k, coeff in _combination(m.group(2), indent + m.start(2), lineno, dim, params, source, True):
            phi[k][j] = coeff
    spec.phi = phi

    xi_lines = sections.get("xi", [])
    if len(xi_lines) != 1:
        raise SpecError("[xi] needs exactly one line", xi_lines[0][0] if xi_lines else None, None, source)
    lineno, body, indent = xi_lines[0]
    xi = ["0"] * dim
    for k, coeff in _combination(body, indent, lineno, dim, params, source, True):
        xi[k] = coeff
    spec.xi = xi

    eta_lines = sections.get("eta", [])
    if len(eta_lines) != 1:
        raise SpecError("[eta] needs exactly one row", eta_lines[0][0] if eta_lines else None, None, source)
    lineno, body, indent = eta_lines[0]
    spec.eta = _row(body, lineno, indent, dim, source)
    return spec


def _row(body: str, lineno: int, indent: int, dim: int, source: str) -> list[str]:
    tokens = [(m.group(0), m.start()) for m in re.finditer(r"[^\s,]+", body)]
    if len(tokens) != dim:
        raise SpecError(f"expected {dim} entries, got {len(tokens)}", lineno, indent + 1, source)
    return [_rational(tok, lineno, indent + pos + 1, source) for tok, pos in tokens]


def load_spec(path: str | Path) -> ManifoldSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read file: {exc.strerror}", source=str(path)) from None
    spec = loads(text, source=str(path))
    spec.build()  # validates every expression and the structure shapes
    return spec


def dumps(spec: ManifoldSpec) -> str:
    """Render a spec back to the file format."""
    lines = [f"name = {spec.name}", f"dim = {spec.dim}", f"params = {', '.join(spec.params)}", "", "[brackets]"]
    for entry in spec.brackets:
        lines.append(f"[e{entry.i}, e{entry.j}] = {_render_combination(entry.coeffs)}")
    lines += ["", "[metric]"]
    lines += [" ".join(row) for row in spec.metric]
    lines += ["", "[phi]"]
    for j in range(spec.dim):
        image = [(k, spec.phi[k][j]) for k in range(spec.dim) if spec.phi[k][j] != "0"]
        if image:
            lines.append(f"e{j} = {_render_combination(image)}")
    lines += ["", "[xi]", _render_combination([(k, c) for k, c in enumerate(spec.xi) if c != "0"]),
              "", "[eta]", " ".join(spec.eta), ""]
    return "\n".join(lines)


def _render_combination(coeffs: list[tuple[int, str]]) -> str:
    if not coeffs:
        return "0*e0"
    return " + ".join(f"({c})*e{k}" for k, c in coeffs)
