"""Exact polynomial scalars over the rationals.

Every numeric quantity in the engine is a :class:`Scalar`: a multivariate
polynomial with :class:`fractions.Fraction` coefficients in a fixed, ordered
set of parameter names.  Pure rationals are the degree-zero case.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


class ParamMismatchError(ValueError):
    """Raised when combining scalars that live over different parameter sets."""


class ParseError(ValueError):
    """Malformed polynomial expression; ``pos`` is a 0-based column."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1}: {text!r}")


@dataclass(frozen=True)
class ParamSet:
    names: tuple[str, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid parameter name {name!r}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def extended(self, *extra: str) -> "ParamSet":
        """Append names that are not already present."""
        return ParamSet(self.names + tuple(e for e in extra if e not in self.names))

    def without(self, *drop: str) -> "ParamSet":
        return ParamSet(tuple(n for n in self.names if n not in drop))

    def fresh_name(self, stem: str) -> str:
        name = stem
        while name in self.names:
            name += "_"
        return name


class Scalar:
    """Immutable polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per parameter) to nonzero
    coefficients.  The empty mapping is zero.
    """

    __slots__ = ("params", "_terms", "_hash")

    def __init__(self, params: ParamSet, terms: Mapping[tuple[int, ...], Number] | None = None):
        self.params = params
        clean = {}
        if terms:
            width = len(params)
            for mono, coef in terms.items():
                if len(mono) != width:
                    raise ValueError(f"exponent vector {mono} does not match {params.names}")
                if coef:
                    clean[tuple(mono)] = Fraction(coef)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, params: ParamSet, terms: dict) -> "Scalar":
        obj = cls.__new__(cls)
        obj.params = params
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def const(cls, params: ParamSet, value: Number) -> "Scalar":
        value = Fraction(value)
        if not value:
            return cls._raw(params, {})
        return cls._raw(params, {(0,) * len(params): value})

    @classmethod
    def zero(cls, params: ParamSet) -> "Scalar":
        return cls._raw(params, {})

    @classmethod
    def one(cls, params: ParamSet) -> "Scalar":
        return cls.const(params, 1)

    @classmethod
    def var(cls, params: ParamSet, name: str) -> "Scalar":
        mono = [0] * len(params)
        mono[params.index(name)] = 1
        return cls._raw(params, {tuple(mono): Fraction(1)})

    # inspection

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return next(iter(self._terms.values()), Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.params != self.params:
                raise ParamMismatchError(f"{self.params.names} vs {other.params.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.const(self.params, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, coef in other._terms.items():
            c = out.get(mono, 0) + coef
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        return Scalar._raw(self.params, out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.params, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Scalar._raw(self.params, {})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                c = out.get(mono, 0) + c1 * c2
                if c:
                    out[mono] = c
                else:
                    out.pop(mono, None)
        return Scalar._raw(self.params, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Scalar.one(self.params)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def div_rational(self, c: Number) -> "Scalar":
        c = Fraction(c)
        if not c:
            raise ZeroDivisionError("division of a Scalar by zero")
        return Scalar._raw(self.params, {m: v / c for m, v in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if other.params != self.params:
                raise ParamMismatchError(f"{self.params.names} vs {other.params.names}")
            if not other.is_constant():
                raise ValueError(f"cannot divide by non-constant {other}")
            other = other.constant_value()
        if isinstance(other, (int, Fraction)):
            return self.div_rational(other)
        return NotImplemented

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.params == other.params and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self._terms.items())))
        return self._hash

    # parameter handling

    def embed(self, params: ParamSet) -> "Scalar":
        """Re-express over a parameter set containing all current names."""
        if params == self.params:
            return self
        positions = [params.index(n) for n in self.params.names]
        out = {}
        for mono, coef in self._terms.items():
            new = [0] * len(params)
            for pos, e in zip(positions, mono):
                new[pos] = e
            out[tuple(new)] = coef
        return Scalar._raw(params, out)

    def subs(self, values: Mapping[str, Number], params: ParamSet | None = None) -> "Scalar":
        """Substitute rational values; result lives over ``params`` (default: remaining names)."""
        if params is None:
            params = self.params.without(*values)
        keep = [(i, n) for i, n in enumerate(self.params.names) if n not in values]
        fixed = [(i, Fraction(values[n])) for i, n in enumerate(self.params.names) if n in values]
        result = Scalar.zero(params)
        for mono, coef in self._terms.items():
            c = coef
            for i, v in fixed:
                c *= v ** mono[i]
            if not c:
                continue
            new = [0] * len(params)
            for i, n in keep:
                if mono[i]:
                    new[params.index(n)] = mono[i]
            result = result + Scalar._raw(params, {tuple(new): c})
        return result

    def coefficient_of(self, name: str, power: int = 1) -> "Scalar":
        """Coefficient polynomial of ``name**power`` (other variables kept)."""
        idx = self.params.index(name)
        out = {}
        for mono, coef in self._terms.items():
            if mono[idx] == power:
                m = list(mono)
                m[idx] = 0
                out[tuple(m)] = coef
        return Scalar._raw(self.params, out)

    # printing

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded-lex order, highest degree first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k, (mono, coef) in enumerate(self.sorted_terms()):
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            factors = []
            for name, e in zip(self.params.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if k == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r}, params={list(self.params.names)})"


# ---------------------------------------------------------------------------
# parser
#
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := ('-'|'+') unary | power
#   power  := atom ('^' integer)?
#   atom   := integer | identifier | '(' expr ')'
#
# Division is only by nonzero constants.  Implicit multiplication is rejected.

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace only
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, params: ParamSet):
        self.text = text
        self.params = params
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def parse(self) -> Scalar:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "ident") or tok[1] == "(":
                raise self.error("implicit multiplication is not allowed; use '*'", tok)
            raise self.error(f"unexpected {tok[1]!r}", tok)
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs_tok = self.peek()
            rhs = self.unary()
            if op[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    raise self.error("division by a non-constant expression", rhs_tok)
                if rhs.is_zero():
                    raise self.error("division by zero", rhs_tok)
                value = value.div_rational(rhs.constant_value())
        return value

    def unary(self) -> Scalar:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("-", "+"):
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a non-negative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        kind, value, _ = tok
        if kind == "int":
            return Scalar.const(self.params, int(value))
        if kind == "ident":
            if value not in self.params.names:
                raise self.error(f"unknown identifier {value!r}", tok)
            return Scalar.var(self.params, value)
        if kind == "op" and value == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")" or close[0] != "op":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {value!r}", tok)


def parse(text: str, params: ParamSet) -> Scalar:
    """Parse a polynomial expression over ``params``."""
    return _Parser(text, params).parse()


def as_scalar(value, params: ParamSet) -> Scalar:
    """Coerce ints, Fractions, strings or Scalars to a Scalar over ``params``."""
    if isinstance(value, Scalar):
        if value.params != params:
            return value.embed(params)
        return value
    if isinstance(value, str):
        return parse(value, params)
    if isinstance(value, (int, Fraction)):
        return Scalar.const(params, value)
    raise TypeError(f"cannot interpret {value!r} as a Scalar")


def scalars(values: Iterable, params: ParamSet) -> list[Scalar]:
    return [as_scalar(v, params) for v in values]
