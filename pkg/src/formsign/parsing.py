"""Parse and print forms in a small expression grammar.

Grammar (whitespace is ignored, positions are 0-based character offsets):

    expr     := term (('+' | '-') term)*
    term     := unary ('*' unary)*
    unary    := '-' unary | power
    power    := atom ('^' INT)?
    atom     := RATIONAL | NAME | '(' expr ')'
    RATIONAL := INT ('/' INT)?

Multiplication is always explicit ('x y' and '2x' are errors), '/' only
joins two integer literals into one rational constant, and exponents are
nonnegative integers capped at 2**16.  '-1/3*x^3' therefore denotes
(-1/3) * x**3.  The same grammar is used for the --form command line
argument; scheme files use their own simpler row format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .forms import Exponents, Form, _ZERO

MAX_EXPONENT = 2**16

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")


class FormSyntaxError(ValueError):
    """Syntax or naming problem in a form expression, with its position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


@dataclass(frozen=True)
class VariableContext:
    """An ordered tuple of distinct variable names; order fixes coordinates."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("need at least one variable name")
        seen = set()
        for name in self.names:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)

    @classmethod
    def of(cls, names: Iterable[str] | str) -> "VariableContext":
        """Build from an iterable of names or a comma-separated string."""
        if isinstance(names, VariableContext):
            return names
        if isinstance(names, str):
            names = [part.strip() for part in names.split(",")]
        return cls(tuple(names))

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


# token kinds: NUM, NAME, and single-character operators
_OPS = set("+-*^()/")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        m = _INT_RE.match(text, i)
        if m:
            tokens.append(("NUM", int(m.group()), i))
            i = m.end()
            continue
        m = _NAME_RE.match(text, i)
        if m:
            tokens.append(("NAME", m.group(), i))
            i = m.end()
            continue
        raise FormSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("END", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list, producing term maps directly."""

    def __init__(self, text: str, ctx: VariableContext):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> dict:
        value = self.expr()
        kind, _, at = self.peek()
        if kind != "END":
            if kind in ("NAME", "NUM", "("):
                raise FormSyntaxError(
                    "expected an operator before this (multiplication must be written with '*')",
                    at,
                )
            raise FormSyntaxError(f"unexpected {kind!r}", at)
        return value

    def expr(self) -> dict:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            value = _add(value, rhs, negate=op == "-")
        return value

    def term(self) -> dict:
        value = self.unary()
        while self.peek()[0] == "*":
            self.advance()
            value = _mul_terms(value, self.unary())
        return value

    def unary(self) -> dict:
        if self.peek()[0] == "-":
            self.advance()
            return _scale(self.unary(), Fraction(-1))
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        _, _, caret_at = self.advance()
        kind, value, at = self.advance()
        if kind != "NUM":
            raise FormSyntaxError("expected a nonnegative integer exponent", at)
        if value > MAX_EXPONENT:
            raise FormSyntaxError(
                f"exponent {value} exceeds the maximum {MAX_EXPONENT}", at
            )
        return _power(base, value, self.ctx.n)

    def atom(self) -> dict:
        kind, value, at = self.advance()
        n = self.ctx.n
        if kind == "NUM":
            coeff = Fraction(value)
            # a '/' directly after an integer continues a rational literal
            if self.peek()[0] == "/":
                self.advance()
                dkind, dvalue, dat = self.advance()
                if dkind != "NUM":
                    raise FormSyntaxError("expected an integer denominator", dat)
                if dvalue == 0:
                    raise FormSyntaxError("zero denominator", dat)
                coeff /= dvalue
            return {(0,) * n: coeff} if coeff else {}
        if kind == "NAME":
            try:
                j = self.ctx.index(value)
            except ValueError:
                raise FormSyntaxError(f"unknown variable {value!r}", at) from None
            exps = tuple(1 if i == j else 0 for i in range(n))
            return {exps: Fraction(1)}
        if kind == "(":
            inner = self.expr()
            kind2, _, at2 = self.advance()
            if kind2 != ")":
                raise FormSyntaxError("expected ')'", at2)
            return inner
        if kind == ")":
            raise FormSyntaxError("unmatched ')'", at)
        if kind == "END":
            raise FormSyntaxError("unexpected end of input", at)
        raise FormSyntaxError(f"unexpected {value!r}", at)


def _add(p: dict, q: dict, negate: bool = False) -> dict:
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, _ZERO) + (-v if negate else v)
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _scale(p: dict, c: Fraction) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in p.items()}


def _mul_terms(p: dict, q: dict) -> dict:
    out: dict[Exponents, Fraction] = {}
    for ka, va in p.items():
        for kb, vb in q.items():
            k = tuple(a + b for a, b in zip(ka, kb))
            s = out.get(k, _ZERO) + va * vb
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def _power(p: dict, e: int, n: int) -> dict:
    out = {(0,) * n: Fraction(1)}
    for _ in range(e):
        out = _mul_terms(out, p)
    return out


def parse_form(text: str, variables: Iterable[str] | str | VariableContext) -> Form:
    """Parse an expression into a Form over the given variables.

    Raises FormSyntaxError (with a character position) for grammar problems
    and InhomogeneousError when the expanded polynomial mixes degrees.
    """
    ctx = VariableContext.of(variables)
    terms = _Parser(text, ctx).parse()
    return Form(ctx.n, terms)


def format_form(form: Form, variables: Iterable[str] | str | VariableContext) -> str:
    """Canonical text for a form: terms in descending graded-lex order.

    The output round-trips through parse_form.  The zero form prints as '0'.
    """
    ctx = VariableContext.of(variables)
    if ctx.n != form.n:
        raise ValueError(
            f"{ctx.n} variable names given, form has {form.n} variables"
        )
    if form.is_zero:
        return "0"
    parts: list[str] = []
    # within one homogeneous form graded-lex is plain lex; sort high to low
    for exps in sorted(form.terms, key=lambda e: (sum(e), e), reverse=True):
        coeff = form.terms[exps]
        factors = []
        for name, e in zip(ctx.names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(parts)
