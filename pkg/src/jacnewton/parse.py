"""Reading supports from polynomial expressions and JSON input files.

Only the support matters for the invariants computed here; coefficients are
kept so they can be echoed back, and are otherwise ignored.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = 1

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


class InputError(ValueError):
    """Malformed input; ``pos`` is a 0-based column when known."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None and text is not None:
            message = f"{message} at column {pos + 1}\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


@dataclass
class InputSpec:
    variables: list
    support: list
    coefficients: dict = field(default_factory=dict)
    nondegenerate: bool = True

    def to_json(self):
        out = {
            "schema": SCHEMA,
            "variables": list(self.variables),
            "support": [list(u) for u in self.support],
            "nondegenerate": self.nondegenerate,
        }
        if self.coefficients:
            out["coefficients"] = [str(self.coefficients[u]) for u in self.support]
        return out


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise InputError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.fixed = variables is not None
        self.variables = list(variables or [])

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise InputError(message, tok[2], self.text)

    def var_index(self, tok):
        name = tok[1]
        if name not in self.variables:
            if self.fixed:
                self.fail(f"unknown variable {name!r}", tok)
            self.variables.append(name)
        return self.variables.index(name)

    def number(self, tok):
        if "." in tok[1]:
            self.fail("decimal coefficients are not exact; write a fraction", tok)
        return Fraction(tok[1])

    def exponent(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.fail("negative exponent", tok)
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            inner = self.exponent()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if tok[0] != "num":
            self.fail("expected an exponent", tok)
        self.take()
        if "/" in tok[1] or "." in tok[1]:
            self.fail("exponents must be nonnegative integers", tok)
        return int(tok[1])

    def term(self, sign):
        coeff = Fraction(sign)
        exps = {}
        seen_factor = False
        while True:
            tok = self.peek()
            if tok[0] == "num":
                self.take()
                coeff *= self.number(tok)
            elif tok[0] == "name":
                self.take()
                k = self.var_index(tok)
                e = 1
                if self.peek()[1] == "^":
                    self.take()
                    e = self.exponent()
                exps[k] = exps.get(k, 0) + e
            else:
                self.fail("expected a coefficient or a variable", tok)
            seen_factor = True
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "*":
                self.take()
                continue
            if nxt[0] in ("num", "name"):
                continue
            break
        if not seen_factor:
            self.fail("empty term")
        return coeff, exps

    def parse(self):
        terms = []
        sign = 1
        tok = self.peek()
        if tok[0] == "end":
            self.fail("empty expression", tok)
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        while True:
            terms.append(self.term(sign))
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            self.fail(f"unexpected {tok[1]!r}", tok)
        return terms


def parse_expression(text, variables=None):
    """Parse ``text`` into an :class:`InputSpec`.

    Variables are numbered by first appearance unless ``variables`` fixes
    the order (and the allowed names).
    """
    parser = _Parser(text, variables)
    terms = parser.parse()
    names = parser.variables
    coeffs = {}
    for c, exps in terms:
        u = tuple(exps.get(k, 0) for k in range(len(names)))
        coeffs[u] = coeffs.get(u, Fraction(0)) + c
    coeffs = {u: c for u, c in coeffs.items() if c != 0}
    if not coeffs:
        raise InputError("the expression is identically zero")
    support = sorted(coeffs)
    return InputSpec(names, support, {u: coeffs[u] for u in support})


def format_expression(spec):
    """Canonical text form; :func:`parse_expression` reads it back exactly."""
    parts = []
    for u in sorted(spec.support, reverse=True):
        c = spec.coefficients.get(u, Fraction(1))
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(spec.variables, u) if e
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def load_input(data):
    """Validate a decoded JSON input document."""
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    if data.get("schema") != SCHEMA:
        raise InputError(f"unsupported schema {data.get('schema')!r}, expected {SCHEMA}")
    support = data.get("support")
    if not isinstance(support, list) or not support:
        raise InputError('"support" must be a nonempty list of exponent vectors')
    width = len(support[0]) if isinstance(support[0], list) else None
    variables = data.get("variables")
    if variables is None:
        variables = [f"x{i}" for i in range(width or 0)]
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise InputError('"variables" must be a list of names')
    if len(set(variables)) != len(variables):
        raise InputError("repeated variable name")
    points = []
    for u in support:
        if not isinstance(u, list) or len(u) != len(variables):
            raise InputError(f"exponent vector {u!r} does not match {len(variables)} variables")
        if any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in u):
            raise InputError(f"exponent vector {u!r} must hold nonnegative integers")
        points.append(tuple(u))
    coefficients = {}
    raw = data.get("coefficients")
    if raw is not None:
        if not isinstance(raw, list) or len(raw) != len(points):
            raise InputError('"coefficients" must match "support" in length')
        for u, c in zip(points, raw):
            try:
                coefficients[u] = coefficients.get(u, Fraction(0)) + Fraction(str(c))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"bad coefficient {c!r}") from None
    nondegenerate = data.get("nondegenerate", True)
    if not isinstance(nondegenerate, bool):
        raise InputError('"nondegenerate" must be true or false')
    return InputSpec(list(variables), sorted(set(points)), coefficients, nondegenerate)


def read_input_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None
    return load_input(data)
