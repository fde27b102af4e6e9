"""Text and JSON formats for type-A rational functions.

Text grammar (whitespace is free except inside a rational literal ``3/2``)::

    expr    := sum [ "/" factor (("*" | "/") factor)* ]
    sum     := ["+"|"-"] term (("+"|"-") term)*
    term    := atom (("*" atom) | ("/" atom))*
    atom    := NUM | "x"K ["^" ["-"] INT] | "(" sum ")" ["^" INT]
    factor  := "(" "1" "-" [NUM "*"] "x"A "/" "x"B ")" ["^" INT]

A ``/`` followed by ``(`` ends the numerator, so the denominator always
applies to the whole numerator.  ``(1 - x_a/x_b)`` may be written in either
orientation; loading renormalizes it.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import ComplexConstant, ParseError
from .laurent import LaurentPoly, mono
from .typea import TypeARational, normalize

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+)|(?P<op>[-+*/^()])|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "bad":
            if val in "iIjJ":
                raise ComplexConstant(f"complex constant in {text!r}")
            raise ParseError(f"unexpected character {val!r} in {text!r}")
        out.append((kind, val))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self, k: int = 0):
        p = self.pos + k
        return self.toks[p] if p < len(self.toks) else (None, None)

    def take(self, val=None, kind=None):
        tok = self.peek()
        if (val is not None and tok[1] != val) or (kind is not None and tok[0] != kind):
            want = val or kind
            raise ParseError(f"expected {want!r} at token {self.pos} in {self.text!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def integer(self) -> int:
        sign = 1
        if self.peek()[1] == "-":
            self.take("-")
            sign = -1
        kind, val = self.take(kind="num")
        if "/" in val:
            raise ParseError(f"exponent must be an integer, got {val}")
        return sign * int(val)

    def var(self) -> int:
        _, val = self.take(kind="var")
        k = int(val[1:])
        if k < 1:
            raise ParseError("variables are numbered from x1")
        return k

    def expr(self):
        num = self.sum()
        factors = []
        if self.peek()[1] == "/":
            self.take("/")
            factors.append(self.factor())
            while self.peek()[1] in ("*", "/"):
                self.take()
                factors.append(self.factor())
        if self.peek()[0] is not None:
            raise ParseError(f"trailing input at token {self.pos} in {self.text!r}")
        return num, factors

    def sum(self) -> LaurentPoly:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term() * sign
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.term() * sign
        return total

    def term(self) -> LaurentPoly:
        acc = self.atom()
        while True:
            op = self.peek()[1]
            if op == "*":
                self.take()
                acc = acc * self.atom()
            elif op == "/" and self.peek(1)[1] != "(":
                self.take()
                acc = acc * self._invert(self.atom())
            else:
                return acc

    def _invert(self, p: LaurentPoly) -> LaurentPoly:
        if len(p) != 1:
            raise ParseError("only monomials may follow '/' inside a numerator")
        (m, c), = p.items()
        return LaurentPoly.monomial({v: -e for v, e in m}, 1 / c)

    def atom(self) -> LaurentPoly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return LaurentPoly.const(Fraction(val))
        if kind == "var":
            k = self.var()
            e = 1
            if self.peek()[1] == "^":
                self.take("^")
                e = self.integer()
            return LaurentPoly.monomial({k: e})
        if val == "(":
            self.take("(")
            inner = self.sum()
            self.take(")")
            if self.peek()[1] == "^":
                self.take("^")
                e = self.integer()
                if e < 0:
                    if len(inner) != 1:
                        raise ParseError("negative powers need a monomial base")
                    inner = self._invert(inner)
                    e = -e
                inner = inner**e
            return inner
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")

    def factor(self) -> tuple[int, int, Fraction, int]:
        self.take("(")
        one = self.take(kind="num")[1]
        if Fraction(one) != 1:
            raise ParseError("denominator factors must read (1 - c*x_a/x_b)")
        self.take("-")
        c = Fraction(1)
        if self.peek()[0] == "num":
            c = Fraction(self.take()[1])
            self.take("*")
        a = self.var()
        self.take("/")
        b = self.var()
        self.take(")")
        q = 1
        if self.peek()[1] == "^":
            self.take("^")
            q = self.integer()
            if q < 0:
                raise ParseError("factor multiplicities must be nonnegative")
        if a == b:
            raise ParseError(f"degenerate factor (1-x{a}/x{b})")
        return a, b, c, q


def parse_general(text: str):
    """``(numerator, [(a, b, c, q), ...])`` meaning ``num / prod (1 - c x_a/x_b)**q``."""
    return _Parser(text).expr()


def parse_laurent(text: str) -> LaurentPoly:
    num, factors = parse_general(text)
    if factors:
        raise ParseError("expected a Laurent polynomial without denominator")
    return num


def parse_typea_text(text: str) -> TypeARational:
    num, factors = parse_general(text)
    raw = []
    for a, b, c, q in factors:
        if c != 1:
            raise ParseError("type-A factors must have constant 1")
        raw.append((b, a, q))
    return normalize(num, raw)


def typea_to_json(F: TypeARational, n: int | None = None) -> dict:
    if n is None:
        n = max(F.variables(), default=1)
    numerator = []
    for m, c in F.num.sorted_items():
        numerator.append({"coeff": _frac(c), "exp": {str(v): e for v, e in m}})
    denominator = [{"i": i, "j": j, "mult": q} for (i, j), q in F.den_items()]
    return {"n": n, "numerator": numerator, "denominator": denominator}


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def typea_from_json(obj) -> TypeARational:
    try:
        n = int(obj["n"])
        terms = {}
        for t in obj["numerator"]:
            exps = {int(k): int(v) for k, v in t.get("exp", {}).items()}
            for k in exps:
                if not 1 <= k <= n:
                    raise ParseError(f"variable x{k} outside 1..{n}")
            m = mono(exps)
            terms[m] = terms.get(m, 0) + Fraction(str(t["coeff"]))
        raw = []
        for d in obj.get("denominator", []):
            i, j, q = int(d["i"]), int(d["j"]), int(d["mult"])
            if not (1 <= i < j <= n):
                raise ParseError(f"denominator pair ({i},{j}) must satisfy 1 <= i < j <= {n}")
            if q < 1:
                raise ParseError("multiplicities must be positive")
            raw.append((i, j, q))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad type-A JSON: {exc}") from exc
    return normalize(LaurentPoly(terms), raw)


def parse_typea(text: str) -> TypeARational:
    """Accept either the JSON shape or the text grammar."""
    s = text.strip()
    if s.startswith("{"):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
        return typea_from_json(obj)
    return parse_typea_text(s)
