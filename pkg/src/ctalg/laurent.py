"""Exact sparse Laurent polynomials over the rationals.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
index with no zero exponents.  Variables ``1..n`` are the ``x_k``; variable
``0`` is reserved for the slack parameter ``w`` used in local expansions.
Coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .errors import NotHomogeneous, ZeroInput

SLACK = 0

Monomial = tuple  # tuple[tuple[int, int], ...]

ONE_MONO: Monomial = ()


def mono(exps: Mapping[int, int] | Iterable[tuple[int, int]]) -> Monomial:
    items = exps.items() if isinstance(exps, Mapping) else exps
    acc: dict[int, int] = {}
    for v, e in items:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in acc.items() if e))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def mono_inv(a: Monomial) -> Monomial:
    return tuple((v, -e) for v, e in a)


def mono_exp(a: Monomial, var: int) -> int:
    for v, e in a:
        if v == var:
            return e
    return 0


def mono_without(a: Monomial, var: int) -> Monomial:
    return tuple(p for p in a if p[0] != var)


def mono_degree(a: Monomial) -> int:
    """Total degree in the ``x`` variables (slack excluded)."""
    return sum(e for v, e in a if v != SLACK)


def mono_str(a: Monomial) -> str:
    parts = []
    for v, e in a:
        name = "w" if v == SLACK else f"x{v}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def gen_binom(d: int, m: int) -> int:
    """Binomial coefficient C(d, m) for any integer ``d`` and ``m >= 0``."""
    if m < 0:
        return 0
    if d >= 0:
        return comb(d, m)
    # C(d, m) = (-1)^m C(m - d - 1, m)
    return (-1) ** m * comb(m - d - 1, m)


class LaurentPoly:
    """Immutable finite map monomial -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # trusted: canonical monomials, nonzero Fraction coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def monomial(cls, exps, coeff=1) -> "LaurentPoly":
        c = Fraction(coeff)
        return cls._raw({mono(exps): c} if c else {})

    @classmethod
    def var(cls, k: int, power: int = 1) -> "LaurentPoly":
        return cls.monomial({k: power})

    @property
    def terms(self) -> dict:
        return self._terms

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(())

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def variables(self) -> set[int]:
        return {v for m in self._terms for v, _ in m}

    def exponent_range(self, var: int) -> tuple[int, int]:
        es = [mono_exp(m, var) for m in self._terms]
        return (min(es), max(es)) if es else (0, 0)

    # -- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
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
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({m: v * c for m, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly._raw({})
        if not m and c == 1:
            return self
        return LaurentPoly._raw({mono_mul(k, m): v * c for k, v in self._terms.items()})

    # -- structure -------------------------------------------------------

    def substitute(self, i: int, c, j: int, e: int = 0) -> "LaurentPoly":
        """Replace ``x_i`` by ``c * w**e * x_j``."""
        if i == j:
            raise ValueError("substitution needs i != j")
        c = Fraction(c)
        if not c:
            raise ValueError("substitution constant must be nonzero")
        out: dict = {}
        for m, v in self._terms.items():
            d = mono_exp(m, i)
            if d:
                m2 = mono_mul(mono_without(m, i), mono(((j, d), (SLACK, e * d))))
                v = v * c**d
            else:
                m2 = m
            s = out.get(m2, 0) + v
            if s:
                out[m2] = s
            else:
                out.pop(m2, None)
        return LaurentPoly._raw(out)

    def slack_taylor(self, order: int) -> list["LaurentPoly"]:
        """Coefficients a_0..a_order of this polynomial in powers of (w - 1)."""
        acc: list[dict] = [{} for _ in range(order + 1)]
        for m, v in self._terms.items():
            e = mono_exp(m, SLACK)
            if e < 0:
                raise ValueError("negative slack exponent; clear it before expanding")
            rest = mono_without(m, SLACK)
            for k in range(min(e, order) + 1):
                b = comb(e, k)
                d = acc[k]
                s = d.get(rest, 0) + v * b
                if s:
                    d[rest] = s
                else:
                    d.pop(rest, None)
        return [LaurentPoly._raw(d) for d in acc]

    def homogeneous_degree(self) -> int:
        if not self._terms:
            raise ZeroInput("the zero polynomial has no degree")
        degs = set()
        for m in self._terms:
            if mono_exp(m, SLACK):
                raise ValueError("slack variable present")
            degs.add(mono_degree(m))
        if len(degs) != 1:
            raise NotHomogeneous(f"term degrees {sorted(degs)}")
        return degs.pop()

    def try_divide_factor(self, i: int, j: int) -> "LaurentPoly | None":
        """Quotient by ``1 - x_j/x_i`` if exact, else None.

        Synthetic division in ``y = x_j/x_i``: writing the polynomial as
        ``sum_e y**e D_e`` the quotient coefficients are the running sums of
        the ``D_e``, and divisibility holds iff the total sum vanishes.
        """
        if i == j:
            raise ValueError("factor needs i != j")
        if not self._terms:
            return self
        groups: dict[int, dict] = {}
        for m, v in self._terms.items():
            e = mono_exp(m, j)
            # y^e * D_e with D_e = x_i^e * (m without x_j)
            rest = mono_mul(mono_without(m, j), ((i, e),) if e else ())
            g = groups.setdefault(e, {})
            s = g.get(rest, 0) + v
            if s:
                g[rest] = s
            else:
                g.pop(rest, None)
        running: dict = {}
        out: dict = {}
        exps = sorted(groups)
        for idx, e in enumerate(exps):
            for r, v in groups[e].items():
                s = running.get(r, 0) + v
                if s:
                    running[r] = s
                else:
                    running.pop(r, None)
            if idx + 1 < len(exps):
                span = range(e, exps[idx + 1])
            else:
                span = ()
            for ee in span:
                back = mono(((j, ee), (i, -ee))) if ee else ()
                for r, v in running.items():
                    m2 = mono_mul(r, back)
                    out[m2] = out.get(m2, 0) + v
        if running:
            return None
        return LaurentPoly({m: v for m, v in out.items()})

    def vanishes_at(self, i: int, j: int) -> bool:
        """True iff the polynomial is zero under ``x_j <- x_i``."""
        return self.substitute(j, 1, i).is_zero()

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, v in self._terms.items():
            t = v
            for var, e in m:
                t *= Fraction(point[var]) ** e
            total += t
        return total

    def map_terms(self, f) -> "LaurentPoly":
        out: dict = {}
        for m, v in self._terms.items():
            m2, v2 = f(m, v)
            out[m2] = out.get(m2, 0) + v2
        return LaurentPoly(out)

    # -- text ------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_items():
            ms = mono_str(m)
            if not ms:
                body, sign = str(abs(c)), c < 0
            elif abs(c) == 1:
                body, sign = ms, c < 0
            else:
                body, sign = f"{abs(c)}*{ms}", c < 0
            if not pieces:
                pieces.append(("-" if sign else "") + body)
            else:
                pieces.append((" - " if sign else " + ") + body)
        return "".join(pieces)

    __str__ = to_text

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


@lru_cache(maxsize=4096)
def factor_power(i: int, j: int, k: int) -> LaurentPoly:
    """``(1 - x_j/x_i)**k`` for ``k >= 0``."""
    return LaurentPoly._raw(
        {mono({j: m, i: -m}): Fraction((-1) ** m * comb(k, m)) for m in range(k + 1)}
    )


def lp_arith(op: str, p: LaurentPoly, q: LaurentPoly | None = None) -> LaurentPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    raise ValueError(f"unknown op {op!r}")


def lp_substitute(p: LaurentPoly, i: int, c, j: int, e: int = 0) -> LaurentPoly:
    return p.substitute(i, c, j, e)


def lp_slack_taylor(p: LaurentPoly, order: int) -> list[LaurentPoly]:
    return p.slack_taylor(order)


def lp_homogeneous_degree(p: LaurentPoly) -> int:
    return p.homogeneous_degree()


def lp_try_divide_factor(p: LaurentPoly, i: int, j: int) -> LaurentPoly | None:
    return p.try_divide_factor(i, j)
