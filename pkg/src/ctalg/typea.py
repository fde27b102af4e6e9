"""Type-A rational functions ``L(x) / prod_{i<j} (1 - x_j/x_i)**q_ij``.

Canonical form: every denominator factor is stored as the pair ``(i, j)``
with ``i < j`` meaning ``1 - x_j/x_i``, and the numerator is not divisible
by any factor that occurs in the denominator.  By unique factorisation in
the Laurent ring this form is unique, so equality is structural.

Series conventions follow ``1 > x_1 > x_2 > ... > x_n > 0``: the canonical
factor ``1/(1 - x_j/x_i)`` expands as a geometric series in ``x_j/x_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .errors import NotHomogeneous
from .laurent import (
    SLACK,
    LaurentPoly,
    factor_power,
    gen_binom,
    mono,
    mono_exp,
    mono_mul,
    mono_without,
)

Pair = tuple  # (i, j) with i < j


def _reduce(num: LaurentPoly, den: Mapping[Pair, int]) -> "TypeARational":
    if num.is_zero():
        return TypeARational._make(num, {})
    out = {}
    for pair in sorted(den):
        q = den[pair]
        while q > 0:
            quo = num.try_divide_factor(*pair)
            if quo is None:
                break
            num, q = quo, q - 1
        if q:
            out[pair] = q
    return TypeARational._make(num, out)


def normalize(num, factors: Iterable[tuple[int, int, int]] = ()) -> "TypeARational":
    """Canonical form of ``num / prod (1 - x_b/x_a)**mult`` over raw ``(a, b, mult)``.

    Factors with ``a > b`` are flipped with
    ``1 - x_b/x_a = (-x_b/x_a)(1 - x_a/x_b)``; the monomial goes to the
    numerator.  Common factors are cancelled.
    """
    if not isinstance(num, LaurentPoly):
        num = LaurentPoly.const(num)
    den: dict[Pair, int] = {}
    shift: dict[int, int] = {}
    sign = 1
    for a, b, mult in factors:
        if a == b:
            raise ValueError(f"degenerate factor (1 - x{b}/x{a})")
        if mult < 0:
            raise ValueError("factor multiplicities must be nonnegative")
        if not mult:
            continue
        if a < b:
            den[(a, b)] = den.get((a, b), 0) + mult
        else:
            den[(b, a)] = den.get((b, a), 0) + mult
            # 1/(1 - x_b/x_a)^m = (-x_a/x_b)^m / (1 - x_a/x_b)^m
            shift[a] = shift.get(a, 0) + mult
            shift[b] = shift.get(b, 0) - mult
            sign *= (-1) ** mult
    if shift or sign != 1:
        num = num.mul_monomial(mono(shift), sign)
    return _reduce(num, den)


class TypeARational:
    __slots__ = ("num", "_den", "_hash")

    def __init__(self, num=0, den: Mapping[Pair, int] | None = None):
        other = normalize(num, [(i, j, q) for (i, j), q in (den or {}).items()])
        self.num = other.num
        self._den = other._den
        self._hash = None

    @classmethod
    def _make(cls, num: LaurentPoly, den: Mapping[Pair, int]) -> "TypeARational":
        obj = cls.__new__(cls)
        obj.num = num
        obj._den = tuple(sorted((p, q) for p, q in den.items() if q))
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "TypeARational":
        return cls._make(LaurentPoly.const(c), {})

    @property
    def den(self) -> dict:
        return dict(self._den)

    def den_items(self):
        return self._den

    def multiplicity(self, i: int, j: int) -> int:
        pair = (min(i, j), max(i, j))
        for p, q in self._den:
            if p == pair:
                return q
        return 0

    def pole_profile(self) -> dict:
        return dict(self._den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return not self._den

    def is_constant(self) -> bool:
        return not self._den and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.constant_term()

    def variables(self) -> set[int]:
        vs = self.num.variables() - {SLACK}
        for (i, j), _ in self._den:
            vs.update((i, j))
        return vs

    def raw_factors(self) -> list[tuple[int, int, int]]:
        return [(i, j, q) for (i, j), q in self._den]

    def degree(self) -> int:
        """Homogeneous degree of the numerator (denominators have degree 0)."""
        return self.num.homogeneous_degree()

    def in_class_a(self) -> bool:
        if self.is_zero():
            return True
        try:
            return self.degree() == 0
        except NotHomogeneous:
            return False

    # -- arithmetic ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TypeARational.const(other)
        if not isinstance(other, TypeARational):
            return NotImplemented
        return self._den == other._den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._den, self.num))
        return self._hash

    @staticmethod
    def _coerce(x):
        if isinstance(x, TypeARational):
            return x
        if isinstance(x, LaurentPoly):
            return TypeARational._make(x, {})
        if isinstance(x, (int, Fraction)):
            return TypeARational.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        d1, d2 = dict(self._den), dict(other._den)
        common = {p: max(d1.get(p, 0), d2.get(p, 0)) for p in set(d1) | set(d2)}
        n1, n2 = self.num, other.num
        for p, q in common.items():
            if q > d1.get(p, 0):
                n1 = n1 * factor_power(p[0], p[1], q - d1.get(p, 0))
            if q > d2.get(p, 0):
                n2 = n2 * factor_power(p[0], p[1], q - d2.get(p, 0))
        return _reduce(n1 + n2, common)

    __radd__ = __add__

    def __neg__(self):
        return TypeARational._make(-self.num, dict(self._den))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return TypeARational.const(0)
            return TypeARational._make(self.num * other, dict(self._den))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return TypeARational.const(0)
        den = dict(self._den)
        for p, q in other._den:
            den[p] = den.get(p, 0) + q
        return _reduce(self.num * other.num, den)

    __rmul__ = __mul__

    def mul_monomial(self, exps, c=1) -> "TypeARational":
        m = exps if isinstance(exps, tuple) else mono(exps)
        return TypeARational._make(self.num.mul_monomial(m, c), dict(self._den))

    def substitute(self, i: int, j: int) -> "TypeARational":
        """``F|_{x_i = x_j}``; requires that ``x_i = x_j`` is not a pole."""
        if self.multiplicity(i, j):
            raise ValueError(f"x{i}=x{j} is a pole")
        factors = []
        for (a, b), q in self._den:
            a2 = j if a == i else a
            b2 = j if b == i else b
            factors.append((a2, b2, q))
        return normalize(self.num.substitute(i, 1, j), factors)

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        val = self.num.evaluate(point)
        for (i, j), q in self._den:
            val /= (1 - Fraction(point[j]) / Fraction(point[i])) ** q
        return val

    # -- text ------------------------------------------------------------

    def to_text(self) -> str:
        num = self.num.to_text()
        if not self._den:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        facs = []
        for (i, j), q in self._den:
            f = f"(1-x{j}/x{i})"
            facs.append(f if q == 1 else f"{f}^{q}")
        return f"{num} / {'*'.join(facs)}"

    __str__ = to_text

    def __repr__(self):
        return f"TypeARational({self.to_text()!r})"


ZERO = TypeARational.const(0)
ONE = TypeARational.const(1)


def ta_normalize(num, den: Iterable[tuple[int, int, int]] = ()) -> TypeARational:
    return normalize(num, den)


def ta_arith(op: str, F: TypeARational, G: TypeARational) -> TypeARational:
    if op == "add":
        return F + G
    if op == "sub":
        return F - G
    if op == "mul":
        return F * G
    raise ValueError(f"unknown op {op!r}")


def from_epsilon(forest) -> TypeARational:
    """``prod_{i->j} 1/(1 - x_i/x_j)`` over the edges of a forest.

    Accepts anything with an ``edges()`` method yielding ``(child, parent)``
    pairs, or an iterable of such pairs.
    """
    edges = forest.edges() if hasattr(forest, "edges") else forest
    return normalize(LaurentPoly.const(1), [(j, i, 1) for i, j in edges])


ta_from_epsilon = from_epsilon


def z_power(i: int, j: int, k: int) -> TypeARational:
    """``(1 - x_i/x_j)**k`` for any integer ``k``."""
    if k >= 0:
        return TypeARational._make(factor_power(j, i, k), {}) if k else ONE
    return normalize(LaurentPoly.const(1), [(j, i, -k)])


# -- local expansion at x_i = x_j ----------------------------------------


def center_series(F: TypeARational, i: int, j: int, upto: int):
    """Expand ``g = F * (1 - x_i/x_j)**q`` in ``z = 1 - x_i/x_j``.

    Returns ``(q, coeffs, factors)`` where ``g = sum_m z**m coeffs[m] / D``
    for ``m <= upto``, with ``D`` the product of the raw factors.  All
    ``coeffs`` are Laurent polynomials free of ``x_i``.  The substitution is
    ``x_i = x_j (1 - z)``; each remaining factor involving ``x_i`` is
    expanded binomially and scaled by a common power of its value at
    ``z = 0``.
    """
    if i == j:
        raise ValueError("center needs i != j")
    a, b = min(i, j), max(i, j)
    den = dict(F.den_items())
    q = den.get((a, b), 0)
    num = F.num
    if q and i < j:
        num = num.mul_monomial(mono({i: q, j: -q}), (-1) ** q)
    if upto < 0:
        return q, [], []

    factors: list[tuple[int, int, int]] = []
    series: list[list[LaurentPoly]] = []
    for (u, v), p in den.items():
        if (u, v) == (a, b):
            continue
        if v == i:
            # 1 - x_i/x_u with y = x_j/x_u
            ser = [
                factor_power(u, j, upto - m).mul_monomial(mono({j: m, u: -m}), (-1) ** m * comb(p + m - 1, m))
                for m in range(upto + 1)
            ]
            factors.append((u, j, p + upto))
            series.append(ser)
        elif u == i:
            # 1 - x_v/x_i with y = x_v/x_j
            geo = [factor_power(j, v, upto - m) * comb(p + m - 1, m) for m in range(upto + 1)]
            lin = [(-1) ** m * comb(p, m) for m in range(upto + 1)]
            ser = [
                sum((geo[m - t] * lin[t] for t in range(m + 1) if lin[t]), LaurentPoly())
                for m in range(upto + 1)
            ]
            factors.append((j, v, p + upto))
            series.append(ser)
        else:
            factors.append((u, v, p))

    by_d: dict[int, dict] = {}
    for m, c in num.items():
        d = mono_exp(m, i)
        rest = mono_mul(mono_without(m, i), ((j, d),) if d else ())
        g = by_d.setdefault(d, {})
        g[rest] = g.get(rest, 0) + c
    acc = [LaurentPoly() for _ in range(upto + 1)]
    for d, terms in by_d.items():
        base = LaurentPoly(terms)
        for m in range(upto + 1):
            b_ = gen_binom(d, m)
            if b_:
                acc[m] = acc[m] + base * ((-1) ** m * b_)

    for ser in series:
        new = []
        for m in range(upto + 1):
            tot = LaurentPoly()
            for t in range(m + 1):
                if acc[t] and ser[m - t]:
                    tot = tot + acc[t] * ser[m - t]
            new.append(tot)
        acc = new
    return q, acc, factors


@dataclass(frozen=True)
class LocalExpansion:
    center: tuple
    pole_order: int
    coefficients: dict  # k -> TypeARational, for -pole_order <= k <= order

    @property
    def order(self) -> int:
        return max(self.coefficients) if self.coefficients else -self.pole_order - 1

    def principal_sum(self) -> TypeARational:
        total = ZERO
        for k, h in self.coefficients.items():
            if k < 0:
                total = total + h
        return total

    def recombine(self) -> TypeARational:
        i, j = self.center
        total = ZERO
        for k, h in sorted(self.coefficients.items()):
            total = total + h * z_power(i, j, k)
        return total


def ta_local_expansion(F: TypeARational, i: int, j: int, order: int) -> LocalExpansion:
    q = F.multiplicity(i, j)
    q, coeffs, factors = center_series(F, i, j, q + order)
    out = {}
    for m, P in enumerate(coeffs):
        out[m - q] = normalize(P, factors)
    return LocalExpansion((i, j), q, out)


# -- iterated Laurent series ---------------------------------------------


def _weight(m) -> int:
    return sum(v * e for v, e in m if v != SLACK)


def default_bound(F: TypeARational) -> int:
    qmax = max((q for _, q in F.den_items()), default=0)
    emax = max((abs(e) for m in F.num.terms for _, e in m), default=0)
    return 2 * (qmax + emax)


def ta_series_truncate(F: TypeARational, bound: int | None = None) -> LaurentPoly:
    """Iterated Laurent expansion of ``F``, exact on every kept monomial.

    Each monomial carries the weight ``sum_k k * e_k``; every series term
    ``(x_j/x_i)**m`` (``i < j``) raises it by ``m (j - i) >= m``.  All
    monomials of weight at most ``min numerator weight + bound`` are kept,
    which makes the truncation exact on them.
    """
    if bound is None:
        bound = default_bound(F)
    if F.is_zero():
        return LaurentPoly()
    top = min(_weight(m) for m in F.num.terms) + bound
    cur = {m: c for m, c in F.num.items() if _weight(m) <= top}
    for (i, j), q in F.den_items():
        step = j - i
        nxt: dict = {}
        for m, c in cur.items():
            w0 = _weight(m)
            k = 0
            while w0 + k * step <= top:
                m2 = mono_mul(m, mono({j: k, i: -k})) if k else m
                nxt[m2] = nxt.get(m2, 0) + c * comb(k + q - 1, q - 1)
                k += 1
        cur = nxt
    return LaurentPoly(cur)


@lru_cache(maxsize=65536)
def _compositions(total: int, qs: tuple) -> tuple:
    """Weighted compositions of ``total`` over factors with multiplicities ``qs``."""
    if not qs:
        return (((), 1),) if total == 0 else ()
    q0, rest = qs[0], qs[1:]
    out = []
    for m in range(total + 1):
        w = comb(m + q0 - 1, q0 - 1)
        for tail, wt in _compositions(total - m, rest):
            out.append(((m,) + tail, w * wt))
    return tuple(out)


def ct_eliminate(num: LaurentPoly, den: dict, k: int) -> tuple[LaurentPoly, dict]:
    """Constant term in ``x_k`` when ``x_k`` is the smallest remaining variable."""
    sources = []
    qs = []
    rest_den = {}
    for (a, b), q in den.items():
        if b == k:
            sources.append(a)
            qs.append(q)
        elif a == k:
            raise ValueError(f"x{k} is not the smallest variable of a factor")
        else:
            rest_den[(a, b)] = q
    qs_t = tuple(qs)
    out: dict = {}
    for m, c in num.items():
        e = mono_exp(m, k)
        if e > 0:
            continue
        base = mono_without(m, k)
        for ms, wt in _compositions(-e, qs_t):
            shift = mono({a: -mm for a, mm in zip(sources, ms)})
            m2 = mono_mul(base, shift)
            out[m2] = out.get(m2, 0) + c * wt
    return LaurentPoly(out), rest_den


def ta_full_ct(F: TypeARational) -> Fraction:
    """Constant term of the iterated Laurent expansion, eliminating x_n first."""
    if F.is_zero():
        return Fraction(0)
    num, den = F.num, dict(F.den_items())
    for k in sorted(F.variables(), reverse=True):
        num, den = ct_eliminate(num, den, k)
        if num.is_zero():
            return Fraction(0)
    return num.constant_term()


def monomial_ratio(i: int, j: int, k: int = 1) -> LaurentPoly:
    """``(x_i/x_j)**k``."""
    return LaurentPoly.monomial({i: k, j: -k})
