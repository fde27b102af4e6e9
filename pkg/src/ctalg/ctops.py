"""Partial fractions in one variable and the pole operators CT_{x_i=x_j}."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational

from .errors import CenterCollision, ComplexConstant
from .laurent import SLACK, LaurentPoly, gen_binom, mono, mono_exp, mono_mul, mono_without
from .typea import (
    ZERO,
    TypeARational,
    center_series,
    normalize,
    z_power,
)


@dataclass(frozen=True)
class PrincipalPart:
    """``A(x_i) / (1 - x_i/x_u)**q`` with ``A = sum_k coeffs[k] (1 - x_i/x_u)**k``."""

    var: int
    center: int
    multiplicity: int
    coeffs: tuple

    def a_at_zero(self) -> TypeARational:
        total = ZERO
        for g in self.coeffs:
            total = total + g
        return total

    def numerator(self) -> TypeARational:
        total = ZERO
        for k, g in enumerate(self.coeffs):
            total = total + g * z_power(self.var, self.center, k)
        return total

    def as_rational(self) -> TypeARational:
        return self.numerator() * z_power(self.var, self.center, -self.multiplicity)


@dataclass(frozen=True)
class PfdResult:
    source: TypeARational
    var: int
    polynomial_part: TypeARational
    principal_parts: tuple = field(default=())

    def recombine(self) -> TypeARational:
        total = self.polynomial_part
        for part in self.principal_parts:
            total = total + part.as_rational()
        return total

    def part(self, center: int) -> PrincipalPart | None:
        for p in self.principal_parts:
            if p.center == center:
                return p
        return None


def _centers(F: TypeARational, i: int) -> list[tuple[int, int]]:
    out = []
    for (a, b), q in F.den_items():
        if a == i:
            out.append((b, q))
        elif b == i:
            out.append((a, q))
    return sorted(out)


def pfd(F: TypeARational, i: int) -> PfdResult:
    """Decompose ``F`` as a Laurent polynomial in ``x_i`` plus principal parts."""
    parts = []
    rest = F
    for u, q in _centers(F, i):
        _, coeffs, factors = center_series(F, i, u, q - 1)
        gs = tuple(normalize(P, factors) for P in coeffs)
        part = PrincipalPart(i, u, q, gs)
        parts.append(part)
        rest = rest - part.as_rational()
    for (a, b), _ in rest.den_items():
        if i in (a, b):
            raise AssertionError(f"polynomial part still has a pole at x{a}=x{b}")
    return PfdResult(F, i, rest, tuple(parts))


@lru_cache(maxsize=1 << 16)
def ct_pole(F: TypeARational, i: int, j: int) -> TypeARational:
    """``CT_{x_i=x_j} F``: the sum of the negative local coefficients at the pole."""
    if i == j:
        raise ValueError("ct_pole needs i != j")
    q = F.multiplicity(i, j)
    if not q:
        return ZERO
    _, coeffs, factors = center_series(F, i, j, q - 1)
    total = LaurentPoly()
    for P in coeffs:
        total = total + P
    return normalize(total, factors)


def ct_pole_differential(F: TypeARational, i: int, j: int) -> TypeARational:
    """Same value as :func:`ct_pole`, via Taylor coefficients in ``w - 1``.

    With ``x_i = w x_j`` and ``g = F (1 - x_i/x_j)**q`` the value is
    ``(-1)**(q-1)`` times the ``(w-1)**(q-1)`` coefficient of ``g/w``.
    """
    if i == j:
        raise ValueError("ct_pole needs i != j")
    a, b = min(i, j), max(i, j)
    den = dict(F.den_items())
    q = den.get((a, b), 0)
    if not q:
        return ZERO
    num = F.num
    if i < j:
        num = num.mul_monomial(mono({i: q, j: -q}), (-1) ** q)
    num = num.substitute(i, 1, j, 1)
    Q = LaurentPoly.monomial({SLACK: 1})
    w_shift = 0
    out_factors = []
    wvar = LaurentPoly.monomial({SLACK: 1})
    for (u, v), p in den.items():
        if (u, v) == (a, b):
            continue
        if v == i:
            # 1 - w x_j/x_u
            lin = LaurentPoly.const(1) - LaurentPoly.monomial({SLACK: 1, j: 1, u: -1})
            Q = Q * lin**p
            out_factors.append((u, j, p * q))
        elif u == i:
            # 1 - x_v/(w x_j) = (w - x_v/x_j)/w
            lin = wvar - LaurentPoly.monomial({v: 1, j: -1})
            Q = Q * lin**p
            w_shift += p
            out_factors.append((j, v, p * q))
        else:
            out_factors.append((u, v, p))
    num = num.mul_monomial(mono({SLACK: w_shift}))
    low = min((mono_exp(m, SLACK) for m in num.terms), default=0)
    if low < 0:
        num = num.mul_monomial(mono({SLACK: -low}))
        Q = Q.mul_monomial(mono({SLACK: -low}))
    order = q - 1
    av = num.slack_taylor(order)
    bv = Q.slack_taylor(order)
    b0 = bv[0]
    C = [LaurentPoly.const(1)]
    for k in range(1, order + 1):
        acc = LaurentPoly()
        b0pow = LaurentPoly.const(1)
        for l in range(1, k + 1):
            if bv[l]:
                acc = acc + bv[l] * C[k - l] * b0pow
            b0pow = b0pow * b0
        C.append(-acc)
    total = LaurentPoly()
    b0pow = LaurentPoly.const(1)
    for m in range(order + 1):
        if av[m]:
            total = total + av[m] * C[order - m] * b0pow
        b0pow = b0pow * b0
    total = total * (-1) ** order
    return normalize(total, out_factors)


# -- denominator bounds ----------------------------------------------------


def _bound_for(res: PfdResult, part: PrincipalPart) -> dict:
    i = res.var
    bound: dict = {}
    for (a, b), q in res.source.den_items():
        if i not in (a, b):
            bound[(a, b)] = q
    for other in res.principal_parts:
        if other.center == part.center:
            continue
        pair = (min(part.center, other.center), max(part.center, other.center))
        bound[pair] = bound.get(pair, 0) + part.multiplicity + other.multiplicity - 1
    return bound


def check_denominator_bound(res: PfdResult) -> bool:
    """Every A_r denominator divides the cross-factor bound times F's x_i-free factors."""
    for part in res.principal_parts:
        bound = _bound_for(res, part)
        for g in part.coeffs + (part.a_at_zero(),):
            for pair, q in g.den_items():
                if q > bound.get(pair, 0):
                    return False
    return True


def pfd_three_var_split(a: int, b: int, c: int, x: int = 1, y: int = 2, z: int = 3):
    """Split ``1/((1-x/y)**a (1-x/z)**b (1-y/z)**c)`` into the y- and z-pole parts."""
    if min(a, b, c) < 0:
        raise ValueError("exponents must be nonnegative")
    F = normalize(LaurentPoly.const(1), [(y, x, a), (z, x, b), (z, y, c)])
    if a == 0 and b == 0:
        return ZERO, F
    res = pfd(F, x)
    first = res.polynomial_part
    second = ZERO
    for part in res.principal_parts:
        if part.center == y:
            first = first + part.as_rational()
        else:
            second = second + part.as_rational()
    return first, second


# -- general rational constants -------------------------------------------


def _as_rational_constant(c) -> Fraction:
    if isinstance(c, complex):
        if c.imag:
            raise ComplexConstant(f"non-real constant {c}")
        c = c.real
    if isinstance(c, str):
        s = c.strip().replace(" ", "")
        if "i" in s or "j" in s:
            raise ComplexConstant(f"non-rational constant {c!r}")
        return Fraction(s)
    if isinstance(c, (Rational, int)):
        return Fraction(c)
    raise ComplexConstant(f"constant {c!r} is not an exact rational")


def _general_power(a: int, b: int, k: Fraction, e: int) -> LaurentPoly:
    """``(1 - k x_a/x_b)**e``."""
    if a == b:
        return LaurentPoly.const((1 - k) ** e)
    return LaurentPoly({mono({a: m, b: -m}): comb(e, m) * (-k) ** m for m in range(e + 1)})


@dataclass(frozen=True)
class ScaledRational:
    """``num / prod (1 - k x_a/x_b)**mult`` over ``factors = ((a, b, k, mult), ...)``.

    Kept over a common denominator without cancellation.
    """

    num: LaurentPoly
    factors: tuple = ()

    def evaluate(self, point) -> Fraction:
        val = self.num.evaluate(point)
        for a, b, k, e in self.factors:
            val /= (1 - k * Fraction(point[a]) / Fraction(point[b])) ** e
        return val

    def is_constant(self) -> bool:
        return not self.factors and self.num.is_constant()

    def as_constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_term()

    def to_typea(self) -> TypeARational:
        raw = []
        for a, b, k, e in self.factors:
            if k != 1:
                raise ValueError("only unit constants map to the type-A class")
            raw.append((b, a, e))
        return normalize(self.num, raw)

    def __add__(self, other: "ScaledRational") -> "ScaledRational":
        d1: dict = {}
        for a, b, k, e in self.factors:
            d1[(a, b, k)] = d1.get((a, b, k), 0) + e
        d2: dict = {}
        for a, b, k, e in other.factors:
            d2[(a, b, k)] = d2.get((a, b, k), 0) + e
        common = {key: max(d1.get(key, 0), d2.get(key, 0)) for key in set(d1) | set(d2)}
        n1, n2 = self.num, other.num
        for key, e in common.items():
            if e > d1.get(key, 0):
                n1 = n1 * _general_power(*key, e - d1.get(key, 0))
            if e > d2.get(key, 0):
                n2 = n2 * _general_power(*key, e - d2.get(key, 0))
        facs = tuple(sorted((a, b, k, e) for (a, b, k), e in common.items()))
        return ScaledRational(n1 + n2, facs)


@dataclass(frozen=True)
class GeneralRational:
    """``num / prod (1 - c x_a/x_b)**q`` over ``factors = ((a, b, c, q), ...)``."""

    num: LaurentPoly
    factors: tuple

    @classmethod
    def build(cls, num, factors) -> "GeneralRational":
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        fs = []
        for a, b, c, q in factors:
            if a == b:
                raise ValueError("factor needs two distinct variables")
            fs.append((a, b, _as_rational_constant(c), q))
        return cls(num, tuple(fs))

    @classmethod
    def from_typea(cls, F: TypeARational) -> "GeneralRational":
        # canonical (1 - x_j/x_i) is (1 - 1*x_j/x_i)
        return cls(F.num, tuple((j, i, Fraction(1), q) for (i, j), q in F.den_items()))


def ct_pole_general(f, i: int, j: int) -> ScaledRational:
    """Sum of ``A_r(0)`` over all poles ``x_i = x_j / c_r`` of ``f`` with target ``x_j``."""
    if isinstance(f, TypeARational):
        f = GeneralRational.from_typea(f)
    num = f.num
    centers: dict = {}  # (u, c) -> q, factor (1 - c x_i/x_u)
    others = []
    for a, b, c, q in f.factors:
        c = _as_rational_constant(c)
        if not c:
            others.append((a, b, c, q))
            continue
        if a == i:
            key = (b, c)
        elif b == i:
            # 1 - c x_a/x_i = (-c x_a/x_i)(1 - x_i/(c x_a))
            num = num.mul_monomial(mono({i: q, a: -q}), (-1 / c) ** q)
            key = (a, 1 / c)
        else:
            others.append((a, b, c, q))
            continue
        if key in centers:
            raise CenterCollision(f"repeated center x{i} = x{key[0]}/{key[1]}")
        centers[key] = q

    total = ScaledRational(LaurentPoly(), ())
    for (u, c), q in sorted(centers.items()):
        if u != j:
            continue
        upto = q - 1
        # x_i = (x_u/c)(1 - z)
        acc = [LaurentPoly() for _ in range(upto + 1)]
        for m, v in num.items():
            d = mono_exp(m, i)
            base = mono_mul(mono_without(m, i), ((u, d),) if d else ())
            for k in range(upto + 1):
                bk = gen_binom(d, k)
                if bk:
                    acc[k] = acc[k] + LaurentPoly._raw({base: v / c**d * (-1) ** k * bk})
        facs = list(others)
        scale = Fraction(1)
        for (s, cs), p in centers.items():
            if (s, cs) == (u, c):
                continue
            # 1 - cs x_i/x_s = (1 - y) + y z with y = (cs/c) x_u/x_s
            k = cs / c
            if s == u:
                y = LaurentPoly.const(k)
                scale /= (1 - k) ** (p + upto)
                one_minus = lambda e, k=k: LaurentPoly.const((1 - k) ** e)
            else:
                y = LaurentPoly.monomial({u: 1, s: -1}, k)
                facs.append((u, s, k, p + upto))
                one_minus = lambda e, s=s, k=k: _general_power(u, s, k, e)
            ser = [y**m * one_minus(upto - m) * ((-1) ** m * comb(p + m - 1, m)) for m in range(upto + 1)]
            acc = [
                sum((acc[t] * ser[mm - t] for t in range(mm + 1)), LaurentPoly())
                for mm in range(upto + 1)
            ]
        val = LaurentPoly()
        for P in acc:
            val = val + P
        total = total + ScaledRational(val * scale, tuple(sorted(facs)))
    return total
