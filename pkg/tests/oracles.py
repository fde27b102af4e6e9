"""Independent reference computations (sympy series, numeric evaluation)."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from ctalg.typea import TypeARational


def sym_expr(F: TypeARational, subs: dict, zsym=None):
    """F as a sympy expression after substituting sympy values for x_k."""
    num = 0
    for m, c in F.num.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for v, e in m:
            t *= subs[v] ** e
        num += t
    den = 1
    for (i, j), q in F.den_items():
        den *= (1 - subs[j] / subs[i]) ** q
    return num / den


def local_coeffs(F: TypeARational, i: int, j: int, order: int, point: dict) -> dict:
    """Laurent coefficients in z = 1 - x_i/x_j at a numeric point, via sympy."""
    z = sympy.Symbol("z")
    subs = {k: sympy.Rational(v.numerator, v.denominator) for k, v in point.items()}
    subs[i] = subs[j] * (1 - z)
    expr = sympy.together(sym_expr(F, subs))
    ser = sympy.series(expr, z, 0, order + 1).removeO()
    ser = sympy.expand(ser)
    out = {}
    for k in range(-12, order + 1):
        c = ser.coeff(z, k)
        if c != 0:
            out[k] = Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
    return out


def random_point(rng: random.Random, n: int) -> dict:
    """Distinct nonzero rationals so that no denominator vanishes."""
    vals = set()
    while len(vals) < n:
        vals.add(Fraction(rng.randint(2, 40), rng.randint(1, 7)))
    vals = list(vals)
    rng.shuffle(vals)
    return {k + 1: v for k, v in enumerate(vals)}


def raw_value(num, factors, point) -> Fraction:
    """Evaluate num / prod (1 - x_b/x_a)**mult straight from raw factors."""
    val = num.evaluate(point)
    for a, b, m in factors:
        val /= (1 - point[b] / point[a]) ** m
    return val
