"""Dyson constant terms and Ehrhart values of the Birkhoff polytope."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

import sympy

from .errors import InsufficientPoints
from .laurent import LaurentPoly, factor_power
from .typea import TypeARational, normalize, ta_full_ct


def multinomial(parts: Sequence[int]) -> int:
    return factorial(sum(parts)) // prod(factorial(p) for p in parts)


def dyson_ct(a: Sequence[int]) -> Fraction:
    """Constant term of ``prod_{i != j} (1 - x_i/x_j)**a_i``."""
    n = len(a)
    P = LaurentPoly.const(1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and a[i - 1]:
                # 1 - x_i/x_j is factor_power(j, i, 1)
                P = P * factor_power(j, i, a[i - 1])
    return P.constant_term()


def cmd_dyson(a: Sequence[int]) -> dict:
    if any(x < 0 for x in a):
        raise ValueError("exponents must be nonnegative")
    computed = dyson_ct(a)
    expected = Fraction(multinomial(a))
    return {"a": list(a), "computed": computed, "expected": expected, "match": computed == expected}


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def birkhoff_term(m: Sequence[int], t: int) -> TypeARational:
    """``prod_i x_i**((m_i - 1) t) / prod_{j != i} (1 - x_j/x_i)**m_i``."""
    n = len(m)
    num = LaurentPoly.monomial({i: (m[i - 1] - 1) * t for i in range(1, n + 1)})
    factors = [(i, j, m[i - 1]) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return normalize(num, factors)


def _term_value(args) -> Fraction:
    m, t = args
    return multinomial(m) * ta_full_ct(birkhoff_term(m, t))


def default_threads() -> int:
    env = os.environ.get("CTALG_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def birkhoff_values(n: int, ts: Iterable[int], threads: int | None = None) -> dict[int, Fraction]:
    """``H_n(t)`` for each ``t`` by summing constant terms over compositions of ``n``."""
    ts = list(ts)
    if n < 1:
        raise ValueError("n must be positive")
    if any(t < 0 for t in ts):
        raise ValueError("t must be nonnegative")
    jobs = [(m, t) for t in ts for m in compositions(n, n)]
    threads = threads or default_threads()
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(_term_value, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
    else:
        vals = [_term_value(j) for j in jobs]
    out = {t: Fraction(0) for t in ts}
    for (m, t), v in zip(jobs, vals):
        out[t] += v
    return out


def brute_force_lattice_count(n: int, t: int) -> int:
    """Nonnegative integer n x n matrices with all line sums t, column by column."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")

    @lru_cache(maxsize=None)
    def columns(k: int, rows: tuple) -> int:
        if k == n:
            return 1 if not any(rows) else 0
        total = 0
        for col in _column_choices(rows, t):
            total += columns(k + 1, tuple(sorted(r - c for r, c in zip(rows, col))))
        return total

    return columns(0, tuple([t] * n))


def _column_choices(rows: tuple, t: int):
    if not rows:
        if t == 0:
            yield ()
        return
    for c in range(min(rows[0], t) + 1):
        for rest in _column_choices(rows[1:], t - c):
            yield (c,) + rest


def interpolate(points: dict) -> list[Fraction]:
    """Coefficients (constant first) of the interpolating polynomial, exactly."""
    x = sympy.Symbol("t")
    pts = [(sympy.Rational(k), sympy.Rational(v.numerator, v.denominator)) for k, v in sorted(points.items())]
    poly = sympy.Poly(sympy.interpolate(pts, x), x) if len(pts) > 1 else sympy.Poly(pts[0][1], x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_poly(coeffs: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass
class EhrhartResult:
    n: int
    values: dict
    polynomial: list | None = field(default=None)

    def to_json(self) -> dict:
        out = {"n": self.n, "values": {str(t): str(v) for t, v in sorted(self.values.items())}}
        if self.polynomial is not None:
            out["polynomial"] = [str(c) for c in self.polynomial]
        return out


def cmd_birkhoff(n: int, ts: Iterable[int], interpolate_poly: bool = False, threads: int | None = None) -> EhrhartResult:
    ts = sorted(set(ts))
    need = (n - 1) ** 2 + 1
    if interpolate_poly and len(ts) < need:
        raise InsufficientPoints(f"interpolation for n={n} needs {need} values of t, got {len(ts)}")
    values = birkhoff_values(n, ts, threads)
    poly = interpolate(values) if interpolate_poly else None
    return EhrhartResult(n, values, poly)
