"""Random generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from ctalg.laurent import LaurentPoly
from ctalg.typea import TypeARational, normalize


def random_degree0_monomial(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> dict:
    while True:
        exps = {v: rng.randint(lo, hi) for v in range(1, n)}
        last = -sum(exps.values())
        if lo <= last <= hi:
            exps[n] = last
            return exps


def random_typea(rng: random.Random, n: int, max_mult: int = 3, terms: int = 2,
                 density: float = 0.5, must: tuple = ()) -> TypeARational:
    """Random element of the degree-0 type-A class on x_1..x_n."""
    while True:
        num = LaurentPoly()
        for _ in range(rng.randint(1, terms)):
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
            num = num + LaurentPoly.monomial(random_degree0_monomial(rng, n), c)
        den = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if (i, j) in must or (j, i) in must or rng.random() < density:
                    den.append((i, j, rng.randint(1, max_mult)))
        if num:
            return normalize(num, den)


def random_forest_word(rng: random.Random, n: int, s: int) -> tuple:
    """Random word of length s whose digraph is a forest on {1..n}."""
    gone: set = set()
    out = []
    for _ in range(s):
        live = [v for v in range(1, n + 1) if v not in gone]
        i, j = rng.sample(live, 2)
        gone.add(i)
        out.append((i, j))
    return tuple(reversed(out))


# PASS/FAIL lines from the acceptance module, echoed in the terminal summary
ACCEPTANCE: list = []
