from fractions import Fraction
from itertools import product

import pytest

from ctalg.birkhoff import (
    birkhoff_term,
    birkhoff_values,
    brute_force_lattice_count,
    cmd_birkhoff,
    cmd_dyson,
    eval_poly,
    interpolate,
    multinomial,
)
from ctalg.errors import InsufficientPoints
from ctalg.typea import ta_full_ct


@pytest.mark.parametrize("a,value", [((1, 1), 2), ((1, 1, 1), 6), ((0, 0, 0), 1)])
def test_dyson_examples(a, value):
    res = cmd_dyson(a)
    assert res["computed"] == res["expected"] == value and res["match"]


def test_dyson_small_grid():
    for n in (2, 3):
        for a in product(range(3), repeat=n):
            assert cmd_dyson(a)["match"]


def test_birkhoff_n2_terms():
    for t in range(6):
        assert ta_full_ct(birkhoff_term((2, 0), t)) == t + 1
        assert ta_full_ct(birkhoff_term((1, 1), t)) == 0
        assert ta_full_ct(birkhoff_term((0, 2), t)) == 0


def _naive_count(n, t):
    """Enumerate all matrices entrywise (tiny cases only)."""
    return sum(
        1
        for cells in product(range(t + 1), repeat=n * n)
        if all(sum(cells[r * n:(r + 1) * n]) == t for r in range(n))
        and all(sum(cells[c::n]) == t for c in range(n))
    )


@pytest.mark.parametrize("n,t", [(1, 3), (2, 0), (2, 4), (3, 1), (3, 2)])
def test_brute_force_matches_naive(n, t):
    assert brute_force_lattice_count(n, t) == _naive_count(n, t)


def test_brute_force_examples():
    assert [brute_force_lattice_count(2, t) for t in range(6)] == [t + 1 for t in range(6)]
    assert brute_force_lattice_count(3, 1) == 6
    assert brute_force_lattice_count(1, 9) == 1


def test_birkhoff_values_small():
    assert birkhoff_values(1, range(4), threads=1) == {t: 1 for t in range(4)}
    assert birkhoff_values(2, range(5), threads=1) == {t: t + 1 for t in range(5)}
    assert birkhoff_values(3, [1], threads=1) == {1: 6}


def test_birkhoff_parallel_matches_serial():
    assert birkhoff_values(3, range(4), threads=2) == birkhoff_values(3, range(4), threads=1)


def test_interpolation():
    res = cmd_birkhoff(3, range(5), interpolate_poly=True, threads=1)
    poly = res.polynomial
    assert len(poly) - 1 == 4
    for t in range(12):
        v = eval_poly(poly, t)
        assert v.denominator == 1 and v == brute_force_lattice_count(3, t)
    assert interpolate({0: Fraction(1), 1: Fraction(2)}) == [1, 1]
    with pytest.raises(InsufficientPoints):
        cmd_birkhoff(3, range(4), interpolate_poly=True, threads=1)


def test_multinomial():
    assert multinomial((2, 1, 1)) == 12
    assert multinomial(()) == 1
