import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ctalg.errors import ComplexConstant, ParseError
from ctalg.formats import parse_general, parse_typea, typea_from_json, typea_to_json
from ctalg.laurent import LaurentPoly
from ctalg.typea import normalize
from helpers import random_typea


def test_json_shape():
    obj = {"n": 3, "numerator": [{"coeff": "1", "exp": {"1": 1, "2": -1}}],
           "denominator": [{"i": 1, "j": 2, "mult": 2}]}
    F = typea_from_json(obj)
    assert F == parse_typea("x1*x2^-1 / (1-x2/x1)^2")
    assert typea_to_json(F, 3) == obj


def test_text_orientation_renormalized():
    assert parse_typea("1/(1-x1/x2)") == normalize(LaurentPoly.const(1), [(2, 1, 1)])


def test_numerator_products_and_powers():
    F = parse_typea("(1-x1/x2)^2*(1-x2/x1)")
    a = LaurentPoly.const(1) - LaurentPoly.monomial({1: 1, 2: -1})
    b = LaurentPoly.const(1) - LaurentPoly.monomial({2: 1, 1: -1})
    assert F.num == a * a * b


def test_general_constants():
    num, facs = parse_general("x1/x3 / (1-3/2*x1/x2)^2")
    assert facs == [(1, 2, Fraction(3, 2), 2)]
    with pytest.raises(ParseError):
        parse_typea("1/(1-2*x1/x2)")
    with pytest.raises(ComplexConstant):
        parse_general("1/(1-i*x1/x2)")


@pytest.mark.parametrize("bad", [
    "x1 +", "(x1", "x0", "x1^x2", "1/(2-x1/x2)", "1/(1-x1/x1)", "x1 $",
])
def test_text_errors(bad):
    with pytest.raises(ParseError):
        parse_typea(bad)


@pytest.mark.parametrize("obj", [
    {"n": 2, "numerator": [{"coeff": "1", "exp": {"3": 1}}], "denominator": []},
    {"n": 2, "numerator": [{"coeff": "1", "exp": {}}], "denominator": [{"i": 2, "j": 1, "mult": 1}]},
    {"n": 2, "numerator": [{"coeff": "x", "exp": {}}]},
    {"numerator": []},
])
def test_json_errors(obj):
    with pytest.raises(ParseError):
        parse_typea(json.dumps(obj))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_roundtrips(seed, n):
    F = random_typea(random.Random(seed), n, max_mult=3)
    assert parse_typea(F.to_text()) == F
    assert parse_typea(json.dumps(typea_to_json(F, n))) == F


def test_slash_between_factors():
    assert parse_typea("1/(1-x2/x1)/(1-x3/x2)") == parse_typea("1/(1-x2/x1)*(1-x3/x2)")
