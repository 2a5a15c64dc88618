from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symblock.scalars import (
    Quad,
    binom,
    from_json,
    multinomial,
    normalize,
    sqrt_int,
    squarefree_split,
    to_json,
)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quads = st.builds(lambda a, b: Quad(a, b, 3), fracs, fracs)


def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(2) == (1, 2)
    assert squarefree_split(4) == (2, 1)
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(72) == (6, 2)
    with pytest.raises(ValueError):
        squarefree_split(-1)


def test_sqrt_int_exact():
    assert sqrt_int(9) == 3
    r = sqrt_int(8)
    assert isinstance(r, Quad) and (r.a, r.b, r.d) == (0, 2, 2)
    assert r * r == 8


def test_quad_rejects_bad_radicand():
    for d in (0, 1, 4, 12):
        with pytest.raises(ValueError):
            Quad(1, 1, d)


def test_mixing_fields_raises():
    with pytest.raises(ValueError):
        Quad(0, 1, 2) + Quad(0, 1, 3)


@given(quads, quads, quads)
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)


@given(quads)
def test_inverse(x):
    if x:
        assert x * x.inverse() == 1
        assert (1 / x) * x == 1


@given(quads, quads)
def test_float_is_homomorphic(x, y):
    assert abs(float(x * y) - float(x) * float(y)) <= 1e-9 * (1 + abs(float(x) * float(y)))


def test_equality_with_rationals_and_hash():
    assert Quad(Fraction(1, 2), 0, 5) == Fraction(1, 2)
    assert hash(Quad(3, 0, 5)) == hash(3)
    assert Quad(1, 1, 5) != 1
    assert (Quad(0, 1, 5) ** 3) == Quad(0, 5, 5)
    assert Quad(0, 1, 5) ** 0 == 1


@given(st.one_of(st.integers(-10**6, 10**6), fracs, quads))
def test_json_round_trip(x):
    assert from_json(to_json(x)) == x


def test_json_forms():
    assert to_json(Fraction(-3, 4)) == "-3/4"
    assert to_json(7) == "7"
    assert to_json(Quad(1, Fraction(1, 2), 2)) == {"value": "1", "sqrt_coeff": "1/2", "sqrt_of": 2}
    assert from_json("6/3") == 2 and isinstance(from_json("6/3"), int)


def test_binomials():
    assert binom(5, 2) == 10
    assert binom(3, 4) == 0 and binom(3, -1) == 0 and binom(-1, 0) == 0
    assert multinomial(4, (2, 1, 1)) == 12
    assert multinomial(4, (2, 1)) == 0
    assert normalize(Fraction(4, 2)) == 2 and isinstance(normalize(Fraction(4, 2)), int)


def test_normalize_collapses_rational_quads():
    x = sqrt_int(2) ** 2
    assert normalize(x) == 2 and isinstance(normalize(x), int)
    half = normalize(Quad(Fraction(1, 2), 0, 3))
    assert half == Fraction(1, 2) and not isinstance(half, Quad)
    assert isinstance(normalize(Quad(0, 1, 3)), Quad)
