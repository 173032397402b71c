import itertools
import json
import random

import pytest
from hypothesis import given, strategies as st

from surfinv.quandles import (Cocycle3, LaurentPoly, Quandle, cocycle_from_dict,
                              dihedral_quandle, theta_x, theta_z, trivial_quandle,
                              validate_cocycle, validate_quandle, zero_cocycle)


@pytest.mark.parametrize("q", [trivial_quandle(3), dihedral_quandle(3), dihedral_quandle(5)])
def test_axioms_hold(q):
    assert validate_quandle(q) == []


def test_axiom_violations_reported():
    not_idempotent = Quandle(2, ((1, 1), (0, 0)))
    assert any(p.startswith("(i)") for p in validate_quandle(not_idempotent))
    not_bijective = Quandle(2, ((0, 0), (0, 1)))
    assert any(p.startswith("(ii)") for p in validate_quandle(not_bijective))


def test_dihedral_and_right_division():
    R3 = dihedral_quandle(3)
    assert R3.op(0, 1) == 2
    for a, b in itertools.product(range(3), repeat=2):
        assert R3.op(R3.right_divide(a, b), b) == a


def test_theta_closed_form_values():
    tz, tx = theta_z(), theta_x()
    assert tz(0, 1, 2) == 4 and tz(1, 0, 2) == -4 and tz(0, 2, 1) == -2
    assert tx(2, 1, 0) == -4 and tx(1, 2, 0) == 2
    for x, y in itertools.product(range(3), repeat=2):
        assert tz(x, x, y) == tz(x, y, y) == 0


def test_theta_only_on_t3():
    with pytest.raises(ValueError):
        theta_z(4)


@pytest.mark.parametrize("theta", [theta_z(), theta_x(), zero_cocycle(trivial_quandle(3)),
                                   zero_cocycle(dihedral_quandle(3))])
def test_cocycles_validate(theta):
    assert validate_cocycle(theta) == []


def test_theta2_is_vacuous_on_trivial_quandles():
    # x*y = x collapses both sides to the same three terms
    rng = random.Random(3)
    for _ in range(5):
        table = {k: rng.randint(-5, 5) for k in itertools.product(range(3), repeat=3)}
        theta = Cocycle3.from_function(
            trivial_quandle(3), lambda x, y, z: 0 if x == y or y == z else table[x, y, z])
        assert validate_cocycle(theta) == []
    assert validate_cocycle(theta_z().perturbed(0, 1, 2)) == []


def test_theta2_witnesses_on_dihedral():
    R3 = dihedral_quandle(3)
    for x, y, z in itertools.product(range(3), repeat=3):
        if x == y or y == z:
            continue
        problems = validate_cocycle(zero_cocycle(R3).perturbed(x, y, z))
        assert problems and all(p.startswith("(theta2)") for p in problems)


def test_degenerate_perturbation_violates_theta1():
    assert any(p.startswith("(theta1)") for p in validate_cocycle(theta_z().perturbed(0, 0, 1)))


def test_cocycle_json():
    c = theta_x()
    assert cocycle_from_dict(json.loads(c.to_json())) == c
    assert cocycle_from_dict({"builtin": "theta_z"}) == theta_z()
    q = json.loads(dihedral_quandle(3).to_json())
    assert Quandle.from_dict(q) == dihedral_quandle(3)


polys = st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=5).map(LaurentPoly)


@given(polys, polys, polys)
def test_laurent_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0
    assert (p * q).evaluate(1) == p.evaluate(1) * q.evaluate(1)


def test_laurent_rendering():
    assert str(LaurentPoly({0: 21, -2: 4, 4: 2})) == "4*t^-2 + 21 + 2*t^4"
    assert str(LaurentPoly({-4: 2, 0: 21, 2: 4})) == "2*t^-4 + 21 + 4*t^2"
    assert str(LaurentPoly({1: -1, 0: 3})) == "3 - t"
    assert str(LaurentPoly()) == "0"
    assert LaurentPoly.constant(27) == 27
    assert LaurentPoly({-1: 2, 3: 5}).evaluate(1) == 7


def test_cocycle_shape_checked():
    with pytest.raises(ValueError):
        Cocycle3(trivial_quandle(2), [[[0]]])
