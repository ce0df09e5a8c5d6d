import random

import pytest

import poly
from cox import CoxPresentation
from errors import PolynomialError
from poly import Field, GenericFormSpec, Inhomogeneous


@pytest.fixture
def ring():
    return poly.make_ring(["x", "y", "z"], Field.prime(101))


def test_field():
    assert str(Field.rationals()) == "QQ"
    assert str(Field.prime(7)) == "GF(7)"
    assert not Field.rationals().is_prime
    with pytest.raises(PolynomialError):
        Field.prime(1)


def test_make_ring_rejects_repeats():
    with pytest.raises(PolynomialError):
        poly.make_ring(["x", "x"], Field.prime(7))


def test_monomials_of_weighted_degree(ring):
    grading = {"x": (1,), "y": (1,), "z": (2,)}
    found = poly.monomials_of_multidegree(ring, grading, (4,))
    # x^a y^b z^c with a + b + 2c = 4
    assert len(found) == 5 + 3 + 1
    assert (0, 0, 2) in found
    assert poly.monomials_of_multidegree(ring, grading, (2,), ["z"]) == [(0, 0, 1)]
    assert poly.monomials_of_multidegree(ring, grading, (1,), ["z"]) == []


def test_monomials_of_bidegree():
    ring = poly.make_ring(["w", "x2", "x"], Field.prime(101))
    grading = {"w": (1, -2), "x2": (1, -1), "x": (0, 1)}
    found = poly.monomials_of_multidegree(ring, grading, (2, -2))
    assert sorted(found) == sorted([(0, 2, 0), (1, 1, 1), (2, 0, 2)])


def test_positive_functional():
    lam = poly.positive_functional([(1, -2), (1, -1), (0, 1)])
    assert all(a * lam[0] + b * lam[1] > 0 for a, b in [(1, -2), (1, -1), (0, 1)])
    with pytest.raises(PolynomialError):
        poly.positive_functional([(1,), (-1,)])


def test_generic_form_is_deterministic():
    spec = GenericFormSpec("A", (3,), ("x", "x1", "x2"), 42)
    first = poly.gen_generic(spec, Field.prime(32003))
    again = poly.gen_generic(spec, Field.prime(32003))
    other = poly.gen_generic(GenericFormSpec("A", (3,), ("x", "x1", "x2"), 43), Field.prime(32003))
    assert first == again
    assert first != other
    assert len(first.terms()) == 10
    assert all(c != 0 for _, c in first.terms())


def test_generic_form_needs_prime_field():
    spec = GenericFormSpec("A", (3,), ("x",), 0)
    with pytest.raises(PolynomialError):
        poly.gen_generic(spec, Field.rationals())
    with pytest.raises(PolynomialError):
        poly.gen_generic(GenericFormSpec("B", (1,), ("x",), 0, (("x", (2,)),)), Field.prime(7))


def test_bind_forms_pushes_through_arguments():
    fld = Field.prime(101)
    ring = poly.make_ring(["u", "x", "x3"], fld)
    spec = GenericFormSpec("C", (2,), ("x", "x3"), 5, arguments=(("x3", "u*x3"),))
    bound = poly.bind_forms([spec], ring, fld)["C"]
    plain = poly.gen_generic(spec, fld)
    assert len(bound.terms()) == len(plain.terms()) == 3
    degrees = sorted(m for m, _ in bound.terms())
    assert degrees == [(0, 2, 0), (1, 1, 1), (2, 0, 2)]


def test_substitute_between_rings(ring):
    x, y, z = ring.gens
    target = poly.make_ring(["x", "y"], Field.prime(101))
    tx, ty = target.gens
    p = x * z + y ** 2
    assert poly.substitute(p, {"z": target.one}, target) == tx + ty ** 2
    with pytest.raises(PolynomialError):
        poly.substitute(p, {}, target)
    with pytest.raises(PolynomialError):
        poly.substitute(p, {"z": x}, target)


def test_multidegree_of(ring):
    x, y, z = ring.gens
    c = CoxPresentation.from_rows(["x", "y", "z"], [[1, 1, 2]])
    assert poly.multidegree_of(x * y + z, c) == (2,)
    assert poly.multidegree_of(ring.zero, c) is None
    bad = poly.multidegree_of(x + z, c)
    assert isinstance(bad, Inhomogeneous)
    assert bad.degrees == ((1,), (2,)) or bad.degrees == ((2,), (1,))


def test_weighted_order_and_truncation(ring):
    x, y, z = ring.gens
    p = x ** 3 + x * y + z
    assert poly.weighted_order(p, {"x": 1, "y": 4, "z": 5}) == 3
    assert poly.weighted_order(ring.zero, {"x": 1}) is None
    assert poly.truncate(p, 2) == x * y + z
    assert poly.homogeneous_part(p, 1) == z


def test_jacobian_and_specialize(ring):
    x, y, z = ring.gens
    jac = poly.jacobian([x * y, z ** 2], ["x", "z"])
    assert jac == [[y, ring.zero], [ring.zero, 2 * z]]
    assert poly.specialize(x * y + z, {"y": 1, "z": 0}) == x
    assert poly.format_poly(x ** 2 * y) == "x^2*y"


def random_poly(rng, ring, terms=4, degree=2):
    return ring.from_dict(
        {tuple(rng.randint(0, degree) for _ in ring.gens): rng.randint(1, 100) for _ in range(terms)}
    )


def test_substitute_composes(ring):
    rng = random.Random(5)
    for _ in range(25):
        p = random_poly(rng, ring)
        first = {name: random_poly(rng, ring) for name in ("x", "y")}
        second = {name: random_poly(rng, ring) for name in ("y", "z")}
        composed = {name: poly.substitute(img, second) for name, img in first.items()}
        composed["z"] = second["z"]
        assert poly.substitute(poly.substitute(p, first), second) == poly.substitute(p, composed)
