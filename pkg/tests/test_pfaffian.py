import random
from itertools import combinations

import pytest

import poly
from conftest import X_NAMES
from cox import CoxPresentation
from errors import PolynomialError
from game import poly_det
from pfaffian import PfaffianFamily, infer_pfaffian_weights, pfaffian4, pfaffian_degrees, pfaffians5
from poly import Field

X_UPPER = ["y", "A", "y1 + C", "-x1", "B", "D", "x", "z", "-y1", "x3"]


@pytest.fixture
def ring():
    return poly.make_ring(X_NAMES, Field.prime(101))


@pytest.fixture
def bindings(ring):
    specs = [
        poly.GenericFormSpec(name, (d,), ("x", "x1", "x2", "x3"), 1)
        for name, d in (("A", 3), ("B", 3), ("C", 2), ("D", 2))
    ]
    return poly.bind_forms(specs, ring, Field.prime(101))


@pytest.fixture
def family(ring, bindings):
    return PfaffianFamily.from_upper([poly.parse(e, ring, bindings) for e in X_UPPER])


def test_five_pfaffians(ring, bindings, family):
    expected = [
        "y*z - A*D + (y1 + C)*B",
        "y*y1 + x*A + x1*B",
        "y*x3 - x*(y1 + C) - x1*D",
        "x3*A + y1*(y1 + C) - x1*z",
        "x3*B + y1*D + x*z",
    ]
    assert pfaffians5(family) == [poly.parse(e, ring, bindings) for e in expected]


def test_skew_access(ring, family):
    assert family.m(2, 1) == -family.m(1, 2)
    assert family.m(3, 3) == ring.zero


def test_weights_and_degrees(family):
    c = CoxPresentation.from_rows(X_NAMES, [[1, 1, 1, 1, 2, 2, 3]])
    weights = infer_pfaffian_weights(family, c)
    assert weights == ((1,), (1,), (2,), (1,), (0,))
    assert pfaffian_degrees(weights) == ((5,), (4,), (3,), (4,), (4,))


def test_wrong_degree_is_rejected(ring, bindings):
    upper = [poly.parse(e, ring, bindings) for e in X_UPPER]
    upper[7] = poly.parse("z*x", ring)
    c = CoxPresentation.from_rows(X_NAMES, [[1, 1, 1, 1, 2, 2, 3]])
    with pytest.raises(PolynomialError):
        infer_pfaffian_weights(PfaffianFamily.from_upper(upper), c)


def test_needs_ten_entries(ring):
    with pytest.raises(PolynomialError):
        PfaffianFamily.from_upper([ring.gens[0]] * 9)


def test_zero_last_row_leaves_one_pfaffian():
    rng = random.Random(3)
    ring = poly.make_ring(["a", "b", "c"], Field.prime(101))
    for _ in range(5):
        upper = [
            ring.from_dict({(rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)): rng.randint(1, 100)})
            for _ in range(10)
        ]
        for k in (3, 6, 8, 9):
            upper[k] = ring.zero
        pf = pfaffians5(PfaffianFamily.from_upper(upper))
        assert pf[1:] == [ring.zero] * 4
        assert pf[0] == upper[0] * upper[7] - upper[1] * upper[5] + upper[2] * upper[4]


def random_skew(rng, ring):
    a, b = ring.gens
    return PfaffianFamily.from_upper(
        [rng.randint(0, 100) * a + rng.randint(0, 100) * b + rng.randint(0, 100) for _ in range(10)]
    )


def test_pfaffian_squares_to_determinant():
    rng = random.Random(11)
    ring = poly.make_ring(["a", "b"], Field.prime(101))
    for _ in range(100):
        f = random_skew(rng, ring)
        for rows in combinations(range(1, 6), 4):
            sub = [[f.m(i, j) for j in rows] for i in rows]
            assert pfaffian4(f, *rows) ** 2 == poly_det(sub)


def test_signed_pfaffians_span_the_kernel():
    rng = random.Random(12)
    ring = poly.make_ring(["a", "b"], Field.prime(101))
    for _ in range(20):
        f = random_skew(rng, ring)
        kernel = [(-1) ** i * pfaffian4(f, *[k for k in range(1, 6) if k != i + 1]) for i in range(5)]
        for i in range(1, 6):
            assert sum((f.m(i, j) * kernel[j - 1] for j in range(1, 6)), ring.zero) == ring.zero
        assert poly_det([[f.m(i, j) for j in range(1, 6)] for i in range(1, 6)]) == ring.zero
