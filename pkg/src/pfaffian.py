"""Maximal Pfaffians of a 5x5 skew-symmetric matrix of graded polynomials."""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from sympy.polys.rings import PolyElement

from errors import PolynomialError
from lattice import IntVector
from poly import Inhomogeneous, multidegree_of

PAIRS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(1, 6), 2))

# (rows kept, sign): the order and orientation of the five equations
PFAFFIANS: Tuple[Tuple[Tuple[int, int, int, int], int], ...] = (
    ((1, 2, 3, 4), 1),
    ((1, 2, 3, 5), -1),
    ((1, 2, 4, 5), 1),
    ((1, 3, 4, 5), 1),
    ((2, 3, 4, 5), 1),
)


@dataclass(frozen=True)
class PfaffianFamily:
    """Upper triangle m_ij, 1 <= i < j <= 5, of a skew matrix."""

    entries: Tuple[Tuple[Tuple[int, int], PolyElement], ...]

    @classmethod
    def from_upper(cls, upper: Sequence[PolyElement]) -> "PfaffianFamily":
        """Entries listed as m12, m13, m14, m15, m23, m24, m25, m34, m35, m45."""
        if len(upper) != len(PAIRS):
            raise PolynomialError(f"a 5x5 skew matrix has 10 upper entries, got {len(upper)}")
        ring = upper[0].ring
        if any(m.ring != ring for m in upper):
            raise PolynomialError("skew matrix entries live in different rings")
        return cls(tuple(zip(PAIRS, upper)))

    @property
    def ring(self):
        return self.entries[0][1].ring

    def m(self, i: int, j: int) -> PolyElement:
        table: Dict[Tuple[int, int], PolyElement] = dict(self.entries)
        if i < j:
            return table[(i, j)]
        if i > j:
            return -table[(j, i)]
        return self.ring.zero


def pfaffian4(f: PfaffianFamily, i: int, j: int, k: int, l: int) -> PolyElement:
    m = f.m
    return m(i, j) * m(k, l) - m(i, k) * m(j, l) + m(i, l) * m(j, k)


def pfaffians5(f: PfaffianFamily) -> List[PolyElement]:
    return [sign * pfaffian4(f, *rows) for rows, sign in PFAFFIANS]


def infer_pfaffian_weights(f: PfaffianFamily, c) -> Tuple[IntVector, ...]:
    """Weights b_1..b_5 with deg m_ij = b_i + b_j, checked on every nonzero entry."""
    degrees: Dict[Tuple[int, int], IntVector] = {}
    for (i, j), entry in f.entries:
        deg = multidegree_of(entry, c)
        if isinstance(deg, Inhomogeneous):
            raise PolynomialError(f"m{i}{j} is inhomogeneous: {deg.first} vs {deg.second}")
        if deg is not None:
            degrees[(i, j)] = deg

    def d(a: int, b: int):
        return degrees.get((min(a, b), max(a, b)))

    weights: List[IntVector] = []
    for i in range(1, 6):
        others = [k for k in range(1, 6) if k != i]
        for j, k in combinations(others, 2):
            dij, dik, djk = d(i, j), d(i, k), d(j, k)
            if dij is None or dik is None or djk is None:
                continue
            twice = [a + b - e for a, b, e in zip(dij, dik, djk)]
            if any(x % 2 for x in twice):
                raise PolynomialError(f"m{min(j, k)}{max(j, k)} has a degree of the wrong parity")
            weights.append(tuple(x // 2 for x in twice))
            break
        else:
            raise PolynomialError(f"too many zero entries to weigh row {i}")
    for (i, j), deg in sorted(degrees.items()):
        expected = tuple(a + b for a, b in zip(weights[i - 1], weights[j - 1]))
        if deg != expected:
            raise PolynomialError(f"m{i}{j} has degree {deg}, expected {expected}")
    return tuple(weights)


def pfaffian_degrees(weights: Sequence[IntVector]) -> Tuple[IntVector, ...]:
    """Degrees of the five equations, in PFAFFIANS order."""
    return tuple(
        tuple(sum(weights[r - 1][n] for r in rows) for n in range(len(weights[0]))) for rows, _ in PFAFFIANS
    )
