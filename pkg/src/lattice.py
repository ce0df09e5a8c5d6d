"""Exact integer linear algebra for weight matrices.

Matrices are lists of rows of Python ints. Smith invariants, determinants and
ranks go through sympy's DomainMatrix over ZZ/QQ; the Hermite form is computed
here so that the reduction convention is fixed:

  * row style: u . m = h, u unimodular;
  * pivots strictly positive, pivot columns strictly increasing;
  * entries above a pivot p reduced into 0 <= e < p.
"""

from itertools import permutations
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _sympy_invariant_factors

from errors import LatticeError

IntMatrix = List[List[int]]
IntVector = Tuple[int, ...]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def apply(u: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    """u . v for a column vector v."""
    return tuple(sum(x * y for x, y in zip(row, v)) for row in u)


def cross(a: Sequence[int], b: Sequence[int]) -> int:
    """2x2 determinant det(a, b)."""
    return a[0] * b[1] - a[1] * b[0]


def exgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _combine(m: IntMatrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # rows (i, j) <- (a*Ri + b*Rj, c*Ri + d*Rj)
    ri, rj = m[i], m[j]
    m[i] = [a * x + b * y for x, y in zip(ri, rj)]
    m[j] = [c * x + d * y for x, y in zip(ri, rj)]


def hnf(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (h, u) with u unimodular and u . m = h."""
    if not m:
        raise LatticeError("hnf of an empty matrix")
    rows, cols = len(m), len(m[0])
    h = [list(r) for r in m]
    u = identity(rows)
    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        for r in range(pivot_row + 1, rows):
            a, b = h[pivot_row][col], h[r][col]
            if b == 0:
                continue
            g, s, t = exgcd(a, b)
            _combine(h, pivot_row, r, s, t, -b // g, a // g)
            _combine(u, pivot_row, r, s, t, -b // g, a // g)
        p = h[pivot_row][col]
        if p == 0:
            continue
        if p < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
            p = -p
        for r in range(pivot_row):
            q = h[r][col] // p
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[pivot_row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[pivot_row])]
        pivot_row += 1
    return h, u


def _domain_matrix(m: Sequence[Sequence[int]], domain=ZZ) -> DomainMatrix:
    return DomainMatrix([[domain(x) for x in row] for row in m], (len(m), len(m[0])), domain)


def invariant_factors(m: Sequence[Sequence[int]]) -> List[int]:
    """Smith invariants d1 | d2 | ..., padded with zeros up to min(rows, cols)."""
    if not m or not m[0]:
        return []
    invs = [abs(int(d)) for d in _sympy_invariant_factors(_domain_matrix(m))]
    size = min(len(m), len(m[0]))
    invs += [0] * (size - len(invs))
    nonzero = sorted(d for d in invs if d != 0)
    return nonzero + [0] * (size - len(nonzero))


def det(m: Sequence[Sequence[int]]) -> int:
    if not m:
        return 1
    if len(m) != len(m[0]):
        raise LatticeError("determinant of a non-square matrix")
    return int(_domain_matrix(m).det())


def rank(m: Sequence[Sequence[int]]) -> int:
    if not m or not m[0]:
        return 0
    return _domain_matrix(m).to_field().rank()


def primitive(v: Sequence[int]) -> IntVector:
    """v divided by the gcd of its entries; signs are kept."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise LatticeError("primitive of the zero vector")
    return tuple(x // g for x in v)


def unimodular_completion(v: Sequence[int]) -> IntMatrix:
    """A unimodular u with u . v = (0, ..., 0, 1); v must be primitive."""
    h, u = hnf([[x] for x in v])
    if h[0][0] != 1:
        raise LatticeError(f"{tuple(v)} is not primitive")
    # hnf puts the gcd on the first row; rotate it to the last
    return u[1:] + u[:1]


def column_equivalence(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Optional[IntMatrix]:
    """A unimodular u mapping the column multiset of a onto that of b, if any.

    Both arguments are lists of columns (degree vectors) of the same length.
    """
    if len(a) != len(b):
        return None
    if not a or not a[0]:
        return [] if all(len(col) == 0 for col in b) else None
    r = len(a[0])
    chosen: List[int] = []
    for i in range(len(a)):
        if rank(transpose([a[j] for j in chosen + [i]])) > len(chosen):
            chosen.append(i)
        if len(chosen) == r:
            break
    if len(chosen) < r:
        raise LatticeError("columns do not span the grading lattice")
    sel = _domain_matrix(transpose([a[j] for j in chosen]), QQ)
    sel_inv = sel.inv()
    target = sorted(tuple(col) for col in b)
    for images in permutations(range(len(b)), r):
        img = _domain_matrix(transpose([b[j] for j in images]), QQ)
        cand = (img * sel_inv).to_Matrix()
        if any(entry.q != 1 for entry in cand):
            continue
        u = [[int(cand[i, j]) for j in range(r)] for i in range(r)]
        if abs(det(u)) != 1:
            continue
        if sorted(apply(u, col) for col in a) == target:
            return u
    return None
