"""Groebner-basis counting oracle over F_p.

Point counts are quotient dimensions of affine charts, so they count points
with multiplicity; generic data gives reduced schemes and the seed-stability
wrapper is what catches the non-generic draws.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.galoistools import gf_factor_sqf, gf_sqf_part, gf_strip
from sympy.polys.groebnertools import groebner as _buchberger
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

import poly
from cox import CoxPresentation
from errors import GenericityError, OracleError, PolynomialError, PositiveDimensional
from lattice import IntVector
from log import get_logger

logger = get_logger(__name__)

ORDERS = {"grevlex": grevlex, "degrevlex": grevlex, "lex": lex}


@dataclass(frozen=True)
class PolyIdeal:
    generators: Tuple[PolyElement, ...]
    ambient: CoxPresentation

    def __post_init__(self):
        if self.ambient.rank > 1:
            raise OracleError(f"point counts need an ambient of rank <= 1, got {self.ambient.rank}")
        names = poly.names_of(self.ring)
        if names != self.ambient.names:
            raise OracleError(f"ring variables {names} do not match ambient {self.ambient.names}")

    @property
    def ring(self) -> PolyRing:
        return self.generators[0].ring

    def weight(self, name: str) -> int:
        return self.ambient.degree(name)[0]


def groebner(polys: Sequence[PolyElement], order: str = "grevlex") -> List[PolyElement]:
    """Reduced Groebner basis by Buchberger; variable precedence is the ring's variable order."""
    try:
        monomial_order = ORDERS[order]
    except KeyError:
        raise OracleError(f"unknown monomial order '{order}'")
    nonzero = [p for p in polys if p]
    if not nonzero:
        return []
    ring = nonzero[0].ring.clone(order=monomial_order)
    return _buchberger([p.set_ring(ring) for p in nonzero], ring, method="buchberger")


def is_unit_ideal(basis: Sequence[PolyElement]) -> bool:
    return len(basis) == 1 and basis[0].is_ground and bool(basis[0])


def quotient_dimension(basis: Sequence[PolyElement], nvars: Optional[int] = None) -> Optional[int]:
    """Number of standard monomials, or None when the quotient is infinite."""
    if basis:
        nvars = basis[0].ring.ngens
    elif nvars is None:
        raise OracleError("the number of variables is needed for the zero ideal")
    if is_unit_ideal(basis):
        return 0
    leads = [g.LM for g in basis]
    for i in range(nvars):
        pure = any(m[i] > 0 and all(e == 0 for k, e in enumerate(m) if k != i) for m in leads)
        if not pure:
            return None

    def standard(m: Tuple[int, ...]) -> bool:
        return not any(all(a >= b for a, b in zip(m, lead)) for lead in leads)

    seen = set()
    frontier = [tuple([0] * nvars)]
    while frontier:
        m = frontier.pop()
        if m in seen or not standard(m):
            continue
        seen.add(m)
        for i in range(nvars):
            frontier.append(m[:i] + (m[i] + 1,) + m[i + 1:])
    return len(seen)


def _fix(ideal: PolyIdeal, values: Mapping[str, int]) -> List[PolyElement]:
    ring = ideal.ring
    return list(ideal.generators) + [poly.gen(ring, n) - v for n, v in values.items()]


def _chart_count(ideal: PolyIdeal, name: str, covered: Sequence[str]) -> int:
    """Length of the chart name = 1 at the points where every covered variable vanishes.

    In a local ring of length L every element of the maximal ideal has L-th
    power zero, so adding x^L for each covered x keeps exactly the local rings
    at points with all covered variables zero and kills the others.
    """
    ring = ideal.ring
    chart = _fix(ideal, {name: 1})
    length = quotient_dimension(groebner(chart), ring.ngens)
    if length is None:
        raise PositiveDimensional(f"positive-dimensional locus in the chart {name} = 1")
    if not covered or length == 0:
        return length
    powers = [poly.gen(ring, n) ** length for n in covered]
    return quotient_dimension(groebner(chart + powers), ring.ngens)


def count_points(ideal: PolyIdeal) -> int:
    """Points of the scheme in the weighted projective ambient (or affine, rank 0), with multiplicity."""
    names = ideal.ambient.names
    if ideal.ambient.rank == 0:
        dim = quotient_dimension(groebner(ideal.generators), len(names))
        if dim is None:
            raise PositiveDimensional("affine scheme is not zero-dimensional")
        return dim
    unit = [n for n in names if ideal.weight(n) == 1]
    total = 0
    for k, name in enumerate(unit):
        dim = _chart_count(ideal, name, unit[:k])
        logger.debug("chart %s=1 off %s: %d points", name, unit[:k], dim)
        total += dim
    rest = [n for n in names if n not in unit]
    if not rest:
        return total
    if len(rest) > 1:
        raise OracleError(f"locus {{{', '.join(unit)} = 0}} needs quotient charts in {rest}")
    point = {n: 0 for n in names}
    point[rest[0]] = 1
    if all(poly.specialize(g, point) == 0 for g in ideal.generators):
        logger.debug("coordinate point p_%s lies on the scheme", rest[0])
        total += 1
    return total


def stable_count(
    build: Callable[[int, int], PolyIdeal],
    seeds: Sequence[int],
    primes: Sequence[int],
    resamples: int = 3,
    label: str = "ideal",
) -> int:
    """count_points over every (seed, prime); disagreement triggers fresh seeds, then an error."""
    counts: Dict[Tuple[int, int], int] = {}
    for p in primes:
        for s in seeds:
            counts[(s, p)] = count_points(build(s, p))
            logger.debug("%s: seed %d, p %d -> %d", label, s, p, counts[(s, p)])
    tally = Counter(counts.values())
    if len(tally) == 1:
        return next(iter(tally))
    mode, _ = tally.most_common(1)[0]
    outliers = sum(1 for v in counts.values() if v != mode)
    logger.warning("%s: counts %s disagree, resampling", label, dict(tally))
    fresh = [max(seeds) + 1 + k for k in range(resamples)]
    extra = [count_points(build(s, primes[0])) for s in fresh]
    if outliers <= 1 and all(v == mode for v in extra):
        return mode
    raise GenericityError(f"{label}: point counts {sorted(counts.values()) + extra} are not stable across seeds")


def _homogeneous_parts(f: PolyElement, grading: Mapping[str, IntVector], rank: int) -> Dict[IntVector, PolyElement]:
    parts: Dict[IntVector, Dict] = {}
    for m, c in f.terms():
        parts.setdefault(poly.term_degree(f.ring, m, grading, rank), {})[m] = c
    return {d: f.ring.from_dict(t) for d, t in parts.items()}


def _macaulay_contains(f: PolyElement, gens: Sequence[PolyElement], grading, rank: int) -> bool:
    ring = f.ring
    gen_degrees = []
    for g in gens:
        parts = _homogeneous_parts(g, grading, rank)
        if len(parts) != 1:
            raise OracleError("inhomogeneous generator")
        gen_degrees.append(next(iter(parts)))
    for d, part in _homogeneous_parts(f, grading, rank).items():
        columns = []
        for g, dg in zip(gens, gen_degrees):
            shift = tuple(a - b for a, b in zip(d, dg))
            for m in poly.monomials_of_multidegree(ring, grading, shift):
                columns.append(g.mul_monom(m))
        if not columns:
            return False
        rows: Dict[Tuple[int, ...], int] = {}
        for col in columns + [part]:
            for m in col.monoms():
                rows.setdefault(m, len(rows))
        entries: Dict[int, Dict[int, object]] = {}
        for j, col in enumerate(columns + [part]):
            for m, c in col.terms():
                entries.setdefault(rows[m], {})[j] = c
        shape = (len(rows), len(columns) + 1)
        full = DomainMatrix(entries, shape, ring.domain)
        without = full.extract(list(range(len(rows))), list(range(len(columns))))
        if full.rank() != without.rank():
            return False
    return True


def ideal_contains(
    f: PolyElement,
    gens: Sequence[PolyElement],
    grading: Optional[Mapping[str, IntVector]] = None,
    rank: int = 0,
) -> bool:
    """Membership of f in (gens): graded linear algebra when a grading is given, else a normal form."""
    if not f:
        return True
    gens = [g for g in gens if g]
    if not gens:
        return False
    if grading is not None and rank > 0:
        try:
            return _macaulay_contains(f, gens, grading, rank)
        except (OracleError, PolynomialError) as exc:
            logger.debug("graded membership unavailable (%s); using a normal form", exc)
    basis = groebner(gens)
    return not f.set_ring(basis[0].ring).rem(basis)


def univariate_roots(g: PolyElement, name: str) -> List[int]:
    """F_p roots of a polynomial in the single variable `name`."""
    ring = g.ring
    p = ring.domain.characteristic()
    i = poly.names_of(ring).index(name)
    degree = max((m[i] for m in g.monoms()), default=0)
    dense = [0] * (degree + 1)
    for m, c in g.terms():
        dense[degree - m[i]] = poly.to_int(ring, c)
    dense = gf_strip(dense)
    if len(dense) <= 1:
        if not dense or dense == [0]:
            raise PositiveDimensional(f"zero polynomial in {name}")
        return []
    _, factors = gf_factor_sqf(gf_sqf_part(dense, p, ZZ), p, ZZ)
    return sorted(int(-f[1]) % p for f in factors if len(f) == 2)


def solve_mod_p(polys: Sequence[PolyElement], fixed: Optional[Mapping[str, int]] = None) -> List[Dict[str, int]]:
    """All F_p points of a zero-dimensional system, free variables solved last to first."""
    ring = polys[0].ring
    fld = poly.field_of(ring)
    fixed = dict(fixed or {})
    free = [n for n in poly.names_of(ring) if n not in fixed]
    system = [poly.specialize(p, fixed) for p in polys]
    if not free:
        return [fixed] if all(not p for p in system) else []
    var = free[-1]
    order = [n for n in poly.names_of(ring) if n != var] + [var]
    lex_ring = poly.make_ring(order, fld)
    basis = groebner([p.set_ring(lex_ring) for p in system] + [poly.gen(lex_ring, n) - v for n, v in fixed.items()], "lex")
    if is_unit_ideal(basis):
        return []
    j = order.index(var)
    univariate = [g for g in basis if all(m[i] == 0 for m in g.monoms() for i in range(len(m)) if i != j)]
    if not univariate:
        raise PositiveDimensional(f"no univariate polynomial in {var}")
    solutions = []
    for root in univariate_roots(univariate[-1], var):
        solutions.extend(solve_mod_p(polys, {**fixed, var: root}))
    return solutions
