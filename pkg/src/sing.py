"""Singularities of embedded varieties at coordinate points, and quasi-smoothness."""

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp
from sympy.polys.rings import PolyElement

import lattice
import oracle
import poly
from cox import CoxPresentation
from errors import OracleError, SingularityError
from log import get_logger

logger = get_logger(__name__)

Point = Tuple[str, ...]


@dataclass(frozen=True)
class QuotientSingularity:
    index: int
    weights: Tuple[int, ...]

    @classmethod
    def canonical(cls, r: int, residues: Sequence[int]) -> "QuotientSingularity":
        """Lexicographically least sorted residue tuple over the units of Z/r."""
        best = None
        for k in range(1, r):
            if gcd(k, r) != 1:
                continue
            cand = tuple(sorted(k * w % r for w in residues))
            if best is None or cand < best:
                best = cand
        return cls(r, best if best is not None else tuple(sorted(w % r for w in residues)))

    def __str__(self) -> str:
        return f"1/{self.index}({','.join(map(str, self.weights))})"


@dataclass(frozen=True)
class SingularityReport:
    location: Point
    kind: str
    quotient: Optional[QuotientSingularity] = None
    tangents: Tuple[str, ...] = ()
    reason: str = ""
    germ: str = ""

    @property
    def label(self) -> str:
        if self.kind == "quotient":
            return str(self.quotient)
        if self.kind == "unclassified":
            return f"unclassified ({self.reason})"
        return self.kind

    @property
    def point(self) -> str:
        return point_label(self.location)


def point_label(point: Sequence[str]) -> str:
    return f"p_{point[0]}" if len(point) == 1 else "p_{" + "".join(point) + "}"


def _as_point(point: Union[str, Sequence[str]]) -> Point:
    return (point,) if isinstance(point, str) else tuple(point)


def point_group(c: CoxPresentation, point: Point) -> Tuple[int, Dict[str, int]]:
    """Order r of the cyclic stabilizer at p_point and the residue of every other variable."""
    if len(point) != c.rank:
        raise SingularityError(f"{point_label(point)} needs {c.rank} nonvanishing coordinates")
    columns = [list(c.degree(n)) for n in point]
    d = lattice.transpose(columns)
    if lattice.det(d) == 0:
        raise SingularityError(f"{point_label(point)} is not a torus-fixed point")
    smf, s, _ = smith_normal_decomp(DomainMatrix([[ZZ(x) for x in row] for row in d], (c.rank, c.rank), ZZ))
    invs = [abs(int(smf[i, i].element)) for i in range(c.rank)]
    big = [i for i, x in enumerate(invs) if x > 1]
    if len(big) > 1:
        raise SingularityError(f"stabilizer at {point_label(point)} is not cyclic: {invs}")
    if not big:
        return 1, {n: 0 for n in c.names if n not in point}
    i = big[0]
    r = invs[i]
    s_rows = [[int(s[a, b].element) for b in range(c.rank)] for a in range(c.rank)]
    residues = {n: lattice.apply(s_rows, c.degree(n))[i] % r for n in c.names if n not in point}
    return r, residues


def ambient_chart_type(c: CoxPresentation, point: Union[str, Sequence[str]]) -> Tuple[int, Tuple[int, ...]]:
    """The residues of all other variables at p_point, in ambient order (e.g. 1/2(1,1,1,1,0,1))."""
    pt = _as_point(point)
    r, residues = point_group(c, pt)
    return r, tuple(residues[n] for n in c.names if n not in pt)


def on_irrelevant_locus(c: CoxPresentation, nonzero: Sequence[str]) -> bool:
    alive = set(nonzero)
    return any(not (z & alive) for z in c.irrelevant)


def localize(v, point: Point) -> List[PolyElement]:
    values = {n: 1 for n in point}
    return [poly.specialize(e, values) for e in v.equations]


def lies_on(v, point: Point) -> bool:
    values = {n: (1 if n in point else 0) for n in v.ambient.names}
    return all(not poly.specialize(e, values) for e in v.equations)


def quadratic_rank(germ: PolyElement, names: Optional[Sequence[str]] = None) -> int:
    """Rank of the symmetric matrix 2Q of the degree-2 part of germ."""
    ring = germ.ring
    names = list(names) if names is not None else list(poly.names_of(ring))
    q = poly.homogeneous_part(germ, 2)
    index = {n: poly.names_of(ring).index(n) for n in names}
    rows = [[ring.domain.zero for _ in names] for _ in names]
    for m, coeff in q.terms():
        support = [k for k, n in enumerate(names) if m[index[n]]]
        if len(support) == 1:
            k = support[0]
            rows[k][k] += coeff * 2
        elif len(support) == 2:
            a, b = support
            rows[a][b] += coeff
            rows[b][a] += coeff
    if not names:
        return 0
    return DomainMatrix(rows, (len(names), len(names)), ring.domain).rank()


def _linear_system(local: Sequence[PolyElement], names: Sequence[str]):
    ring = local[0].ring
    all_names = poly.names_of(ring)
    rows = []
    for e in local:
        lin = poly.homogeneous_part(e, 1)
        row = [ring.domain.zero] * len(names)
        for m, coeff in lin.terms():
            row[names.index(all_names[m.index(1)])] = coeff
        rows.append(row)
    m = DomainMatrix(rows, (len(local), len(names)), ring.domain)
    aug = m.hstack(DomainMatrix.eye(len(local), ring.domain))
    reduced, pivots = aug.rref()
    return reduced, [p for p in pivots if p < len(names)]


def coordinate_point_type(v, point: Union[str, Sequence[str]]) -> SingularityReport:
    """Classify p_point on v: smooth, a cyclic quotient, a cA1 germ or unclassified."""
    pt = _as_point(point)
    c = v.ambient
    if on_irrelevant_locus(c, pt):
        raise SingularityError(f"{point_label(pt)} lies in the irrelevant locus")
    if not lies_on(v, pt):
        raise SingularityError(f"{point_label(pt)} is not on the variety")
    r, residues = point_group(c, pt)
    ring = v.ring
    local_names = [n for n in c.names if n not in pt]
    local = [e for e in localize(v, pt) if e]
    codim = len(c.names) - c.rank - v.dim
    if not local:
        tangents: List[str] = []
        pivot_rows: List[int] = []
        reduced = None
    else:
        reduced, pivots = _linear_system(local, local_names)
        tangents = [local_names[p] for p in pivots]
        pivot_rows = list(range(len(pivots)))
    rest = [n for n in local_names if n not in tangents]
    logger.debug("%s: r=%d tangents %s codim %d", point_label(pt), r, tangents, codim)
    if len(tangents) == codim:
        if r == 1:
            return SingularityReport(pt, "smooth", tangents=tuple(tangents))
        q = QuotientSingularity.canonical(r, [residues[n] for n in rest])
        return SingularityReport(pt, "quotient", q, tuple(tangents))
    if len(tangents) != codim - 1 or r != 1:
        return SingularityReport(
            pt, "unclassified", tangents=tuple(tangents), reason=f"{len(tangents)} tangents, codim {codim}, index {r}"
        )
    transformed = []
    width = len(local_names)
    for k in range(len(local)):
        e = ring.zero
        for j, g in enumerate(local):
            coeff = reduced[k, width + j].element
            if coeff:
                e += g * coeff
        transformed.append(e)
    solved = {t: ring.zero for t in tangents}
    for _ in range(2):
        solved = {
            t: poly.truncate(poly.substitute(poly.gen(ring, t) - transformed[i], solved), 2)
            for i, t in zip(pivot_rows, tangents)
        }
    residual = []
    for e in transformed[len(tangents):]:
        quad = poly.homogeneous_part(poly.truncate(poly.substitute(e, solved), 2), 2)
        if quad:
            residual.append(quad)
    if not residual:
        return SingularityReport(pt, "unclassified", tangents=tuple(tangents), reason="no quadratic residual")
    base = residual[0]
    lead_m, lead_c = base.terms()[0]
    for other in residual[1:]:
        scale = dict(other.terms()).get(lead_m, ring.domain.zero)
        if other * lead_c != base * scale:
            return SingularityReport(pt, "unclassified", tangents=tuple(tangents), reason="several residual germs")
    rank_q = quadratic_rank(base, rest)
    germ = poly.format_poly(base)
    if rank_q == 4 and len(rest) == 4:
        return SingularityReport(pt, "cA1", tangents=tuple(tangents), germ=germ)
    return SingularityReport(
        pt, "unclassified", tangents=tuple(tangents), reason=f"quadratic rank {rank_q}", germ=germ
    )


@dataclass(frozen=True)
class QuasiSmoothVerdict:
    singular: bool
    prime: int
    seed: int
    trials: int
    points_checked: int
    witness: Tuple[Tuple[str, int], ...] = field(default=())

    @property
    def verdict(self) -> str:
        return "singular point found" if self.singular else "no singular point found"


def jacobian_rank_at(jac: Sequence[Sequence[PolyElement]], values: Dict[str, int]) -> int:
    if not jac:
        return 0
    ring = jac[0][0].ring
    rows = [[poly.specialize(entry, values).coeff(1) for entry in row] for row in jac]
    return DomainMatrix(
        [[ring.domain.convert(x) for x in row] for row in rows], (len(rows), len(rows[0])), ring.domain
    ).rank()


def _independent(c: CoxPresentation, names: Sequence[str]) -> Optional[Tuple[str, ...]]:
    for subset in combinations(names, c.rank):
        if lattice.rank(lattice.transpose([list(c.degree(n)) for n in subset])) == c.rank:
            return subset
    return None


def _stratum_points(v, support: Sequence[str], rng: random.Random, p: int) -> List[Dict[str, int]]:
    c = v.ambient
    frame = _independent(c, support)
    if frame is None:
        return []
    (free,) = [n for n in support if n not in frame]
    values = {n: 0 for n in c.names if n not in support}
    values.update({n: 1 for n in frame})
    restricted = [poly.specialize(e, values) for e in v.equations]
    restricted = [e for e in restricted if e]
    if any(e.is_ground for e in restricted):
        return []
    if not restricted:
        roots = [rng.randrange(1, p) for _ in range(3)]
    else:
        common = set(oracle.univariate_roots(restricted[0], free))
        for e in restricted[1:]:
            common &= set(oracle.univariate_roots(e, free))
        roots = sorted(t for t in common if t)
    return [dict(values, **{free: t}) for t in roots]


def quasi_smooth_check(v, trials: int = 200, seed: int = 42, prime: Optional[int] = None) -> QuasiSmoothVerdict:
    """Look for points of the affine cone, off the irrelevant locus, where the Jacobian drops rank.

    Coordinate points and one-dimensional torus strata are checked
    exhaustively; random trials fix dim + rank low-weight coordinates and
    solve for the rest.
    """
    c = v.ambient
    p = v.ring.domain.characteristic()
    if prime is not None and prime != p:
        raise SingularityError(f"equations are over GF({p}), not GF({prime})")
    if p < 101:
        raise SingularityError(f"prime {p} is too small for a quasi-smoothness search")
    codim = len(c.names) - c.rank - v.dim
    jac = poly.jacobian(v.equations)
    rng = random.Random(seed)
    checked = 0

    def verdict(point: Optional[Dict[str, int]]) -> QuasiSmoothVerdict:
        witness = tuple((n, point[n]) for n in c.names) if point else ()
        return QuasiSmoothVerdict(point is not None, p, seed, trials, checked, witness)

    for size in (c.rank, c.rank + 1):
        for support in combinations(c.names, size):
            if on_irrelevant_locus(c, support):
                continue
            if size == c.rank:
                if _independent(c, support) is None or not lies_on(v, support):
                    continue
                points = [{n: (1 if n in support else 0) for n in c.names}]
            else:
                points = _stratum_points(v, support, rng, p)
            for values in points:
                checked += 1
                if jacobian_rank_at(jac, values) < codim:
                    logger.info("singular point on the stratum %s", support)
                    return verdict(values)
    lam = poly.positive_functional(c.degrees)
    by_weight = sorted(c.names, key=lambda n: (sum(a * b for a, b in zip(lam, c.degree(n))), c.index(n)))
    chosen = by_weight[: v.dim + c.rank]
    frame = _independent(c, chosen)
    if frame is None:
        raise SingularityError("no torus frame among the low-weight coordinates")
    for _ in range(trials):
        values = {n: (1 if n in frame else rng.randrange(1, p)) for n in chosen}
        try:
            solutions = oracle.solve_mod_p(v.equations, values)
        except OracleError:
            continue
        for sol in solutions:
            if on_irrelevant_locus(c, [n for n, x in sol.items() if x]):
                continue
            checked += 1
            if jacobian_rank_at(jac, sol) < codim:
                return verdict(sol)
    logger.debug("quasi-smoothness: %d points checked over GF(%d)", checked, p)
    return verdict(None)
