"""The 2-ray game: weighted blow-ups, wall crossings, contractions and fibrations."""

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement, PolyRing

import cox
import lattice
import oracle
import poly
import sing
from cox import CoxPresentation
from errors import GameError, OracleError, PositiveDimensional, PresentationError, SingularityError
from lattice import IntVector, cross
from log import get_logger
from poly import GenericFormSpec, Inhomogeneous

logger = get_logger(__name__)

FLOP_TYPE = (1, 1, -1, -1)


@dataclass(frozen=True)
class Subvariety:
    ambient: CoxPresentation
    ring: PolyRing
    equations: Tuple[PolyElement, ...]
    dim: int = 3
    bindings: Tuple[GenericFormSpec, ...] = ()
    provenance: str = ""

    def __post_init__(self):
        if poly.names_of(self.ring) != self.ambient.names:
            raise GameError(f"ring {poly.names_of(self.ring)} does not match ambient {self.ambient.names}")

    def degrees(self) -> List[IntVector]:
        """Multidegree of every equation; raises on an inhomogeneous one."""
        out = []
        for e in self.equations:
            d = poly.multidegree_of(e, self.ambient)
            if isinstance(d, Inhomogeneous):
                raise GameError(f"inhomogeneous equation ({d.first} vs {d.second}) in {self.provenance}")
            if d is not None:
                out.append(d)
        return out

    def grading(self) -> Dict[str, IntVector]:
        return dict(zip(self.ambient.names, self.ambient.degrees))

    def replace(self, **changes) -> "Subvariety":
        fields = dict(
            ambient=self.ambient,
            ring=self.ring,
            equations=self.equations,
            dim=self.dim,
            bindings=self.bindings,
            provenance=self.provenance,
        )
        fields.update(changes)
        return Subvariety(**fields)


def kawamata_weights(r: int, a: int) -> Tuple[int, int, int]:
    """Local weights (a, r - a, 1) of the Kawamata blow-up of a 1/r(a, r - a, 1) point."""
    if not 0 < a < r or gcd(a, r) != 1:
        raise GameError(f"({r}, {a}) does not describe a terminal quotient 1/{r}({a},{r - a},1)")
    return a, r - a, 1


def matches_kawamata(q: sing.QuotientSingularity, r: int, a: int) -> bool:
    return q == sing.QuotientSingularity.canonical(r, kawamata_weights(r, a))


@dataclass(frozen=True)
class BlowupSpec:
    centre: Tuple[str, ...]
    exceptional: str
    kawamata: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class BlowupRecord:
    spec: BlowupSpec
    index: int
    weights: Tuple[Tuple[str, int], ...]
    singularity: sing.SingularityReport
    stacky_row: Tuple[int, ...]

    @property
    def label(self) -> str:
        return f"Bl {self.singularity.label}"


def _defining_equations(local: Sequence[PolyElement], tangents: Sequence[str]) -> Dict[str, int]:
    """For each tangent variable, the first unused equation with it in its linear part."""
    names = poly.names_of(local[0].ring)
    used: Dict[str, int] = {}
    for t in tangents:
        j = names.index(t)
        for i, e in enumerate(local):
            if i in used.values():
                continue
            lin = poly.homogeneous_part(e, 1)
            if any(m[j] == 1 for m in lin.monoms()):
                used[t] = i
                break
        else:
            raise GameError(f"no equation is tangent to '{t}'")
    return used


def _local_weights(r: int, residues: Dict[str, int], rest: Sequence[str]) -> Dict[str, int]:
    for k in range(1, max(r, 2)):
        if gcd(k, r) != 1:
            continue
        scaled = {n: k * residues[n] % r for n in rest}
        values = sorted(scaled.values())
        if r == 1 or any(sorted([a, r - a, 1]) == values for a in range(1, r)):
            return {n: (w if w else r) for n, w in scaled.items()}
    raise GameError(f"residues {[residues[n] for n in rest]} are not of the form 1/{r}(a, {r}-a, 1)")


def _pivot_monomial(eq: PolyElement, centre: Sequence[str], t: str) -> Tuple[int, ...]:
    names = poly.names_of(eq.ring)
    for m in eq.monoms():
        if m[names.index(t)] == 1 and all(m[k] == 0 for k, n in enumerate(names) if n != t and n not in centre):
            return m
    raise GameError(f"'{t}' has no pivot monomial")


def infer_tangent_weights(
    v: Subvariety, centre: Sequence[str], tangents: Sequence[str], fixed: Dict[str, int], max_rounds: int = 64
) -> Dict[str, int]:
    """Greatest fixpoint of w_t = least weighted order of the non-pivot terms of t's equation."""
    defining = _defining_equations(sing.localize(v, tuple(centre)), tangents)
    weights: Dict[str, Optional[int]] = dict(fixed)
    weights.update({n: 0 for n in centre})
    weights.update({t: None for t in tangents})
    names = poly.names_of(v.ring)

    def order(m) -> Optional[int]:
        total = 0
        for n, e in zip(names, m):
            if e:
                if weights[n] is None:
                    return None
                total += e * weights[n]
        return total

    for round_ in range(max_rounds):
        changed = False
        for t in tangents:
            eq = v.equations[defining[t]]
            pivot = _pivot_monomial(eq, centre, t)
            orders = [o for o in (order(m) for m in eq.monoms() if m != pivot) if o is not None]
            if not orders:
                continue
            new = min(orders)
            if weights[t] is None or new < weights[t]:
                weights[t] = new
                changed = True
        logger.debug("weight inference round %d: %s", round_, {t: weights[t] for t in tangents})
        if not changed:
            break
    else:
        raise GameError(f"weight inference did not settle within {max_rounds} rounds")
    missing = [t for t in tangents if weights[t] is None]
    if missing:
        raise GameError(f"no finite weight for {missing}")
    return {t: weights[t] for t in tangents}


def weighted_blow_up(v: Subvariety, spec: BlowupSpec, max_rounds: int = 64) -> Tuple[Subvariety, BlowupRecord]:
    """Weighted blow-up of the coordinate point p_centre; returns the model and its weights."""
    c = v.ambient
    centre = tuple(spec.centre)
    e = spec.exceptional
    if e in c.names:
        raise GameError(f"exceptional variable '{e}' is already in use")
    try:
        report = sing.coordinate_point_type(v, centre)
    except SingularityError as exc:
        raise GameError(f"cannot blow up {sing.point_label(centre)}: {exc}")
    if spec.kawamata is not None:
        r_k, a_k = spec.kawamata
        if report.kind != "quotient" or not matches_kawamata(report.quotient, r_k, a_k):
            raise GameError(f"{report.point} is {report.label}, not 1/{r_k}{kawamata_weights(r_k, a_k)}")
    r, residues = sing.point_group(c, centre)
    tangents = list(report.tangents)
    others = [n for n in c.names if n not in centre and n not in tangents]
    omega = _local_weights(r, residues, others)
    omega.update(infer_tangent_weights(v, centre, tangents, omega, max_rounds))
    if any(w <= 0 for w in omega.values()):
        raise GameError(f"non-positive blow-up weights {omega}")
    logger.info("blow-up of %s: index %d, weights %s", report.point, r, omega)

    order = [e] + list(centre) + others + tangents
    rows = [[0] + [c.degree(n)[i] for n in order[1:]] for i in range(c.rank)]
    stacky = [-r] + [0] * len(centre) + [omega[n] for n in others + tangents]
    rows.append(stacky)

    stable = cox.minimal_transversals(c.irrelevant, c.names)
    centre_set = frozenset(centre)
    family = [s | {e} for s in stable if s != centre_set]
    family += [centre_set | {j} for j in c.names if j not in centre_set]
    irrelevant = cox.minimal_transversals(family, order)
    blown = cox.well_form(CoxPresentation.from_rows(order, rows, irrelevant), max_rounds)

    ring = poly.make_ring(order, poly.field_of(v.ring))
    names = poly.names_of(v.ring)
    weight = [0 if n in centre_set else omega[n] for n in names]
    equations = []
    for eq in v.equations:
        if not eq:
            continue
        orders = {m: sum(a * b for a, b in zip(m, weight)) for m in eq.monoms()}
        least = min(orders.values())
        terms = {}
        for m, coeff in eq.terms():
            shift, rem = divmod(orders[m] - least, r)
            if rem:
                raise GameError(f"exceptional power of a term of order {orders[m]} is not integral (index {r})")
            exps = dict(zip(names, m))
            terms[tuple([shift] + [exps[n] for n in order[1:]])] = coeff
        equations.append(ring.from_dict(terms))
    model = Subvariety(blown, ring, tuple(equations), v.dim, v.bindings, f"Bl_{report.point} {v.provenance}".strip())
    model.degrees()
    record = BlowupRecord(spec, r, tuple((n, omega[n]) for n in others + tangents), report, tuple(stacky))
    return model, record


def blow_up(v: Subvariety, spec: BlowupSpec) -> Subvariety:
    return weighted_blow_up(v, spec)[0]


def normalize_type(values: Sequence[int]) -> Tuple[int, ...]:
    """Signed type with the larger side positive: positives then negatives, each descending."""
    pos = sorted((x for x in values if x > 0), reverse=True)
    neg = sorted((x for x in values if x < 0), reverse=True)
    if len(neg) > len(pos) or (len(neg) == len(pos) and -sum(neg) > sum(pos)):
        pos, neg = sorted((-x for x in neg), reverse=True), sorted((-x for x in pos), reverse=True)
    return tuple(pos + neg)


@dataclass(frozen=True)
class WallCrossing:
    source: str
    target: str
    wall: IntVector
    wall_variables: Tuple[str, ...]
    values: Tuple[Tuple[str, int], ...]
    kind: str
    contracted: Optional[str] = None
    loci: Tuple[Tuple[str, ...], ...] = ()

    @property
    def signed_type(self) -> Tuple[int, ...]:
        return normalize_type([x for _, x in self.values])

    @property
    def beyond(self) -> Tuple[str, ...]:
        return tuple(n for n, x in self.values if x < 0)


@dataclass(frozen=True)
class RestrictedCrossing:
    count: Optional[int]
    eliminated: Tuple[str, ...] = ()
    restricted_type: Optional[Tuple[int, ...]] = None
    note: str = ""

    @property
    def flop(self) -> bool:
        return self.restricted_type == FLOP_TYPE

    @property
    def label(self) -> str:
        if self.count is None:
            return self.note
        if self.flop:
            return f"{self.count} flops"
        kind = ",".join(map(str, self.restricted_type)) if self.restricted_type else "?"
        return f"({kind}) flip" if self.count == 1 else f"{self.count} flips ({kind})"


def game_direction(fan: cox.ChamberFan, chamber: int, exceptional: str) -> int:
    """+1 when the exceptional ray lies at or before the chamber's left ray."""
    left = fan.rays.index(fan.chambers[chamber].left)
    return 1 if fan.ray_of(exceptional) <= left else -1


def cross_wall(
    c: CoxPresentation, fan: cox.ChamberFan, chamber: int, direction: int, source: str = "", target: str = ""
) -> Tuple[WallCrossing, Optional[int]]:
    """Classify the wall ahead of `chamber`; returns the crossing and the next chamber, if any."""
    current = fan.chambers[chamber]
    wall = current.right if direction > 0 else current.left
    w = fan.rays.index(wall)
    ahead = range(w + 1, len(fan.rays)) if direction > 0 else range(0, w)
    beyond = [n for i in ahead for n in fan.groups[i]]
    sign = -1 if direction > 0 else 1
    values = tuple((n, sign * cross(wall, d)) for n, d in zip(c.names, c.degrees) if cross(wall, d) != 0)
    wall_vars = fan.groups[w]
    if not beyond:
        crossing = WallCrossing(source, target, wall, wall_vars, values, "fibration")
        nxt = None
    elif len(beyond) == 1:
        crossing = WallCrossing(source, target, wall, wall_vars, values, "divisorial", contracted=beyond[0])
        nxt = None
    else:
        after = cox.Chamber(wall, fan.rays[w + 1]) if direction > 0 else cox.Chamber(fan.rays[w - 1], wall)
        if after not in fan.chambers:
            raise GameError(f"crossing {wall} leaves the effective cone")
        nxt = fan.chamber_index(after)
        loci = cox.unstable_loci(c, current, after)
        kind = "flop" if normalize_type([x for _, x in values]) == FLOP_TYPE else "flip"
        crossing = WallCrossing(
            source, target, wall, wall_vars, values, kind, loci=tuple(tuple(n for n in c.names if n in z) for z in loci)
        )
    logger.debug("wall %s: %s %s", wall, crossing.kind, crossing.signed_type)
    return crossing, nxt


def _ray_multiple(d: IntVector, ray: IntVector) -> int:
    for a, b in zip(d, ray):
        if b:
            return a // b
    raise GameError(f"ray {ray} is zero")


def poly_det(m: Sequence[Sequence[PolyElement]]) -> PolyElement:
    """Leibniz determinant of a small square matrix of polynomials."""
    n = len(m)
    ring = m[0][0].ring
    total = ring.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ring.one
        for i, j in enumerate(perm):
            term = term * m[i][j]
            if not term:
                break
        total += -term if inversions % 2 else term
    return total


def _wall_ideal(v: Subvariety, crossing: WallCrossing) -> Tuple[PolyRing, CoxPresentation, Dict[str, PolyElement]]:
    wall_vars = crossing.wall_variables
    ring = poly.make_ring(wall_vars, poly.field_of(v.ring))
    weights = [[_ray_multiple(v.ambient.degree(n), crossing.wall) for n in wall_vars]]
    pres = CoxPresentation.from_rows(wall_vars, weights, [wall_vars])
    zero = {n: ring.zero for n, _ in crossing.values}
    return ring, pres, zero


def _count(ring: PolyRing, pres: CoxPresentation, gens: Sequence[PolyElement]) -> int:
    gens = tuple(g for g in gens if g) or (ring.zero,)
    return oracle.count_points(oracle.PolyIdeal(gens, pres))


def restrict_crossing(v: Subvariety, crossing: WallCrossing) -> RestrictedCrossing:
    """Point count on the wall and the signed type left after eliminating through the Jacobian."""
    ring, pres, zero = _wall_ideal(v, crossing)
    restricted = [poly.substitute(e, zero, ring) for e in v.equations]
    try:
        count = _count(ring, pres, restricted)
    except PositiveDimensional:
        return RestrictedCrossing(None, note="non-isolated, unsupported")
    off = [n for n, _ in crossing.values]
    values = dict(crossing.values)
    k = len(off) - (v.dim + 1)
    chosen: Tuple[str, ...] = ()
    if k > 0 and count:
        for combo in combinations(off, k):
            jac = [[poly.substitute(p, zero, ring) for p in row] for row in poly.jacobian(v.equations, combo)]
            minors = [poly_det([jac[i] for i in rows]) for rows in combinations(range(len(jac)), k)]
            if _count(ring, pres, restricted + minors) == 0:
                chosen = combo
                break
        else:
            return RestrictedCrossing(count, note="no set of variables can be eliminated along the wall")
    rest = [values[n] for n in off if n not in chosen]
    result = RestrictedCrossing(count, chosen, normalize_type(rest))
    logger.info("wall %s: %s", crossing.wall, result.label)
    return result


def contract(v: Subvariety, crossing: WallCrossing, base: Optional[str] = None) -> Subvariety:
    """Contract the divisor {e = 0} by passing to the chart e != 0."""
    e = crossing.contracted
    if e is None:
        raise GameError(f"{crossing.kind} wall has no divisor to contract")
    c = cox.well_form(cox.chart(v.ambient, e))
    if c.rank == 1:
        c = c.with_irrelevant([c.names])
    elif c.rank == 2 and base is not None:
        fan = cox.mori_chambers(c)
        ray = fan.rays[fan.ray_of(base)]
        chamber = next(ch for ch in fan.chambers if ray in ch)
        c = c.with_irrelevant(cox.irrelevant_ideal_of_chamber(c, chamber, fan))
    ring = poly.make_ring(c.names, poly.field_of(v.ring))
    equations = tuple(poly.substitute(eq, {e: ring.one}, ring) for eq in v.equations)
    logger.info("contracted {%s = 0} onto %s", e, c.describe())
    return Subvariety(c, ring, equations, v.dim, v.bindings, f"contraction of {e} in {v.provenance}".strip())


def contract_map(c: CoxPresentation, crossing: WallCrossing, keep: Sequence[str] = ()) -> Dict[str, int]:
    """Exponent k_v of e in the image v * e^k_v of every other variable."""
    e = crossing.contracted
    ray = crossing.wall
    below = cross(ray, c.degree(e))
    if below == 0:
        raise GameError(f"'{e}' lies on the wall")
    powers: Dict[str, int] = {}
    for n in c.names:
        if n == e:
            continue
        if n in keep:
            powers[n] = 0
            continue
        k, rem = divmod(-cross(ray, c.degree(n)), below)
        if rem or k < 0:
            raise GameError(f"contraction sends '{n}' to a non-monomial image ({-cross(ray, c.degree(n))}/{below})")
        powers[n] = k
    return powers


def format_map(powers: Dict[str, int], e: str) -> Tuple[str, ...]:
    return tuple(n if k == 0 else (f"{n}*{e}" if k == 1 else f"{n}*{e}^{k}") for n, k in powers.items())


def _linear_split(eq: PolyElement, j: int) -> Optional[Tuple[PolyElement, PolyElement]]:
    """(a, R) with eq = a * var + R and var absent from a and R; None if eq is not linear in var."""
    ring = eq.ring
    a, rest = {}, {}
    for m, coeff in eq.terms():
        if m[j] > 1:
            return None
        if m[j] == 1:
            a[m[:j] + (0,) + m[j + 1:]] = coeff
        else:
            rest[m] = coeff
    return ring.from_dict(a), ring.from_dict(rest)


def _drop_variable(v: Subvariety, var: str) -> Tuple[CoxPresentation, PolyRing]:
    c = v.ambient
    j = c.index(var)
    names = c.names[:j] + c.names[j + 1:]
    rows = [row[:j] + row[j + 1:] for row in c.rows]
    if c.rank == 1:
        irrelevant = [names]
    else:
        irrelevant = cox.minimal_transversals(cox.minimal_transversals([z - {var} for z in c.irrelevant], names), names)
    return CoxPresentation.from_rows(names, rows, irrelevant), poly.make_ring(names, poly.field_of(v.ring))


def _prune(equations: List[PolyElement], c: CoxPresentation) -> List[PolyElement]:
    grading = dict(zip(c.names, c.degrees))
    kept = list(equations)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if others and oracle.ideal_contains(kept[i], others, grading, c.rank):
            logger.debug("dropping redundant equation %s", poly.format_poly(kept[i]))
            del kept[i]
        else:
            i += 1
    return kept


def eliminate_variable(v: Subvariety, var: str, base: Sequence[str] = ()) -> Subvariety:
    """Remove var: by an equation c*var + R, or fibrewise through two witnesses b_i*var + R_i."""
    c = v.ambient
    j = c.index(var)
    splits = [_linear_split(eq, j) for eq in v.equations]
    for i, split in enumerate(splits):
        if split is not None and split[0] and split[0].is_ground:
            a, rest = split
            new_c, ring = _drop_variable(v, var)
            image = poly.substitute(-rest, {}, ring).quo_ground(ring.domain.convert_from(a.LC, a.ring.domain))
            others = [poly.substitute(eq, {var: image}, ring) for k, eq in enumerate(v.equations) if k != i]
            equations = _prune([e for e in others if e], new_c)
            logger.info("eliminated %s = %s", var, poly.format_poly(image))
            return Subvariety(new_c, ring, tuple(equations), v.dim, v.bindings, v.provenance)
    if base:
        return _eliminate_fibrewise(v, var, base, splits)
    raise GameError(f"no equation of the form c*{var} + R eliminates '{var}'")


def _base_witness(split, base: Sequence[str]) -> Optional[Tuple[str, object]]:
    if split is None or not split[0] or len(split[0].terms()) != 1:
        return None
    (m, coeff), = split[0].terms()
    names = poly.names_of(split[0].ring)
    for b in base:
        k = names.index(b)
        if m[k] == 1 and sum(m) == 1:
            return b, coeff
    return None


def _eliminate_fibrewise(v: Subvariety, var: str, base: Sequence[str], splits) -> Subvariety:
    witnesses: Dict[str, Tuple[int, object]] = {}
    for i, split in enumerate(splits):
        found = _base_witness(split, base)
        if found is not None and found[0] not in witnesses:
            witnesses[found[0]] = (i, found[1])
    if len(witnesses) < 2:
        raise GameError(f"'{var}' has neither a unit equation nor two witnesses over {tuple(base)}")
    (b1, (i1, c1)), (b2, (i2, c2)) = list(witnesses.items())[:2]
    ring = v.ring
    w1, w2 = v.equations[i1], v.equations[i2]
    resultant = w1 * (poly.gen(ring, b2) * c2) - w2 * (poly.gen(ring, b1) * c1)
    new_c, new_ring = _drop_variable(v, var)
    grading = dict(zip(new_c.names, new_c.degrees))
    j = v.ambient.index(var)
    kept = [poly.substitute(eq, {}, new_ring) for eq, s in zip(v.equations, splits) if s is not None and not s[0]]
    res = poly.substitute(resultant, {}, new_ring)
    if res and not oracle.ideal_contains(res, kept, grading, new_c.rank):
        kept.append(res)
    for eq, split in zip(v.equations, splits):
        if split is None:
            raise GameError(f"an equation is not linear in '{var}'")
        a = split[0]
        if not a:
            continue
        check = eq * (poly.gen(ring, b1) * c1) - w1 * a
        if any(m[j] for m in check.monoms()):
            raise GameError(f"witness for '{b1}' does not cancel '{var}'")
        if not oracle.ideal_contains(poly.substitute(check, {}, new_ring), kept, grading, new_c.rank):
            raise GameError(f"removing '{var}' loses the equation {poly.format_poly(eq)}")
    logger.info("eliminated %s fibrewise over %s and %s", var, b1, b2)
    return Subvariety(new_c, new_ring, tuple(kept), v.dim, v.bindings, v.provenance)


def fibration_normal_form(c: CoxPresentation, base: Sequence[str]) -> CoxPresentation:
    """Rows (0 .. 0 | positive fibre weights) and (base weights | reduced second row)."""
    ray = lattice.primitive(c.degree(base[0]))
    normal = (-ray[1], ray[0])
    fibre = [n for n in c.names if n not in base]
    signs = {cross(ray, c.degree(n)) > 0 for n in fibre}
    if len(signs) != 1 or any(cross(ray, c.degree(n)) == 0 for n in fibre):
        raise GameError(f"{fibre} do not lie on one side of the base ray {ray}")
    if not signs.pop():
        normal = (-normal[0], -normal[1])
    g, s, t = lattice.exgcd(ray[0], ray[1])
    row1 = [normal[0] * d[0] + normal[1] * d[1] for d in c.degrees]
    row2 = [s * d[0] + t * d[1] for d in c.degrees]
    shift = max(row2[c.index(n)] // row1[c.index(n)] for n in fibre)
    row2 = [b - shift * a for a, b in zip(row1, row2)]
    return CoxPresentation.from_rows(c.names, [row1, row2], [tuple(base), tuple(fibre)])


@dataclass(frozen=True)
class FibrationProfile:
    base: Tuple[str, ...]
    fibre: Tuple[str, ...]
    fibre_weights: Tuple[int, ...]
    fibre_degrees: Tuple[int, ...]
    quadric_linear: bool = True

    @property
    def cubic_surface(self) -> bool:
        weights = sorted(self.fibre_weights)
        degrees = sorted(self.fibre_degrees)
        if weights == [1, 1, 1, 1] and degrees == [3]:
            return True
        return weights == [1, 1, 1, 1, 2] and degrees == [2, 3] and self.quadric_linear

    @property
    def label(self) -> str:
        if self.cubic_surface:
            return "dP3"
        weights = ",".join(map(str, self.fibre_weights))
        if not self.fibre_degrees:
            return f"P({weights})"
        return f"X_{','.join(map(str, self.fibre_degrees))} in P({weights})"


def fibration_profile(v: Subvariety, base: Sequence[str]) -> FibrationProfile:
    c = v.ambient
    fibre = tuple(n for n in c.names if n not in base)
    row1 = c.rows[0]
    weights = tuple(row1[c.index(n)] for n in fibre)
    degrees = tuple(d[0] for d in v.degrees())
    linear = True
    if sorted(degrees) == [2, 3] and sorted(weights) == [1, 1, 1, 1, 2]:
        heavy = next(n for n, w in zip(fibre, weights) if w == 2)
        quadric = v.equations[list(degrees).index(2)]
        k = c.index(heavy)
        linear = all(m[k] <= 1 for m in quadric.monoms()) and any(m[k] for m in quadric.monoms())
    return FibrationProfile(tuple(base), fibre, weights, degrees, linear)


def endpoint_singularities(v: Subvariety) -> List[sing.SingularityReport]:
    """Types of every torus-fixed point of the ambient lying on v."""
    c = v.ambient
    found = []
    for point in combinations(c.names, c.rank):
        if lattice.det(lattice.transpose([list(c.degree(n)) for n in point])) == 0:
            continue
        if sing.on_irrelevant_locus(c, point) or not sing.lies_on(v, point):
            continue
        try:
            found.append(sing.coordinate_point_type(v, point))
        except SingularityError as exc:
            logger.debug("skipping %s: %s", sing.point_label(point), exc)
    return found


@dataclass(frozen=True)
class LinkStep:
    crossing: WallCrossing
    restricted: RestrictedCrossing


@dataclass(frozen=True)
class LinkTrace:
    name: str
    blowup: Optional[BlowupRecord]
    models: Tuple[str, ...]
    steps: Tuple[LinkStep, ...]
    terminal: WallCrossing
    endpoint: Subvariety
    contraction: Dict[str, int] = field(default_factory=dict)
    fibration: Optional[FibrationProfile] = None
    image_point: Optional[sing.SingularityReport] = None
    singularities: Tuple[sing.SingularityReport, ...] = ()
    eliminated: Tuple[str, ...] = ()

    @property
    def kind(self) -> str:
        return self.terminal.kind

    @property
    def target(self) -> str:
        return self.models[-1]

    @property
    def endpoint_label(self) -> str:
        """The final model; for a fibration the last label names the base."""
        return self.models[-2] if self.kind == "fibration" else self.models[-1]


def _label(labels: Sequence[str], k: int) -> str:
    return labels[k] if k < len(labels) else f"M{k}"


def _image_point(v: Subvariety, point: Sequence[str]) -> Optional[sing.SingularityReport]:
    point = tuple(n for n in point if n in v.ambient.names)
    if len(point) != v.ambient.rank or not sing.lies_on(v, point):
        return None
    try:
        return sing.coordinate_point_type(v, point)
    except SingularityError as exc:
        logger.warning("image point %s: %s", sing.point_label(point), exc)
        return None


def _play(
    model: Subvariety,
    exceptional: str,
    labels: Sequence[str],
    eliminate: Sequence[str] = (),
    name: str = "",
    record: Optional[BlowupRecord] = None,
    relative: Optional[Tuple[Subvariety, str]] = None,
) -> LinkTrace:
    c = model.ambient
    fan = cox.mori_chambers(c)
    chamber = fan.locate(c)
    direction = game_direction(fan, chamber, exceptional)
    logger.info("%s: starting in chamber %s, direction %+d", name, fan.chambers[chamber], direction)
    steps: List[LinkStep] = []
    current = model
    while True:
        crossing, nxt = cross_wall(c, fan, chamber, direction, _label(labels, len(steps)), _label(labels, len(steps) + 1))
        if nxt is None:
            break
        steps.append(LinkStep(crossing, restrict_crossing(current, crossing)))
        chamber = nxt
        current = current.replace(ambient=c.with_irrelevant(cox.irrelevant_ideal_of_chamber(c, fan.chambers[chamber], fan)))
    models = tuple(_label(labels, k) for k in range(len(steps) + 2))

    if crossing.kind == "divisorial":
        if relative is None:
            endpoint = contract(current, crossing)
            powers = contract_map(c, crossing)
            centre = crossing.wall_variables
        else:
            whole, chart_var = relative
            endpoint = contract(whole, crossing, base=chart_var)
            chart_powers = contract_map(c, crossing)
            powers = {n: chart_powers.get(n, 0) for n in whole.ambient.names if n != crossing.contracted}
            centre = crossing.wall_variables + (chart_var,)
        for var in eliminate:
            endpoint = eliminate_variable(endpoint, var)
        image = _image_point(endpoint, centre)
        profile = None
    else:
        endpoint = current
        for var in eliminate:
            endpoint = eliminate_variable(endpoint, var, crossing.wall_variables)
        endpoint = endpoint.replace(ambient=fibration_normal_form(endpoint.ambient, crossing.wall_variables))
        powers, image = {}, None
        profile = fibration_profile(endpoint, crossing.wall_variables)
    endpoint.degrees()
    trace = LinkTrace(
        name,
        record,
        models,
        tuple(steps),
        crossing,
        endpoint,
        powers,
        profile,
        image,
        tuple(endpoint_singularities(endpoint)),
        tuple(eliminate),
    )
    logger.info("%s: %d crossings, ends in a %s", name, len(steps), crossing.kind)
    return trace


def run_link(
    v: Subvariety, spec: BlowupSpec, labels: Sequence[str] = (), eliminate: Sequence[str] = (), name: str = ""
) -> LinkTrace:
    """Blow up, then play the 2-ray game on the rank 2 model to its end."""
    blown, record = weighted_blow_up(v, spec)
    if blown.ambient.rank != 2:
        raise GameError(f"the blow-up has rank {blown.ambient.rank}; play it relative to a base chart")
    try:
        return _play(blown, spec.exceptional, labels, eliminate, name, record)
    except (OracleError, SingularityError, PresentationError) as exc:
        raise GameError(f"{name}: {exc}", trace=record)


def relative_game(
    v: Subvariety,
    chart_var: str,
    exceptional: str,
    labels: Sequence[str] = (),
    eliminate: Sequence[str] = (),
    name: str = "",
    record: Optional[BlowupRecord] = None,
) -> LinkTrace:
    """The game on the chart chart_var != 0 of a rank 3 model, contracted back on the whole model."""
    c = cox.well_form(cox.chart(v.ambient, chart_var))
    ring = poly.make_ring(c.names, poly.field_of(v.ring))
    equations = tuple(poly.substitute(e, {chart_var: ring.one}, ring) for e in v.equations)
    model = Subvariety(c, ring, equations, v.dim, v.bindings, f"{v.provenance} over {chart_var} != 0")
    return _play(model, exceptional, labels, eliminate, name, record, relative=(v, chart_var))


def run_relative_link(
    v: Subvariety,
    spec: BlowupSpec,
    chart_var: str,
    labels: Sequence[str] = (),
    eliminate: Sequence[str] = (),
    name: str = "",
) -> LinkTrace:
    blown, record = weighted_blow_up(v, spec)
    try:
        return relative_game(blown, chart_var, spec.exceptional, labels, eliminate, name, record)
    except (OracleError, SingularityError, PresentationError) as exc:
        raise GameError(f"{name}: {exc}", trace=record)


@dataclass(frozen=True)
class ModelComparison:
    isomorphic: bool
    witness: Optional[lattice.IntMatrix] = None
    reason: str = ""


def compare_models(a: Subvariety, b: Subvariety) -> ModelComparison:
    """Same weights up to GL(Z), same equation degrees and the same singularities."""
    u = lattice.column_equivalence(a.ambient.degrees, b.ambient.degrees)
    if u is None:
        return ModelComparison(False, reason="weight matrices are not equivalent")
    mapped = sorted(lattice.apply(u, d) for d in a.degrees())
    if mapped != sorted(b.degrees()):
        return ModelComparison(False, u, f"equation degrees {mapped} vs {sorted(b.degrees())}")
    labels_a = sorted(r.label for r in endpoint_singularities(a) if r.kind != "smooth")
    labels_b = sorted(r.label for r in endpoint_singularities(b) if r.kind != "smooth")
    if labels_a != labels_b:
        return ModelComparison(False, u, f"singularities {labels_a} vs {labels_b}")
    return ModelComparison(True, u)
