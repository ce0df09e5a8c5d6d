"""Toric varieties as Cox data: weight matrix plus irrelevant ideal."""

from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from sympy import primefactors

import lattice
from errors import LatticeError, PresentationError
from lattice import IntVector, cross
from log import get_logger

logger = get_logger(__name__)

Component = FrozenSet[str]


@dataclass(frozen=True)
class CoxPresentation:
    rank: int
    names: Tuple[str, ...]
    degrees: Tuple[IntVector, ...]
    irrelevant: Tuple[Component, ...] = field(default=())

    @classmethod
    def from_rows(
        cls,
        names: Sequence[str],
        rows: Sequence[Sequence[int]],
        irrelevant: Iterable[Iterable[str]] = (),
    ) -> "CoxPresentation":
        for row in rows:
            if len(row) != len(names):
                raise PresentationError(f"row {tuple(row)} has {len(row)} entries for {len(names)} variables")
        degrees = tuple(tuple(row[j] for row in rows) for j in range(len(names)))
        return cls(len(rows), tuple(names), degrees, tuple(frozenset(z) for z in irrelevant))

    @property
    def rows(self) -> List[List[int]]:
        return [[d[i] for d in self.degrees] for i in range(self.rank)]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError(f"unknown variable '{name}'")

    def degree(self, name: str) -> IntVector:
        return self.degrees[self.index(name)]

    def with_irrelevant(self, irrelevant: Iterable[Iterable[str]]) -> "CoxPresentation":
        return CoxPresentation(self.rank, self.names, self.degrees, tuple(frozenset(z) for z in irrelevant))

    def same_irrelevant(self, other: Iterable[Iterable[str]]) -> bool:
        return set(self.irrelevant) == {frozenset(z) for z in other}

    def describe(self) -> str:
        cols = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        comps = " ∩ ".join("(" + ",".join(n for n in self.names if n in z) + ")" for z in self.irrelevant)
        return f"[{cols}] irrelevant {comps or '()'}"


def _surjective(rows: Sequence[Sequence[int]]) -> bool:
    if not rows:
        return True
    if not rows[0]:
        return False
    return all(d == 1 for d in lattice.invariant_factors(rows))


def _drop_column(rows: Sequence[Sequence[int]], j: int) -> List[List[int]]:
    return [list(row[:j]) + list(row[j + 1:]) for row in rows]


def validate(c: CoxPresentation, surjective: bool = True) -> List[str]:
    """Violations of the presentation invariants; empty when valid.

    With surjective=False the grading may have torsion cokernel, as a stacky
    matrix handed to well_form does.
    """
    problems = []
    seen = set()
    for name in c.names:
        if name in seen:
            problems.append(f"duplicate variable '{name}'")
        seen.add(name)
    for d in c.degrees:
        if len(d) != c.rank:
            problems.append(f"degree {d} does not have {c.rank} entries")
    for z in c.irrelevant:
        if not z:
            problems.append("empty irrelevant component")
        unknown = sorted(z - set(c.names))
        if unknown:
            problems.append(f"irrelevant component mentions unknown {unknown}")
    if surjective and not problems and not _surjective(c.rows):
        problems.append(f"grading is not surjective (invariant factors {lattice.invariant_factors(c.rows)})")
    return problems


def check(c: CoxPresentation, surjective: bool = True) -> CoxPresentation:
    problems = validate(c, surjective)
    if problems:
        raise PresentationError("; ".join(problems))
    return c


def is_well_formed(c: CoxPresentation) -> bool:
    rows = c.rows
    if not _surjective(rows):
        return False
    for j in range(len(c.names)):
        invs = lattice.invariant_factors(_drop_column(rows, j))
        if invs and 0 not in invs and any(d > 1 for d in invs):
            return False
    return True


def _divide_out(rows: List[List[int]], q: int, skip: Optional[int]) -> List[List[int]]:
    """Replace one row by an integral combination divided by q.

    Coefficient vectors c are scanned in lexicographic order with last nonzero
    entry 1; c . rows must vanish mod q outside column `skip`.
    """
    r = len(rows)
    cols = [j for j in range(len(rows[0])) if j != skip]
    for coeffs in product(range(q), repeat=r):
        nonzero = [k for k, x in enumerate(coeffs) if x]
        if not nonzero or coeffs[nonzero[-1]] != 1:
            continue
        if any(sum(coeffs[k] * rows[k][j] for k in range(r)) % q for j in cols):
            continue
        i = nonzero[-1]
        combined = list(rows[i])
        for k in nonzero[:-1]:
            shift = coeffs[k] - q
            combined = [a + shift * b for a, b in zip(combined, rows[k])]
        rows = [list(row) for row in rows]
        rows[i] = [a if j == skip else a // q for j, a in enumerate(combined)]
        return rows
    raise PresentationError(f"no row combination vanishes mod {q}")


def well_form(c: CoxPresentation, max_rounds: int = 64) -> CoxPresentation:
    """Saturate the grading, then remove quasi-reflections, to a fixpoint."""
    rows = c.rows
    if not rows:
        return c
    for _ in range(max_rounds):
        invs = lattice.invariant_factors(rows)
        if 0 in invs:
            raise PresentationError("grading matrix is rank deficient")
        bad = [d for d in invs if d > 1]
        if bad:
            q = primefactors(bad[0])[0]
            logger.debug("saturating grading by %d", q)
            rows = _divide_out(rows, q, None)
            continue
        for j in range(len(c.names)):
            invs = lattice.invariant_factors(_drop_column(rows, j))
            if invs and 0 not in invs and any(d > 1 for d in invs):
                q = primefactors(max(invs))[0]
                logger.debug("quasi-reflection of order %d at %s", q, c.names[j])
                rows = _divide_out(rows, q, j)
                break
        else:
            return CoxPresentation.from_rows(c.names, rows, c.irrelevant)
    raise PresentationError(f"well-forming did not settle within {max_rounds} rounds")


class Chamber(NamedTuple):
    left: IntVector
    right: IntVector

    @property
    def interior(self) -> IntVector:
        return (self.left[0] + self.right[0], self.left[1] + self.right[1])


@dataclass(frozen=True)
class ChamberFan:
    rays: Tuple[IntVector, ...]
    groups: Tuple[Tuple[str, ...], ...]
    chambers: Tuple[Chamber, ...]

    def ray_of(self, name: str) -> int:
        for i, group in enumerate(self.groups):
            if name in group:
                return i
        raise PresentationError(f"unknown variable '{name}'")

    def chamber_index(self, chamber: Chamber) -> int:
        try:
            return self.chambers.index(chamber)
        except ValueError:
            raise PresentationError(f"{chamber} is not a chamber of this fan")

    def locate(self, c: CoxPresentation) -> int:
        """Index of the chamber whose irrelevant ideal is the one stored on c."""
        for i, chamber in enumerate(self.chambers):
            if c.same_irrelevant(irrelevant_ideal_of_chamber(c, chamber, self)):
                return i
        raise PresentationError(f"irrelevant ideal of {c.describe()} matches no chamber")


def _angle_order(start: IntVector):
    def half(v: IntVector) -> int:
        s = cross(start, v)
        if s > 0 or (s == 0 and start[0] * v[0] + start[1] * v[1] > 0):
            return 0
        return 1

    def compare(a: IntVector, b: IntVector) -> int:
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        s = cross(a, b)
        return -1 if s > 0 else (1 if s < 0 else 0)

    return cmp_to_key(compare)


def mori_chambers(c: CoxPresentation) -> ChamberFan:
    if c.rank != 2:
        raise PresentationError(f"chamber fans need rank 2, got {c.rank}")
    rays: List[IntVector] = []
    members: Dict[IntVector, List[str]] = {}
    for name, d in zip(c.names, c.degrees):
        try:
            ray = lattice.primitive(d)
        except LatticeError:
            raise PresentationError(f"variable '{name}' has degree zero")
        if ray not in members:
            rays.append(ray)
            members[ray] = []
        members[ray].append(name)

    def starts(r: IntVector) -> bool:
        for v in rays:
            if v == r:
                continue
            s = cross(r, v)
            if s < 0 or (s == 0 and r[0] * v[0] + r[1] * v[1] > 0):
                return False
        return True

    candidates = [r for r in rays if starts(r)]
    start = candidates[0] if candidates else rays[0]
    ordered = sorted(rays, key=_angle_order(start))
    pairs = list(zip(ordered, ordered[1:]))
    if not candidates and len(ordered) > 2:
        pairs.append((ordered[-1], ordered[0]))
    chambers = tuple(Chamber(a, b) for a, b in pairs if cross(a, b) > 0)
    return ChamberFan(tuple(ordered), tuple(tuple(members[r]) for r in ordered), chambers)


def _stable(degrees: Sequence[IntVector], p: IntVector) -> bool:
    left = [s for s in degrees if cross(s, p) > 0]
    right = [s for s in degrees if cross(p, s) > 0]
    return any(cross(a, b) > 0 for a in left for b in right)


def irrelevant_ideal_of_chamber(
    c: CoxPresentation, chamber: Chamber, fan: Optional[ChamberFan] = None
) -> List[Component]:
    """Components Z of the unstable locus, smallest first, in variable order."""
    fan = fan or mori_chambers(c)
    fan.chamber_index(chamber)
    p = chamber.interior
    found: List[Component] = []
    everything = set(c.names)
    for size in range(1, len(c.names) + 1):
        for z in combinations(c.names, size):
            zs = frozenset(z)
            if any(prev <= zs for prev in found):
                continue
            rest = [c.degree(n) for n in c.names if n in everything - zs]
            if not _stable(rest, p):
                found.append(zs)
    return found


def unstable_loci(c: CoxPresentation, before: Chamber, after: Chamber) -> List[Component]:
    """Loci of the model at `before` that become unstable at `after`."""
    fan = mori_chambers(c)
    old = set(irrelevant_ideal_of_chamber(c, before, fan))
    return [z for z in irrelevant_ideal_of_chamber(c, after, fan) if z not in old]


def minimal_transversals(family: Iterable[Iterable[str]], order: Sequence[str]) -> List[Component]:
    """Minimal sets meeting every member of `family`, smallest first."""
    sets = [frozenset(s) for s in family]
    found: List[Component] = []
    for size in range(1, len(order) + 1):
        for t in combinations(order, size):
            ts = frozenset(t)
            if any(prev <= ts for prev in found):
                continue
            if all(ts & s for s in sets):
                found.append(ts)
    return found


def chart(c: CoxPresentation, var: str) -> CoxPresentation:
    """The presentation of the open set var != 0, with var set to 1."""
    j = c.index(var)
    d = c.degrees[j]
    rows = c.rows
    units = [k for k, x in enumerate(d) if abs(x) == 1]
    if units:
        k = units[-1]
        new_rows = [
            [a - d[i] * d[k] * b for a, b in zip(rows[i], rows[k])] for i in range(c.rank) if i != k
        ]
    else:
        try:
            u = lattice.unimodular_completion(d)
        except LatticeError:
            raise PresentationError(f"degree {d} of '{var}' is not primitive; quotient charts are not supported")
        new_rows = lattice.matmul(u, rows)[:-1]
    new_rows = [_drop_column([row], j)[0] for row in new_rows]
    names = c.names[:j] + c.names[j + 1:]
    irrelevant = [z for z in c.irrelevant if var not in z]
    return CoxPresentation.from_rows(names, new_rows, irrelevant)
