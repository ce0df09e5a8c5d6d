"""Graded polynomials over QQ or GF(p), on top of sympy's sparse PolyRing.

A polynomial is a plain sympy PolyElement. Rings are built here with grevlex
order so Groebner computations can use them directly; the grading is never
stored on the ring and is passed in as a name -> degree mapping (usually a
CoxPresentation).
"""

import hashlib
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import GF, QQ, Symbol
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from Environment import Environment
from Evaluator import Evaluator
from Parser import Parser
from Scanner import Scanner
from errors import PolynomialError
from lattice import IntVector

Exponent = Tuple[int, ...]
Grading = Mapping[str, IntVector]

GENERATOR_VERSION = "v1"


@dataclass(frozen=True)
class Field:
    """QQ when characteristic is 0, otherwise GF(characteristic)."""

    characteristic: int = 0

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        if p < 2:
            raise PolynomialError(f"{p} is not a prime")
        return cls(p)

    @property
    def is_prime(self) -> bool:
        return self.characteristic > 0

    @property
    def domain(self):
        return GF(self.characteristic) if self.is_prime else QQ

    def __str__(self) -> str:
        return f"GF({self.characteristic})" if self.is_prime else "QQ"


def make_ring(names: Sequence[str], fld: Field) -> PolyRing:
    if len(set(names)) != len(names):
        raise PolynomialError(f"repeated variable in {tuple(names)}")
    return PolyRing([Symbol(n) for n in names], fld.domain, grevlex)


def names_of(ring: PolyRing) -> Tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


def field_of(ring: PolyRing) -> Field:
    return Field(ring.domain.characteristic())


def gen(ring: PolyRing, name: str) -> PolyElement:
    try:
        return ring.gens[names_of(ring).index(name)]
    except ValueError:
        raise PolynomialError(f"'{name}' is not a variable of {names_of(ring)}")


def to_int(ring: PolyRing, c) -> int:
    """Canonical representative in [0, p) of a GF(p) coefficient."""
    p = ring.domain.characteristic()
    return ring.domain.to_int(c) % p


def parse(text: str, ring: PolyRing, bindings: Optional[Mapping[str, PolyElement]] = None) -> PolyElement:
    """Parse text into an element of ring; bindings (A, B, ...) shadow ring variables."""
    tokens = Scanner(text).scan_tokens()
    expr = Parser(tokens).parse()
    variables = Environment()
    for name, g in zip(names_of(ring), ring.gens):
        variables.define(name, g)
    scope = Environment(variables)
    for name, value in (bindings or {}).items():
        scope.define(name, value)
    return Evaluator(ring, scope).evaluate(expr)


def format_poly(p: PolyElement) -> str:
    return str(p.as_expr()).replace("**", "^")


def positive_functional(degrees: Sequence[IntVector]) -> IntVector:
    rank = len(degrees[0])
    bound = 3
    candidates = [()]
    for _ in range(rank):
        candidates = [c + (x,) for c in candidates for x in range(-bound, bound + 1)]
    for lam in sorted(candidates, key=lambda v: (sum(abs(x) for x in v), v)):
        if all(sum(a * b for a, b in zip(lam, d)) > 0 for d in degrees):
            return lam
    raise PolynomialError("grading is not positive on the chosen variables")


def monomials_of_multidegree(
    ring: PolyRing, grading: Grading, d: IntVector, variables: Optional[Iterable[str]] = None
) -> List[Exponent]:
    """Exponent vectors (in ring order) supported on `variables` of degree exactly d."""
    names = names_of(ring)
    chosen = None if variables is None else set(variables)
    allowed = [n for n in names if chosen is None or n in chosen]
    d = tuple(d)
    if not allowed:
        return [tuple(0 for _ in names)] if not any(d) else []
    degs = [tuple(grading[n]) for n in allowed]
    lam = positive_functional(degs)
    weight = [sum(a * b for a, b in zip(lam, g)) for g in degs]
    found: List[Exponent] = []

    def walk(i: int, remaining: IntVector, exps: Dict[str, int]) -> None:
        if i == len(allowed):
            if not any(remaining):
                found.append(tuple(exps.get(n, 0) for n in names))
            return
        budget = sum(a * b for a, b in zip(lam, remaining))
        for e in range(budget // weight[i] + 1):
            exps[allowed[i]] = e
            walk(i + 1, tuple(r - e * g for r, g in zip(remaining, degs[i])), exps)
        exps.pop(allowed[i], None)

    walk(0, d, {})
    return sorted(found, reverse=True)


@dataclass(frozen=True)
class GenericFormSpec:
    """A general form: every monomial of `degree` in `variables` with a seeded coefficient.

    `weights` grades the form's own variables; `arguments` maps them to
    expressions in an ambient ring (e.g. x3 -> u*x3).
    """

    name: str
    degree: IntVector
    variables: Tuple[str, ...]
    seed: int
    weights: Tuple[Tuple[str, IntVector], ...] = ()
    arguments: Tuple[Tuple[str, str], ...] = field(default=())

    @property
    def grading(self) -> Dict[str, IntVector]:
        given = dict(self.weights)
        return {v: tuple(given.get(v, (1,) * len(self.degree))) for v in self.variables}


def _coefficient(spec: GenericFormSpec, exponent: Exponent, p: int) -> int:
    key = f"{GENERATOR_VERSION}|{spec.seed}|{spec.name}|{','.join(map(str, exponent))}"
    h = int.from_bytes(hashlib.sha256(key.encode()).digest(), "big")
    return 1 + h % (p - 1)


def gen_generic(spec: GenericFormSpec, fld: Field) -> PolyElement:
    """The form in its own ring make_ring(spec.variables, fld)."""
    if not fld.is_prime:
        raise PolynomialError("generic forms are drawn over a prime field")
    ring = make_ring(spec.variables, fld)
    basis = monomials_of_multidegree(ring, spec.grading, spec.degree)
    if not basis:
        raise PolynomialError(f"no monomial of degree {spec.degree} in {spec.variables} for {spec.name}")
    return ring.from_dict({e: ring.domain(_coefficient(spec, e, fld.characteristic)) for e in basis})


def substitute(p: PolyElement, mapping: Mapping[str, PolyElement], target: Optional[PolyRing] = None) -> PolyElement:
    """Simultaneous substitution; unmapped variables go to the same-named variable of target."""
    target = target or p.ring
    target_names = names_of(target)
    images = []
    for name in names_of(p.ring):
        if name in mapping:
            img = mapping[name]
            if img.ring != target:
                raise PolynomialError(f"image of '{name}' lives in another ring")
        elif name in target_names:
            img = target.gens[target_names.index(name)]
        else:
            img = None
        images.append(img)
    if target == p.ring and all(img is not None for img in images):
        return p.compose(list(zip(p.ring.gens, images)))
    result = target.zero
    powers: Dict[Tuple[int, int], PolyElement] = {}
    for monom, coeff in p.terms():
        term = target.ground_new(target.domain.convert_from(coeff, p.ring.domain))
        for i, e in enumerate(monom):
            if not e:
                continue
            if images[i] is None:
                raise PolynomialError(f"no image for '{names_of(p.ring)[i]}'")
            if (i, e) not in powers:
                powers[(i, e)] = images[i] ** e
            term = term * powers[(i, e)]
        result += term
    return result


def bind_forms(specs: Iterable[GenericFormSpec], ring: PolyRing, fld: Field) -> Dict[str, PolyElement]:
    """Generate each form and push it into ring through its arguments."""
    bound: Dict[str, PolyElement] = {}
    for spec in specs:
        form = gen_generic(spec, fld)
        mapping = {v: parse(text, ring) for v, text in spec.arguments}
        bound[spec.name] = substitute(form, mapping, ring)
    return bound


class Inhomogeneous(NamedTuple):
    first: str
    second: str
    degrees: Tuple[IntVector, IntVector]


def term_degree(ring: PolyRing, monom: Exponent, grading: Grading, rank: int) -> IntVector:
    total = [0] * rank
    for name, e in zip(names_of(ring), monom):
        if e:
            try:
                deg = grading[name]
            except KeyError:
                raise PolynomialError(f"'{name}' is not graded")
            total = [t + e * g for t, g in zip(total, deg)]
    return tuple(total)


def _monomial_text(ring: PolyRing, monom: Exponent) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names_of(ring), monom) if e]
    return "*".join(parts) or "1"


def multidegree_of(p: PolyElement, c) -> Union[IntVector, Inhomogeneous, None]:
    """Common degree of the terms of p under c's grading; None for the zero polynomial."""
    grading = dict(zip(c.names, c.degrees))
    seen: Optional[Tuple[Exponent, IntVector]] = None
    for monom in p.monoms():
        deg = term_degree(p.ring, monom, grading, c.rank)
        if seen is None:
            seen = (monom, deg)
        elif deg != seen[1]:
            return Inhomogeneous(_monomial_text(p.ring, seen[0]), _monomial_text(p.ring, monom), (seen[1], deg))
    return None if seen is None else seen[1]


def jacobian(ps: Sequence[PolyElement], names: Optional[Sequence[str]] = None) -> List[List[PolyElement]]:
    if not ps:
        return []
    ring = ps[0].ring
    if any(p.ring != ring for p in ps):
        raise PolynomialError("jacobian of polynomials from different rings")
    gens = [gen(ring, n) for n in names] if names is not None else list(ring.gens)
    return [[p.diff(g) for g in gens] for p in ps]


def weighted_order(p: PolyElement, weights: Mapping[str, int]) -> Optional[int]:
    """Least weighted degree of a term of p; unweighted variables count 0."""
    names = names_of(p.ring)
    orders = [sum(e * weights.get(n, 0) for n, e in zip(names, m)) for m in p.monoms()]
    return min(orders) if orders else None


def truncate(p: PolyElement, max_degree: int) -> PolyElement:
    """Terms of total degree at most max_degree."""
    return p.ring.from_dict({m: c for m, c in p.terms() if sum(m) <= max_degree})


def homogeneous_part(p: PolyElement, degree: int) -> PolyElement:
    return p.ring.from_dict({m: c for m, c in p.terms() if sum(m) == degree})


def specialize(p: PolyElement, values: Mapping[str, int]) -> PolyElement:
    """Set the named variables to constants, staying in the same ring."""
    if not values:
        return p
    return p.subs([(gen(p.ring, n), v) for n, v in values.items()])
