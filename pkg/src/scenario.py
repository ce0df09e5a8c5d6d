"""Scenario files: a model (ambient, generic forms, equations) and the actions to run on it."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import cox
import poly
from cox import CoxPresentation
from errors import CoxGameError, ScenarioError
from game import Subvariety
from log import get_logger
from pfaffian import PfaffianFamily, pfaffians5
from poly import Field, GenericFormSpec

logger = get_logger(__name__)

ACTIONS = ("count", "wellform", "chambers", "sing", "blowup", "link", "relative_link", "quasi_smooth", "compare")


@dataclass(frozen=True)
class FormDecl:
    name: str
    degree: Tuple[int, ...]
    variables: Tuple[str, ...]
    weights: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()
    arguments: Tuple[Tuple[str, str], ...] = ()

    def spec(self, seed: int) -> GenericFormSpec:
        return GenericFormSpec(self.name, self.degree, self.variables, seed, self.weights, self.arguments)


@dataclass(frozen=True)
class Action:
    kind: str
    options: Mapping[str, Any] = field(default_factory=dict)
    expect: Mapping[str, Any] = field(default_factory=dict)

    def get(self, key: str, default: Any = None) -> Any:
        return self.options.get(key, default)


@dataclass(frozen=True)
class Scenario:
    name: str
    ambient: CoxPresentation
    forms: Tuple[FormDecl, ...]
    equations: Tuple[str, ...]
    actions: Tuple[Action, ...]
    pfaffian: Tuple[str, ...] = ()
    dim: int = 3
    source: str = ""
    label: str = ""
    path: Optional[Path] = None

    def model(self, seed: int, prime: int) -> Subvariety:
        """The scenario's variety with its generic forms drawn from (seed, prime)."""
        if self.pfaffian:
            return pfaffian_model(self, seed, prime)
        return build_model(self.ambient, self.forms, self.equations, seed, prime, self.dim, self.name)

    def resolve(self, other: str) -> Path:
        base = self.path.parent if self.path is not None else Path(".")
        return base / other


def build_model(
    ambient: CoxPresentation,
    forms: Sequence[FormDecl],
    equations: Sequence[str],
    seed: int,
    prime: int,
    dim: int = 3,
    provenance: str = "",
) -> Subvariety:
    fld = Field.prime(prime)
    ring = poly.make_ring(ambient.names, fld)
    specs = tuple(f.spec(seed) for f in forms)
    bindings = poly.bind_forms(specs, ring, fld)
    parsed = tuple(poly.parse(text, ring, bindings) for text in equations)
    v = Subvariety(ambient, ring, parsed, dim, specs, provenance)
    v.degrees()
    return v


def _require(data: Mapping[str, Any], key: str, where: str) -> Any:
    try:
        return data[key]
    except KeyError:
        raise ScenarioError(f"{where}: missing '{key}'")


def _ambient(data: Mapping[str, Any], where: str, surjective: bool = True) -> CoxPresentation:
    names = _require(data, "variables", where)
    rows = _require(data, "rows", where)
    irrelevant = data.get("irrelevant", [names])
    try:
        return cox.check(CoxPresentation.from_rows(names, rows, irrelevant), surjective)
    except CoxGameError as exc:
        raise ScenarioError(f"{where}: {exc}")


def _form(data: Mapping[str, Any]) -> FormDecl:
    name = _require(data, "name", "form")
    degree = _require(data, "degree", f"form {name}")
    degree = (degree,) if isinstance(degree, int) else tuple(degree)
    weights = tuple(
        (v, (w,) if isinstance(w, int) else tuple(w)) for v, w in sorted(data.get("weights", {}).items())
    )
    arguments = tuple(sorted(data.get("arguments", {}).items()))
    return FormDecl(name, degree, tuple(_require(data, "variables", f"form {name}")), weights, arguments)


def _action(data: Mapping[str, Any], index: int) -> Action:
    kind = _require(data, "action", f"action {index}")
    if kind not in ACTIONS:
        raise ScenarioError(f"action {index}: unknown action '{kind}' (expected one of {', '.join(ACTIONS)})")
    options = {k: v for k, v in data.items() if k not in ("action", "expect")}
    return Action(kind, options, dict(data.get("expect", {})))


def parse_scenario(data: Mapping[str, Any], path: Optional[Path] = None) -> Scenario:
    name = _require(data, "name", str(path or "scenario"))
    actions = tuple(_action(a, i) for i, a in enumerate(data.get("actions", ())))
    # a file that only asks for well-forming may carry a stacky grading
    stacky_ok = bool(actions) and all(a.kind == "wellform" for a in actions)
    ambient = _ambient(_require(data, "ambient", name), name, surjective=not stacky_ok)
    forms = tuple(_form(f) for f in data.get("forms", ()))
    scenario = Scenario(
        name,
        ambient,
        forms,
        tuple(data.get("equations", ())),
        actions,
        _pfaffian(data),
        data.get("dim", 3),
        data.get("source", ""),
        data.get("label", name),
        path,
    )
    validate_scenario(scenario)
    return scenario


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc.strerror}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    logger.debug("loaded scenario %s from %s", data.get("name"), path)
    return parse_scenario(data, path)


def _pfaffian(data: Mapping[str, Any]) -> Tuple[str, ...]:
    entries = data.get("pfaffian", ())
    if entries and (not isinstance(entries, list) or len(entries) != 10):
        raise ScenarioError("'pfaffian' needs the 10 upper-triangle entries m12 .. m45")
    return tuple(entries)


def validate_scenario(s: Scenario, seed: int = 0, prime: int = 101) -> None:
    """Build the model once so parse and grading errors surface before any action runs."""
    try:
        s.model(seed, prime)
    except CoxGameError as exc:
        raise ScenarioError(f"{s.name}: {exc}")


def pfaffian_model(s: Scenario, seed: int, prime: int) -> Subvariety:
    """The five maximal Pfaffians of the scenario's skew matrix."""
    fld = Field.prime(prime)
    ring = poly.make_ring(s.ambient.names, fld)
    specs = tuple(f.spec(seed) for f in s.forms)
    bindings = poly.bind_forms(specs, ring, fld)
    upper = [poly.parse(e, ring, bindings) for e in s.pfaffian]
    family = PfaffianFamily.from_upper(upper)
    v = Subvariety(s.ambient, ring, tuple(pfaffians5(family)), s.dim, specs, s.name)
    v.degrees()
    return v


def action_ambient(s: Scenario, action: Action) -> CoxPresentation:
    """The action's own `ambient` block, or the scenario's."""
    if "ambient" in action.options:
        return _ambient(action.options["ambient"], f"{s.name} {action.kind}", surjective=action.kind != "wellform")
    return s.ambient


def action_model(s: Scenario, action: Action, seed: int, prime: int) -> Subvariety:
    if "equations" not in action.options:
        return s.model(seed, prime)
    ambient = action_ambient(s, action)
    return build_model(ambient, s.forms, tuple(action.options["equations"]), seed, prime, s.dim, s.name)
