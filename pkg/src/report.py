"""Link reports: the facts each action produced and the verdict of every expectation."""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

import sing
from cox import CoxPresentation
from errors import ScenarioError
from game import BlowupRecord, LinkStep, LinkTrace, ModelComparison, Subvariety, format_map
from log import get_logger

logger = get_logger(__name__)

MISSING = "<missing>"


def normalize(value: Any) -> Any:
    """JSON shape of a fact: tuples become lists, mapping keys become strings."""
    if isinstance(value, Mapping):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(normalize(v) for v in value)
    if hasattr(value, "__int__") and not isinstance(value, (bool, float)):
        return int(value)
    return value


def singularity_fact(r: sing.SingularityReport) -> str:
    return f"{r.label} at {r.point}"


def presentation_facts(c: CoxPresentation) -> Dict[str, Any]:
    return {
        "variables": list(c.names),
        "rows": [list(r) for r in c.rows],
        "degrees": {n: list(d) for n, d in zip(c.names, c.degrees)},
        "irrelevant": [[n for n in c.names if n in z] for z in c.irrelevant],
    }


def model_facts(v: Subvariety) -> Dict[str, Any]:
    facts = presentation_facts(v.ambient)
    facts["equation_degrees"] = sorted(list(d) for d in v.degrees())
    facts["equations"] = len(v.equations)
    return facts


def blowup_facts(record: BlowupRecord, model: Optional[Subvariety] = None) -> Dict[str, Any]:
    facts = {
        "centre": record.singularity.point,
        "singularity": record.singularity.label,
        "tangents": sorted(record.singularity.tangents),
        "index": record.index,
        "weights": dict(record.weights),
        "stacky_row": list(record.stacky_row),
        "label": record.label,
    }
    if model is not None:
        facts["ambient"] = presentation_facts(model.ambient)
    return facts


def step_facts(step: LinkStep) -> Dict[str, Any]:
    c, r = step.crossing, step.restricted
    return {
        "source": c.source,
        "target": c.target,
        "kind": c.kind,
        "wall": list(c.wall),
        "wall_variables": list(c.wall_variables),
        "type": list(c.signed_type),
        "loci": [list(z) for z in c.loci],
        "count": r.count,
        "restricted_type": list(r.restricted_type) if r.restricted_type is not None else None,
        "eliminated": list(r.eliminated),
        "flop": r.flop,
        "label": r.label,
    }


def link_facts(trace: LinkTrace) -> Dict[str, Any]:
    steps = [step_facts(s) for s in trace.steps]
    terminal = trace.terminal
    facts: Dict[str, Any] = {
        "models": list(trace.models),
        "crossings": steps,
        "flop_counts": [s["count"] for s in steps if s["flop"]],
        "restricted_types": [s["restricted_type"] for s in steps],
        "negative_sides": [[x for x in s["restricted_type"] or () if x < 0] for s in steps],
        "terminal": terminal.kind,
        "terminal_type": list(terminal.signed_type),
        "endpoint": model_facts(trace.endpoint),
        "singularities": sorted(singularity_fact(r) for r in trace.singularities if r.kind != "smooth"),
        "eliminated": list(trace.eliminated),
    }
    if trace.blowup is not None:
        facts["blowup"] = blowup_facts(trace.blowup)
    if terminal.kind == "divisorial":
        facts["contracted"] = terminal.contracted
        facts["contraction_map"] = list(format_map(trace.contraction, terminal.contracted))
        facts["image_point"] = singularity_fact(trace.image_point) if trace.image_point else None
    if trace.fibration is not None:
        facts["base"] = list(trace.fibration.base)
        facts["fibre"] = trace.fibration.label
        facts["fibre_weights"] = list(trace.fibration.fibre_weights)
        facts["fibre_degrees"] = sorted(trace.fibration.fibre_degrees)
        facts["cubic_surface"] = trace.fibration.cubic_surface
    return facts


def comparison_facts(result: ModelComparison, a: str, b: str) -> Dict[str, Any]:
    return {
        "models": [a, b],
        "isomorphic": result.isomorphic,
        "verdict": "structurally isomorphic" if result.isomorphic else "distinct",
        "witness": result.witness,
        "reason": result.reason,
    }


def lookup(facts: Mapping[str, Any], key: str) -> Any:
    """Value at a dotted path such as 'blowup.weights.x3'; list positions are integers."""
    value: Any = facts
    for part in key.split("."):
        if isinstance(value, Mapping) and part in value:
            value = value[part]
        elif isinstance(value, list) and part.lstrip("-").isdigit() and -len(value) <= int(part) < len(value):
            value = value[int(part)]
        else:
            return MISSING
    return value


@dataclass(frozen=True)
class Expectation:
    action: int
    kind: str
    key: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return normalize(self.expected) == normalize(self.actual)


@dataclass
class ActionRecord:
    index: int
    kind: str
    facts: Dict[str, Any] = field(default_factory=dict)
    graph: Dict[str, Any] = field(default_factory=dict)
    error: str = ""


@dataclass
class LinkReport:
    scenario: str
    settings: Dict[str, Any]
    actions: List[ActionRecord] = field(default_factory=list)
    expectations: List[Expectation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.expectations) and not any(a.error for a in self.actions)

    def record(self, record: ActionRecord, expect: Mapping[str, Any]) -> None:
        self.actions.append(record)
        for key in sorted(expect):
            self.expectations.append(
                Expectation(record.index, record.kind, key, expect[key], lookup(record.facts, key))
            )

    def to_dict(self) -> Dict[str, Any]:
        return normalize(
            {
                "scenario": self.scenario,
                "settings": self.settings,
                "passed": self.passed,
                "actions": [
                    {"index": a.index, "action": a.kind, "facts": a.facts, "graph": a.graph, "error": a.error}
                    for a in self.actions
                ],
                "expectations": [
                    {
                        "action": e.action,
                        "kind": e.kind,
                        "key": e.key,
                        "expected": e.expected,
                        "actual": e.actual,
                        "passed": e.passed,
                    }
                    for e in self.expectations
                ],
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def table(self) -> str:
        lines = [f"{self.scenario}: {'PASS' if self.passed else 'FAIL'}"]
        for a in self.actions:
            if a.error:
                lines.append(f"  ERROR [{a.index}] {a.kind}: {a.error}")
        for e in self.expectations:
            mark = "ok  " if e.passed else "FAIL"
            line = f"  {mark} [{e.action}] {e.kind} {e.key} = {json.dumps(normalize(e.actual), ensure_ascii=False)}"
            if not e.passed:
                line += f" (expected {json.dumps(normalize(e.expected), ensure_ascii=False)})"
            lines.append(line)
        return "\n".join(lines) + "\n"


def load_report(path) -> Dict[str, Any]:
    logger.debug("loading report %s", path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{path}: not a report (line {exc.lineno}: {exc.msg})")


def graph_of_link(trace: LinkTrace, source: str, relative: bool = False) -> Dict[str, Any]:
    """Nodes and edges of one link for the diagram."""
    edges: List[Dict[str, str]] = []
    if trace.blowup is not None:
        edges.append({"source": trace.models[0], "target": source, "kind": "morphism", "label": trace.blowup.label})
    for step in trace.steps:
        c = step.crossing
        edges.append({"source": c.source, "target": c.target, "kind": "flip", "label": step.restricted.label})
    t = trace.terminal
    if t.kind == "divisorial":
        label = f"Bl {trace.image_point.label}" if trace.image_point is not None else "contraction"
        edges.append({"source": t.source, "target": t.target, "kind": "morphism", "label": label})
    else:
        label = trace.fibration.label if trace.fibration is not None else ""
        edges.append({"source": t.source, "target": t.target, "kind": "morphism", "label": label})
    if relative:
        edges.append({"source": source, "target": trace.models[-1], "kind": "birational", "label": "square birational"})
    return {"edges": edges}


def graph_of_comparison(a: str, b: str, result: ModelComparison) -> Dict[str, Any]:
    if not result.isomorphic:
        return {"edges": []}
    return {"edges": [{"source": a, "target": b, "kind": "equal", "label": ""}]}
