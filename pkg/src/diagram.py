"""DOT rendering of the links recorded in one or more reports."""

from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from errors import ScenarioError
from log import get_logger

logger = get_logger(__name__)

STYLES = {
    "morphism": "",
    "flip": "style=dashed",
    "birational": "style=dashed",
    "equal": "dir=none, style=bold",
}

Edge = Tuple[str, str, str, str]


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def collect_edges(reports: Sequence[Mapping[str, Any]]) -> List[Edge]:
    """Every edge of every action graph, deduplicated; a pair may carry only one kind."""
    if not reports:
        raise ScenarioError("no reports to draw")
    seen: Dict[Tuple[str, str], Edge] = {}
    for report in reports:
        for action in report.get("actions", ()):
            for e in action.get("graph", {}).get("edges", ()):
                edge = (e["source"], e["target"], e["kind"], e.get("label", ""))
                if edge[2] not in STYLES:
                    raise ScenarioError(f"unknown edge kind '{edge[2]}' in {report.get('scenario')}")
                key = (edge[0], edge[1])
                if key in seen and seen[key] != edge:
                    raise ScenarioError(
                        f"{edge[0]} -> {edge[1]} is drawn both as {seen[key][2:]} and as {edge[2:]}"
                    )
                seen[key] = edge
    if not seen:
        raise ScenarioError("the reports record no links")
    return sorted(seen.values())


def render(edges: Iterable[Edge], name: str = "links") -> str:
    edges = sorted(edges)
    nodes = sorted({n for e in edges for n in e[:2]})
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=plaintext];"]
    lines += [f"  {_quote(n)};" for n in nodes]
    for source, target, kind, label in edges:
        attrs = [f"label={_quote(label)}"] if label else []
        if STYLES[kind]:
            attrs.append(STYLES[kind])
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(source)} -> {_quote(target)}{suffix};")
    lines.append("}")
    logger.debug("diagram with %d nodes and %d edges", len(nodes), len(edges))
    return "\n".join(lines) + "\n"


def diagram(reports: Sequence[Mapping[str, Any]]) -> str:
    return render(collect_edges(reports))
