"""Command-line entry point: replay scenarios, draw link diagrams, and poke at single operations."""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import cox
import diagram
import game
import oracle
import poly
import report
import sing
from config import Settings, load_settings
from cox import CoxPresentation
from errors import CoxGameError, GenericityError, PolynomialError, ScenarioError
from log import configure, get_logger
from scenario import Action, Scenario, action_ambient, action_model, load_scenario

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_INPUT = 2
EXIT_COMPUTATION = 3


def _point(value) -> Tuple[str, ...]:
    return (value,) if isinstance(value, str) else tuple(value)


def _blowup_spec(action: Action) -> game.BlowupSpec:
    kawamata = action.get("kawamata")
    return game.BlowupSpec(
        _point(action.get("centre")),
        action.get("exceptional", "e"),
        tuple(kawamata) if kawamata is not None else None,
    )


class CoxGame:
    """Runs the actions of scenarios; link traces are cached per (scenario, action, seed)."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.traces: Dict[Tuple[str, int, int], game.LinkTrace] = {}

    def run_file(self, path) -> report.LinkReport:
        return self.run(load_scenario(path))

    def run(self, s: Scenario) -> report.LinkReport:
        settings = {
            "prime": self.settings.prime,
            "seeds": list(self.settings.seeds),
            "primes": list(self.settings.primes),
        }
        out = report.LinkReport(s.name, settings)
        for index, action in enumerate(s.actions):
            record = report.ActionRecord(index, action.kind)
            try:
                record.facts, record.graph = self.replicated(s, index)
            except ScenarioError:
                raise
            except CoxGameError as exc:
                logger.error("%s action %d (%s): %s", s.name, index, action.kind, exc)
                record.error = str(exc)
            out.record(record, action.expect)
        logger.info("%s: %d expectations, %s", s.name, len(out.expectations), "pass" if out.passed else "FAIL")
        return out

    def replicated(self, s: Scenario, index: int) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        """Facts of one action, required to agree across every seed replica."""
        action = s.actions[index]
        if action.kind == "count":
            return self.count(s, action), {}
        first: Optional[Tuple[Dict[str, Any], Dict[str, Any]]] = None
        for seed in self.settings.seeds:
            facts, graph = self.act(s, index, seed)
            facts = report.normalize(facts)
            if first is None:
                first = (facts, graph)
            elif facts != first[0]:
                keys = sorted(k for k in facts if facts.get(k) != first[0].get(k))
                raise GenericityError(f"seed {seed} changes {', '.join(keys)}")
        return first

    def act(self, s: Scenario, index: int, seed: int) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        action = s.actions[index]
        prime = self.settings.prime
        if action.kind == "wellform":
            c = self._rows(s, action)
            w = cox.well_form(c, self.settings.max_inference_rounds)
            return {"rows": w.rows, "well_formed": cox.is_well_formed(c)}, {}
        if action.kind == "chambers":
            fan = cox.mori_chambers(self._rows(s, action))
            return {"groups": fan.groups, "rays": fan.rays, "chambers": len(fan.chambers)}, {}
        v = action_model(s, action, seed, prime)
        if action.kind == "sing":
            r = sing.coordinate_point_type(v, _point(action.get("point")))
            order, residues = sing.ambient_chart_type(v.ambient, r.location)
            return {
                "point": r.point,
                "kind": r.kind,
                "label": r.label,
                "tangents": sorted(r.tangents),
                "ambient_chart": f"1/{order}({','.join(map(str, residues))})",
            }, {}
        if action.kind == "blowup":
            model, record = game.weighted_blow_up(v, _blowup_spec(action), self.settings.max_inference_rounds)
            facts = report.blowup_facts(record, model)
            facts["equation_degrees"] = sorted(list(d) for d in model.degrees())
            return facts, {}
        if action.kind in ("link", "relative_link"):
            trace = self.trace(s, index, seed)
            relative = action.kind == "relative_link"
            return report.link_facts(trace), report.graph_of_link(trace, s.label, relative)
        if action.kind == "quasi_smooth":
            verdict = sing.quasi_smooth_check(v, action.get("trials", self.settings.trials), seed, prime)
            return {
                "verdict": verdict.verdict,
                "singular": verdict.singular,
                "points_checked": verdict.points_checked,
            }, {}
        if action.kind == "compare":
            return self.compare(s, action, seed)
        raise ScenarioError(f"unknown action '{action.kind}'")

    def _rows(self, s: Scenario, action: Action) -> CoxPresentation:
        if "rows" in action.options:
            names = action.get("variables", list(s.ambient.names))
            c = CoxPresentation.from_rows(names, action.get("rows"), [names])
            return cox.check(c, surjective=action.kind != "wellform")
        return action_ambient(s, action)

    def count(self, s: Scenario, action: Action) -> Dict[str, Any]:
        def build(seed: int, prime: int) -> oracle.PolyIdeal:
            v = action_model(s, action, seed, prime)
            return oracle.PolyIdeal(v.equations, v.ambient)

        n = oracle.stable_count(build, self.settings.seeds, self.settings.primes, label=s.name)
        return {"count": n}

    def trace(self, s: Scenario, index: int, seed: int) -> game.LinkTrace:
        key = (s.name, index, seed)
        if key not in self.traces:
            action = s.actions[index]
            v = action_model(s, action, seed, self.settings.prime)
            labels = tuple(action.get("labels", ()))
            eliminate = tuple(action.get("eliminate", ()))
            if action.kind == "relative_link":
                self.traces[key] = game.run_relative_link(
                    v, _blowup_spec(action), action.get("chart"), labels, eliminate, s.name
                )
            else:
                self.traces[key] = game.run_link(v, _blowup_spec(action), labels, eliminate, s.name)
        return self.traces[key]

    def last_trace(self, s: Scenario, seed: int) -> game.LinkTrace:
        links = [i for i, a in enumerate(s.actions) if a.kind in ("link", "relative_link")]
        if not links:
            raise ScenarioError(f"{s.name} has no link to compare")
        return self.trace(s, links[-1], seed)

    def compare(self, s: Scenario, action: Action, seed: int) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        other = load_scenario(s.resolve(action.get("scenario")))
        mine, theirs = self.last_trace(s, seed), self.last_trace(other, seed)
        result = game.compare_models(mine.endpoint, theirs.endpoint)
        a, b = sorted((mine.endpoint_label, theirs.endpoint_label))
        return report.comparison_facts(result, a, b), report.graph_of_comparison(a, b, result)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_run(args, settings: Settings) -> int:
    runner = CoxGame(settings)
    status = EXIT_OK
    for path in args.scenarios:
        result = runner.run_file(path)
        sys.stdout.write(result.table())
        if args.out:
            target = Path(args.out)
            if len(args.scenarios) > 1 or target.is_dir():
                target.mkdir(parents=True, exist_ok=True)
                target = target / f"{result.scenario}.json"
            target.write_text(result.to_json(), encoding="utf-8")
        if any(a.error for a in result.actions):
            status = max(status, EXIT_COMPUTATION)
        elif not result.passed:
            status = max(status, EXIT_EXPECTATION)
    return status


def cmd_diagram(args, settings: Settings) -> int:
    reports = [report.load_report(p) for p in args.reports]
    _write(diagram.diagram(reports), args.out)
    return EXIT_OK


def _model(args, settings: Settings):
    s = load_scenario(args.scenario)
    return s, s.model(settings.seed, settings.prime)


def cmd_count(args, settings: Settings) -> int:
    s = load_scenario(args.scenario)

    def build(seed: int, prime: int) -> oracle.PolyIdeal:
        v = s.model(seed, prime)
        return oracle.PolyIdeal(v.equations, v.ambient)

    n = oracle.stable_count(build, settings.seeds, settings.primes, label=s.name)
    _write(f"{n}\n", args.out)
    return EXIT_OK


def cmd_chambers(args, settings: Settings) -> int:
    s = load_scenario(args.scenario)
    fan = cox.mori_chambers(s.ambient)
    lines = [f"{list(ray)} {' '.join(group)}" for ray, group in zip(fan.rays, fan.groups)]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_wellform(args, settings: Settings) -> int:
    s = load_scenario(args.scenario)
    c = cox.well_form(s.ambient, settings.max_inference_rounds)
    lines = [" ".join(c.names)] + [" ".join(map(str, row)) for row in c.rows]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_validate(args, settings: Settings) -> int:
    s = load_scenario(args.scenario)
    problems = cox.validate(s.ambient)
    if not cox.is_well_formed(s.ambient):
        problems.append("presentation is not well formed")
    _write(("\n".join(problems) if problems else f"{s.name}: ok") + "\n", args.out)
    return EXIT_INPUT if problems else EXIT_OK


def cmd_blowup(args, settings: Settings) -> int:
    _, v = _model(args, settings)
    kawamata = tuple(int(x) for x in args.kawamata.split(",")) if args.kawamata else None
    spec = game.BlowupSpec(tuple(args.centre), args.exceptional, kawamata)
    model, record = game.weighted_blow_up(v, spec, settings.max_inference_rounds)
    lines = [f"{record.label}: weights {dict(record.weights)}", model.ambient.describe()]
    lines += [poly.format_poly(e) for e in model.equations]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sing(args, settings: Settings) -> int:
    _, v = _model(args, settings)
    r = sing.coordinate_point_type(v, tuple(args.point))
    _write(f"{r.point}: {r.label}\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxgame", description="Replay 2-ray games on Cox presentations.")
    parser.add_argument("--seed", type=int, help="first generic-form seed (default 42)")
    parser.add_argument("--prime", type=int, help="coefficient field characteristic (default 32003)")
    parser.add_argument("--seed-replicas", type=int, help="number of seeds every fact is checked on (default 3)")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run every action of the scenarios")
    run.add_argument("scenarios", nargs="+")
    run.add_argument("--out", help="report file (or directory for several scenarios)")
    run.set_defaults(func=cmd_run)

    dot = sub.add_parser("diagram", help="DOT graph of the links in the reports")
    dot.add_argument("reports", nargs="+")
    dot.add_argument("--out")
    dot.set_defaults(func=cmd_diagram)

    for name, func, text in (
        ("count", cmd_count, "points of the scenario's equations"),
        ("chambers", cmd_chambers, "ray order of the Mori chamber fan"),
        ("wellform", cmd_wellform, "well-formed version of the ambient"),
        ("validate", cmd_validate, "check the ambient presentation"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("scenario")
        p.add_argument("--out")
        p.set_defaults(func=func)

    blowup = sub.add_parser("blowup", help="weighted blow-up of a coordinate point")
    blowup.add_argument("scenario")
    blowup.add_argument("--centre", nargs="+", required=True)
    blowup.add_argument("--exceptional", default="e")
    blowup.add_argument("--kawamata", help="r,a of a 1/r(a,r-a,1) centre")
    blowup.add_argument("--out")
    blowup.set_defaults(func=cmd_blowup)

    point = sub.add_parser("sing", help="singularity type at a coordinate point")
    point.add_argument("scenario")
    point.add_argument("--point", nargs="+", required=True)
    point.add_argument("--out")
    point.set_defaults(func=cmd_sing)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure(args.verbose)
    try:
        settings = load_settings().override(prime=args.prime, seed=args.seed, seed_replicas=args.seed_replicas)
        return args.func(args, settings)
    except (ScenarioError, PolynomialError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CoxGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
