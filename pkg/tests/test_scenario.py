import json

import pytest

import errors
from errors import ScenarioError
from conftest import SCENARIOS
from scenario import ACTIONS, load_scenario, parse_scenario

PLANE = {
    "name": "plane",
    "ambient": {"variables": ["x", "y", "z"], "rows": [[1, 1, 1]]},
    "forms": [{"name": "F", "degree": 2, "variables": ["x", "y", "z"]}],
    "equations": ["F", "x*y - z^2"],
    "actions": [{"action": "count", "expect": {"count": 4}}],
}


@pytest.fixture(autouse=True)
def reset_error_flag():
    yield
    errors.set_err_status(False)


def variant(**changes):
    data = json.loads(json.dumps(PLANE))
    data.update(changes)
    return data


def test_parse_plane():
    s = parse_scenario(PLANE)
    assert s.name == "plane"
    assert s.label == "plane"
    assert s.ambient.irrelevant == (frozenset({"x", "y", "z"}),)
    assert s.actions[0].kind == "count"
    assert s.actions[0].expect == {"count": 4}
    v = s.model(1, 101)
    assert len(v.equations) == 2
    assert s.model(1, 101).equations == v.equations


@pytest.mark.parametrize("path", sorted(p.name for p in SCENARIOS.glob("*.json")))
def test_bundled_scenarios_validate(scenarios_dir, path):
    s = load_scenario(scenarios_dir / path)
    assert s.actions
    assert all(a.kind in ACTIONS for a in s.actions)
    assert s.path == scenarios_dir / path


def test_pfaffian_scenario(x_scenario):
    v = x_scenario.model(42, 32003)
    assert len(v.equations) == 5
    assert sorted(v.degrees()) == [(3,), (4,), (4,), (4,), (5,)]
    assert x_scenario.label == "X"


def test_resolve_is_relative_to_the_file(scenarios_dir):
    s = load_scenario(scenarios_dir / "Zt-blowup-link.json")
    assert s.resolve("Y-pz-link.json") == scenarios_dir / "Y-pz-link.json"


@pytest.mark.parametrize(
    "data",
    [
        {k: v for k, v in PLANE.items() if k != "name"},
        variant(ambient={"variables": ["x", "y"], "rows": [[1, 1, 1]]}),
        variant(ambient={"variables": ["x", "y", "z"], "rows": [[2, 2, 2]]}),
        variant(actions=[{"action": "dance"}]),
        variant(actions=[{"expect": {}}]),
        variant(equations=["x + y^2"]),
        variant(equations=["x + w"]),
        variant(equations=["x +"]),
        variant(forms=[{"name": "F", "variables": ["x"]}]),
        variant(forms=[{"name": "F", "degree": 2, "variables": ["q"]}]),
        variant(pfaffian=["x"] * 9),
    ],
)
def test_invalid_scenarios(data):
    with pytest.raises(ScenarioError):
        parse_scenario(data)


def test_bad_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "name": "broken",\n  "ambient": }\n', encoding="utf-8")
    with pytest.raises(ScenarioError, match="line 3"):
        load_scenario(path)


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioError):
        load_scenario(tmp_path / "nope.json")
