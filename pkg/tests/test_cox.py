import random

import pytest

import cox
from conftest import BLOWN_UP_NAMES, BLOWN_UP_ROWS, STACKY_ROWS
from cox import Chamber, CoxPresentation
from errors import PresentationError


def test_validate_reports_problems():
    c = CoxPresentation.from_rows(["x", "x", "y"], [[2, 2, 4]], [["x", "w"]])
    problems = cox.validate(c)
    assert any("duplicate" in p for p in problems)
    assert any("unknown" in p for p in problems)
    with pytest.raises(PresentationError):
        cox.check(c)


def test_validate_non_surjective():
    c = CoxPresentation.from_rows(["x", "y"], [[2, 4]], [["x", "y"]])
    assert any("surjective" in p for p in cox.validate(c))


def test_stacky_grading_passes_structural_check():
    c = CoxPresentation.from_rows(BLOWN_UP_NAMES, STACKY_ROWS, [BLOWN_UP_NAMES])
    assert cox.validate(c)
    assert cox.check(c, surjective=False) is c
    assert cox.well_form(c).rows == BLOWN_UP_ROWS
    dup = CoxPresentation.from_rows(["x", "x"], [[2, 2]], [["x"]])
    with pytest.raises(PresentationError):
        cox.check(dup, surjective=False)


def test_row_length_mismatch():
    with pytest.raises(PresentationError):
        CoxPresentation.from_rows(["x", "y"], [[1, 1, 1]])


def test_well_form_rank_one():
    c = CoxPresentation.from_rows(["x", "y", "z"], [[2, 2, 3]], [["x", "y", "z"]])
    assert not cox.is_well_formed(c)
    w = cox.well_form(c)
    assert w.rows == [[1, 1, 3]]
    assert cox.is_well_formed(w)


def test_well_form_keeps_good_presentation(x_presentation):
    assert cox.is_well_formed(x_presentation)
    assert cox.well_form(x_presentation).rows == x_presentation.rows


def test_well_form_of_kawamata_blowup():
    c = CoxPresentation.from_rows(BLOWN_UP_NAMES, STACKY_ROWS, [BLOWN_UP_NAMES])
    assert not cox.is_well_formed(c)
    w = cox.well_form(c)
    assert w.rows == BLOWN_UP_ROWS
    assert cox.is_well_formed(w)


def test_well_form_rank_deficient():
    c = CoxPresentation.from_rows(["x", "y"], [[1, 1], [2, 2]])
    with pytest.raises(PresentationError):
        cox.well_form(c)


def test_mori_chambers_order(blown_up_presentation):
    fan = cox.mori_chambers(blown_up_presentation)
    assert fan.groups == (("u",), ("y",), ("x", "x1", "x2"), ("z",), ("y1",), ("x3",))
    assert fan.rays == ((0, -1), (2, -1), (1, 0), (3, 1), (2, 1), (1, 1))
    assert len(fan.chambers) == 5
    assert fan.ray_of("x1") == 2


def test_mori_chambers_needs_rank_two(x_presentation):
    with pytest.raises(PresentationError):
        cox.mori_chambers(x_presentation)


def test_irrelevant_ideal_and_locate(blown_up_presentation):
    fan = cox.mori_chambers(blown_up_presentation)
    first = Chamber((2, -1), (1, 0))
    ideal = cox.irrelevant_ideal_of_chamber(blown_up_presentation, first, fan)
    assert set(ideal) == {frozenset({"u", "y"}), frozenset({"x", "x1", "x2", "z", "y1", "x3"})}
    assert fan.locate(blown_up_presentation) == fan.chamber_index(first)


def test_unstable_loci_of_first_flop(blown_up_presentation):
    before = Chamber((2, -1), (1, 0))
    after = Chamber((1, 0), (3, 1))
    loci = cox.unstable_loci(blown_up_presentation, before, after)
    assert frozenset({"z", "y1", "x3"}) in loci


def test_not_a_chamber(blown_up_presentation):
    fan = cox.mori_chambers(blown_up_presentation)
    with pytest.raises(PresentationError):
        fan.chamber_index(Chamber((0, -1), (1, 0)))


def test_minimal_transversals():
    found = cox.minimal_transversals([{"a", "b"}, {"b", "c"}], ["a", "b", "c"])
    assert set(found) == {frozenset({"b"}), frozenset({"a", "c"})}


def test_chart_rank_one_to_rank_two(blown_up_presentation):
    c = cox.chart(blown_up_presentation, "x3")
    assert c.rank == 1
    assert "x3" not in c.names
    assert c.irrelevant == (frozenset({"u", "y"}),)
    assert {n: d[0] for n, d in zip(c.names, c.degrees)} == {
        "u": 1, "y": 3, "x": 1, "x1": 1, "x2": 1, "z": 2, "y1": 1,
    }


def test_chart_non_primitive():
    c = CoxPresentation.from_rows(["a", "b", "e"], [[1, 0, 2], [0, 1, 2]])
    with pytest.raises(PresentationError):
        cox.chart(c, "e")


ZT_NAMES = ["w", "x2", "x3", "y1", "x", "x1", "y"]
ZT_ROWS = [[1, 1, 1, 2, 0, 0, 1], [-2, -1, -1, -2, 1, 1, 0]]


@pytest.mark.parametrize(
    "names, rows",
    [
        (BLOWN_UP_NAMES, STACKY_ROWS),
        (BLOWN_UP_NAMES, BLOWN_UP_ROWS),
        (["x", "y", "z"], [[2, 2, 3]]),
        (["x", "y", "z"], [[1, 2, 2]]),
        (["x", "y", "z", "t"], [[6, 10, 15, 30]]),
        (["x", "x1", "x2", "x3", "y", "y1", "z"], [[1, 1, 1, 1, 2, 2, 3]]),
        (ZT_NAMES, ZT_ROWS),
    ],
)
def test_well_form_is_idempotent(names, rows):
    once = cox.well_form(CoxPresentation.from_rows(names, rows, [names]))
    assert cox.is_well_formed(once)
    assert cox.well_form(once).rows == once.rows


def test_well_form_is_idempotent_on_random_weights():
    rng = random.Random(4)
    for _ in range(30):
        names = ["a", "b", "c", "d"]
        once = cox.well_form(CoxPresentation.from_rows(names, [[rng.randint(1, 12) for _ in names]], [names]))
        assert cox.is_well_formed(once)
        assert cox.well_form(once).rows == once.rows


def test_mori_chambers_after_blowing_up_pz():
    names = ["w", "z", "x", "x1", "x2", "x3", "y", "y1"]
    rows = [[0, 3, 1, 1, 1, 1, 2, 2], [-1, -1, 1, 1, 0, 0, 1, 0]]
    fan = cox.mori_chambers(CoxPresentation.from_rows(names, rows, [["w", "z"], names[2:]]))
    assert [set(g) for g in fan.groups] == [{"w"}, {"z"}, {"x2", "x3", "y1"}, {"y"}, {"x", "x1"}]
    assert fan.rays == ((0, -1), (3, -1), (1, 0), (2, 1), (1, 1))
    assert len(fan.chambers) == 4


def test_chart_drops_components_holding_the_variable():
    c = CoxPresentation.from_rows(ZT_NAMES, ZT_ROWS, [["x", "x1"], ["w", "x2", "x3", "y1", "y"]])
    on = cox.chart(c, "x1")
    assert on.names == ("w", "x2", "x3", "y1", "x", "y")
    assert on.rows == [[1, 1, 1, 2, 0, 1]]
    assert on.irrelevant == (frozenset({"w", "x2", "x3", "y1", "y"}),)
