import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from prosogen.cli_io import make_goal
from prosogen.content_planner import (
    Goal, PlanningError, apply_rhetorical, order_content, plan, segment_theme_rheme, select_content,
)
from prosogen.discourse import DiscourseModel, atomic_propositions
from prosogen.kb import load_kb
from prosogen.terms import parse_term as t

from kbgen import random_session


def terms(selected):
    return [str(s.term) for s in selected]


def test_select_content_for_x4(stereo):
    got = set(terms(select_content(stereo, make_goal("x4"))))
    assert got == {"isa(x4, solid-state-amplifier)", "design(x4, solid-state)", "cost(x4, e9)",
                   "produce(x4, e7)", "praise(e4, x4)", "revile(e5, x4)"}


def test_derived_proposition_contributes_grounding_facts(stereo):
    sel = {str(s.term): s for s in select_content(stereo, make_goal("x4"))}
    assert "rating(x4, powerful)" not in sel
    assert str(sel["produce(x4, e7)"].weight) == "3/5"


def test_no_matching_links_leaves_only_the_definition(stereo):
    assert terms(select_content(stereo, make_goal("x4", "bel(h1, nothing(X))"))) == ["isa(x4, solid-state-amplifier)"]


def test_thrifty_hearer_selects_differently(stereo):
    got = terms(select_content(stereo, make_goal("x4", hearer="h2")))
    assert "cost(x4, e9)" in got and "produce(x4, e7)" not in got


def test_missing_definition_is_a_planning_error(stereo):
    with pytest.raises(PlanningError):
        select_content(stereo, Goal("describe", "amplifier", t("bel(h1, good-to-buy(amplifier))")))
    with pytest.raises(PlanningError):
        select_content(stereo, make_goal("nope"))


def test_order_definition_first_then_weight_then_declaration(stereo):
    ordered = terms(order_content(stereo, make_goal("x4"), select_content(stereo, make_goal("x4"))))
    assert ordered == ["isa(x4, solid-state-amplifier)", "design(x4, solid-state)", "cost(x4, e9)",
                       "produce(x4, e7)", "praise(e4, x4)", "revile(e5, x4)"]


def test_rhetorical_grouping(stereo):
    items = apply_rhetorical(stereo, DiscourseModel(), [t(x) for x in (
        "isa(x4, solid-state-amplifier)", "design(x4, solid-state)", "cost(x4, e9)", "produce(x4, e7)",
        "praise(e4, x4)", "revile(e5, x4)")], "x4")
    assert [str(i) for i in items] == [
        "defn(isa(x4, solid-state-amplifier), design(x4, solid-state))",
        "conj(cost(x4, e9), produce(x4, e7))",
        "contrast(praise(e4, x4), revile(e5, x4))",
    ]


def test_rhetorical_collapse_into_coordination(stereo):
    items = apply_rhetorical(stereo, DiscourseModel(), [t("isa(x5, tube-amplifier)"), t("praise(e4, x5)"),
                                                        t("praise(e5, x5)")], "x5")
    assert str(items[1]) == "coord(praise(e4, x5), praise(e5, x5))"


def test_rhetorical_leaves_unrelated_material_alone(stereo):
    items = apply_rhetorical(stereo, DiscourseModel(), [t("isa(x4, solid-state-amplifier)"), t("cost(x4, e9)")], "x4")
    assert [str(i) for i in items] == ["defn(isa(x4, solid-state-amplifier))", "cost(x4, e9)"]


def test_segmentation_themes_the_target(stereo):
    items = plan(stereo, DiscourseModel(), make_goal("x5"))
    assert all(i.theme == ("x5",) for i in items)
    assert "tube-amplifier" in items[0].rheme and "x5" not in items[0].rheme


def test_segmentation_prefers_shared_material():
    dm = DiscourseModel()
    items = segment_theme_rheme(dm, [t("cost(a, b)"), t("amount(b, 5)")], target=None)
    assert items[0].theme == ("a",)
    assert items[1].theme == ("b",)


def _covers(kb, goal):
    selected = {s.term for s in select_content(kb, goal)}
    items = plan(kb, DiscourseModel(), goal)
    conveyed = []
    for i in items:
        conveyed.extend(atomic_propositions(i.semantics))
    return selected, conveyed, items


def test_plan_is_a_grouping_of_the_selection(stereo):
    selected, conveyed, items = _covers(stereo, make_goal("x4"))
    assert sorted(map(str, conveyed)) == sorted(map(str, selected))
    assert items[0].semantics.functor == "defn"


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_plan_invariants_on_random_domains(seed):
    kb, goals = random_session(random.Random(seed))
    goal = make_goal(goals[0], "bel(H, buy(X))")
    selected, conveyed, items = _covers(kb, goal)
    assert sorted(map(str, conveyed)) == sorted(map(str, selected))
    assert items[0].semantics.functor == "defn" and items[0].semantics.args[0].functor == "isa"
    assert plan(kb, DiscourseModel(), goal) == items
    # coherence: every later item shares the target with the one before it
    for prev, cur in zip(items, items[1:]):
        assert set(prev.theme) & set(t_ for p in atomic_propositions(cur.semantics) for t_ in p.args)
