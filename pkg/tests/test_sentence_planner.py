import random

import pytest
from hypothesis import given, settings, strategies as st

from prosogen.cli_io import generate, make_goal
from prosogen.content_planner import PlanItem, PlanningError, plan
from prosogen.discourse import DiscourseModel, InformationStructure, evoked_alternatives, record_utterance
from prosogen.kb import has_property, load_kb
from prosogen.sentence_planner import (
    ReferringExpression, choose_referring_expression, interject_other, plan_sentence, to_realizer_input,
)
from prosogen.terms import parse_term as t

import fixtures
from kbgen import random_session


def words(sp):
    return " ".join(s.text for s in sp.sites if s.text is not None)


def run_goal(kb, dm, target):
    plans = []
    for item in plan(kb, dm, make_goal(target)):
        sp = plan_sentence(kb, dm, item)
        plans.append(sp)
        dm = record_utterance(dm, sp.info)
    return plans, dm


class TestReferringExpressions:
    def test_pronoun_for_the_central_entity(self, stereo):
        dm = record_utterance(DiscourseModel(), InformationStructure(t("p"), (), (), mentions=("x4",)))
        assert choose_referring_expression(stereo, dm, "x4").form == "pronoun"

    def test_no_pronoun_when_ambiguous(self, stereo):
        dm = record_utterance(DiscourseModel(), InformationStructure(t("p"), (), (), mentions=("x4", "x5")))
        assert choose_referring_expression(stereo, dm, "x5").form == "proper-name"

    def test_no_pronoun_for_quantities(self, stereo):
        dm = record_utterance(DiscourseModel(), InformationStructure(t("p"), (), (), mentions=("e9",)))
        re = choose_referring_expression(stereo, dm, "e9")
        assert re.form == "indefinite-NP" and re.quantity == 800

    def test_first_journal_gets_an_appositive(self, stereo):
        re = choose_referring_expression(stereo, DiscourseModel(), "e4")
        assert re.form == "proper-name"
        assert [p.name for p in re.appositive.properties] == ["journal", "audio"]

    def test_appositive_omitted_when_believed(self, stereo):
        dm = DiscourseModel(beliefs=frozenset({t("isa(e4, audio-journal)")}))
        assert choose_referring_expression(stereo, dm, "e4").appositive is None

    def test_interject_other(self, stereo):
        re = choose_referring_expression(stereo, DiscourseModel(), "e5")
        dm = DiscourseModel(beliefs=frozenset({t("isa(e4, audio-journal)")}))
        assert interject_other(dm, re, stereo).appositive.other
        assert not interject_other(DiscourseModel(), re, stereo).appositive.other
        plain = ReferringExpression("x4", "pronoun", word="it")
        assert interject_other(dm, plain, stereo) == plain

    def test_definite_np_is_minimal(self):
        kb = fixtures.amplifiers_kb()
        dm = DiscourseModel(delist=("a-british", "a-american"))
        re = choose_referring_expression(kb, dm, "a-american")
        assert re.form == "definite-NP" and [p.name for p in re.properties] == ["amplifier", "american"]
        alone = choose_referring_expression(kb, DiscourseModel(delist=("a-american",)), "a-american")
        assert [p.name for p in alone.properties] == ["amplifier"]

    def test_missing_lexicalization(self):
        kb = load_kb("category thing.\nentity a isa thing.\n")
        with pytest.raises(PlanningError):
            choose_referring_expression(kb, DiscourseModel(), "a")


def test_golden_sentence_plans(stereo):
    plans, dm = run_goal(stereo, DiscourseModel(), "x4")
    assert words(plans[0]) == "the X4 is a 'solid-state amplifier"
    assert words(plans[1]) == "it costs eight hundred dollars and produces one hundred watts-per-'channel"
    assert words(plans[2]) == ("it was praised by Stereofool an audio journal but was reviled by Audiofad "
                               "another audio journal")
    assert [s.strength for s in plans[2].segments] == ["weak", "clause", "clause", "clause", "final"]
    assert [s.appositive for s in plans[2].segments] == [False, False, True, False, True]
    plans, _ = run_goal(stereo, dm, "x5")
    assert words(plans[0]) == "the X5 is a tube amplifier"
    assert words(plans[1]) == ("it costs nine hundred dollars produces two hundred watts-per-'channel and "
                               "was praised by Stereofool and Audiofad")


def test_realizer_input_signs(stereo):
    plans, _ = run_goal(stereo, DiscourseModel(), "x4")
    ri = to_realizer_input(plans[0])
    assert [(s.tier, s.category) for s in ri.signs] == [("theme", "np"), ("rheme", "s\\np")]
    ri = to_realizer_input(plans[1])
    assert ri.theme.accentless and not ri.rheme.accentless


def test_fixture_signs():
    kb = fixtures.amplifiers_kb()
    dm, item = fixtures.minimal_pair_a()
    ri = to_realizer_input(plan_sentence(kb, dm, item))
    assert [(s.tier, s.category) for s in ri.signs] == [("theme", "s/np"), ("rheme", "np")]
    dm, item = fixtures.minimal_pair_b()
    ri = to_realizer_input(plan_sentence(kb, dm, item))
    assert [(s.tier, s.category) for s in ri.signs] == [("rheme", "np"), ("theme", "s\\np")]
    dm, item = fixtures.unmarked_theme()
    assert to_realizer_input(plan_sentence(kb, dm, item)).theme.accentless


def test_unrealizable_functor(stereo):
    item = PlanItem(t("weighs(x4, e9)"), "timeless", ("x4",), ("e9",))
    with pytest.raises(PlanningError, match="weighs"):
        plan_sentence(stereo, DiscourseModel(), item)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_marks_land_on_accentable_words_and_nps_are_minimal(seed):
    kb, goals = random_session(random.Random(seed))
    dm = DiscourseModel()
    for g in goals:
        for item in plan(kb, dm, make_goal(g, "bel(H, buy(X))")):
            sp = plan_sentence(kb, dm, item)
            assert sp.info.problems() == []
            for m in sp.info.foci:
                site = sp.sites[m.position]
                assert site.text is not None and site.accentable
            for _, re in sp.refs:
                if re.form == "definite-NP":
                    head, rest = re.properties[0], list(re.properties[1:])
                    others = [y for y in evoked_alternatives(dm, kb, re.entity) if y != re.entity]
                    for p in rest:
                        keep = [q for q in rest if q != p]
                        assert any(all(has_property(kb, y, q) for q in [head] + keep) for y in others)
            dm = record_utterance(dm, sp.info)
