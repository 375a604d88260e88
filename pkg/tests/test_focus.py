import random

import pytest
from hypothesis import given, settings, strategies as st

from prosogen.discourse import DiscourseModel, InformationStructure
from prosogen.focus import CONTRAST, NEW, Site, assign_focus, contrast_set, mark_newness, oracle_min_distinguishers
from prosogen.kb import Property, load_kb, props
from prosogen.terms import parse_term as t

from kbgen import random_focus_case

TUBE = Property("design", "adjectival", "tube")
AMP = Property("amplifier", "nominal")


class TestContrastSet:
    def test_tube_distinguishes_from_solid_state(self, stereo):
        dm = DiscourseModel(evoked=frozenset({"solid-state-amplifier"}))
        assert contrast_set(stereo, dm, "tube-amplifier", [TUBE, AMP]) == [TUBE]

    def test_nothing_evoked_means_no_contrast(self, stereo):
        assert contrast_set(stereo, DiscourseModel(), "tube-amplifier", [TUBE, AMP]) == []

    def test_entity_alternatives_come_from_delist(self, stereo):
        dm = DiscourseModel(delist=("x4",))
        assert contrast_set(stereo, dm, "x5", props(stereo, "x5")) == [TUBE]

    def test_trace_records_every_restriction(self, stereo):
        steps = []
        contrast_set(stereo, DiscourseModel(delist=("x4",)), "x5", [AMP, TUBE], steps)
        assert [(s.prop, s.added) for s in steps] == [(AMP, False), (TUBE, True)]
        assert steps[1].before == {"x4", "x5"} and steps[1].after == {"x5"}

    def test_order_matters(self):
        kb = load_kb("category thing.\nentity a isa thing.\nentity b isa thing.\nentity c isa thing.\n"
                     'lex red adj "red".\nlex big adj "big".\n'
                     "fact colour(a, red).\nfact size(a, big).\nfact colour(b, red).\nfact size(c, big).\n")
        dm = DiscourseModel(delist=("a", "b", "c"))
        red, big = Property("colour", "adjectival", "red"), Property("size", "adjectival", "big")
        assert contrast_set(kb, dm, "a", [red, big]) == [red, big]
        dm2 = DiscourseModel(delist=("a", "b"))
        assert contrast_set(kb, dm2, "a", [red, big]) == [big]
        assert contrast_set(kb, dm2, "a", [big, red]) == [big]

    def test_oracle_limit(self, stereo):
        with pytest.raises(ValueError):
            oracle_min_distinguishers(stereo, DiscourseModel(), "x4", [AMP] * 13)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_contrast_set_matches_oracle(seed):
    kb, dm, x, ps = random_focus_case(random.Random(seed))
    assert contrast_set(kb, dm, x, ps) == oracle_min_distinguishers(kb, dm, x, ps)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_contrast_set_properties(seed):
    kb, dm, x, ps = random_focus_case(random.Random(seed))
    cset = contrast_set(kb, dm, x, ps)
    # a subsequence of the input, every member true of x
    it = iter(ps)
    assert all(p in it for p in cset)
    from prosogen.discourse import evoked_alternatives
    # with no evoked alternatives nothing can contrast
    if evoked_alternatives(dm, kb, x) == {x}:
        assert cset == []


def test_mark_newness_is_incremental():
    sites = (Site("x4", "entity", "theme", text="X4"), Site("cost", "functor", "rheme", text="costs"),
             Site("x4", "entity", "rheme", text="it"), Site("the", "function", "rheme", text="the", accentable=False))
    assert mark_newness(DiscourseModel(), sites) == {0: NEW, 1: NEW}
    assert mark_newness(DiscourseModel(delist=("x4",), evoked=frozenset({"cost"})), sites) == {}


def test_number_words_are_property_store_entries():
    s = Site("hundred", "number", "rheme", text="hundred")
    assert s.store_key == "num:hundred"
    assert mark_newness(DiscourseModel(evoked=frozenset({"num:hundred"})), (s,)) == {}


def test_nuclear_default_gives_every_rheme_phrase_an_accent(stereo):
    dm = DiscourseModel(delist=("x4",), evoked=frozenset({"cost", "dollars"}))
    sites = (Site("x4", "entity", "theme", 0, text="it", form="pronoun"),
             Site("cost", "functor", "rheme", 1, text="costs"),
             Site("dollars", "property", "rheme", 1, text="dollars"))
    info = assign_focus(stereo, dm, InformationStructure(t("cost(x4, e9)"), ("x4",), ("e9",), sites=sites))
    assert {(m.position, m.kind) for m in info.rheme_foci} == {(2, NEW)}
    assert info.theme_foci == frozenset()


def test_assign_focus_relocates_contrast_to_distinguishing_word(stereo):
    dm = DiscourseModel(delist=("x4",), evoked=frozenset({"amplifier", "solid-state-amplifier", "solid-state"}))
    sites = (Site("x5", "entity", "theme", 0, text="X5"),
             Site("isa", "functor", "rheme", 1, text="is", accentable=False),
             Site("tube-amplifier", "class", "rheme", 1),
             Site("tube", "property", "rheme", 1, text="tube", owner=2, prop=TUBE),
             Site("amplifier", "property", "rheme", 1, text="amplifier", owner=2, prop=AMP))
    from prosogen.discourse import record_utterance
    dm = record_utterance(dm, InformationStructure(t("defn(isa(x4, solid-state-amplifier))"), (), (),
                                                   mentions=("x4",)))
    trace = []
    info = assign_focus(stereo, dm, InformationStructure(t("defn(isa(x5, tube-amplifier))"), ("x5",),
                                                         ("tube-amplifier",), sites=sites), trace)
    marks = {m.position: m.kind for m in info.foci}
    assert marks == {0: CONTRAST, 3: CONTRAST}
    assert any("CSet(tube-amplifier)" in line for line in trace)
    assert info.problems() == []
