"""Contrastive focus and the three-step focus assignment."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .discourse import (
    DiscourseModel,
    FocusMark,
    InformationStructure,
    atomic_propositions,
    contrast_pairs,
    evoked_alternatives,
    find_contrast,
)
from .kb import KnowledgeBase, Property, has_property
from .terms import Term
from .words import number_words

NEW, CONTRAST = "new", "contrast"
ORACLE_LIMIT = 12


@dataclass(frozen=True)
class Site:
    """One markable position of a planned sentence.

    ``text`` is ``None`` for entities realized only through their properties.
    ``owner`` is the position of the entity site a property/number site describes.
    """

    key: str
    kind: str  # entity | class | property | functor | number | coord | function
    tier: str
    segment: int = 0
    text: Optional[str] = None
    owner: Optional[int] = None
    accentable: bool = True
    form: Optional[str] = None  # referring-expression form of entity sites
    prop: Optional[Property] = None
    role: Optional[str] = None  # subj | verb | obj
    coordinated: bool = False

    @property
    def store_key(self):
        return "num:" + self.key if self.kind == "number" else self.key


@dataclass(frozen=True)
class RestrictionStep:
    prop: Property
    before: frozenset
    after: frozenset
    added: bool


def contrast_set(kb: KnowledgeBase, dm: DiscourseModel, x, properties, trace=None) -> list:
    """Properties of ``x`` that strictly narrow its set of evoked alternatives.

    Each property in turn restricts the running set to members satisfying it;
    the property joins the contrast set only if something was eliminated.
    """
    rset = frozenset(evoked_alternatives(dm, kb, x))
    cset = []
    for p in properties:
        narrowed = frozenset(y for y in rset if has_property(kb, y, p))
        added = narrowed != rset
        if added:
            cset.append(p)
        if trace is not None:
            trace.append(RestrictionStep(p, rset, narrowed, added))
        rset = narrowed
    return cset


def oracle_min_distinguishers(kb: KnowledgeBase, dm: DiscourseModel, x, properties) -> list:
    """Brute-force replay of the restriction loop, for cross-checking.

    Works from the raw hierarchy and fact tables: every prefix of the property
    list is re-evaluated from scratch against every candidate.
    """
    properties = list(properties)
    if len(properties) > ORACLE_LIMIT:
        raise ValueError("oracle limited to %d properties" % ORACLE_LIMIT)

    def up(n):
        chain = []
        p = kb.entities.get(n, kb.categories.get(n))
        while p is not None:
            chain.append(p)
            p = kb.categories.get(p)
        return chain

    is_entity = x in kb.entities
    pool = kb.entities if is_entity else kb.categories
    evoked = set(dm.delist) if is_entity else set(dm.evoked)
    near = set(up(x)[:2])
    candidates = {x} | {y for y in pool if y != x and y in evoked and near & set(up(y)[:2])}

    def satisfies(y, p):
        if p.kind == "nominal" and p.value is None and p.key in kb.categories:
            return y == p.key or p.key in up(y)
        owners = {y, *up(y)}
        want = () if p.value is None else (p.value,)
        return any(f.term.functor == p.key and f.term.args[:1] and f.term.args[0] in owners
                   and tuple(f.term.args[1:]) == want for f in kb.facts)

    def surviving(n):
        return {y for y in candidates if all(satisfies(y, p) for p in properties[:n])}

    return [p for i, p in enumerate(properties) if surviving(i + 1) != surviving(i)]


def mark_newness(dm: DiscourseModel, sites) -> dict:
    """Map site position -> NEW for material not yet in the discourse.

    Evaluated left to right, so a second mention inside the utterance is given.
    """
    delist, evoked = set(dm.delist), set(dm.evoked)
    marks = {}
    for i, s in enumerate(sites):
        if not s.accentable or s.kind in ("function", "coord"):
            continue
        if s.kind == "entity":
            if s.key not in delist:
                marks[i] = NEW
                delist.add(s.key)
        elif s.store_key not in evoked:
            marks[i] = NEW
            evoked.add(s.store_key)
    return marks


def _item_parts(t):
    """Yield (term, coordinated-position) for the clauses of a plan item."""
    if not isinstance(t, Term):
        return
    if t.functor == "coord":
        p, q = t.args
        diff = [i for i, (a, b) in enumerate(zip(p.args, q.args)) if a != b]
        yield t, diff[0] if diff else None
    elif t.functor in ("conj", "defn", "contrast"):
        for a in t.args:
            yield from _item_parts(a)
    else:
        yield t, None


def _coordinator_contrast(kb, dm, coord: Term) -> bool:
    """A coordination whose members were last presented as a contrast."""
    p, q = coord.args
    diff = [i for i, (a, b) in enumerate(zip(p.args, q.args)) if a != b]
    if len(diff) != 1:
        return False
    i = diff[0]
    mine = {p.args[i], q.args[i]}
    for record in reversed(dm.isstore):
        for part in _contrast_items(record.proposition):
            a, b = part.args
            if a.arity == p.arity and {a.args[i], b.args[i]} == mine and a.functor != b.functor:
                return True
    return False


def _contrast_items(t):
    if isinstance(t, Term):
        if t.functor == "contrast":
            yield t
        for a in t.args:
            yield from _contrast_items(a)


def _number_words(sites, owner):
    return [(i, s) for i, s in enumerate(sites) if s.kind == "number" and s.owner == owner]


def assign_focus(kb: KnowledgeBase, dm: DiscourseModel, info: InformationStructure, trace=None) -> InformationStructure:
    sites = info.sites
    log = trace.append if trace is not None else (lambda line: None)

    # step 1: given/new
    marks = mark_newness(dm, sites)
    log("newness: %s" % _fmt(sites, marks))

    def upgrade(pred):
        for i, s in enumerate(sites):
            if pred(s) and s.accentable:
                marks[i] = CONTRAST

    counterpart = {}

    # step 2: contrasts inside a rhetorical contrast item, then against the ISStore
    for item in _contrast_items(info.proposition):
        p, q = item.args
        pairs = contrast_pairs(kb, p, q) or []
        if p.functor != q.functor:
            upgrade(lambda s: s.kind == "functor" and s.key in (p.functor, q.functor))
        for a, b in pairs:
            upgrade(lambda s: s.key in (a, b) and s.kind in ("entity", "property"))
            counterpart.setdefault(a, b)
            counterpart.setdefault(b, a)
        log("contrast item %s: pairs %s" % (item, pairs))
    for part, coordinated in _item_parts(info.proposition):
        if part.functor == "coord":
            if _coordinator_contrast(kb, dm, part):
                upgrade(lambda s: s.kind == "coord")
                log("coordination %s mirrors an earlier contrast" % part)
            members = part.args
        else:
            members = (part,)
        for prop in members:
            q = find_contrast(dm, kb, prop)
            if q is None:
                continue
            pairs = contrast_pairs(kb, prop, q)
            for pos, (a, b) in enumerate(zip(prop.args, q.args)):
                if (a, b) not in pairs or pos == coordinated:
                    continue
                upgrade(lambda s: s.key == a and s.kind in ("entity", "class", "property"))
                counterpart.setdefault(a, b)
            log("%s contrasts with stored %s: pairs %s" % (prop, q, pairs))

    # step 3: move contrast from described entities onto distinguishing words
    for i, s in enumerate(sites):
        if s.kind not in ("entity", "class") or s.text is not None:
            continue
        numbers = _number_words(sites, i)
        if numbers:
            if marks.get(i) == CONTRAST and s.key in counterpart:
                _mark_leftmost_difference(kb, numbers, counterpart[s.key], marks)
            continue
        owned = [(j, t) for j, t in enumerate(sites) if t.owner == i and t.prop is not None]
        if not owned:
            continue
        steps = [] if trace is not None else None
        cset = contrast_set(kb, dm, s.key, [t.prop for _, t in owned], steps)
        for j, t in owned:
            if t.prop in cset and t.accentable:
                marks[j] = CONTRAST
        if steps:
            for st in steps:
                log("  %s: RSet %s -> %s%s" % (st.prop, sorted(st.before), sorted(st.after),
                                                " (CSet += %s)" % st.prop if st.added else ""))
        log("CSet(%s) = %s" % (s.key, [str(p) for p in cset]))

    # only marks on realized, accentable words survive
    marks = {i: k for i, k in marks.items() if sites[i].text is not None and sites[i].accentable}

    # every rheme phrase needs a nucleus
    for seg in sorted({s.segment for s in sites if s.tier == "rheme"}):
        idx = [i for i, s in enumerate(sites) if s.segment == seg]
        if not any(i in marks for i in idx):
            cands = [i for i in idx if sites[i].text is not None and sites[i].accentable
                     and sites[i].kind not in ("function", "coord")]
            if cands:
                marks[cands[-1]] = NEW
    log("final: %s" % _fmt(sites, marks))

    theme, rheme = set(), set()
    for i, kind in marks.items():
        mark = FocusMark(sites[i].key, kind, i)
        (theme if sites[i].tier == "theme" else rheme).add(mark)
    return replace(info, theme_foci=frozenset(theme), rheme_foci=frozenset(rheme))


def _mark_leftmost_difference(kb, numbers, other, marks):
    theirs = [f.term.args[1] for f in kb.facts if f.term.functor == "amount" and f.term.args[0] == other]
    if not theirs:
        return
    other_words = number_words(theirs[0])
    for n, (i, s) in enumerate(numbers):
        if n >= len(other_words) or other_words[n] != s.key:
            marks[i] = CONTRAST
            return


def _fmt(sites, marks):
    return " ".join(("•" if marks.get(i) == CONTRAST else "∘" if marks.get(i) == NEW else "") + s.key
                    for i, s in enumerate(sites))


__all__ = ["Site", "Property", "FocusMark", "RestrictionStep", "contrast_set",
           "oracle_min_distinguishers", "mark_newness", "assign_focus", "NEW", "CONTRAST"]
