"""Sentence planning: realization forms, referring expressions, focus marks.

A planned sentence is a flat, surface-ordered list of :class:`Site` records
grouped into prosodic segments. Entities described by a noun phrase get a
wordless site that owns the sites of the words describing them.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .content_planner import PlanItem, PlanningError
from .discourse import DiscourseModel, InformationStructure, atomic_propositions, evoked_alternatives
from .focus import Site, assign_focus
from .kb import KnowledgeBase, Property, has_property, props
from .terms import Term
from . import words


@dataclass(frozen=True)
class ReferringExpression:
    entity: str
    form: str  # pronoun | proper-name | definite-NP | indefinite-NP
    properties: tuple = ()
    relative_clause: Optional[tuple] = None  # nominal properties realized as "that is a N"
    appositive: Optional["ReferringExpression"] = None
    other: bool = False
    quantity: Optional[float] = None
    word: Optional[str] = None  # pronoun


@dataclass(frozen=True)
class Segment:
    tier: str
    strength: str  # weak | clause | final
    appositive: bool = False


@dataclass(frozen=True)
class SentencePlan:
    plan_item: PlanItem
    sites: tuple
    segments: tuple
    info: InformationStructure
    refs: tuple = ()  # (position, ReferringExpression)
    slots: dict = field(default_factory=dict, compare=False)

    @property
    def boundary_plan(self):
        return [s.strength for s in self.segments]

    def describe(self) -> str:
        out = ["item: %s  theme=%s rheme=%s" % (self.plan_item.semantics, list(map(str, self.plan_item.theme)),
                                                  list(map(str, self.plan_item.rheme)))]
        for n, seg in enumerate(self.segments):
            ws = []
            for i, s in enumerate(self.sites):
                if s.segment != n:
                    continue
                m = self.info.mark_at(i)
                tag = "" if m is None else m.symbol
                ws.append(tag + (s.text if s.text is not None else "[%s]" % s.key))
            out.append("  %s/%s%s: %s" % (seg.tier, seg.strength, " appositive" if seg.appositive else "", " ".join(ws)))
        return "\n".join(out)


@dataclass(frozen=True)
class Sign:
    tier: str
    category: str
    segments: tuple  # (Segment, tuple of RealizerWord)
    accentless: bool = False


@dataclass(frozen=True)
class RealizerWord:
    text: str
    key: str
    mark: Optional[str] = None  # "new" | "contrast"
    accentable: bool = True
    lexical: bool = True


@dataclass(frozen=True)
class RealizerInput:
    signs: tuple

    @property
    def theme(self):
        return next((s for s in self.signs if s.tier == "theme"), None)

    @property
    def rheme(self):
        return next((s for s in self.signs if s.tier == "rheme"), None)


# -- referring expressions ----------------------------------------------------


def _quantity(kb, x):
    for f in kb.facts:
        if f.term.functor == "amount" and f.term.arity == 2 and f.term.args[0] == x:
            return f.term.args[1]
    return None


def _pronominal(kb, dm, x) -> bool:
    if x not in dm.last_mentions or _quantity(kb, x) is not None:
        return False
    root = kb.root(x)
    if any(y != x and kb.is_entity(y) and kb.root(y) == root for y in dm.last_mentions):
        return False
    for d in dm.delist:
        if kb.is_entity(d) and kb.root(d) == root:
            return d == x
    return False


def _describing_props(kb, x):
    ps = props(kb, x)
    heads = [p for p in ps if p.kind == "nominal" and p.value is None]
    if not heads:
        return None, []
    return heads[0], [p for p in ps if not (p.kind == "nominal" and p.value is None)]


def _minimal(kb, dm, x, head, rest):
    distractors = {y for y in evoked_alternatives(dm, kb, x) if y != x and has_property(kb, y, head)}
    chosen = []
    for p in rest:
        if not distractors:
            break
        if any(not has_property(kb, y, p) for y in distractors):
            chosen.append(p)
            distractors = {y for y in distractors if has_property(kb, y, p)}
    base = {y for y in evoked_alternatives(dm, kb, x) if y != x and has_property(kb, y, head)}
    for p in list(reversed(chosen)):
        trial = [q for q in chosen if q != p]
        left = {y for y in base if all(has_property(kb, y, q) for q in trial)}
        if left <= distractors:
            chosen = trial
    return [p for p in rest if p in chosen]


def choose_referring_expression(kb: KnowledgeBase, dm: DiscourseModel, x, role="rheme",
                                allow_appositive=True) -> ReferringExpression:
    if not kb.is_declared(x):
        raise PlanningError("undeclared entity %s" % x)
    lex = kb.lexicon.get(x)
    if kb.is_entity(x) and _pronominal(kb, dm, x):
        return ReferringExpression(x, "pronoun", word=(lex.pronoun if lex and lex.pronoun else "it"))
    q = _quantity(kb, x)
    head, rest = _describing_props(kb, x)
    if lex is not None and lex.part_of_speech == "proper-name":
        appositive = None
        category = kb.parent(x)
        if allow_appositive and head is not None and Term("isa", (x, category)) not in dm.beliefs:
            appositive = ReferringExpression(x, "indefinite-NP", (head, *[p for p in rest if p.kind == "adjectival"]))
        return ReferringExpression(x, "proper-name", appositive=appositive)
    if head is None:
        raise PlanningError("no lexical entry to realize %s" % x)
    if q is not None:
        return ReferringExpression(x, "indefinite-NP", (head,), quantity=q)
    if kb.is_entity(x) and x in dm.delist:
        chosen = _minimal(kb, dm, x, head, rest)
        form = "definite-NP"
    else:
        chosen, form = rest, "indefinite-NP"
    adjs = tuple(p for p in chosen if p.kind == "adjectival")
    rel = tuple(p for p in chosen if p.kind == "nominal")
    return ReferringExpression(x, form, (head,) + adjs, relative_clause=rel or None)


def interject_other(dm: DiscourseModel, re: ReferringExpression, kb: KnowledgeBase = None) -> ReferringExpression:
    """Turn a repeated descriptor ("an audio journal") into "another audio journal"."""
    if re.appositive is None:
        return re
    category = kb.parent(re.entity) if kb is not None else None
    for b in dm.beliefs:
        if b.functor == "isa" and b.arity == 2 and b.args[0] != re.entity and \
                (category is None or b.args[1] == category):
            return replace(re, appositive=replace(re.appositive, other=True))
    return re


def class_description(kb, category, extra=()) -> ReferringExpression:
    head, rest = _describing_props(kb, category)
    if head is None:
        raise PlanningError("no lexical entry to realize category %s" % category)
    chosen = list(rest) + [p for p in extra if p not in rest]
    adjs = tuple(p for p in chosen if p.kind == "adjectival")
    rel = tuple(p for p in chosen if p.kind == "nominal")
    return ReferringExpression(category, "indefinite-NP", (head,) + adjs, relative_clause=rel or None)


# -- sentence building ---------------------------------------------------------


def _lex(kb, key, what="word"):
    e = kb.lexicon.get(key)
    if e is None:
        raise PlanningError("missing lexical entry for %s %s" % (what, key))
    return e


class _Builder:
    def __init__(self, kb, dm, item):
        self.kb, self.dm, self.item = kb, dm, item
        self.theme = set(item.theme)
        self.sites, self.segments, self.refs = [], [], []
        self.seg_tier = None
        self.seg_appositive = False
        self.beliefs = set(dm.beliefs)
        self.slots = {}

    # segments
    def _current(self):
        return len(self.segments)

    def add(self, **kw):
        tier = kw["tier"]
        if self.seg_tier is not None and tier != self.seg_tier:
            self.close("weak")
        self.seg_tier = tier
        site = Site(segment=self._current(), **kw)
        self.sites.append(site)
        if kw.get("role"):
            self.slots.setdefault(kw["role"], []).append(len(self.sites) - 1)
        return len(self.sites) - 1

    def word(self, text, tier, role=None):
        return self.add(key=text.lower(), kind="function", tier=tier, text=text, accentable=False, role=role)

    def close(self, strength):
        if self.seg_tier is None:
            return
        self.segments.append(Segment(self.seg_tier, strength, self.seg_appositive))
        self.seg_tier = None
        self.seg_appositive = False

    def tier(self, key):
        return "theme" if key in self.theme else "rheme"

    # noun phrases
    def noun_phrase(self, re: ReferringExpression, tier, role, kind="entity", coordinated=False):
        kb = self.kb
        if re.form == "pronoun":
            pos = self.add(key=re.entity, kind="entity", tier=tier, text=re.word, form="pronoun",
                           role=role, coordinated=coordinated)
            self.refs.append((pos, re))
            return pos
        if re.form == "proper-name":
            lex = _lex(kb, re.entity, "entity")
            toks = lex.words
            stressed = next((i for i, w in enumerate(toks) if w.startswith("'")), len(toks) - 1)
            pos = None
            for i, w in enumerate(toks):
                if i == stressed:
                    pos = self.add(key=re.entity, kind="entity", tier=tier, text=w.lstrip("'"),
                                   form="proper-name", accentable=lex.accentable, role=role, coordinated=coordinated)
                else:
                    self.word(w, tier, role)
            self.refs.append((pos, re))
            return pos
        pos = self.add(key=re.entity, kind=kind, tier=tier, form=re.form, role=role, coordinated=coordinated)
        self.refs.append((pos, re))
        head, adjs = re.properties[0], re.properties[1:]
        head_lex = _lex(kb, head.name, "property")
        if re.quantity is not None:
            for w in words.number_words(re.quantity):
                self.add(key=w, kind="number", tier=tier, text=w, owner=pos, role=role)
            self._prop(head, tier, role, pos)
            return pos
        adj_texts = [_lex(kb, p.name, "property").surface for p in adjs]
        first = (adj_texts + [head_lex.surface])[0]
        if re.other:
            self.add(key="other", kind="property", tier=tier, text="another" if re.form != "definite-NP" else "other",
                     role=role)
        elif head_lex.mass:
            pass
        elif re.form == "definite-NP":
            self.word("the", tier, role)
        else:
            self.word(words.indefinite_article(first), tier, role)
        for p in adjs:
            self._prop(p, tier, role, pos)
        self._prop(head, tier, role, pos)
        for p in re.relative_clause or ():
            self.word("that", tier, role)
            self.word("is", tier, role)
            noun = _lex(kb, p.name, "property").surface
            self.word(words.indefinite_article(noun), tier, role)
            self._prop(p, tier, role, pos)
        return pos

    def _prop(self, p: Property, tier, role, owner):
        lex = _lex(self.kb, p.name, "property")
        toks = lex.words
        for w in toks[:-1]:
            self.word(w, tier, role)
        return self.add(key=p.name, kind="property", tier=tier, text=toks[-1], owner=owner, prop=p,
                        accentable=lex.accentable, role=role)

    def entity(self, x, tier, role, allow_appositive=False, coordinated=False):
        if not isinstance(x, str) or not self.kb.is_declared(x):
            lex = _lex(self.kb, str(x), "value")
            return self.add(key=str(x), kind="property", tier=tier, text=lex.surface, accentable=lex.accentable,
                            role=role)
        dm = replace(self.dm, beliefs=frozenset(self.beliefs))
        re = choose_referring_expression(self.kb, self.dm, x, tier, allow_appositive=allow_appositive)
        re = interject_other(dm, re, self.kb)
        pos = self.noun_phrase(re, tier, role, coordinated=coordinated)
        if re.appositive is not None:
            self.close("clause")
            self.seg_appositive = True
            self.noun_phrase(re.appositive, tier, role, kind="descriptor")
            self.seg_appositive = True
            self.beliefs.add(Term("isa", (x, self.kb.parent(x))))
        return pos

    # clauses
    def clause(self, prop: Term, with_subject=True, subject_plural=None):
        kb = self.kb
        theme_entities = [a for a in self.item.theme if isinstance(a, str) and kb.is_entity(a)]
        if prop.functor == "isa" and prop.arity == 2:
            return self._copula(prop.args[0], prop, with_subject)
        if prop.arity == 1:
            return self._copula(prop.args[0], prop, with_subject)
        if prop.arity != 2:
            raise PlanningError("cannot realize %s" % prop)
        a, b = prop.args
        verb = kb.lexicon.get(prop.functor)
        if verb is None or verb.part_of_speech != "verb":
            if isinstance(b, str) and kb.lexicon.get(b) and kb.lexicon[b].part_of_speech == "adjective":
                return self._copula(a, prop, with_subject)
            raise PlanningError("missing lexical entry for functor %s" % prop.functor)
        passive = b in theme_entities and a not in theme_entities and prop.functor not in self.theme
        subj, obj = (b, a) if passive else (a, b)
        plural = self._subject(subj, with_subject) if with_subject else bool(subject_plural)
        vtier = self.tier(prop.functor)
        past = prop.tense == "past"
        if passive:
            self.word(("were" if plural else "was") if past else ("are" if plural else "is"), vtier, "verb")
            self.add(key=prop.functor, kind="functor", tier=vtier, text=words.participle(verb.surface),
                     accentable=verb.accentable, role="verb")
            self.word("by", self.tier(obj), "obj")
        else:
            form = words.past(verb.surface) if past else (
                words.base_form(verb.surface) if plural else words.third_singular(verb.surface))
            self.add(key=prop.functor, kind="functor", tier=vtier, text=form, accentable=verb.accentable, role="verb")
        self._object(obj, prop)
        return plural

    def _object(self, obj, prop):
        if isinstance(obj, tuple):
            first, second = obj
            self.entity(first, self.tier(first), "obj", coordinated=True)
            self.add(key="and", kind="coord", tier=self.tier(first), text="and", role="obj")
            self.entity(second, self.tier(second), "obj", coordinated=True)
        else:
            self.entity(obj, self.tier(obj), "obj", allow_appositive=True)

    def _subject(self, subj, with_subject=True):
        pos = self.entity(subj, self.tier(subj), "subj")
        site = self.sites[pos]
        lex = self.kb.lexicon.get(subj)
        return (site.form == "pronoun" and site.text == "they") or bool(lex and lex.pronoun == "they")

    def _copula(self, x, prop, with_subject):
        plural = self._subject(x) if with_subject else False
        past = prop.tense == "past"
        verb_text = ("were" if plural else "was") if past else ("are" if plural else "is")
        tier = self.tier(prop.functor) if prop.functor != "isa" else "rheme"
        if prop.functor == "isa":
            self.add(key="isa", kind="functor", tier=tier, text=verb_text, accentable=False, role="verb")
            extra = [Property(a.functor, "adjectival", a.args[1]) for a in self.absorbed]
            self.noun_phrase(class_description(self.kb, prop.args[1], extra), tier, "obj", kind="class")
        else:
            self.word(verb_text, tier, "verb")
            value = prop.functor if prop.arity == 1 else prop.args[1]
            p = Property(prop.functor, "adjectival", None if prop.arity == 1 else value)
            self._prop(p, tier, "obj", None)
        return plural


def _coord_object(p: Term, q: Term, theme):
    diff = [i for i, (a, b) in enumerate(zip(p.args, q.args)) if a != b]
    i = diff[0]
    args = list(p.args)
    args[i] = (p.args[i], q.args[i])
    return Term(p.functor, tuple(args), p.tense)


def plan_sentence(kb: KnowledgeBase, dm: DiscourseModel, item: PlanItem, trace=None) -> SentencePlan:
    b = _Builder(kb, dm, item)
    b.absorbed = []
    sem = item.semantics
    if sem.functor == "defn":
        isa, *b.absorbed = sem.args
        b.clause(isa)
    elif sem.functor == "contrast":
        p, q = sem.args
        plural = b.clause(p)
        b.close("clause")
        b.word("but", "rheme")
        b.clause(q, with_subject=False, subject_plural=plural)
    elif sem.functor == "conj":
        plural = None
        for n, part in enumerate(sem.args):
            if n:
                b.close("clause")
                if n == len(sem.args) - 1:
                    b.word("and", "rheme")
            clause = _coord_object(*part.args, item.theme) if part.functor == "coord" else part
            plural = b.clause(clause, with_subject=n == 0, subject_plural=plural)
    elif sem.functor == "coord":
        b.clause(_coord_object(*sem.args, item.theme))
    else:
        b.clause(sem)
    b.close("final")

    sites = tuple(b.sites)
    realized = list(atomic_propositions(sem)) + [t for t in b.beliefs if t not in dm.beliefs]
    info = InformationStructure(
        proposition=sem,
        theme=tuple(item.theme),
        rheme=tuple(item.rheme),
        sites=sites,
        mentions=tuple(s.key for s in sites if s.kind == "entity"),
        evoked=tuple(dict.fromkeys(s.store_key for s in sites
                                   if s.accentable and s.kind in ("property", "functor", "number", "class"))),
        realized=tuple(realized),
    )
    info = assign_focus(kb, dm, info, trace)
    return SentencePlan(item, sites, tuple(b.segments), info, tuple(b.refs), b.slots)


_CATEGORY_BY_ROLES = {
    frozenset({"subj"}): "np",
    frozenset({"obj"}): "np",
    frozenset({"verb"}): "s\\np",
    frozenset({"verb", "obj"}): "s\\np",
    frozenset({"subj", "verb"}): "s/np",
    frozenset({"subj", "verb", "obj"}): "s",
}


def _lexical(s: Site) -> bool:
    # built-in words (copula, pronouns, "another") need no lexicon entry
    if s.form == "pronoun" or s.key in ("isa", "other"):
        return False
    return s.kind in ("entity", "property", "functor")


def to_realizer_input(sp: SentencePlan) -> RealizerInput:
    signs = []
    for n, seg in enumerate(sp.segments):
        ws = []
        roles = set()
        for i, s in enumerate(sp.sites):
            if s.segment != n or s.text is None:
                continue
            m = sp.info.mark_at(i)
            ws.append(RealizerWord(s.text, s.key, m.kind if m else None, s.accentable,
                                   _lexical(s)))
            if s.role:
                roles.add(s.role)
        entry = (seg, tuple(ws), frozenset(roles))
        if signs and signs[-1][0] == seg.tier:
            signs[-1][1].append(entry)
        else:
            signs.append((seg.tier, [entry]))
    out = []
    for tier, entries in signs:
        roles = frozenset().union(*(e[2] for e in entries))
        category = _CATEGORY_BY_ROLES.get(roles, "s")
        accentless = tier == "theme" and not any(w.mark for e in entries for w in e[1])
        out.append(Sign(tier, category, tuple((e[0], e[1]) for e in entries), accentless))
    return RealizerInput(tuple(out))
