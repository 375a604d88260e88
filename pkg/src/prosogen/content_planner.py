"""Content planning: selection, ordering, rhetorical grouping, theme/rheme."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .discourse import DiscourseModel, atomic_propositions, contrast_pairs
from .kb import KnowledgeBase, alternatives, support_degree
from .terms import Term, atoms, substitute, unify

MAX_CONJUNCTS = 3


class PlanningError(Exception):
    pass


@dataclass(frozen=True)
class Goal:
    kind: str
    target: str
    intention: Term
    hearer: str = "h1"


@dataclass(frozen=True)
class Selected:
    term: Term
    weight: Fraction
    index: int  # declaration order of the grounding fact


@dataclass(frozen=True)
class PlanItem:
    semantics: Term
    tense: str
    theme: tuple
    rheme: tuple

    def describe(self) -> str:
        return "%s [%s] theme=%s rheme=%s" % (self.semantics, self.tense,
                                             "(" + ", ".join(map(str, self.theme)) + ")",
                                             "(" + ", ".join(map(str, self.rheme)) + ")")


def _check_goal(kb, goal):
    if goal.kind != "describe":
        raise PlanningError("unsupported goal kind %r" % goal.kind)
    if not kb.is_declared(goal.target):
        raise PlanningError("undeclared goal target %s" % goal.target)


def definition(kb, target) -> Term:
    if not kb.is_entity(target) or kb.parent(target) is None:
        raise PlanningError("%s has no definitional isa" % target)
    return Term("isa", (target, kb.parent(target)))


def select_content(kb: KnowledgeBase, goal: Goal) -> list:
    """Propositions about the target that support the intention, plus its definition."""
    _check_goal(kb, goal)
    chosen = {}
    defn = definition(kb, goal.target)
    chosen[defn] = Selected(defn, Fraction(0), -1)

    def add(term, weight, index):
        old = chosen.get(term)
        if old is None or (old.weight, -old.index) < (weight, -index):
            chosen[term] = Selected(term, max(weight, old.weight if old else weight), index)

    for link in kb.supports:
        s = unify(link.intention, goal.intention)
        if s is None:
            continue
        for s2, used in kb.solve([link.proposition], s):
            prop = substitute(link.proposition, s2)
            if goal.target not in atoms(prop):
                continue
            weight = support_degree(kb, prop, goal.intention)
            if weight <= 0:
                continue
            stored = [f for f in used if f in kb.facts]
            index = min((kb.facts.index(f) for f in stored), default=len(kb.facts))
            direct = [f for f in stored if f.term.functor == prop.functor]
            if direct:
                add(prop.with_tense(direct[0].tense), weight, index)
            else:
                # derived: convey the facts it rests on
                for f in stored:
                    if f.term.args and f.term.args[0] == goal.target:
                        add(f.term, weight, kb.facts.index(f))
    return list(chosen.values())


def order_content(kb: KnowledgeBase, goal: Goal, selected) -> list:
    defn = definition(kb, goal.target)
    items = list(selected)
    if not any(s.term == defn for s in items):
        raise PlanningError("definition of %s missing from the selection" % goal.target)
    rest = sorted((s for s in items if s.term != defn), key=lambda s: (-s.weight, s.index))
    first = next(s for s in items if s.term == defn)
    return [first] + rest


def _is_attribute(kb, t: Term, target) -> bool:
    if t.arity != 2 or t.args[0] != target or not isinstance(t.args[1], str):
        return False
    lex = kb.lexicon.get(t.args[1])
    verb = kb.lexicon.get(t.functor)
    return lex is not None and lex.part_of_speech == "adjective" and not (verb and verb.part_of_speech == "verb")


def _collapsible(kb, p: Term, q: Term) -> bool:
    if p.functor != q.functor or p.arity != q.arity or p.tense != q.tense:
        return False
    diff = [(a, b) for a, b in zip(p.args, q.args) if a != b]
    if len(diff) != 1:
        return False
    a, b = diff[0]
    return isinstance(a, str) and isinstance(b, str) and kb.is_declared(a) and kb.is_declared(b) \
        and b in alternatives(kb, a)


def apply_rhetorical(kb: KnowledgeBase, dm: DiscourseModel, ordered, target=None) -> list:
    """Group ordered propositions into sentence-sized items.

    Attribute facts are folded into the definition, contrasting neighbours
    become ``contrast(p, q)``, neighbours differing in one alternative argument
    become ``coord(p, q)``, and runs of plain clauses become ``conj(...)``.
    """
    terms = [s.term if hasattr(s, "term") else s for s in ordered]
    if not terms:
        return []
    if target is None:
        target = terms[0].args[0] if terms[0].functor == "isa" else None
    head, rest = terms[0], terms[1:]
    if head.functor == "isa":
        absorbed = [t for t in rest if _is_attribute(kb, t, target)]
        rest = [t for t in rest if t not in absorbed]
        head = Term("defn", (head, *absorbed), head.tense)

    def pairwise(items, test, make):
        out, i = [], 0
        while i < len(items):
            if i + 1 < len(items) and items[i].functor not in ("contrast", "coord") \
                    and items[i + 1].functor not in ("contrast", "coord") and test(items[i], items[i + 1]):
                out.append(make(items[i], items[i + 1]))
                i += 2
            else:
                out.append(items[i])
                i += 1
        return out

    rest = pairwise(rest, lambda p, q: contrast_pairs(kb, p, q) is not None,
                    lambda p, q: Term("contrast", (p, q), p.tense))
    rest = pairwise(rest, lambda p, q: _collapsible(kb, p, q), lambda p, q: Term("coord", (p, q), p.tense))

    grouped, run = [], []

    def flush():
        if len(run) == 1:
            grouped.append(run[0])
        elif run:
            grouped.append(Term("conj", tuple(run), run[0].tense))
        run.clear()

    for t in rest:
        if t.functor == "contrast" or (target is not None and target not in atoms(t)):
            flush()
            grouped.append(t)
            continue
        run.append(t)
        if len(run) == MAX_CONJUNCTS:
            flush()
    flush()
    return [head] + grouped


def _mentioned(t) -> list:
    out = []
    for a in atoms(t):
        if isinstance(a, tuple):
            out.extend(a)
        elif isinstance(a, str):
            out.append(a)
    return list(dict.fromkeys(out))


def _functors(t) -> list:
    out = []
    for p in atomic_propositions(t):
        if isinstance(p, Term) and p.functor != "isa":
            out.append(p.functor)
    return list(dict.fromkeys(out))


def segment_theme_rheme(dm: DiscourseModel, items, target=None) -> list:
    """Theme: the entity shared with the previous utterance (the target by default)."""
    out = []
    previous = list(dm.last_mentions)
    for t in items:
        mentioned = _mentioned(t)
        if target is None:
            target = mentioned[0] if mentioned else None
        shared = [x for x in mentioned if x in previous]
        theme_entity = target if (target in shared or not shared) else shared[0]
        theme = (theme_entity,) if theme_entity is not None else ()
        rheme = tuple(x for x in mentioned + _functors(t) if x not in theme)
        first = atomic_propositions(t)[0]
        out.append(PlanItem(t, getattr(first, "tense", "timeless"), theme, rheme))
        previous = mentioned
    return out


def plan(kb: KnowledgeBase, dm: DiscourseModel, goal: Goal) -> list:
    ordered = order_content(kb, goal, select_content(kb, goal))
    items = apply_rhetorical(kb, dm, ordered, goal.target)
    return segment_theme_rheme(dm, items, goal.target)
