"""Discourse model: entity recency list, evoked properties, IS history."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .kb import KnowledgeBase, alternatives
from .terms import Term

DEFAULT_K = 20


@dataclass(frozen=True)
class FocusMark:
    target: str
    kind: str  # "new" | "contrast"
    position: int = -1  # index of the marked site in the sentence plan

    @property
    def symbol(self):
        return "•" if self.kind == "contrast" else "∘"

    def __str__(self):
        return self.symbol + self.target


@dataclass(frozen=True)
class InformationStructure:
    """Theme/rheme split of one utterance plus its focus marks.

    ``sites`` is the surface-ordered list of markable positions produced by the
    sentence planner; marks refer to sites by position.
    """

    proposition: Term
    theme: tuple
    rheme: tuple
    theme_foci: frozenset = frozenset()
    rheme_foci: frozenset = frozenset()
    sites: tuple = ()
    mentions: tuple = ()
    evoked: tuple = ()
    realized: tuple = ()

    @property
    def foci(self):
        return self.theme_foci | self.rheme_foci

    def mark_at(self, position) -> Optional[FocusMark]:
        for m in self.foci:
            if m.position == position:
                return m
        return None

    def problems(self) -> list:
        out = []
        if set(self.theme) & set(self.rheme):
            out.append("theme and rheme overlap: %s" % sorted(map(str, set(self.theme) & set(self.rheme))))
        positions = [m.position for m in self.foci]
        if len(positions) != len(set(positions)):
            out.append("a site carries more than one focus mark")
        if self.sites:
            for m in self.foci:
                if not 0 <= m.position < len(self.sites):
                    out.append("focus mark %s points outside the utterance" % m)
                    continue
                tier = self.sites[m.position].tier
                if (m in self.theme_foci) != (tier == "theme"):
                    out.append("focus mark %s filed under the wrong tier" % m)
        return out


@dataclass(frozen=True)
class DiscourseModel:
    delist: tuple = ()
    k: int = DEFAULT_K
    evoked: frozenset = frozenset()
    isstore: tuple = ()
    beliefs: frozenset = frozenset()

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("DElist capacity must be positive")

    @property
    def last_mentions(self) -> tuple:
        return self.isstore[-1].mentions if self.isstore else ()

    def describe(self) -> str:
        lines = ["DElist: [%s]" % ", ".join(self.delist),
                 "evoked: {%s}" % ", ".join(sorted(self.evoked)),
                 "ISStore (%d):" % len(self.isstore)]
        for i, rec in enumerate(self.isstore):
            marks = " ".join(str(m) for m in sorted(rec.foci, key=lambda m: m.position))
            lines.append("  %d. %s | theme=%s rheme=%s | %s" % (
                i, rec.proposition, list(map(str, rec.theme)), list(map(str, rec.rheme)), marks))
        return "\n".join(lines)


def push_entity(dm: DiscourseModel, x) -> DiscourseModel:
    entries = (x,) + tuple(e for e in dm.delist if e != x)
    return replace(dm, delist=entries[: dm.k])


def evoked_alternatives(dm: DiscourseModel, kb: KnowledgeBase, x) -> set:
    # categories (class descriptions) count as evoked through the property store
    pool = set(dm.delist) if kb.is_entity(x) else set(dm.evoked)
    return {x} | (alternatives(kb, x) & pool)


def atomic_propositions(t) -> list:
    """Flatten defn/conj/contrast/coord wrappers into plain propositions."""
    if isinstance(t, Term) and t.functor in ("defn", "conj", "contrast", "coord"):
        out = []
        for a in t.args:
            out.extend(atomic_propositions(a))
        return out
    return [t]


def contrast_pairs(kb: KnowledgeBase, p: Term, q: Term) -> Optional[list]:
    """Argument pairs making ``p`` contrast with ``q``; ``None`` if they don't.

    Either two alternative argument pairs under the same functor, or one pair
    plus alternative functors. Every other argument must be identical.
    """
    if not (isinstance(p, Term) and isinstance(q, Term)) or p.arity != q.arity:
        return None
    pairs = []
    for a, b in zip(p.args, q.args):
        if a == b:
            continue
        if isinstance(a, str) and isinstance(b, str) and kb.is_declared(a) and kb.is_declared(b) \
                and b in alternatives(kb, a):
            pairs.append((a, b))
        else:
            return None
    if p.functor == q.functor:
        return pairs if len(pairs) >= 2 else None
    if kb.is_declared(p.functor) and kb.is_declared(q.functor) and q.functor in alternatives(kb, p.functor):
        return pairs if len(pairs) >= 1 else None
    return None


def find_contrast(dm: DiscourseModel, kb: KnowledgeBase, prop: Term) -> Optional[Term]:
    """Most recent stored proposition contrasting with ``prop``."""
    for record in reversed(dm.isstore):
        for q in atomic_propositions(record.proposition):
            if contrast_pairs(kb, prop, q) is not None:
                return q
    return None


def record_utterance(dm: DiscourseModel, info: InformationStructure) -> DiscourseModel:
    for x in info.mentions:
        dm = push_entity(dm, x)
    return replace(
        dm,
        evoked=dm.evoked | frozenset(info.evoked),
        isstore=dm.isstore + (info,),
        beliefs=dm.beliefs | frozenset(info.realized),
    )
