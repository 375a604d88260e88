"""Knowledge base: category hierarchy, facts, rules, support weights, lexicon.

The file format is line oriented; each statement ends with a ``.`` at the end
of a line and may span several lines::

    category amplifier.
    category tube-amplifier under amplifier.
    entity x5 isa tube-amplifier.
    fact cost(x5, e10) pres.
    rule rating(X, powerful) :- produce(X, Y), isa(Y, watts-per-channel),
        amount(Y, Z), geq(Z, 100).
    support cost(X, Y) => bel(H, good-to-buy(X)) weight 0.7.
    lex x5 propn "the X5".
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .terms import Term, TermReader, TermSyntaxError, Var, format_arg, is_ground, substitute, unify, variables

COMPARISONS = {"geq": lambda a, b: a >= b, "leq": lambda a, b: a <= b, "eq": lambda a, b: a == b}
POS_NAMES = {"noun": "noun", "adj": "adjective", "verb": "verb", "propn": "proper-name"}
TENSE_KEYWORDS = {"past": "past", "pres": "present"}


class KBError(Exception):
    """Base class for knowledge base load errors; carries a source position."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = "" if line is None else "line %d, column %d: " % (line, column or 1)
        super().__init__(where + message)


class KBSyntaxError(KBError):
    pass


class UndeclaredEntityError(KBError):
    pass


class UndeclaredCategoryError(KBError):
    pass


class CyclicHierarchyError(KBError):
    pass


class RecursiveRuleError(KBError):
    pass


class ArityError(KBError):
    pass


class DuplicateDeclarationError(KBError):
    pass


@dataclass(frozen=True)
class Fact:
    term: Term
    tense: str = "timeless"


@dataclass(frozen=True)
class Rule:
    head: Term
    body: tuple


@dataclass(frozen=True)
class SupportLink:
    proposition: object
    intention: object
    weight: Fraction


@dataclass(frozen=True)
class LexEntry:
    key: str
    part_of_speech: str
    surface: str
    accentable: bool = True
    mass: bool = False
    pronoun: Optional[str] = None

    @property
    def words(self):
        return self.surface.split()


@dataclass(frozen=True)
class Property:
    """A unary property of an entity: a category (nominal) or attribute value."""

    key: str
    kind: str  # "nominal" | "adjectival"
    value: Optional[str] = None

    @property
    def name(self):
        return self.value if self.value is not None else self.key

    def __str__(self):
        return self.name


@dataclass
class KnowledgeBase:
    categories: dict = field(default_factory=dict)  # name -> parent or None
    entities: dict = field(default_factory=dict)  # name -> category
    facts: list = field(default_factory=list)
    rules: list = field(default_factory=list)
    supports: list = field(default_factory=list)
    lexicon: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index()

    def _index(self):
        self._by_functor = {}
        for i, f in enumerate(self.facts):
            self._by_functor.setdefault(f.term.functor, []).append((i, f))
        self._rules_by_functor = {}
        for r in self.rules:
            self._rules_by_functor.setdefault(r.head.functor, []).append(r)
        self._children = {}
        for name, parent in itertools.chain(self.categories.items(), self.entities.items()):
            if parent is not None:
                self._children.setdefault(parent, []).append(name)

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return (
            self.categories == other.categories
            and self.entities == other.entities
            and self.facts == other.facts
            and [(f.term, f.tense) for f in self.facts] == [(f.term, f.tense) for f in other.facts]
            and self.rules == other.rules
            and self.supports == other.supports
            and self.lexicon == other.lexicon
        )

    # -- hierarchy ---------------------------------------------------------

    def is_declared(self, x) -> bool:
        return x in self.entities or x in self.categories

    def is_entity(self, x) -> bool:
        return x in self.entities

    def is_category(self, x) -> bool:
        return x in self.categories

    def parent(self, x):
        if x in self.entities:
            return self.entities[x]
        return self.categories.get(x)

    def ancestors(self, x) -> list:
        """Categories above ``x``, nearest first (``x`` itself excluded)."""
        out = []
        p = self.parent(x)
        while p is not None:
            out.append(p)
            p = self.categories.get(p)
        return out

    def is_a(self, x, category) -> bool:
        return category in self.ancestors(x)

    def root(self, x):
        chain = self.ancestors(x)
        return chain[-1] if chain else x

    def descendants(self, c) -> list:
        out, stack = [], list(self._children.get(c, ()))
        while stack:
            n = stack.pop(0)
            out.append(n)
            stack.extend(self._children.get(n, ()))
        return out

    def declaration_index(self, fact: Fact) -> int:
        return self.facts.index(fact)

    # -- inference ---------------------------------------------------------

    def _fact_candidates(self, pattern: Term, subst):
        """Stored facts plus downward inheritance of facts stated about categories."""
        first = substitute(pattern.args[0], subst) if pattern.args else None
        for i, f in self._by_functor.get(pattern.functor, ()):
            yield f.term, f
            head = f.term.args[0] if f.term.args else None
            if head in self.categories:
                below = self.descendants(head)
                if is_ground(first):
                    below = [first] if first in below else []
                for d in below:
                    yield Term(f.term.functor, (d,) + f.term.args[1:]), f

    def solve(self, goals, subst=None, depth=0) -> Iterator:
        """Backward evaluation of a conjunction; yields ``(subst, support)``.

        ``support`` lists the stored facts (and ``isa`` links) the proof used.
        """
        subst = {} if subst is None else subst
        if not goals:
            yield subst, []
            return
        goal, rest = goals[0], goals[1:]
        goal = substitute(goal, subst)
        if isinstance(goal, Term) and goal.functor in COMPARISONS and goal.arity == 2:
            a, b = goal.args
            if isinstance(a, (int, float)) and isinstance(b, (int, float)):
                if COMPARISONS[goal.functor](a, b):
                    yield from self.solve(rest, subst, depth)
            return
        if not isinstance(goal, Term):
            return
        if goal.functor == "isa" and goal.arity == 2:
            yield from self._solve_isa(goal, rest, subst, depth)
            return
        for candidate, fact in self._fact_candidates(goal, subst):
            s = unify(goal, candidate, subst)
            if s is not None:
                for s2, used in self.solve(rest, s, depth):
                    yield s2, [fact] + used
        for n, rule in enumerate(self._rules_by_functor.get(goal.functor, ())):
            renamed = _rename(rule, "_%d_%d" % (depth, n))
            s = unify(goal, renamed.head, subst)
            if s is None:
                continue
            for s_body, used_body in self.solve(list(renamed.body), s, depth + 1):
                for s2, used in self.solve(rest, s_body, depth):
                    yield s2, used_body + used

    def _solve_isa(self, goal, rest, subst, depth):
        x, c = goal.args
        xs = [x] if is_ground(x) else list(self.entities) + list(self.categories)
        for xv in xs:
            cs = [c] if is_ground(c) else self.ancestors(xv)
            for cv in cs:
                if self.is_declared(xv) and cv in self.ancestors(xv):
                    s = unify(goal, Term("isa", (xv, cv)), subst)
                    if s is not None:
                        for s2, used in self.solve(rest, s, depth):
                            yield s2, [Fact(Term("isa", (xv, cv)))] + used

    def explain(self, prop):
        """Return the supporting facts of one proof of ``prop`` or ``None``."""
        for _, used in self.solve([prop]):
            return used
        return None


def _rename(rule: Rule, suffix: str) -> Rule:
    mapping = {}
    for v in itertools.chain(variables(rule.head), *(variables(b) for b in rule.body)):
        mapping[v] = Var(v.name + suffix)
    return Rule(substitute(rule.head, mapping), tuple(substitute(b, mapping) for b in rule.body))


# -- queries ----------------------------------------------------------------


def holds(kb: KnowledgeBase, prop) -> bool:
    if not is_ground(prop):
        raise ValueError("holds() needs a ground proposition, got %s" % prop)
    return kb.explain(prop) is not None


def alternatives(kb: KnowledgeBase, x) -> set:
    """Declared items of the same kind sharing a parent or grandparent with ``x``."""
    if not kb.is_declared(x):
        raise KeyError("undeclared: %s" % x)
    mine = set(kb.ancestors(x)[:2])
    pool = kb.entities if kb.is_entity(x) else kb.categories
    return {y for y in pool if y != x and mine & set(kb.ancestors(y)[:2])}


def props(kb: KnowledgeBase, x) -> list:
    """Unary properties of ``x``: nominal ones first, then adjectival."""
    if not kb.is_declared(x):
        raise KeyError("undeclared: %s" % x)
    chain = ([x] if kb.is_category(x) else []) + kb.ancestors(x)
    nominal = [Property(c, "nominal") for c in chain if _pos(kb, c) == "noun"]
    owners = {x, *kb.ancestors(x)}
    adjectival, attr_nominal = [], []
    seen = set()
    for f in kb.facts:
        t = f.term
        if not t.args or t.args[0] not in owners:
            continue
        if t.arity == 1 and _pos(kb, t.functor) == "adjective":
            p = Property(t.functor, "adjectival")
        elif t.arity == 2 and isinstance(t.args[1], str) and not kb.is_entity(t.args[1]):
            pos = _pos(kb, t.args[1])
            if pos == "adjective":
                p = Property(t.functor, "adjectival", t.args[1])
            elif pos == "noun":
                p = Property(t.functor, "nominal", t.args[1])
            else:
                continue
        else:
            continue
        if (p.key, p.value) in seen:
            continue
        seen.add((p.key, p.value))
        (adjectival if p.kind == "adjectival" else attr_nominal).append(p)
    return nominal + attr_nominal + adjectival


def has_property(kb: KnowledgeBase, y, p: Property) -> bool:
    if p.value is None and p.kind == "nominal" and kb.is_category(p.key):
        return y == p.key or kb.is_a(y, p.key)
    args = (y,) if p.value is None else (y, p.value)
    return kb.explain(Term(p.key, args)) is not None


def support_degree(kb: KnowledgeBase, prop, intention) -> Fraction:
    best = Fraction(0)
    for link in kb.supports:
        s = unify(link.proposition, prop)
        if s is not None and unify(link.intention, intention, s) is not None:
            best = max(best, link.weight)
    return best


def _pos(kb, key):
    e = kb.lexicon.get(key)
    return e.part_of_speech if e else None


# -- loading ----------------------------------------------------------------

_LEX = re.compile(
    r'^lex\s+(?P<key>\S+)\s+(?P<pos>noun|adj|verb|propn)\s+"(?P<surface>[^"]*)"(?P<opts>(?:\s+\S+)*)\s*$'
)
_NAME = re.compile(r"^[a-z0-9][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*$")


def _statements(text):
    """Yield (statement, start_offset, full_text) with comments stripped."""
    buf, start = [], None
    offset = 0
    for line in text.splitlines(keepends=True):
        code = _strip_comment(line)
        if code.strip():
            if start is None:
                start = offset + (len(code) - len(code.lstrip()))
                buf = []
            buf.append(code.rstrip("\n"))
            if code.rstrip().endswith("."):
                yield "\n".join(buf).strip()[:-1], start
                start = None
        elif start is not None:
            buf.append("")
        offset += len(line)
    if start is not None:
        raise KBSyntaxError("statement not terminated by '.'", *_linecol(text, start))


def _strip_comment(line):
    in_quote = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i] + "\n"
    return line


def _linecol(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Loader:
    def __init__(self, text):
        self.text = text
        self.kb = KnowledgeBase()
        self.pending_refs = []  # (symbol, offset) checked after load
        self.arity = {}

    def err(self, cls, msg, offset):
        raise cls(msg, *_linecol(self.text, offset))

    def load(self):
        for stmt, start in _statements(self.text):
            keyword = stmt.split(None, 1)[0]
            handler = getattr(self, "_stmt_" + keyword, None)
            if handler is None:
                self.err(KBSyntaxError, "unknown statement %r" % keyword, start)
            handler(stmt, start)
        self._check()
        self.kb._index()
        return self.kb

    def _term(self, stmt, start, pos):
        reader = TermReader(stmt, pos)
        try:
            t = reader.read()
        except TermSyntaxError as e:
            self.err(KBSyntaxError, str(e), start + e.pos)
        return t, reader.pos

    def _stmt_category(self, stmt, start):
        m = re.match(r"^category\s+(\S+)(?:\s+under\s+(\S+))?\s*$", stmt, re.S)
        if not m or not _NAME.match(m.group(1)) or (m.group(2) and not _NAME.match(m.group(2))):
            self.err(KBSyntaxError, "expected 'category <name> [under <parent>]'", start)
        name, parent = m.group(1), m.group(2)
        if self.kb.is_declared(name):
            self.err(DuplicateDeclarationError, "duplicate declaration of %s" % name, start)
        self.kb.categories[name] = parent
        if parent:
            self.pending_refs.append(("category", parent, start + m.start(2)))

    def _stmt_entity(self, stmt, start):
        m = re.match(r"^entity\s+(\S+)\s+isa\s+(\S+)\s*$", stmt, re.S)
        if not m or not _NAME.match(m.group(1)):
            self.err(KBSyntaxError, "expected 'entity <name> isa <category>'", start)
        name = m.group(1)
        if self.kb.is_declared(name):
            self.err(DuplicateDeclarationError, "duplicate declaration of %s" % name, start)
        self.kb.entities[name] = m.group(2)
        self.pending_refs.append(("category", m.group(2), start + m.start(2)))

    def _stmt_fact(self, stmt, start):
        pos = len("fact")
        t, pos = self._term(stmt, start, pos)
        rest = stmt[pos:].strip()
        if not isinstance(t, Term) or rest not in ("", *TENSE_KEYWORDS):
            self.err(KBSyntaxError, "expected 'fact <functor>(<args>) [past|pres]'", start + pos)
        if not is_ground(t):
            self.err(KBSyntaxError, "facts must be ground", start)
        if t.functor == "isa":
            self.err(KBSyntaxError, "isa links are declared with 'entity' or 'category'", start)
        self._check_arity(t, start)
        for a in t.args:
            if isinstance(a, Term):
                self.err(KBSyntaxError, "fact arguments must be atoms", start)
            if isinstance(a, str):
                self.pending_refs.append(("symbol", a, start))
        self.kb.facts.append(Fact(t.with_tense(TENSE_KEYWORDS.get(rest, "timeless")), TENSE_KEYWORDS.get(rest, "timeless")))

    def _check_arity(self, t, start):
        known = self.arity.setdefault(t.functor, t.arity)
        if known != t.arity:
            self.err(ArityError, "%s used with arity %d and %d" % (t.functor, known, t.arity), start)

    def _stmt_rule(self, stmt, start):
        head, pos = self._term(stmt, start, len("rule"))
        if not stmt[pos:].lstrip().startswith(":-"):
            self.err(KBSyntaxError, "expected ':-' after rule head", start + pos)
        pos = stmt.index(":-", pos) + 2
        body = []
        while True:
            cond, pos = self._term(stmt, start, pos)
            if not isinstance(cond, Term):
                self.err(KBSyntaxError, "rule conditions must be terms", start + pos)
            body.append(cond)
            rest = stmt[pos:].lstrip()
            if not rest:
                break
            if not rest.startswith(","):
                self.err(KBSyntaxError, "expected ',' between rule conditions", start + pos)
            pos = stmt.index(",", pos) + 1
        if not isinstance(head, Term):
            self.err(KBSyntaxError, "rule head must be a compound term", start)
        bound = set()
        for cond in body:
            if cond.functor in COMPARISONS:
                if cond.arity != 2 or any(v not in bound for v in variables(cond)):
                    self.err(KBSyntaxError, "comparison %s uses an unbound variable" % cond, start)
            else:
                bound.update(variables(cond))
        self._check_arity(head, start)
        self.kb.rules.append(Rule(head, tuple(body)))

    def _stmt_support(self, stmt, start):
        prop, pos = self._term(stmt, start, len("support"))
        if not stmt[pos:].lstrip().startswith("=>"):
            self.err(KBSyntaxError, "expected '=>' in support link", start + pos)
        pos = stmt.index("=>", pos) + 2
        intention, pos = self._term(stmt, start, pos)
        m = re.match(r"^\s*weight\s+(\d+(?:\.\d+)?|\d+/\d+)\s*$", stmt[pos:])
        if not m:
            self.err(KBSyntaxError, "expected 'weight <0..1>'", start + pos)
        w = Fraction(m.group(1))
        if not 0 <= w <= 1:
            self.err(KBSyntaxError, "support weight %s outside [0, 1]" % m.group(1), start + pos)
        self.kb.supports.append(SupportLink(prop, intention, w))

    def _stmt_lex(self, stmt, start):
        m = _LEX.match(stmt)
        if not m:
            self.err(KBSyntaxError, 'expected \'lex <key> <noun|adj|verb|propn> "<surface>" [options]\'', start)
        opts = m.group("opts").split()
        entry = dict(accentable=True, mass=False, pronoun=None)
        i = 0
        while i < len(opts):
            o = opts[i]
            if o == "unaccentable":
                entry["accentable"] = False
            elif o == "mass":
                entry["mass"] = True
            elif o == "pronoun" and i + 1 < len(opts):
                i += 1
                entry["pronoun"] = opts[i]
            else:
                self.err(KBSyntaxError, "unknown lex option %r" % o, start)
            i += 1
        key = m.group("key")
        if key in self.kb.lexicon:
            self.err(DuplicateDeclarationError, "duplicate lex entry for %s" % key, start)
        self.kb.lexicon[key] = LexEntry(key, POS_NAMES[m.group("pos")], m.group("surface"), **entry)

    def _check(self):
        kb = self.kb
        for kind, sym, offset in self.pending_refs:
            if kind == "category" and sym not in kb.categories:
                self.err(UndeclaredCategoryError, "undeclared category %s" % sym, offset)
            if kind == "symbol" and not (kb.is_declared(sym) or sym in kb.lexicon):
                self.err(UndeclaredEntityError, "undeclared entity %s" % sym, offset)
        for name in kb.categories:
            seen, p = {name}, kb.categories[name]
            while p is not None:
                if p in seen:
                    raise CyclicHierarchyError("category hierarchy cycle through %s" % name)
                seen.add(p)
                p = kb.categories.get(p)
        graph = {}
        for r in kb.rules:
            graph.setdefault(r.head.functor, set()).update(
                b.functor for b in r.body if b.functor not in COMPARISONS
            )
        for f in graph:
            stack, seen = list(graph[f]), set()
            while stack:
                g = stack.pop()
                if g == f:
                    raise RecursiveRuleError("rule for %s is recursive" % f)
                if g not in seen:
                    seen.add(g)
                    stack.extend(graph.get(g, ()))


def load_kb(source_text: str) -> KnowledgeBase:
    return _Loader(source_text).load()


def serialize_kb(kb: KnowledgeBase) -> str:
    lines = []
    for name, parent in kb.categories.items():
        lines.append("category %s%s." % (name, " under " + parent if parent else ""))
    for name, cat in kb.entities.items():
        lines.append("entity %s isa %s." % (name, cat))
    for f in kb.facts:
        tense = {"past": " past", "present": " pres"}.get(f.tense, "")
        lines.append("fact %s%s." % (f.term, tense))
    for r in kb.rules:
        lines.append("rule %s :- %s." % (r.head, ", ".join(str(b) for b in r.body)))
    for s in kb.supports:
        w = s.weight
        wtxt = str(w.numerator) if w.denominator == 1 else "%d/%d" % (w.numerator, w.denominator)
        lines.append("support %s => %s weight %s." % (s.proposition, s.intention, wtxt))
    for e in kb.lexicon.values():
        pos = {v: k for k, v in POS_NAMES.items()}[e.part_of_speech]
        opts = ("" if e.accentable else " unaccentable") + (" mass" if e.mass else "")
        opts += " pronoun %s" % e.pronoun if e.pronoun else ""
        lines.append('lex %s %s "%s"%s.' % (e.key, pos, e.surface, opts))
    return "\n".join(lines) + ("\n" if lines else "")


__all__ = [
    "KBError", "KBSyntaxError", "UndeclaredEntityError", "UndeclaredCategoryError",
    "CyclicHierarchyError", "RecursiveRuleError", "ArityError", "DuplicateDeclarationError",
    "Fact", "Rule", "SupportLink", "LexEntry", "Property", "KnowledgeBase",
    "load_kb", "serialize_kb", "holds", "alternatives", "props", "has_property",
    "support_degree", "format_arg",
]
