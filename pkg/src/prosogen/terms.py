"""Semantic terms, variables, unification and a small term reader.

Atoms are plain ``str`` (symbols) or numbers; compound terms are :class:`Term`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

TENSES = ("present", "past", "timeless")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Term:
    functor: str
    args: tuple = ()
    tense: str = field(default="timeless", compare=False)

    def __str__(self):
        if not self.args:
            return self.functor
        return "%s(%s)" % (self.functor, ", ".join(format_arg(a) for a in self.args))

    @property
    def arity(self):
        return len(self.args)

    def with_tense(self, tense):
        return Term(self.functor, self.args, tense)


Arg = Union[Term, Var, str, int, float]


def format_arg(a) -> str:
    if isinstance(a, float) and a.is_integer():
        return str(int(a))
    return str(a)


def is_ground(t) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, Term):
        return all(is_ground(a) for a in t.args)
    return True


def atoms(t) -> Iterator:
    """Yield the atomic leaves of ``t`` left to right (functors excluded)."""
    if isinstance(t, Term):
        for a in t.args:
            yield from atoms(a)
    else:
        yield t


def variables(t) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Term):
        for a in t.args:
            yield from variables(a)


def walk(t, subst):
    while isinstance(t, Var) and t in subst:
        t = subst[t]
    return t


def substitute(t, subst):
    t = walk(t, subst)
    if isinstance(t, Term):
        return Term(t.functor, tuple(substitute(a, subst) for a in t.args), t.tense)
    return t


def unify(a, b, subst=None):
    """Return an extended substitution unifying ``a`` and ``b`` or ``None``."""
    subst = dict(subst or {})
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x, y = walk(x, subst), walk(y, subst)
        if x == y and type(x) is type(y):
            continue
        if isinstance(x, Var):
            subst[x] = y
        elif isinstance(y, Var):
            subst[y] = x
        elif isinstance(x, Term) and isinstance(y, Term):
            if x.functor != y.functor or len(x.args) != len(y.args):
                return None
            stack.extend(zip(x.args, y.args))
        elif _is_number(x) and _is_number(y):
            if x != y:
                return None
        else:
            return None
    return subst


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


class TermSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(msg)
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<num>-?\d+(?:\.\d+)?(?![\w-]))|(?P<var>[A-Z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[a-z0-9][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)|(?P<punct>[(),]))"
)


class TermReader:
    """Recursive-descent reader over a string; ``pos`` is left after the term."""

    def __init__(self, text, pos=0):
        self.text = text
        self.pos = pos

    def _next(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.end() == self.pos:
            raise TermSyntaxError("unexpected input %r" % self.text[self.pos:self.pos + 10], self.pos)
        self.pos = m.end()
        return m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)

    def _peek(self):
        save = self.pos
        try:
            return self._next()
        except TermSyntaxError:
            return None, None, save
        finally:
            self.pos = save

    def read(self):
        kind, val, start = self._next()
        if kind == "num":
            return float(val) if "." in val else int(val)
        if kind == "var":
            return Var(val)
        if kind != "sym":
            raise TermSyntaxError("expected a term, got %r" % val, start)
        if self._peek()[1] != "(":
            return val
        self._next()
        args = [self.read()]
        while True:
            kind, tok, start = self._next()
            if tok == ")":
                return Term(val, tuple(args))
            if tok != ",":
                raise TermSyntaxError("expected ',' or ')'", start)
            args.append(self.read())

    def at_end(self):
        return not self.text[self.pos:].strip()


def parse_term(text: str):
    reader = TermReader(text)
    t = reader.read()
    if not reader.at_end():
        raise TermSyntaxError("trailing input after term", reader.pos)
    return t


def as_term(t) -> Term:
    """Coerce an atom into a zero-arity term (useful for patterns like ``h1``)."""
    return t if isinstance(t, Term) else Term(str(t))
