"""English word-level helpers: number expansion, verb inflection, articles."""
from __future__ import annotations

import re

from num2words import num2words


def number_words(n) -> list:
    """``800`` -> ``['eight', 'hundred']`` (no British "and", no commas)."""
    if isinstance(n, float) and n.is_integer():
        n = int(n)
    text = num2words(n, lang="en").replace(",", " ")
    return [w for w in text.split() if w != "and"]


def _split(entry_surface):
    forms = entry_surface.split("|")
    return forms + [None] * (4 - len(forms))


def third_singular(verb: str) -> str:
    base, s3, _, _ = _split(verb)
    if s3:
        return s3
    if re.search(r"(s|sh|ch|x|z|o)$", base):
        return base + "es"
    if re.search(r"[^aeiou]y$", base):
        return base[:-1] + "ies"
    return base + "s"


def past(verb: str) -> str:
    base, _, p, _ = _split(verb)
    if p:
        return p
    if base.endswith("e"):
        return base + "d"
    if re.search(r"[^aeiou]y$", base):
        return base[:-1] + "ied"
    return base + "ed"


def participle(verb: str) -> str:
    base, _, p, pp = _split(verb)
    return pp or past(verb)


def base_form(verb: str) -> str:
    return _split(verb)[0]


def indefinite_article(next_word: str) -> str:
    w = next_word.lstrip("'").lower()
    return "an" if w[:1] in "aeiou" and w[:1] != "" else "a"
