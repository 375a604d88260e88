"""Surface realization: words, pitch accents and boundary tones."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .sentence_planner import RealizerInput

THEME_TONES = ("L+H*", "!L+H*")
RHEME_TONES = ("H*", "!H*")
STRENGTHS = ("weak", "clause", "final")
PUNCTUATION = {"weak": "", "clause": ",", "final": "."}


class RealizationError(Exception):
    pass


@dataclass(frozen=True)
class PitchAccent:
    tone: str  # H* | L+H* | !H* | !L+H*
    contrastive: bool = False

    def __post_init__(self):
        if self.tone not in THEME_TONES + RHEME_TONES:
            raise ValueError("unknown pitch accent %r" % self.tone)

    @property
    def downstepped(self):
        return self.tone.startswith("!")

    @property
    def theme_family(self):
        return self.tone in THEME_TONES

    def __str__(self):
        return self.tone + ("c" if self.contrastive else "")


@dataclass(frozen=True)
class Boundary:
    tone: Optional[str]  # LH | LL | None (accentless theme, no audible tone)
    strength: str

    def __post_init__(self):
        if self.tone not in ("LH", "LL", None) or self.strength not in STRENGTHS:
            raise ValueError("bad boundary %r %r" % (self.tone, self.strength))

    @property
    def token(self) -> Optional[str]:
        if self.tone is None:
            return None
        a, b = self.tone
        if self.strength == "weak":
            return "%s(%s%%)" % (a, b)
        return "%s%s%s" % (a, b, "%" if self.strength == "clause" else "$")


@dataclass(frozen=True)
class Word:
    text: str  # display form; accented words are upper-cased on their stressed part
    accent: Optional[PitchAccent] = None


@dataclass(frozen=True)
class Phrase:
    words: tuple
    boundary: Boundary
    tier: str
    punctuation: str = ""

    @property
    def accents(self):
        return [w.accent for w in self.words if w.accent is not None]


@dataclass(frozen=True)
class AnnotatedUtterance:
    phrases: tuple = ()

    @property
    def words(self):
        return [w for p in self.phrases for w in p.words]

    @property
    def accents(self):
        return [a for p in self.phrases for a in p.accents]


def display(text: str, accented: bool) -> str:
    """Upper-case the stressed part of an accented word; drop stress marks."""
    if not accented:
        return text.replace("'", "")
    if "'" in text:
        return "-".join(p[1:].upper() if p.startswith("'") else p.replace("'", "")
                        for p in text.split("-"))
    return text.upper()


def _combine(signs) -> str:
    cats = [s.category for s in signs]
    tiers = [s.tier for s in signs]
    if tiers.count("rheme") != 1 or tiers.count("theme") > 1:
        raise RealizationError("expected one rheme and at most one theme, got %s" % tiers)
    if len(cats) == 1:
        if cats[0] != "s":
            raise RealizationError("a lone rheme must be a sentence, got %s" % cats[0])
        return "s"
    left, right = cats
    if (left, right) in (("np", "s\\np"), ("s/np", "np")):
        return "s"
    raise RealizationError("categories %s and %s do not combine" % (left, right))


def realize(inp: RealizerInput, lexicon=None) -> AnnotatedUtterance:
    _combine(inp.signs)
    phrases = []
    segments = [(sign, seg, ws) for sign in inp.signs for seg, ws in sign.segments]
    for n, (sign, seg, ws) in enumerate(segments):
        theme = sign.tier == "theme"
        out, prev = [], None
        for w in ws:
            if lexicon is not None and w.lexical and w.key not in lexicon and w.key.lower() not in lexicon:
                raise RealizationError("no lexical entry for %s" % w.key)
            accent = None
            if w.mark is not None:
                if not w.accentable:
                    raise RealizationError("focus mark on unaccentable word %r" % w.text)
                contrastive = w.mark == "contrast"
                tone = "L+H*" if theme else "H*"
                if contrastive and prev is not None and prev.contrastive:
                    tone = "!" + tone
                accent = prev = PitchAccent(tone, contrastive)
            out.append(Word(display(w.text, accent is not None), accent))
        if not out:
            continue
        accents = [w.accent for w in out if w.accent]
        strength = seg.strength
        if theme:
            tone = "LH" if accents or strength == "final" else None
        elif strength == "clause" and (seg.appositive or any(a.contrastive for a in accents)):
            tone = "LH"
        else:
            tone = "LL"
        phrases.append(Phrase(tuple(out), Boundary(tone, strength), sign.tier, PUNCTUATION[strength]))
    if phrases:
        first = phrases[0].words[0]
        cap = Word(first.text[:1].upper() + first.text[1:], first.accent)
        phrases[0] = Phrase((cap,) + phrases[0].words[1:], phrases[0].boundary, phrases[0].tier,
                            phrases[0].punctuation)
    u = AnnotatedUtterance(tuple(phrases))
    problems = check_tune_wellformedness(u)
    if problems:
        raise RealizationError("; ".join(problems))
    return u


def check_tune_wellformedness(u: AnnotatedUtterance) -> list:
    out = []
    for i, p in enumerate(u.phrases):
        name = "phrase %d (%s)" % (i + 1, " ".join(w.text for w in p.words))
        accents = p.accents
        if p.tier == "theme":
            if any(not a.theme_family for a in accents):
                out.append("%s: H* accent inside a theme" % name)
            if p.boundary.tone == "LL":
                out.append("%s: theme must end LH" % name)
            if p.boundary.tone is None and accents:
                out.append("%s: accented theme without a boundary tone" % name)
        elif p.tier == "rheme":
            if any(a.theme_family for a in accents):
                out.append("%s: L+H* accent inside a rheme" % name)
            if not accents:
                out.append("%s: rheme has no accent" % name)
            if p.boundary.tone is None or (p.boundary.tone == "LH" and p.boundary.strength != "clause"):
                out.append("%s: rheme must end LL" % name)
        else:
            out.append("%s: unknown tier %r" % (name, p.tier))
        if accents and accents[0].downstepped:
            out.append("%s: downstep on the first accent" % name)
    finals = [i for i, p in enumerate(u.phrases) if p.boundary.strength == "final"]
    if u.phrases and finals != [len(u.phrases) - 1]:
        out.append("utterance: '$' must occur exactly once, as the last boundary")
    return out
