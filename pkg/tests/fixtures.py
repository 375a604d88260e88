"""Hand-built discourse contexts: a minimal pair, a given-but-contrastive NP, an unmarked theme."""
from prosogen.content_planner import PlanItem
from prosogen.discourse import DiscourseModel, InformationStructure
from prosogen.kb import load_kb
from prosogen.terms import parse_term

AMPLIFIERS_KB = """
category amplifier.
category treble.
category person.
entity a-british isa amplifier.
entity a-american isa amplifier.
entity t-clean isa treble.
entity t-muddy isa treble.
entity critics isa person.
entity scott isa person.
fact origin(a-british, british).
fact origin(a-american, american).
fact quality(t-clean, clean).
fact quality(t-muddy, muddy).
fact produce(a-british, t-clean) pres.
fact produce(a-american, t-muddy) pres.
fact prefer(critics, a-american) pres.
fact prefer(scott, a-british) pres.
lex amplifier noun "amplifier".
lex treble noun "treble" mass.
lex british adj "British".
lex american adj "American".
lex clean adj "clean".
lex muddy adj "muddy".
lex critics propn "critics" pronoun they.
lex scott propn "Scott" pronoun he.
lex produce verb "produce".
lex prefer verb "prefer".
"""


def amplifiers_kb():
    return load_kb(AMPLIFIERS_KB)


def _context(question, mentions, delist, evoked):
    record = InformationStructure(parse_term(question), (), (), mentions=tuple(mentions))
    return DiscourseModel(delist=tuple(delist), evoked=frozenset(evoked), isstore=(record,))


def _item(text, theme, rheme):
    t = parse_term(text).with_tense("present")
    return PlanItem(t, "present", tuple(theme), tuple(rheme))


def minimal_pair_a():
    """Q: the American amplifier produces muddy treble; what does the British one produce?"""
    dm = _context("produce(a-american, t-muddy)", ["a-american", "t-muddy", "a-british"],
                  ["a-british", "t-muddy", "a-american"],
                  ["amplifier", "treble", "american", "muddy", "british", "produce"])
    return dm, _item("produce(a-british, t-clean)", ["a-british", "produce"], ["t-clean"])


def minimal_pair_b():
    """Q: the American amplifier produces muddy treble; what produces clean treble?"""
    dm = _context("produce(a-american, t-muddy)", ["a-american", "t-muddy", "t-clean"],
                  ["t-clean", "t-muddy", "a-american", "a-british"],
                  ["amplifier", "treble", "american", "british", "muddy", "clean", "produce"])
    return dm, _item("produce(a-british, t-clean)", ["t-clean", "produce"], ["a-british"])


def given_but_contrastive():
    """Q: do critics prefer the British amplifier or the American amplifier?"""
    dm = _context("prefer(critics, a-british)", ["critics", "a-british", "a-american"],
                  ["critics", "a-british", "a-american"],
                  ["amplifier", "british", "american", "prefer"])
    return dm, _item("prefer(critics, a-american)", ["critics", "prefer"], ["a-american"])


def unmarked_theme():
    """Q: which amplifier does Scott prefer? (both amplifiers already under discussion)"""
    dm = _context("prefer(scott, amplifier)", ["scott"],
                  ["scott", "a-british", "a-american"],
                  ["amplifier", "british", "american", "prefer"])
    return dm, _item("prefer(scott, a-british)", ["scott", "prefer"], ["a-british"])


FIXTURES = {
    "british-theme": (minimal_pair_a, "(The BRITISH amplifier produces) L+H*c L(H%) (CLEAN treble.) H*c LL$"),
    "british-rheme": (minimal_pair_b, "(The BRITISH amplifier) H*c L(L%) (produces CLEAN treble.) L+H*c LH$"),
    "given-contrast": (given_but_contrastive, "(They prefer) (the AMERICAN amplifier.) H*c LL$"),
    "unmarked-theme": (unmarked_theme, "(He prefers) (the BRITISH amplifier.) H*c LL$"),
}
