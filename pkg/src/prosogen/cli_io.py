"""Command line entry point, session orchestration and output emitters."""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from typing import Optional
from xml.sax.saxutils import escape

from .content_planner import Goal, PlanningError, plan
from .discourse import DEFAULT_K, DiscourseModel, record_utterance
from .kb import KBError, load_kb
from .realizer import AnnotatedUtterance, Boundary, Phrase, PitchAccent, RealizationError, Word, realize
from .sentence_planner import plan_sentence, to_realizer_input
from .terms import TermSyntaxError, Var, parse_term, substitute

EXIT_OK, EXIT_KB, EXIT_PLANNING, EXIT_REALIZATION = 0, 2, 3, 4
DEFAULT_INTENTION = "bel(H, good-to-buy(X))"
BREAKS = {"weak": "100ms", "clause": "300ms", "final": "600ms"}
PITCH = {(False, False): "+15%", (True, False): "+30%", (False, True): "+8%", (True, True): "+20%"}


@dataclass
class SessionConfig:
    kb_path: str
    goals: list
    format: str = "inline"
    k: int = DEFAULT_K
    intention: str = DEFAULT_INTENTION
    hearer: str = "h1"
    dump_plan: bool = False
    trace_focus: bool = False
    dump_discourse: bool = False
    dump_sentence_plans: bool = False

    def __post_init__(self):
        if not self.goals:
            raise ValueError("at least one goal is required")
        if self.format not in ("inline", "json", "ssml"):
            raise ValueError("unknown format %r" % self.format)


@dataclass
class SessionResult:
    status: int
    paragraphs: list = field(default_factory=list)  # list of list of AnnotatedUtterance
    output: str = ""
    error: Optional[str] = None
    discourse: Optional[DiscourseModel] = None


def make_goal(target: str, intention: str = DEFAULT_INTENTION, hearer: str = "h1") -> Goal:
    term = parse_term(intention)
    term = substitute(term, {Var("X"): target, Var("H"): hearer})
    return Goal("describe", target, term, hearer)


def generate(kb, goals, dm: Optional[DiscourseModel] = None, log=None):
    """Run goals in order over one discourse model; return (paragraphs, dm)."""
    dm = dm or DiscourseModel()
    paragraphs = []
    for goal in goals:
        items = plan(kb, dm, goal)
        if log:
            log("plan", "\n".join("%d. %s" % (i, it.describe()) for i, it in enumerate(items)))
        paragraph = []
        for item in items:
            trace = [] if log else None
            sp = plan_sentence(kb, dm, item, trace)
            if log:
                log("focus", "\n".join(str(t) for t in trace))
                log("sentence", sp.describe())
            paragraph.append(realize(to_realizer_input(sp), kb.lexicon))
            dm = record_utterance(dm, sp.info)
            if log:
                log("discourse", dm.describe())
        paragraphs.append(paragraph)
    return paragraphs, dm


def run(config: SessionConfig, stdout=None, stderr=None) -> SessionResult:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    wanted = {"plan": config.dump_plan, "focus": config.trace_focus,
              "sentence": config.dump_sentence_plans, "discourse": config.dump_discourse}

    def log(kind, text):
        if wanted[kind] and text:
            print("[%s]\n%s" % (kind, text), file=stderr)

    try:
        with open(config.kb_path, encoding="utf-8") as fh:
            kb = load_kb(fh.read())
    except (OSError, KBError) as e:
        print("error: %s" % e, file=stderr)
        return SessionResult(EXIT_KB, error=str(e))
    try:
        goals = [make_goal(t, config.intention, config.hearer) for t in config.goals]
        paragraphs, dm = generate(kb, goals, DiscourseModel(k=config.k), log if any(wanted.values()) else None)
    except (PlanningError, TermSyntaxError, KeyError) as e:
        print("error: %s" % e, file=stderr)
        return SessionResult(EXIT_PLANNING, error=str(e))
    except RealizationError as e:
        print("error: %s" % e, file=stderr)
        return SessionResult(EXIT_REALIZATION, error=str(e))
    emit = {"inline": emit_monologue, "json": emit_json, "ssml": emit_ssml_monologue}[config.format]
    text = emit(paragraphs)
    stdout.write(text)
    return SessionResult(EXIT_OK, paragraphs, text, discourse=dm)


# -- inline format ----------------------------------------------------------

_ACCENT_TOKEN = re.compile(r"^(!?(?:L\+)?H\*)(c?)$")
_BOUNDARY_TOKEN = re.compile(r"^(?:([LH])\(([LH])%\)|([LH])([LH])([%$]))$")
_PHRASE = re.compile(r"\(([^()]*)\)((?:\s+(?!\()\S+)*)")


def looks_accented(text: str) -> bool:
    return any(re.search(r"[A-Za-z]", part) and part == part.upper() for part in text.split("-"))


def emit_inline(u: AnnotatedUtterance) -> str:
    parts = []
    for p in u.phrases:
        ws = []
        for w in p.words:
            ws.append(w.text if w.accent or not looks_accented(w.text) else "{%s}" % w.text)
        tokens = [str(a) for a in p.accents]
        if p.boundary.token:
            tokens.append(p.boundary.token)
        parts.append("(%s%s)" % (" ".join(ws), p.punctuation) + "".join(" " + t for t in tokens))
    return " ".join(parts)


def emit_monologue(paragraphs) -> str:
    return "\n\n".join("\n".join(emit_inline(u) for u in para) for para in paragraphs) + "\n"


def parse_inline(line: str) -> AnnotatedUtterance:
    """Inverse of :func:`emit_inline`."""
    phrases = []
    pos = 0
    line = line.strip()
    while pos < len(line):
        m = _PHRASE.match(line, pos)
        if not m:
            raise ValueError("cannot parse annotation at %r" % line[pos:pos + 20])
        pos = m.end()
        while pos < len(line) and line[pos] == " ":
            pos += 1
        body, tokens = m.group(1), m.group(2).split()
        punctuation = ""
        if body[-1:] in ",.":
            body, punctuation = body[:-1], body[-1]
        accents, boundary = [], None
        for n, tok in enumerate(tokens):
            am = _ACCENT_TOKEN.match(tok)
            bm = _BOUNDARY_TOKEN.match(tok)
            if am:
                accents.append(PitchAccent(am.group(1), am.group(2) == "c"))
            elif bm and n == len(tokens) - 1:
                if bm.group(1):
                    boundary = Boundary(bm.group(1) + bm.group(2), "weak")
                else:
                    boundary = Boundary(bm.group(3) + bm.group(4), "clause" if bm.group(5) == "%" else "final")
            else:
                raise ValueError("unknown token %r" % tok)
        if boundary is None:
            boundary = Boundary(None, "final" if punctuation == "." else "clause" if punctuation == "," else "weak")
        words, queue = [], list(accents)
        for raw in body.split():
            if raw.startswith("{") and raw.endswith("}"):
                words.append(Word(raw[1:-1]))
            elif looks_accented(raw):
                if not queue:
                    raise ValueError("more accented words than accents in %r" % body)
                words.append(Word(raw, queue.pop(0)))
            else:
                words.append(Word(raw))
        if queue:
            raise ValueError("more accents than accented words in %r" % body)
        if accents:
            tier = "theme" if accents[0].theme_family else "rheme"
        else:
            tier = "theme"
        phrases.append(Phrase(tuple(words), boundary, tier, punctuation))
    return AnnotatedUtterance(tuple(phrases))


def parse_monologue(text: str) -> list:
    paragraphs = []
    for block in re.split(r"\n\s*\n", text.strip()):
        if block.strip():
            paragraphs.append([parse_inline(l) for l in block.splitlines() if l.strip()])
    return paragraphs


# -- SSML and JSON ------------------------------------------------------------


def emit_ssml(u: AnnotatedUtterance) -> str:
    out = []
    for p in u.phrases:
        for w in p.words:
            if w.accent is None:
                out.append(escape(w.text))
            else:
                text = w.text if re.search(r"\d", w.text) else w.text.lower()
                pitch = PITCH[(w.accent.contrastive, w.accent.downstepped)]
                out.append('<prosody pitch="%s">%s</prosody>' % (pitch, escape(text)))
        if p.punctuation and out:
            out[-1] += p.punctuation
        out.append('<break time="%s"/>' % BREAKS[p.boundary.strength])
    return " ".join(out)


def emit_ssml_monologue(paragraphs) -> str:
    body = "\n".join("<p>\n%s\n</p>" % "\n".join("<s>%s</s>" % emit_ssml(u) for u in para) for para in paragraphs)
    return "<speak>\n%s\n</speak>\n" % body


def utterance_to_dict(u: AnnotatedUtterance) -> dict:
    return {"phrases": [{
        "tier": p.tier,
        "words": [{"text": w.text, "accent": None if w.accent is None else
                   {"tone": w.accent.tone, "contrastive": w.accent.contrastive}} for w in p.words],
        "boundary": {"tone": p.boundary.tone, "strength": p.boundary.strength, "token": p.boundary.token},
        "punctuation": p.punctuation,
    } for p in u.phrases]}


def emit_json(paragraphs) -> str:
    data = {"paragraphs": [[utterance_to_dict(u) for u in para] for para in paragraphs]}
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# -- command line ---------------------------------------------------------------


def _goal(text):
    kind, _, target = text.partition("=")
    if kind != "describe" or not target:
        raise argparse.ArgumentTypeError("goals look like describe=<entity>")
    return target


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prosogen", description="Generate descriptions with intonation annotation.")
    sub = parser.add_subparsers(dest="command", required=True)
    gen = sub.add_parser("generate", help="describe entities from a knowledge base")
    gen.add_argument("--kb", required=True, help="knowledge base file")
    gen.add_argument("--goal", action="append", type=_goal, required=True, metavar="describe=ENTITY")
    gen.add_argument("--intention", default=DEFAULT_INTENTION,
                     help="communicative intention; X is bound to the goal entity (default: %(default)s)")
    gen.add_argument("--hearer", default="h1")
    gen.add_argument("--format", choices=("inline", "json", "ssml"), default="inline")
    gen.add_argument("--k", type=int, default=DEFAULT_K, help="DElist capacity")
    gen.add_argument("--dump-plan", action="store_true")
    gen.add_argument("--trace-focus", action="store_true")
    gen.add_argument("--dump-discourse", action="store_true")
    gen.add_argument("--dump-sentence-plans", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.k < 1:
        print("error: --k must be positive", file=sys.stderr)
        return EXIT_PLANNING
    config = SessionConfig(args.kb, args.goal, args.format, args.k, args.intention, args.hearer,
                           args.dump_plan, args.trace_focus, args.dump_discourse, args.dump_sentence_plans)
    return run(config).status
