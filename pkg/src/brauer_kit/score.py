"""Textual score DSL and its Brauer-configuration encoding.

The DSL writes a staff piece as measures of note tokens::

    clef=bass time=2/2 ref=4th-line
    | b8 f8 e8 b8 d8 -g8 e8 b8
    | -c16 -g8 e8 b16 f16

A note token is ``[-+=]?[a-g](64|32|16|8|4|2|1)`` with an optional trailing
dot: ``-`` flat, ``+`` sharp, ``=`` natural; the number is the duration
exponent (whole note 64 down to sixty-fourth 1); the dot multiplies the
effective exponent by 3/2.  Rests are ``r<exponent>``.  ``|`` separates
measures.  ``[ ]`` bracket groups and ``( )`` ties/slurs are carried as
metadata (parens may span measures); ``{ ... }xN`` repeats its contents N
times inside one measure.  ``#`` starts a comment.

Under a time signature n/2^m every measure's effective exponents must sum
to n * 2^(6-m); strict parsing rejects violations, lax parsing records them
as warnings.

A score maps to a configuration with one polygon per measure; the vertex of
an event is its (duration + dot, accidental, pitch-or-rest) class, written
as the canonical token text.  Octaves and grouping never enter vertex
identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from .brauer import BrauerConfiguration, config_from_words


class ScoreError(ValueError):
    """Invalid score, event or vertex label."""


class ScoreParseError(ScoreError):
    """DSL parse failure with source position."""

    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {message}")


PITCHES = "abcdefg"
EXPONENTS = (64, 32, 16, 8, 4, 2, 1)
ACCIDENTAL_CHARS = {"flat": "-", "sharp": "+", "natural": "="}
ACCIDENTAL_NAMES = {v: k for k, v in ACCIDENTAL_CHARS.items()}

CLEFS = ("treble", "bass", "alto")

NOTE_TOKEN = re.compile(r"([-+=]?)([a-g])(64|32|16|8|4|2|1)(\.?)$")
REST_TOKEN = re.compile(r"r(64|32|16|8|4|2|1)(\.?)$")


@dataclass(frozen=True)
class NoteEvent:
    """One pitched note or rest.

    ``groups`` holds the ids of enclosing group symbols; it is metadata and
    excluded from the note-class label.
    """

    kind: str                      # "note" | "rest"
    exponent: int
    pitch: str | None = None
    accidental: str | None = None  # None | "flat" | "sharp" | "natural"
    dotted: bool = False
    groups: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("note", "rest"):
            raise ScoreError(f"unknown event kind {self.kind!r}")
        if self.exponent not in EXPONENTS:
            raise ScoreError(f"duration exponent {self.exponent} is not a power of two <= 64")
        if self.dotted and self.exponent == 1:
            raise ScoreError("a sixty-fourth value cannot be dotted")
        if self.kind == "note":
            if self.pitch not in PITCHES:
                raise ScoreError(f"pitch {self.pitch!r} is not a..g")
            if self.accidental not in (None, "flat", "sharp", "natural"):
                raise ScoreError(f"unknown accidental {self.accidental!r}")
        else:
            if self.pitch is not None or self.accidental is not None:
                raise ScoreError("rests carry no pitch or accidental")

    @property
    def effective_exponent(self) -> int:
        """Duration weight; dotting scales by exactly 3/2."""
        return self.exponent * 3 // 2 if self.dotted else self.exponent

    @property
    def label(self) -> str:
        """Canonical token; equal labels define equal note classes."""
        dot = "." if self.dotted else ""
        if self.kind == "rest":
            return f"r{self.exponent}{dot}"
        acc = ACCIDENTAL_CHARS.get(self.accidental, "")
        return f"{acc}{self.pitch}{self.exponent}{dot}"


def event_from_label(label: str) -> NoteEvent:
    """Parse a canonical token back into an event (no group metadata)."""
    m = REST_TOKEN.match(label)
    if m:
        return NoteEvent("rest", int(m.group(1)), dotted=bool(m.group(2)))
    m = NOTE_TOKEN.match(label)
    if m:
        acc, pitch, exp, dot = m.groups()
        return NoteEvent(
            "note", int(exp), pitch, ACCIDENTAL_NAMES.get(acc), dotted=bool(dot)
        )
    raise ScoreError(f"foreign vertex label {label!r}")


@dataclass(frozen=True)
class Measure:
    events: tuple

    @property
    def exponent_sum(self) -> int:
        return sum(e.effective_exponent for e in self.events)


@dataclass(frozen=True)
class Score:
    measures: tuple
    clef: str = "treble"
    time: tuple | None = None          # (n, denominator), denominator = 2^m
    ref: str | None = None             # reference line annotation
    accidentals: tuple = ()            # global accidental conventions, metadata
    warnings: tuple = ()

    def __post_init__(self):
        if not self.measures:
            raise ScoreError("a score needs at least one measure")
        if self.clef not in CLEFS:
            raise ScoreError(f"unknown clef {self.clef!r}")


def measure_target(time: tuple) -> int:
    """Required exponent sum for one measure of signature n/2^m."""
    n, denom = time
    if denom not in EXPONENTS or n < 1:
        raise ScoreError(f"unsupported time signature {n}/{denom}")
    return n * (64 // denom)


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<header>(?:clef|time|ref|accidentals)=\S+)
      | (?P<bar>\|)
      | (?P<note>[-+=]?[a-g](?:64|32|16|8|4|2|1)\.?)
      | (?P<rest>r(?:64|32|16|8|4|2|1)\.?)
      | (?P<obracket>\[) | (?P<cbracket>\])
      | (?P<oparen>\() | (?P<cparen>\))
      | (?P<obrace>\{) | (?P<cbrace>\}x\d+)
    """,
    re.VERBOSE,
)


def _position(text: str, pos: int) -> tuple:
    line = text.count("\n", 0, pos) + 1
    col = pos - text.rfind("\n", 0, pos)
    return line, col


def _tokenize(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            line, col = _position(text, pos)
            bad = text[pos:].split()[0][:12]
            raise ScoreParseError(f"unknown token {bad!r}", line, col)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            yield kind, m.group(), _position(text, pos)
        pos = m.end()


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

@dataclass
class _Group:
    kind: str
    ident: int
    line: int
    col: int
    measure: int
    start: int  # event index in the open measure (braces only)


def _parse_header_item(item: str, line: int, col: int, header: dict) -> None:
    key, _, value = item.partition("=")
    if key in header:
        raise ScoreParseError(f"duplicate header item {key!r}", line, col)
    if key == "clef":
        if value not in CLEFS:
            raise ScoreParseError(f"unknown clef {value!r}", line, col)
        header["clef"] = value
    elif key == "time":
        m = re.fullmatch(r"(\d+)/(\d+)", value)
        if not m:
            raise ScoreParseError(f"malformed time signature {value!r}", line, col)
        time = (int(m.group(1)), int(m.group(2)))
        try:
            measure_target(time)
        except ScoreError as exc:
            raise ScoreParseError(str(exc), line, col) from None
        header["time"] = time
    elif key == "ref":
        header["ref"] = value
    else:
        header["accidentals"] = tuple(value.split(","))


def parse_score(text: str, strict: bool = True) -> Score:
    """Parse DSL text.  Measure-sum violations raise in strict mode and are
    collected as warnings otherwise."""
    header: dict = {}
    measures: list = []
    current: list = []
    current_pos: tuple | None = None
    open_groups: list[_Group] = []
    next_group = 0
    seen_content = False

    def flush_measure(line: int, col: int, at_end: bool) -> None:
        nonlocal current, current_pos
        for g in open_groups:
            if g.kind == "brace":
                raise ScoreParseError(
                    "repeat group must close inside its measure", g.line, g.col
                )
        if current:
            measures.append((tuple(current), current_pos))
        elif measures and not at_end:
            raise ScoreParseError("empty measure", line, col)
        current = []
        current_pos = None

    for kind, value, (line, col) in _tokenize(text):
        if kind == "header":
            if seen_content:
                raise ScoreParseError("header item after score content", line, col)
            _parse_header_item(value, line, col, header)
            continue
        seen_content = True
        if kind == "bar":
            flush_measure(line, col, at_end=False)
        elif kind in ("note", "rest"):
            if current_pos is None:
                current_pos = (line, col)
            event = event_from_label(value)
            current.append(replace(
                event, groups=frozenset(g.ident for g in open_groups)
            ))
        elif kind in ("obracket", "oparen", "obrace"):
            open_groups.append(_Group(
                kind[1:], next_group, line, col, len(measures), len(current)
            ))
            next_group += 1
        elif kind in ("cbracket", "cparen"):
            want = kind[1:]
            match = next(
                (g for g in reversed(open_groups) if g.kind == want), None
            )
            if match is None:
                raise ScoreParseError(f"unmatched closing {want}", line, col)
            open_groups.remove(match)
        else:  # cbrace
            match = next(
                (g for g in reversed(open_groups) if g.kind == "brace"), None
            )
            if match is None:
                raise ScoreParseError("unmatched closing brace", line, col)
            if match.measure != len(measures):
                raise ScoreParseError(
                    "repeat group must close inside its measure", match.line, match.col
                )
            open_groups.remove(match)
            repeats = int(value[2:])
            if repeats < 1:
                raise ScoreParseError("repeat count must be >= 1", line, col)
            body = current[match.start:]
            for _ in range(repeats - 1):
                current.extend(body)

    if open_groups:
        g = open_groups[0]
        raise ScoreParseError(f"unclosed group ({g.kind})", g.line, g.col)
    flush_measure(*_position(text, len(text)), at_end=True)
    if not measures:
        raise ScoreParseError("score has no measures", 1, 1)

    warnings: list[str] = []
    time = header.get("time")
    if time is not None:
        target = measure_target(time)
        for i, (events, pos) in enumerate(measures):
            total = sum(e.effective_exponent for e in events)
            if total != target:
                message = (
                    f"measure {i + 1} sums to {total}, expected {target} "
                    f"for {time[0]}/{time[1]}"
                )
                if strict:
                    raise ScoreParseError(message, *pos)
                warnings.append(message)

    return Score(
        measures=tuple(Measure(events) for events, _ in measures),
        clef=header.get("clef", "treble"),
        time=time,
        ref=header.get("ref"),
        accidentals=header.get("accidentals", ()),
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def score_to_config(score: Score) -> BrauerConfiguration:
    """One polygon per measure, in score order; vertices are note classes."""
    words = []
    for i, measure in enumerate(score.measures):
        if len(measure.events) < 2:
            raise ScoreError(f"measure {i + 1} has fewer than 2 events")
        words.append(tuple(e.label for e in measure.events))
    return config_from_words(words)


def config_to_message(
    config: BrauerConfiguration,
    clef: str | None = None,
    time: tuple | None = None,
    ref: str | None = None,
) -> str:
    """Emit the concatenated polygon words as DSL text, one measure per
    polygon.  Every vertex label must be a well-formed note or rest token."""
    for poly in config.polygons:
        for label in poly.word:
            event_from_label(label)
    lines = []
    head = []
    if clef is not None:
        head.append(f"clef={clef}")
    if time is not None:
        head.append(f"time={time[0]}/{time[1]}")
    if ref is not None:
        head.append(f"ref={ref}")
    if head:
        lines.append(" ".join(head))
    lines.extend("| " + " ".join(poly.word) for poly in config.polygons)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Pitch operators
# ---------------------------------------------------------------------------

def step_pitch(event: NoteEvent, k: int) -> NoteEvent:
    """Advance the letter k positions along the cyclic order a..g."""
    if event.kind != "note":
        raise ScoreError("cannot step a rest")
    i = PITCHES.index(event.pitch)
    return replace(event, pitch=PITCHES[(i + k) % len(PITCHES)])


def apply_accidental(event: NoteEvent, accidental: str | None) -> NoteEvent:
    """Set the accidental state: None, flat, sharp or natural."""
    if event.kind != "note":
        raise ScoreError("cannot inflect a rest")
    if accidental not in (None, "flat", "sharp", "natural"):
        raise ScoreError(f"unknown accidental {accidental!r}")
    return replace(event, accidental=accidental)
