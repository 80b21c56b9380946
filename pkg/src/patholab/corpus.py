"""Corpus files: named formulas with optional expected verdicts.

Line format::

    name :: formula [:: expected]   # note

Blank lines and lines whose first non-space character is ``#`` are
ignored.  A trailing ``#`` comment on an entry line is kept as the entry's
note.  Names are identifiers and must be unique within a file; expected,
when present, is one of ProvedPatho, CertifiedNonPatho, Unknown.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

VERDICTS = ("ProvedPatho", "CertifiedNonPatho", "Unknown")

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class CorpusError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    formula_text: str
    expected: str | None = None
    note: str | None = None


def _parse_line(raw: str, lineno: int, names: set) -> CorpusEntry | None:
    line, _, comment = raw.partition("#")
    note = comment.strip() or None
    line = line.strip()
    if not line:
        return None  # blank or whole-line comment
    parts = [p.strip() for p in line.split("::")]
    if len(parts) not in (2, 3):
        raise CorpusError(
            "expected 'name :: formula' or 'name :: formula :: expected'",
            lineno)
    name, formula_text = parts[0], parts[1]
    expected = parts[2] if len(parts) == 3 else None
    if not _NAME_RE.match(name):
        raise CorpusError(f"bad entry name {name!r}", lineno)
    if name in names:
        raise CorpusError(f"duplicate entry name {name!r}", lineno)
    if not formula_text:
        raise CorpusError("empty formula", lineno)
    if expected is not None and expected not in VERDICTS:
        raise CorpusError(
            f"bad expected verdict {expected!r} (one of {', '.join(VERDICTS)})",
            lineno)
    names.add(name)
    return CorpusEntry(name, formula_text, expected, note)


def parse_corpus(text: str) -> list:
    """Strict parse: the first malformed line raises CorpusError."""

    entries = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        entry = _parse_line(raw, lineno, names)
        if entry is not None:
            entries.append(entry)
    return entries


def parse_corpus_lenient(text: str):
    """(entries, problems): malformed lines become (lineno, message) pairs
    instead of aborting, so one bad line cannot sink a corpus run."""

    entries = []
    problems = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        try:
            entry = _parse_line(raw, lineno, names)
        except CorpusError as exc:
            problems.append((lineno, str(exc)))
            continue
        if entry is not None:
            entries.append(entry)
    return entries, problems


BUNDLED_CORPUS_TEXT = """\
# Bundled corpus: the classic candidates, with pinned expectations.
# Lines are 'name :: formula [:: expected]'; a trailing comment is a note.

russell :: not (x in x) :: ProvedPatho            # the set of non-self-members
nc2 :: not exists a: ((x in a) & (a in x)) :: ProvedPatho        # no 2-step membership cycle
nc3 :: not exists a: exists b: ((x in a) & (a in b) & (b in x)) :: ProvedPatho   # no 3-step membership cycle
nc1_deriv :: not ((x in x) & not (Falsum)) :: ProvedPatho        # russell with an and-not insertion
members_nonself :: forall y: ((y in x) -> not (y in y)) :: ProvedPatho    # all members avoid self-membership
verum :: Verum :: CertifiedNonPatho               # the universal predicate (closed, gets wrapped)
falsum :: Falsum :: CertifiedNonPatho             # the empty predicate (closed, gets wrapped)
self_member :: x in x :: CertifiedNonPatho        # satisfied by a one-point self-membered universe
not_self_equal :: not (x = x) :: CertifiedNonPatho               # empty by pure identity
exists_container :: exists y: (x in y) :: CertifiedNonPatho      # everything that is an element of something
subpatho_member :: exists y: ((y in x) & not (y in y)) :: CertifiedNonPatho  # consistent, but hides russell in a subformula
ko_di :: not (x in f(x)) :: Unknown               # function symbols have no model search; kept for visibility
"""


def bundled_corpus() -> list:
    return parse_corpus(BUNDLED_CORPUS_TEXT)
