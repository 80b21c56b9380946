"""Hereditary analysis: classify every nearly-closed subformula.

The scan walks the formula in pre-order (set-abstraction bodies included),
keeps the first occurrence of each distinct subformula up to renaming of
the free variable, and classifies those with exactly one free variable
using a caller-supplied classifier.  Closed subformulas and subformulas
with two or more free variables are listed as Skipped: the pathology
question is posed for one-parameter predicates only, and parameterized
comprehension is out of scope here.

Overall status:

- SubPatho when any checked subformula is ProvedPatho,
- CertifiedHnP when at least one subformula was checked and every checked
  one is CertifiedNonPatho,
- Unknown otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (Formula, NearlyClosed, canonicalize, subformulas,
                     to_text)

PROVED_PATHO = "ProvedPatho"
CERTIFIED_NONPATHO = "CertifiedNonPatho"
UNKNOWN = "Unknown"
SKIPPED = "Skipped"

SUB_PATHO = "SubPatho"
CERTIFIED_HNP = "CertifiedHnP"


@dataclass(frozen=True)
class ScanEntry:
    formula: str  # printed subformula (canonical form when checked)
    status: str  # ProvedPatho | CertifiedNonPatho | Unknown | Skipped
    detail: str  # reason for skips and unknowns, certificate note otherwise


@dataclass(frozen=True)
class HereditaryReport:
    overall: str  # SubPatho | CertifiedHnP | Unknown
    entries: tuple


def hereditary_scan(nc: NearlyClosed, classifier) -> HereditaryReport:
    """classifier(nc: NearlyClosed) -> (status, detail) for one candidate;
    it is called once per distinct checkable subformula."""

    entries = []
    seen = set()
    for node, free in subformulas(nc.formula):
        if len(free) == 1:
            candidate = canonicalize(NearlyClosed(node, next(iter(free))))
            text = to_text(candidate.formula)
            if text in seen:
                continue
            seen.add(text)
            status, detail = classifier(candidate)
            entries.append(ScanEntry(text, status, detail))
        else:
            text = to_text(node)
            if text in seen:
                continue
            seen.add(text)
            if free:
                detail = f"{len(free)} free variables"
            else:
                detail = "closed subformula"
            entries.append(ScanEntry(text, SKIPPED, detail))

    checked = [e for e in entries if e.status != SKIPPED]
    if any(e.status == PROVED_PATHO for e in checked):
        overall = SUB_PATHO
    elif checked and all(e.status == CERTIFIED_NONPATHO for e in checked):
        overall = CERTIFIED_HNP
    else:
        overall = UNKNOWN
    return HereditaryReport(overall, tuple(entries))
