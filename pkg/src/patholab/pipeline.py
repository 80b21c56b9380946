"""End-to-end classification: parse, analyze, certify or refute, scan.

The pipeline owns the budgets and a per-instance memo keyed by the
canonical printed formula, so a subformula shared between corpus entries
(or between a formula and its negation during an audit) is classified once.

Verdict policy: the model search runs first because a found model settles
consistency outright; the refuter runs only when no model certificate
exists.  Both engines are sound, so the order cannot change a definite
verdict, only the work done.  Every refutation is re-validated with the
independent proof checker before it is reported.

Report dictionaries are JSON-ready and deterministic; all wall-clock data
lives under keys named "timing" so byte-level comparisons can exclude them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .corpus import CorpusEntry
from .hereditary import (CERTIFIED_NONPATHO, PROVED_PATHO, UNKNOWN,
                         hereditary_scan)
from .modelfinder import certify_nonpatho, model_to_lines, size_class
from .parser import ParseError, parse
from .proofcheck import check_proof
from .refuter import Budget, Refutation, proof_to_text, refute
from .strat import Stratified, stratify
from .syntax import (NearlyClosed, Not, Rejection, canonicalize,
                     nearly_closed, to_text, wrap_closed)
from .syntpatho import match_to_dict, synt_classify
from .theory import build_cosi_theory

MATCHER_LIMITS = (
    "The syntactic matcher recognizes the finite membership-cycle bans "
    "NC_n and their single-layer insertions only; the limit notion "
    "(no infinite descending membership chain) is not first-order "
    "expressible and is not checked."
)


@dataclass(frozen=True)
class Config:
    refute_depth: int = 3
    refute_steps: int = 50000
    model_size: int = 5

    def to_dict(self) -> dict:
        return {"refute_depth": self.refute_depth,
                "refute_steps": self.refute_steps,
                "model_size": self.model_size}


class NotNearlyClosed(Exception):
    def __init__(self, free: frozenset):
        names = ", ".join(sorted(free))
        super().__init__(f"formula has {len(free)} free variables ({names}); "
                         f"exactly one is required")
        self.free = free


def _strat_summary(result) -> dict:
    if isinstance(result, Stratified):
        return {"status": "Stratified", "levels": dict(result.levels)}
    cycle = [{"lo": c.lo, "hi": c.hi, "offset": c.offset,
              "origin": c.origin, "direction": direction}
             for c, direction in result.cycle]
    return {"status": "Unstratified", "cycle": cycle,
            "cycle_sum": result.cycle_sum}


def _synt_summary(sv) -> dict:
    return {
        "verdict": sv.verdict,
        "match": match_to_dict(sv.match) if sv.match is not None else None,
        "matched_subformula": (to_text(sv.matched_subformula)
                               if sv.matched_subformula is not None else None),
    }


class Pipeline:
    def __init__(self, config: Config | None = None):
        self.config = config or Config()
        self._memo = {}

    # -- core verdict ----------------------------------------------------

    def prepare(self, formula):
        """Nearly-closed canonical candidate for a parsed formula; closed
        inputs are wrapped as B & (x = x).  Returns (nc, wrapped)."""

        probe = nearly_closed(formula)
        if isinstance(probe, Rejection):
            if probe.free:
                raise NotNearlyClosed(probe.free)
            probe = nearly_closed(wrap_closed(formula))
            return canonicalize(probe), True
        return canonicalize(probe), False

    def verdict_for(self, nc: NearlyClosed) -> dict:
        """Memoized verdict record: verdict, certificate, reasons,
        size_class.  nc must already be canonical."""

        key = to_text(nc.formula)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        theory = build_cosi_theory(nc)
        reasons = []
        record = None
        model, why = certify_nonpatho(theory, self.config.model_size)
        if model is not None:
            record = {
                "verdict": CERTIFIED_NONPATHO,
                "certificate": {
                    "kind": "model",
                    "size": model.size,
                    "lines": model_to_lines(model),
                    "den": dict(model.den),
                },
                "reasons": [],
                "size_class": size_class(model, theory.constants[0]),
            }
        else:
            reasons.append(f"model search: {why}")
            outcome = refute(theory, Budget(self.config.refute_depth,
                                            self.config.refute_steps))
            if isinstance(outcome, Refutation):
                verdictcheck = check_proof(outcome.proof, theory)
                if not verdictcheck.ok:
                    raise RuntimeError(
                        f"search produced an invalid proof: {verdictcheck.error}")
                record = {
                    "verdict": PROVED_PATHO,
                    "certificate": {
                        "kind": "refutation",
                        "depth": outcome.depth_used,
                        "steps": outcome.steps_used,
                        "proof": proof_to_text(outcome.proof).splitlines(),
                    },
                    "reasons": [],
                    "size_class": None,
                }
            else:
                reasons.append(f"refuter: {outcome.reason}")
                record = {
                    "verdict": UNKNOWN,
                    "certificate": None,
                    "reasons": reasons,
                    "size_class": None,
                }
        self._memo[key] = record
        return record

    def _scan_classifier(self, nc: NearlyClosed):
        record = self.verdict_for(nc)
        cert = record["certificate"]
        if record["verdict"] == PROVED_PATHO:
            detail = f"refutation at depth {cert['depth']}"
        elif record["verdict"] == CERTIFIED_NONPATHO:
            detail = f"model of size {cert['size']}"
        else:
            detail = "; ".join(record["reasons"])
        return record["verdict"], detail

    # -- per-entry report -------------------------------------------------

    def classify_entry(self, entry: CorpusEntry) -> dict:
        report = {
            "name": entry.name,
            "input": entry.formula_text,
            "note": entry.note,
            "expected": entry.expected,
            "error": None,
            "canonical": None,
            "wrapped": None,
            "stratification": None,
            "syntactic": None,
            "verdict": None,
            "certificate": None,
            "reasons": None,
            "size_class": None,
            "hereditary": None,
            "expected_match": None,
            "timing": {},
        }
        timing = report["timing"]

        start = time.perf_counter()
        try:
            formula = parse(entry.formula_text)
        except ParseError as exc:
            report["error"] = f"parse error: {exc}"
            return report
        finally:
            timing["parse"] = round(time.perf_counter() - start, 6)

        try:
            nc, wrapped = self.prepare(formula)
        except NotNearlyClosed as exc:
            report["error"] = str(exc)
            return report
        report["canonical"] = to_text(nc.formula)
        report["wrapped"] = wrapped

        start = time.perf_counter()
        report["stratification"] = _strat_summary(stratify(nc.formula))
        timing["strat"] = round(time.perf_counter() - start, 6)

        start = time.perf_counter()
        report["syntactic"] = _synt_summary(synt_classify(nc))
        timing["synt"] = round(time.perf_counter() - start, 6)

        start = time.perf_counter()
        record = self.verdict_for(nc)
        report["verdict"] = record["verdict"]
        report["certificate"] = record["certificate"]
        report["reasons"] = record["reasons"]
        report["size_class"] = record["size_class"]
        timing["patho"] = round(time.perf_counter() - start, 6)

        start = time.perf_counter()
        scan = hereditary_scan(nc, self._scan_classifier)
        report["hereditary"] = {
            "overall": scan.overall,
            "entries": [{"formula": e.formula, "status": e.status,
                         "detail": e.detail} for e in scan.entries],
        }
        timing["hereditary"] = round(time.perf_counter() - start, 6)

        if entry.expected is not None:
            report["expected_match"] = (entry.expected == report["verdict"])
        return report

    # -- corpus-level runs -------------------------------------------------

    def run_corpus(self, entries, problems=()) -> dict:
        start = time.perf_counter()
        reports = [self.classify_entry(e)
                   for e in sorted(entries, key=lambda e: e.name)]
        for lineno, message in problems:
            reports.append({"name": f"line {lineno}", "input": None,
                            "error": message, "expected": None,
                            "expected_match": None, "verdict": None,
                            "timing": {}})
        reports.sort(key=lambda r: r["name"])
        counts = {}
        errors = 0
        mismatches = 0
        for r in reports:
            if r.get("error"):
                errors += 1
            if r.get("verdict"):
                counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
            if r.get("expected") is not None and r.get("expected_match") is not True:
                mismatches += 1
        return {
            "config": self.config.to_dict(),
            "matcher_limits": MATCHER_LIMITS,
            "entries": reports,
            "summary": {
                "total": len(reports),
                "verdicts": counts,
                "errors": errors,
                "expected_mismatches": mismatches,
            },
            "timing": {"total": round(time.perf_counter() - start, 6)},
        }

    def audit_1jt(self, entries) -> dict:
        """First-thesis audit: no formula and its negation both refuted."""

        start = time.perf_counter()
        pairs = []
        for entry in sorted(entries, key=lambda e: e.name):
            pair = {"name": entry.name, "verdict": None,
                    "negation_verdict": None, "error": None, "ok": True}
            try:
                formula = parse(entry.formula_text)
                nc, _ = self.prepare(formula)
                negated, _ = self.prepare(Not(formula))
            except (ParseError, NotNearlyClosed) as exc:
                pair["error"] = str(exc)
                pairs.append(pair)
                continue
            pair["verdict"] = self.verdict_for(nc)["verdict"]
            pair["negation_verdict"] = self.verdict_for(negated)["verdict"]
            pair["ok"] = not (pair["verdict"] == PROVED_PATHO
                             and pair["negation_verdict"] == PROVED_PATHO)
            pairs.append(pair)
        status = "PASS" if all(p["ok"] for p in pairs) else "FAIL"
        return {
            "config": self.config.to_dict(),
            "audit": "1jt",
            "status": status,
            "pairs": pairs,
            "timing": {"total": round(time.perf_counter() - start, 6)},
        }
