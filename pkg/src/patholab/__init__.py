"""patholab: classify set-builder predicates of naive set theory.

A nearly-closed formula A(x) names the candidate set {x : A}.  The toolkit
decides what evidence exists for that candidate: a refutation of the
comprehension-plus-extensionality theory (ProvedPatho), a finite model of
it (CertifiedNonPatho), or neither within budget (Unknown).  Around that
core sit a stratification checker, a matcher for the membership-cycle-ban
family NC_n, a hereditary subformula scan, and a corpus runner with
machine-readable reports.
"""

from .corpus import (BUNDLED_CORPUS_TEXT, CorpusEntry, CorpusError,
                     bundled_corpus, parse_corpus, parse_corpus_lenient)
from .hereditary import HereditaryReport, ScanEntry, hereditary_scan
from .modelfinder import (Model, UnsupportedTerm, certify_nonpatho,
                          eval_formula, find_model, model_to_lines,
                          size_class)
from .parser import ParseError, ShadowWarning, parse
from .pipeline import Config, NotNearlyClosed, Pipeline
from .proofcheck import CheckResult, check_proof
from .refuter import (Budget, NoRefutation, Proof, ProofStep, Refutation,
                      proof_to_text, refute)
from .strat import Stratified, Unstratified, stratify
from .syntax import (NearlyClosed, Rejection, alpha_equivalent, canonicalize,
                     free_vars, nearly_closed, to_text, wrap_closed)
from .syntpatho import NcnMatch, SyntVerdict, build_ncn, synt_classify
from .theory import Theory, build_cosi_theory

__version__ = "0.1.0"

__all__ = [
    "BUNDLED_CORPUS_TEXT", "Budget", "CheckResult", "Config", "CorpusEntry",
    "CorpusError", "HereditaryReport", "Model", "NcnMatch", "NearlyClosed",
    "NoRefutation", "NotNearlyClosed", "ParseError", "Pipeline", "Proof",
    "ProofStep", "Refutation", "Rejection", "ScanEntry", "ShadowWarning",
    "Stratified", "SyntVerdict", "Theory", "Unstratified", "UnsupportedTerm",
    "alpha_equivalent", "build_cosi_theory", "build_ncn", "bundled_corpus",
    "canonicalize", "certify_nonpatho", "check_proof", "eval_formula",
    "find_model", "free_vars", "hereditary_scan", "model_to_lines",
    "nearly_closed", "parse", "parse_corpus", "parse_corpus_lenient",
    "proof_to_text", "refute", "size_class", "stratify", "synt_classify",
    "to_text", "wrap_closed",
]
