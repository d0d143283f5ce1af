"""Bitext word-alignment annotation: tokenization, style checks, adjudication.

The package mechanizes a hand-annotation style for word-aligning parallel
Bible verses: a deterministic retokenizer (contraction expansion, clitic
splitting), an alignment model with Not-Translated marks and phrase blocks,
a linter for the style rules, agreement measurement with majority-vote
adjudication, and a sqlite-backed campaign service with an HTTP API and CLI.
"""

from .agreement import (AgreementReport, AnnotationSet, PRF, VoteOutcome,
                        agreement_report, atom_category, atoms, compare,
                        from_atoms, majority_vote, pairwise_symmetry_check,
                        sorted_atom_strings, variation_report, vote_table)
from .alignment import (Alignment, Component, Link, block_link, components,
                        crossing_count, mark_not_translated, toggle_link)
from .alignment_io import (alignment_to_line, dumps, load_alignment_file, loads,
                           parse_alignment_line, parse_atom, read_alignments,
                           save_alignment_file, sort_atoms, write_alignments)
from .corpus import iter_bitext_records, load_bitext, sample_verse_sets, write_bitext
from .errors import (AuthorizationError, BlinkerError, BoundsError, CorpusSizeError,
                     DuplicateIdError, FormatError, LintGateError,
                     PunctSearchBoundError, RevisionConflictError,
                     UnknownRuleError, VerseMismatchError)
from .lexicons import Lexicons
from .linter import LintFinding, RULE_CATALOG, RULE_ORDER, check_rule, lint
from .punctuation import optimal_punct_links, unlinked_punctuation
from .store import Campaign, Store, StoredAlignment
from .tokens import (ElisionTable, Token, VersePair, normalize_surface, tokenize,
                     verify_tokenization, verify_verse_pair)

__version__ = "0.1.0"

__all__ = [
    "AgreementReport", "Alignment", "AnnotationSet", "AuthorizationError",
    "BlinkerError", "BoundsError", "Campaign", "Component", "CorpusSizeError",
    "DuplicateIdError", "ElisionTable", "FormatError", "Lexicons", "LintFinding",
    "LintGateError", "Link", "PRF", "PunctSearchBoundError",
    "RevisionConflictError", "RULE_CATALOG", "RULE_ORDER", "Store",
    "StoredAlignment", "Token", "UnknownRuleError", "VerseMismatchError",
    "VersePair", "VoteOutcome", "agreement_report", "alignment_to_line",
    "atom_category", "atoms", "block_link", "check_rule", "compare",
    "components", "crossing_count", "dumps", "from_atoms",
    "iter_bitext_records", "lint", "load_alignment_file", "load_bitext",
    "loads", "majority_vote", "mark_not_translated", "normalize_surface",
    "optimal_punct_links", "pairwise_symmetry_check", "parse_alignment_line",
    "parse_atom", "read_alignments", "sample_verse_sets", "save_alignment_file",
    "sort_atoms", "sorted_atom_strings", "toggle_link", "tokenize",
    "unlinked_punctuation",
    "variation_report", "verify_tokenization", "verify_verse_pair",
    "vote_table", "write_alignments", "write_bitext",
]
