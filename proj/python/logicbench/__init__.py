"""Verification workbench for definite logic programs.

Programs are passed as source text or as ``"corpus:NAME"``.
"""

import json as _json

from . import _core
from ._core import DimacsError, ParseError, corpus_names, corpus_source, normalize_program, run_cli, spec_names

__all__ = [
    "DimacsError",
    "ParseError",
    "check",
    "corpus_names",
    "corpus_source",
    "diagnose",
    "normalize_program",
    "run_cli",
    "sat",
    "solve",
    "spec_names",
    "tree",
]


def solve(program, query, *, selection="leftmost-selectable", max_answers=0, proofs=False, max_steps=0, max_depth=0):
    """SLD resolution; returns answers, exhaustiveness and floundering flags."""
    return _json.loads(_core.solve_json(program, query, selection, max_answers, proofs, max_steps, max_depth))


def tree(program, query, *, selection="leftmost-selectable", max_steps=0, max_depth=0):
    """Full derivation tree as a node list."""
    return _json.loads(_core.tree_json(program, query, selection, max_steps, max_depth))


def sat(dimacs, *, variant="p3-control", max_steps=0):
    """Solves DIMACS text with a corpus solver; variant "brute-force" uses the truth table."""
    return _json.loads(_core.sat_json(dimacs, variant, max_steps))


def check(kind, programs, *, spec="", bound=6, mapping="p3", slack=2, extra_constants=("a",)):
    """Bounded correctness, coverage, recurrence or csSLD-condition check."""
    if isinstance(programs, str):
        programs = [programs]
    return _json.loads(_core.check_json(kind, list(programs), spec, bound, mapping, slack, list(extra_constants)))


def diagnose(kind, program, target, *, spec, bound=6, extra_constants=("a",)):
    """kind is "wrong-answer" (target: ground atom) or "missing-answer" (target: query)."""
    return _json.loads(_core.diagnose_json(kind, program, target, spec, bound, list(extra_constants)))
