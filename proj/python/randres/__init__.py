"""Clique-coloring formulas, resolution refutations, and interpolant circuits.

Thin wrappers over the C++ core. All functions exchange the same text formats
as the ``randres`` CLI: extended DIMACS for CNFs, one step per line for
proofs, ``g<id> = ...`` lines for circuits, and JSON for distribution files
and reports.
"""

from randres._core import (
    BudgetError,
    FileError,
    FormatError,
    ParamError,
    __version__,
    bound_report,
    check_distribution,
    check_proof,
    delta_exact,
    delta_sampled,
    eval_circuit,
    extract_interpolant,
    family_unsatisfiable,
    generate_formula,
    refute,
    run_game,
    separation_counts,
)

__all__ = [
    "BudgetError",
    "FileError",
    "FormatError",
    "ParamError",
    "__version__",
    "bound_report",
    "check_distribution",
    "check_proof",
    "delta_exact",
    "delta_sampled",
    "eval_circuit",
    "extract_interpolant",
    "family_unsatisfiable",
    "generate_formula",
    "refute",
    "run_game",
    "separation_counts",
]
