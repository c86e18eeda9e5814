"""Error types shared across the workbench.

Every domain error carries a stable ``code`` so the CLI and HTTP layers can
report which rule was violated without parsing message text.
"""

from __future__ import annotations


class DomainError(Exception):
    """Rule violation in otherwise well-formed input (CLI exit 1 / HTTP 422)."""

    code = "domain-error"

    def __init__(self, message, code=None, **details):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.details = details


class UnknownReferenceError(DomainError):
    """An identifier does not resolve (goal, cluster, hierarchy, scenario...)."""

    code = "unknown-reference"


class CompletenessError(DomainError):
    """A required (alternative, quality requirement) contribution is missing."""

    code = "missing-contribution"


class JudgmentError(DomainError):
    """Comparison matrix violates positivity/reciprocity/diagonal rules."""

    code = "judgment-matrix"


class ConvergenceError(DomainError):
    """Power iteration exhausted its budget; carries the last iterate."""

    code = "no-convergence"

    def __init__(self, message, last_iterate=None, **details):
        super().__init__(message, **details)
        self.last_iterate = last_iterate


class StructureError(DomainError):
    """Malformed criteria hierarchy or scenario wiring."""

    code = "structure"


class NormalizationError(DomainError):
    """Supplied weight vector does not sum to 1 within tolerance."""

    code = "weights-not-normalized"


class KindMismatchError(DomainError):
    """Criterion direction contradicts the quality-requirement kind."""

    code = "direction-kind-mismatch"


class CoverageError(DomainError):
    """Weights or directions do not cover every criterion."""

    code = "criterion-coverage"


class DegenerateInstanceError(DomainError):
    """Instance too small to rank (fewer than two alternatives)."""

    code = "degenerate-instance"


class PolicyError(DomainError):
    """Selection policy infeasible for the instance."""

    code = "selection-policy"


class RankValidityError(DomainError):
    """A judge's row is not a permutation of 1..N."""

    code = "rank-validity"


class AlignmentError(DomainError):
    """Expert labels do not align with the outcome's alternatives."""

    code = "label-alignment"


class EditError(DomainError):
    """A what-if edit references a missing cell or breaks an invariant."""

    code = "edit-rejected"


class DocumentError(Exception):
    """Unreadable or malformed document (CLI exit 2 / HTTP 400)."""


class SyntaxDocumentError(DocumentError):
    """Document text is not parseable; carries line/column when known."""

    def __init__(self, message, line=None, column=None, position=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.position = position


class FormatVersionError(DocumentError):
    """Document declares a format_version this build does not understand."""
