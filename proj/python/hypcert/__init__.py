"""Certified interval verification of hyperbolic inequalities."""

from ._core import (
    MAIN_STATEMENT,
    RATIO_EXPRESSION,
    Certificate,
    DivisionByIntervalContainingZero,
    DomainViolation,
    Error,
    Expr,
    Interval,
    MalformedCertificate,
    Minimization,
    OverflowRange,
    ParseError,
    ProverConfig,
    UnboundVariable,
    corpus_ids,
    document_kind,
    evaluate,
    infimum,
    parse,
    parse_certificate,
    parse_minimization,
    render,
    run_corpus_item,
    scan,
    validate_document,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
