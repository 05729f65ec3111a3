"""Exception hierarchy.

Every error that refers to a concrete failing identity carries a ``witness``
dict (basis labels, offending vectors) so that reports can show it verbatim.
"""
from __future__ import annotations


class NcgaugeError(Exception):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class DivisionByZero(NcgaugeError, ZeroDivisionError):
    pass


class DimensionMismatch(NcgaugeError, ValueError):
    pass


class NotInvertible(NcgaugeError):
    pass


class NotFree(NcgaugeError):
    pass


class NotGalois(NcgaugeError):
    pass


class NotAForm(NcgaugeError):
    pass


class InvariantFailure(NcgaugeError):
    pass


class InternalInconsistency(NcgaugeError):
    pass


class NotAssociative(NcgaugeError):
    pass


class NotCanonicalForm(NcgaugeError):
    pass


class BianchiFailure(NcgaugeError):
    pass


class HopfAxiomFailure(NcgaugeError):
    pass


class EntwiningAxiomFailure(NcgaugeError):
    pass


class ParseError(NcgaugeError):
    pass


class AxiomPrecheckError(NcgaugeError):
    pass
