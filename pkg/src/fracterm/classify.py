"""Fraction-class predicates and the three-way equality hierarchy.

A term is a fraction exactly when division is its leading symbol.  Most
classes below are relative to a backend ``A``: a fraction is *common* when
its denominator denotes nonzero in ``A``, *safe* when no subterm is an
uncommon fraction, *simple* when both components are numerals and the
fraction is common, and so on.  The backend-relative flags are reported as
``None`` (indeterminate) for open terms rather than quantifying over
assignments.

The three equalities compare ever less syntax: identical trees (``eq_syn``),
equal (numerator value, denominator value) pairs (``eq_pair``), and equal
denoted values (``eq_val``).  Each implies the next.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .meadows import ERROR, Meadow, MeadowValue, denote
from .syntax import to_text
from .terms import (
    Div,
    Mul,
    Neg,
    Numeral,
    ONE,
    Term,
    contains_div,
    eq_syn,
    is_closed,
    subterms,
)

__all__ = [
    "Classification",
    "classify",
    "simple_equivalent",
    "eq_pair",
    "eq_val",
    "is_polynomial",
]


def is_polynomial(t: Term) -> bool:
    """True iff no division occurs anywhere in ``t``."""
    return not contains_div(t)


@dataclass
class Classification:
    """All class predicates of one term relative to one backend.

    Backend-relative flags are ``None`` when the term is open and the flag
    cannot be decided.  ``numerator``/``denominator`` are present exactly
    when the term is a fraction.  ``sign`` is -1 when a simple fraction
    carries its minus on the numerator (``(-k)/l``), else 1.
    """

    is_fraction: bool
    is_closed: bool
    is_flat: bool
    is_composed: bool
    is_common: bool | None
    is_uncommon: bool | None
    is_safe_term: bool | None
    is_safe_fraction: bool | None
    is_simple: bool | None
    is_unit: bool | None
    is_simplified: bool | None
    is_proper: bool | None
    is_improper: bool | None
    is_scheinbruch: bool | None
    sign: int
    numerator: Term | None
    denominator: Term | None

    def to_json_obj(self) -> dict:
        out: dict = {}
        for flag in (
            "is_fraction",
            "is_closed",
            "is_flat",
            "is_composed",
            "is_common",
            "is_uncommon",
            "is_safe_term",
            "is_safe_fraction",
            "is_simple",
            "is_unit",
            "is_simplified",
            "is_proper",
            "is_improper",
            "is_scheinbruch",
        ):
            out[flag] = getattr(self, flag)
        out["sign"] = self.sign
        out["numerator"] = None if self.numerator is None else to_text(self.numerator)
        out["denominator"] = (
            None if self.denominator is None else to_text(self.denominator)
        )
        return out


def _nonzero(v: MeadowValue, meadow: Meadow) -> bool:
    # In a common meadow the error element does not count as a valid
    # nonzero denominator.
    if v is ERROR:
        return False
    return not meadow.is_zero(v)


def _signed_parts(t: Term) -> tuple[int, int] | None:
    """(sign, k) for a numeral or minus-wrapped numeral, else None."""
    if isinstance(t, Numeral):
        return (1, t.value)
    if isinstance(t, Neg) and isinstance(t.arg, Numeral):
        return (-1, t.arg.value)
    return None


def classify(t: Term, meadow: Meadow) -> Classification:
    """Compute every class flag of ``t`` relative to ``meadow``."""
    fraction = isinstance(t, Div)
    num = t.numerator if fraction else None
    den = t.denominator if fraction else None
    closed = is_closed(t)

    flat = fraction and is_polynomial(num) and is_polynomial(den)
    composed = fraction and not flat

    common: bool | None
    safe_term: bool | None
    if closed:
        common = fraction and _nonzero(denote(den, meadow), meadow)
        safe_term = all(
            _nonzero(denote(s.denominator, meadow), meadow)
            for _, s in subterms(t)
            if isinstance(s, Div)
        )
    else:
        common = None if fraction else False
        safe_term = None
    uncommon = fraction and not common if common is not None else (None if fraction else False)
    safe_fraction = (
        (fraction and common and safe_term) if safe_term is not None else None
    )
    if not fraction:
        safe_fraction = False

    # Simple-fraction family.  Components must be (possibly minus-wrapped)
    # numerals, which forces the term closed, so these stay decidable; the
    # order predicates use the unsigned numerator with the sign recorded.
    sign = 1
    simple: bool | None = False
    simplified: bool | None = False
    proper: bool | None = False
    improper: bool | None = False
    scheinbruch: bool | None = False
    if fraction:
        num_parts = _signed_parts(num)
        if num_parts is not None and isinstance(den, Numeral):
            sign, k = num_parts
            l = den.value
            simple = common
            if simple:
                simplified = math.gcd(k, l) == 1
                proper = k < l
                improper = k >= l
                scheinbruch = k % l == 0

    unit: bool | None = fraction and eq_syn(num, ONE)
    if unit:
        unit = common  # may be None for an open denominator

    return Classification(
        is_fraction=fraction,
        is_closed=closed,
        is_flat=flat,
        is_composed=composed,
        is_common=common,
        is_uncommon=uncommon,
        is_safe_term=safe_term,
        is_safe_fraction=safe_fraction,
        is_simple=simple,
        is_unit=unit,
        is_simplified=simplified,
        is_proper=proper,
        is_improper=improper,
        is_scheinbruch=scheinbruch,
        sign=sign,
        numerator=num,
        denominator=den,
    )


def simple_equivalent(f: Term, g: Term, meadow: Meadow) -> bool:
    """Cross-multiplication equivalence of two simple fractions in ``meadow``."""
    for name, t in (("first", f), ("second", g)):
        if not classify(t, meadow).is_simple:
            raise DomainError(f"{name} argument is not a simple fraction: {to_text(t)}")
    assert isinstance(f, Div) and isinstance(g, Div)
    return denote(Mul(f.numerator, g.denominator), meadow) == denote(
        Mul(f.denominator, g.numerator), meadow
    )


def _as_value_pair(t: Term, meadow: Meadow) -> tuple[MeadowValue, MeadowValue]:
    # A non-fraction contributes (value, 1) via the identity x = x/1.
    if isinstance(t, Div):
        return (denote(t.numerator, meadow), denote(t.denominator, meadow))
    return (denote(t, meadow), meadow.one())


def eq_pair(p: Term, q: Term, meadow: Meadow) -> bool:
    """Componentwise equality of the (numerator, denominator) value pairs."""
    return _as_value_pair(p, meadow) == _as_value_pair(q, meadow)


def eq_val(p: Term, q: Term, meadow: Meadow) -> bool:
    """Equality of denoted values."""
    return denote(p, meadow) == denote(q, meadow)
