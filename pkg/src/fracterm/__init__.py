"""Exact fraction calculus over meadows: totalized fields where 1/0 = 0.

The package parses arithmetical terms over the divisive signature,
classifies fractions (flat, common, safe, simple, ...), evaluates closed
terms in rational, prime-field, and error-element backends, performs
gcd-based integer-pair arithmetic with zero denominators permitted, and
normalizes closed terms to simplified flat fractions with auditable
derivation traces.
"""

from .calculator import (
    EqualityEvidence,
    NormalForm,
    Step,
    apply_rule,
    check_equal,
    normalize_full,
    normalize_safe,
    replay_derivation,
)
from .classify import Classification, classify, eq_pair, eq_val, simple_equivalent
from .errors import (
    DomainError,
    EvalError,
    FractermError,
    MatchError,
    ParseError,
    PositionError,
    SafetyError,
)
from .fracpairs import (
    Fracpair,
    ZeroMode,
    fp_add,
    fp_div,
    fp_eq,
    fp_equiv,
    fp_mul,
    fp_neg,
    fp_value,
    parse_fracpair,
)
from .meadows import (
    ERROR,
    CheckReport,
    CommonQ,
    Gfp,
    Meadow,
    MeadowValue,
    Q0,
    Residue,
    check_identity,
    denote,
    evaluate,
    format_value,
    meadow_from_name,
)
from .syntax import parse, term_from_json, term_to_json, to_text
from .terms import (
    Add,
    Div,
    Mul,
    Neg,
    Numeral,
    Position,
    Term,
    Var,
    eq_syn,
    expand_numeral,
    is_closed,
    numeral,
    subterm_at,
    subterms,
)

__version__ = "0.1.0"
