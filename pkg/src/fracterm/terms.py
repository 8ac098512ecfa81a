"""Term algebra over the divisive meadow signature.

Terms are finite immutable trees built from naturals, variables, addition,
multiplication, unary minus, and division.  There is no inverse constructor;
division is the only non-ring operation.  Numerals are primitive leaves so
that recognizing them is O(1); ``expand_numeral`` recovers the sum-of-units
reading when it is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TypeAlias

from .errors import PositionError

__all__ = [
    "Term",
    "Numeral",
    "Var",
    "Add",
    "Mul",
    "Neg",
    "Div",
    "Position",
    "ZERO",
    "ONE",
    "numeral",
    "signed_numeral",
    "as_signed_numeral",
    "expand_numeral",
    "is_closed",
    "eq_syn",
    "free_vars",
    "children",
    "node_count",
    "depth",
    "subterms",
    "subterm_at",
    "replace_at",
    "contains_div",
]


@dataclass(frozen=True, slots=True)
class Numeral:
    """The canonical term for a natural number (the constants 0 and 1 included)."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"numerals denote naturals, got {self.value}")


@dataclass(frozen=True, slots=True)
class Var:
    """A named variable."""

    name: str


@dataclass(frozen=True, slots=True)
class Add:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Mul:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Neg:
    arg: Term


@dataclass(frozen=True, slots=True)
class Div:
    numerator: Term
    denominator: Term


Term: TypeAlias = Numeral | Var | Add | Mul | Neg | Div

#: A path of 0-based child indices from the root of a term.
Position: TypeAlias = tuple[int, ...]

ZERO = Numeral(0)
ONE = Numeral(1)


def numeral(k: int) -> Numeral:
    """Return the numeral term for the natural number ``k``."""
    return Numeral(k)


def signed_numeral(v: int) -> Term:
    """Return the canonical term for an integer: ``k`` or ``-(k)``.

    Zero is always ``Numeral(0)``, never wrapped in a minus.
    """
    return Numeral(v) if v >= 0 else Neg(Numeral(-v))


def as_signed_numeral(t: Term) -> int | None:
    """Return the integer a canonical signed numeral denotes, else None."""
    if isinstance(t, Numeral):
        return t.value
    if isinstance(t, Neg) and isinstance(t.arg, Numeral) and t.arg.value > 0:
        return -t.arg.value
    return None


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Numeral, Var)):
        return ()
    if isinstance(t, Neg):
        return (t.arg,)
    if isinstance(t, Div):
        return (t.numerator, t.denominator)
    return (t.left, t.right)


def _with_children(t: Term, kids: tuple[Term, ...]) -> Term:
    if isinstance(t, Neg):
        return Neg(kids[0])
    if isinstance(t, Div):
        return Div(kids[0], kids[1])
    if isinstance(t, Add):
        return Add(kids[0], kids[1])
    if isinstance(t, Mul):
        return Mul(kids[0], kids[1])
    return t


def expand_numeral(t: Term) -> Term:
    """Replace every numeral above 1 by its left-nested sum of units."""
    if isinstance(t, Numeral):
        if t.value <= 1:
            return t
        acc: Term = ONE
        for _ in range(t.value - 1):
            acc = Add(acc, ONE)
        return acc
    kids = children(t)
    if not kids:
        return t
    return _with_children(t, tuple(expand_numeral(c) for c in kids))


def is_closed(t: Term) -> bool:
    """True iff no variable occurs in ``t``."""
    if isinstance(t, Var):
        return False
    return all(is_closed(c) for c in children(t))


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    for c in children(t):
        out |= free_vars(c)
    return out


def eq_syn(s: Term, t: Term) -> bool:
    """Syntactic equality: identical trees, no arithmetic identification."""
    return s == t


def node_count(t: Term) -> int:
    return 1 + sum(node_count(c) for c in children(t))


def depth(t: Term) -> int:
    kids = children(t)
    if not kids:
        return 0
    return 1 + max(depth(c) for c in kids)


def subterms(t: Term) -> list[tuple[Position, Term]]:
    """All (position, subterm) pairs of ``t`` in preorder."""
    out: list[tuple[Position, Term]] = []

    def walk(s: Term, pos: Position) -> None:
        out.append((pos, s))
        for i, c in enumerate(children(s)):
            walk(c, pos + (i,))

    walk(t, ())
    return out


def subterm_at(t: Term, pos: Position) -> Term:
    """Return the subterm addressed by ``pos``."""
    cur = t
    for step, i in enumerate(pos):
        kids = children(cur)
        if i < 0 or i >= len(kids):
            raise PositionError(
                f"position {list(pos)} invalid at step {step}: "
                f"{type(cur).__name__} has {len(kids)} children"
            )
        cur = kids[i]
    return cur


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    """Return a copy of ``t`` with the subterm at ``pos`` replaced by ``new``."""
    if not pos:
        return new
    i = pos[0]
    kids = children(t)
    if i < 0 or i >= len(kids):
        raise PositionError(
            f"position index {i} out of range for {type(t).__name__}"
        )
    new_kids = tuple(
        replace_at(c, pos[1:], new) if j == i else c for j, c in enumerate(kids)
    )
    return _with_children(t, new_kids)


def contains_div(t: Term) -> bool:
    """True iff a division node occurs anywhere in ``t``."""
    if isinstance(t, Div):
        return True
    return any(contains_div(c) for c in children(t))
