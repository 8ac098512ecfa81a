"""Evaluation backends for closed and open terms.

Three carriers interpret the divisive signature totally:

* ``Q0`` -- exact rationals with the inverse totalized by ``1/0 = 0``;
* ``Gfp(p)`` -- the prime field of ``p`` elements, same totalization;
* ``CommonQ`` -- exact rationals plus an absorbing error element ``a``
  produced by any division by zero and propagated through every operation.

``Q0`` and ``Gfp`` are involutive (``1/(1/x) = x``); ``CommonQ`` is not.
Identity checking is exhaustive on ``Gfp`` and sample-driven on the two
infinite carriers.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, TypeAlias

from .errors import DomainError, EvalError
from .terms import Add, Mul, Neg, Numeral, Term, Var, free_vars

__all__ = [
    "Q0",
    "Gfp",
    "CommonQ",
    "Meadow",
    "MeadowValue",
    "Residue",
    "ERROR",
    "Assignment",
    "evaluate",
    "denote",
    "format_value",
    "CheckReport",
    "check_identity",
    "meadow_from_name",
]


@dataclass(frozen=True, slots=True)
class Residue:
    """An element of the prime field GF(p)."""

    value: int
    modulus: int

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


class _ErrorElement:
    """The absorbing error element of a common meadow (printed ``a``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "a"


ERROR = _ErrorElement()

MeadowValue: TypeAlias = Fraction | Residue | _ErrorElement
Assignment: TypeAlias = Mapping[str, MeadowValue]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Q0:
    """Rational numbers with a total inverse (``x/0 = 0``)."""

    name = "q0"

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def neg(self, x: Fraction) -> Fraction:
        return -x

    def div(self, x: Fraction, y: Fraction) -> Fraction:
        return Fraction(0) if y == 0 else x / y

    def is_zero(self, v: MeadowValue) -> bool:
        return v == 0

    def __repr__(self) -> str:
        return "Q0()"


class Gfp:
    """The prime field GF(p) with the inverse totalized by ``0**-1 = 0``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise DomainError(f"modulus must be prime, got {p}")
        self.p = p
        self.name = f"gf:{p}"

    def from_int(self, n: int) -> Residue:
        return Residue(n % self.p, self.p)

    def zero(self) -> Residue:
        return Residue(0, self.p)

    def one(self) -> Residue:
        return Residue(1 % self.p, self.p)

    def add(self, x: Residue, y: Residue) -> Residue:
        return Residue((x.value + y.value) % self.p, self.p)

    def mul(self, x: Residue, y: Residue) -> Residue:
        return Residue((x.value * y.value) % self.p, self.p)

    def neg(self, x: Residue) -> Residue:
        return Residue(-x.value % self.p, self.p)

    def inv(self, x: Residue) -> Residue:
        # 0**0 == 1 in Python, so the zero case needs a guard (matters for p == 2).
        v = pow(x.value, self.p - 2, self.p) if x.value else 0
        return Residue(v, self.p)

    def div(self, x: Residue, y: Residue) -> Residue:
        return self.mul(x, self.inv(y))

    def is_zero(self, v: MeadowValue) -> bool:
        return isinstance(v, Residue) and v.value == 0

    def elements(self) -> Iterator[Residue]:
        for v in range(self.p):
            yield Residue(v, self.p)

    def __repr__(self) -> str:
        return f"Gfp({self.p})"


class CommonQ:
    """Rationals extended with an error element absorbed by every operation."""

    name = "common"

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, x: MeadowValue, y: MeadowValue) -> MeadowValue:
        if x is ERROR or y is ERROR:
            return ERROR
        return x + y

    def mul(self, x: MeadowValue, y: MeadowValue) -> MeadowValue:
        if x is ERROR or y is ERROR:
            return ERROR
        return x * y

    def neg(self, x: MeadowValue) -> MeadowValue:
        return ERROR if x is ERROR else -x

    def div(self, x: MeadowValue, y: MeadowValue) -> MeadowValue:
        if x is ERROR or y is ERROR or y == 0:
            return ERROR
        return x / y

    def is_zero(self, v: MeadowValue) -> bool:
        return v is not ERROR and v == 0

    def __repr__(self) -> str:
        return "CommonQ()"


Meadow: TypeAlias = Q0 | Gfp | CommonQ


def evaluate(t: Term, meadow: Meadow, assignment: Assignment | None = None) -> MeadowValue:
    """Homomorphic evaluation of ``t``; total on every backend."""
    env = assignment or {}

    def go(s: Term) -> MeadowValue:
        if isinstance(s, Numeral):
            return meadow.from_int(s.value)
        if isinstance(s, Var):
            try:
                return env[s.name]
            except KeyError:
                raise EvalError(f"unbound variable {s.name!r}") from None
        if isinstance(s, Add):
            return meadow.add(go(s.left), go(s.right))
        if isinstance(s, Mul):
            return meadow.mul(go(s.left), go(s.right))
        if isinstance(s, Neg):
            return meadow.neg(go(s.arg))
        return meadow.div(go(s.numerator), go(s.denominator))

    return go(t)


def denote(t: Term, meadow: Meadow) -> MeadowValue:
    """The value a closed term denotes; open terms are rejected."""
    missing = free_vars(t)
    if missing:
        raise EvalError(f"term is open: free variables {sorted(missing)}")
    return evaluate(t, meadow)


def format_value(v: MeadowValue) -> str:
    if v is ERROR:
        return "a"
    if isinstance(v, Residue):
        return str(v)
    return str(v)


@dataclass
class CheckReport:
    """Outcome of an identity check over one backend."""

    status: str  # 'valid' | 'counterexample'
    assignments_checked: int
    counterexample: dict[str, MeadowValue] | None

    @property
    def valid(self) -> bool:
        return self.status == "valid"

    def to_json_obj(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = {k: format_value(v) for k, v in sorted(self.counterexample.items())}
        return {
            "status": self.status,
            "assignments_checked": self.assignments_checked,
            "counterexample": ce,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def check_identity(
    lhs: Term,
    rhs: Term,
    conditions: Iterable[Term],
    meadow: Meadow,
    samples: Iterable[Assignment] | None = None,
) -> CheckReport:
    """Check ``lhs = rhs`` under ``conditions`` (each a term asserted nonzero).

    On ``Gfp`` every assignment to the free variables is enumerated;
    ``assignments_checked`` counts all of them, including those the
    conditions exclude.  On the infinite backends a list of sample
    assignments must be supplied.
    """
    conditions = list(conditions)
    names = sorted(
        set().union(free_vars(lhs), free_vars(rhs), *(free_vars(c) for c in conditions))
    )

    if isinstance(meadow, Gfp):
        assignments: Iterable[Assignment] = (
            dict(zip(names, combo))
            for combo in itertools.product(list(meadow.elements()), repeat=len(names))
        )
    else:
        if samples is None:
            raise DomainError(
                f"backend {meadow.name!r} is infinite; supply sample assignments"
            )
        assignments = samples

    checked = 0
    for env in assignments:
        checked += 1
        if any(meadow.is_zero(evaluate(c, meadow, env)) for c in conditions):
            continue
        if evaluate(lhs, meadow, env) != evaluate(rhs, meadow, env):
            return CheckReport("counterexample", checked, dict(env))
    return CheckReport("valid", checked, None)


def meadow_from_name(name: str) -> Meadow:
    """Build a backend from ``q0``, ``gf:P``, or ``common``."""
    if name == "q0":
        return Q0()
    if name == "common":
        return CommonQ()
    if name.startswith("gf:"):
        try:
            p = int(name[3:])
        except ValueError:
            raise DomainError(f"bad prime in meadow name {name!r}") from None
        return Gfp(p)
    raise DomainError(f"unknown meadow {name!r} (expected q0, gf:P, or common)")
