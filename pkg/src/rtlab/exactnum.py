"""Exact arithmetic over products of integer powers with rational exponents.

Every ordering decision in this package reduces to comparing two values of
the form prod(b_i ** e_i) with integer bases b_i >= 1 and rational
exponents e_i.  Clearing the exponent denominators turns such a comparison
into one between two big integers, which Python evaluates exactly.  Floats
appear in exactly two supporting roles: a conservative screen that settles
comparisons whose logarithmic gap is far wider than float error, and a
seed for the integer floor search.  The big-integer path is the authority.

Rationals are plain fractions.Fraction values (already reduced, positive
denominator); the alias Rational below is the name the rest of the package
uses.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ContractViolationError, ResourceLimitError

Rational = Fraction

#: Default ceiling, in bits, for any big integer produced while comparing.
DEFAULT_BIT_BUDGET = 1_000_000

LESS, EQUAL, GREATER = -1, 0, 1

_ORDERING_NAMES = {LESS: "less", EQUAL: "equal", GREATER: "greater"}


def ordering_name(c: int) -> str:
    return _ORDERING_NAMES[c]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _as_exponent(e) -> Fraction:
    if isinstance(e, float):
        raise ContractViolationError(f"float exponent {e!r} not accepted; pass a Fraction")
    return Fraction(e)


class PowerProduct:
    """Positive real prod(base ** exponent) over integer bases >= 1.

    Canonical form merges equal bases, drops base 1 and zero exponents, and
    sorts factors by base.  Equality and hashing are structural on the
    canonical form; use compare()/pp_compare() for the exact ordering of the
    underlying real values (two structurally different products can still be
    equal as reals, e.g. 4**1 and 2**2).
    """

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        acc: dict[int, Fraction] = {}
        for base, exp in factors:
            b = int(base)
            if b != base or b < 1:
                raise ContractViolationError(f"base {base!r} is not an integer >= 1")
            e = _as_exponent(exp)
            if b == 1 or e == 0:
                continue
            acc[b] = acc.get(b, Fraction(0)) + e
        object.__setattr__(self, "factors",
                           tuple(sorted((b, e) for b, e in acc.items() if e != 0)))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def one(cls) -> "PowerProduct":
        return cls()

    @classmethod
    def of_int(cls, n: int) -> "PowerProduct":
        if n < 1:
            raise ContractViolationError(f"of_int needs n >= 1, got {n}")
        return cls(((n, Fraction(1)),))

    # -- algebra ---------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, int):
            other = PowerProduct.of_int(other)
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return PowerProduct(self.factors + other.factors)

    __rmul__ = __mul__

    def __pow__(self, exp):
        e = _as_exponent(exp)
        return PowerProduct(tuple((b, x * e) for b, x in self.factors))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PowerProduct.of_int(other)
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return self * other ** -1

    # -- structural identity -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"PowerProduct({self})"

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for b, e in self.factors:
            if e == 1:
                parts.append(str(b))
            elif e.denominator == 1:
                parts.append(f"{b}^{e.numerator}")
            else:
                parts.append(f"{b}^({e.numerator}/{e.denominator})")
        return "*".join(parts)

    def factor_list(self):
        """Factors as [[base, "num/den"], ...] for JSON output."""
        return [[b, f"{e.numerator}/{e.denominator}"] for b, e in self.factors]

    # -- numeric views -----------------------------------------------------------

    def log2(self) -> float:
        """Float estimate of log2(value); exactness never depends on it."""
        return sum(float(e) * math.log2(b) for b, e in self.factors)

    def __float__(self):
        try:
            return 2.0 ** self.log2()
        except OverflowError:
            return math.inf

    # -- exact comparison ----------------------------------------------------------

    def compare(self, other=None, bit_budget=None) -> int:
        """Exact trichotomy vs another product (or 1): -1, 0 or +1."""
        if other is None:
            other = PowerProduct.one()
        elif isinstance(other, int):
            other = PowerProduct.of_int(other)
        diff = (self / other).factors
        if not diff:
            return EQUAL

        # Conservative float screen: per-term relative error is a few ulp,
        # so a gap above 1e-9 of the total magnitude is decisive.
        try:
            total = mag = 0.0
            for b, e in diff:
                t = float(e) * math.log2(b)
                total += t
                mag += abs(t)
            if abs(total) > 1e-9 * mag + 1e-9:
                return _sign(total)
        except OverflowError:
            pass

        # Authority: clear denominators and compare big integers.
        lden = 1
        for _, e in diff:
            lden = math.lcm(lden, e.denominator)
        bits = 0
        for b, e in diff:
            bits += abs(int(e * lden)) * b.bit_length()
        budget = DEFAULT_BIT_BUDGET if bit_budget is None else bit_budget
        if bits > budget:
            raise ResourceLimitError(
                f"comparing {self} vs {other} needs about {bits} bits; budget is {budget}")
        pos = neg = 1
        for b, e in diff:
            ie = int(e * lden)
            if ie > 0:
                pos *= b ** ie
            else:
                neg *= b ** (-ie)
        return _sign(pos - neg)


def pp_compare(a: PowerProduct, b: PowerProduct, bit_budget=None) -> int:
    """Exact ordering of two products: LESS, EQUAL or GREATER."""
    return a.compare(b, bit_budget=bit_budget)


def pp_floor(x: PowerProduct, bit_budget=None) -> int:
    """Largest integer N with N <= x, for x > 0.

    A float log2 estimate seeds the bracket; the bracket is then verified and
    shrunk with exact comparisons only, so the result never depends on
    rounding.
    """
    if not x.factors:
        return 1
    lg = x.log2()
    hi = 1 << max(1, math.ceil(lg) + 2)
    while x.compare(PowerProduct.of_int(hi), bit_budget=bit_budget) >= 0:
        hi <<= 1
    lo = 0  # x > 0 always, so floor >= 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if x.compare(PowerProduct.of_int(mid), bit_budget=bit_budget) >= 0:
            lo = mid
        else:
            hi = mid
    return lo


def pp_is_integer(x: PowerProduct, bit_budget=None) -> bool:
    f = pp_floor(x, bit_budget=bit_budget)
    return f >= 1 and x.compare(PowerProduct.of_int(f), bit_budget=bit_budget) == EQUAL


def least_integer_greater(x: PowerProduct, bit_budget=None) -> int:
    """Least integer strictly greater than x (so an exact integer N gives N+1)."""
    return pp_floor(x, bit_budget=bit_budget) + 1
