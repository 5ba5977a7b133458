"""Exact scalars: rationals, binomials and Schur dimension values."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading ``-``) into lowest terms."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def binom(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("binom requires n >= 0")
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        # exact at every step: result * (n-k+i) is divisible by i
        result = result * (n - k + i) // i
    return result


def elementary_symmetric_at_ones(m: int, n: int) -> int:
    """e_m(1, ..., 1) with n ones."""
    if m < 0:
        return 0
    return binom(n, m)


class Partition(tuple):
    """Weakly decreasing tuple of non-negative ints; trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))


def schur_dimension(lam: Sequence[int], n: int) -> int:
    """Value of the Schur polynomial s_lam at (1, ..., 1) (n ones)."""
    lam = Partition(lam)
    if n < 1:
        raise ValueError("n must be positive")
    if len(lam) > n:
        raise ValueError(f"partition {tuple(lam)} has more than {n} nonzero parts")
    padded = list(lam) + [0] * (n - len(lam))
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= padded[i] - padded[j] + j - i
            den *= j - i
    value, rem = divmod(num, den)
    assert rem == 0
    return value
