"""Small exact-integer helpers shared by the verification modules."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator


def pascal_rows() -> Iterator[list[int]]:
    """Yield rows of Pascal's triangle: [C(m, 0), ..., C(m, m)] for m = 0, 1, 2, ..."""
    row = [1]
    while True:
        yield row
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]


@lru_cache(maxsize=None)
def binomial_row(m: int) -> tuple[int, ...]:
    """Row m of Pascal's triangle, built from row m-1 (rows are cached)."""
    if m < 0:
        raise ValueError(f"row index must be non-negative, got {m}")
    if m == 0:
        return (1,)
    prev = binomial_row(m - 1)
    return (1, *(a + b for a, b in zip(prev, prev[1:])), 1)


def catalan_numbers(nmax: int) -> list[int]:
    # C_0 = 1, C_n = sum C_k C_{n-1-k}; kept independent of any enumeration
    c = [1]
    for n in range(1, nmax + 1):
        c.append(sum(c[k] * c[n - 1 - k] for k in range(n)))
    return c


def catalan(n: int) -> int:
    return catalan_numbers(n)[n]


def cayley_count(n: int) -> int:
    """Labeled trees on [n]: n^(n-2), with the single-vertex tree counted once at n = 1."""
    if n < 1:
        raise ValueError(f"labeled trees need n >= 1, got {n}")
    return 1 if n == 1 else n ** (n - 2)


def rooted_count(n: int) -> int:
    if n < 1:
        raise ValueError(f"rooted trees need n >= 1, got {n}")
    return n ** (n - 1)


def format_exact(x: int | Fraction) -> str:
    """Decimal string for an integer, "p/q" for a non-integral rational."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def parse_exact(s: str) -> Fraction:
    return Fraction(s)
