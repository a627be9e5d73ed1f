"""The hook length formula, its rooted form, and the recurrence linking it to Cayley counts.

    (n+1)^(n-1) = sum_T n!/2^n     prod_v (1 + 1/h(v))
    (n+1)^n     = sum_T (n+1)!/2^n prod_v (1 + 1/h(v))   =: F(n)
    F(n)        = (n+1)/(2n) sum_k C(n+1, k+1) F(k) F(n-k-1),   F(0) = 1

Each check reports both sides together with the method that produced them.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hookcal import trees
from hookcal._arith import binomial_row, catalan, catalan_numbers, pascal_rows
from hookcal.cayley import labeled_count, rooted_tree_count
from hookcal.errors import CapacityError
from hookcal.report import Identity, VerificationReport

# Catalan(16) ~ 3.5e7 shapes still fits; Catalan(17) ~ 1.3e8 does not
DEFAULT_ENUMERATION_CAP = 50_000_000
# below this size a process pool costs more than the enumeration itself
PARALLEL_MIN_N = 12

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "SequenceRow",
    "compute_F",
    "enumeration_sum",
    "sequence_table",
    "split_relation_report",
    "verify_F_equals_rooted_count",
    "verify_eq1",
    "verify_eq2",
    "verify_eq3",
    "verify_split_relation",
    "Identity",
    "VerificationReport",
]


def _elapsed_ms(start: float) -> int:
    return round((time.perf_counter() - start) * 1000)


def check_enumeration_capacity(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    count = catalan(n)
    if count > cap:
        raise CapacityError(f"Catalan({n})", count, cap)
    return count


def enumeration_sum(n: int, workers: int = 1) -> tuple[int, Fraction]:
    """Shape count and sum of prod(1 + 1/h(v)) over all shapes of size ``n``.

    With ``workers > 1`` the shapes are split by the size of the root's left
    subtree and the parts are summed in separate processes.
    """
    if workers <= 1 or n < PARALLEL_MIN_N:
        return trees.hook_product_sum(n)
    with ProcessPoolExecutor(max_workers=min(workers, n)) as pool:
        parts = list(pool.map(trees.hook_product_sum, [n] * n, range(n)))
    return sum(c for c, _ in parts), sum((s for _, s in parts), Fraction(0))


def _verify_enumerated(identity: Identity, n: int, cap: int, workers: int) -> VerificationReport:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    check_enumeration_capacity(n, cap)
    start = time.perf_counter()
    count, total = enumeration_sum(n, workers)
    if identity is Identity.EQ1:
        lhs, form, closed = (n + 1) ** (n - 1), "eq1", "closed form (n+1)^(n-1)"
        weight = "n!/2^n"
    else:
        lhs, form, closed = (n + 1) ** n, "eq2", "closed form (n+1)^n"
        weight = "(n+1)!/2^n"
    rhs = trees.weight_prefactor(n, form) * total
    return VerificationReport(
        identity, n, Fraction(lhs), rhs,
        closed,
        f"sum over {count} enumerated shapes of {weight}*prod(1+1/h)",
        object_count=count,
        elapsed_ms=_elapsed_ms(start),
    )


def verify_eq1(n: int, cap: int = DEFAULT_ENUMERATION_CAP, workers: int = 1) -> VerificationReport:
    """(n+1)^(n-1) against the hook-weight sum over all Catalan(n) shapes."""
    return _verify_enumerated(Identity.EQ1, n, cap, workers)


def verify_eq2(n: int, cap: int = DEFAULT_ENUMERATION_CAP, workers: int = 1) -> VerificationReport:
    """(n+1)^n against the rooted-form hook-weight sum over all shapes."""
    return _verify_enumerated(Identity.EQ2, n, cap, workers)


# -- recurrence -----------------------------------------------------------


def compute_F(nmax: int, check: bool = True) -> list[Fraction]:
    """F(0..nmax) from the binary-tree recurrence, bottom-up in exact rationals.

    With ``check`` every entry is compared to (n+1)^n as it is produced and an
    ``ArithmeticError`` is raised on the first disagreement.
    """
    if nmax < 0:
        raise ValueError(f"nmax must be non-negative, got {nmax}")
    F = [Fraction(1)]
    rows = pascal_rows()
    next(rows)
    next(rows)
    for n in range(1, nmax + 1):
        binom = next(rows)  # row n+1
        acc = sum(binom[k + 1] * F[k] * F[n - k - 1] for k in range(n))
        value = Fraction(n + 1, 2 * n) * acc
        if check and value != (n + 1) ** n:
            raise ArithmeticError(f"F({n}) = {value} but (n+1)^n = {(n + 1) ** n}")
        F.append(value)
    return F


def verify_eq3(nmax: int) -> list[VerificationReport]:
    start = time.perf_counter()
    F = compute_F(nmax, check=False)
    per_entry = _elapsed_ms(start) // max(nmax, 1)
    return [
        VerificationReport(
            Identity.EQ3, n, F[n], Fraction((n + 1) ** n),
            "rational recurrence from F(0)=1",
            "closed form (n+1)^n",
            elapsed_ms=per_entry,
        )
        for n in range(1, nmax + 1)
    ]


def verify_F_equals_rooted_count(nmax: int) -> list[VerificationReport]:
    """F(n) from the recurrence against (n+1) T(n+1) from Cayley's closed form."""
    if nmax < 1:
        raise ValueError(f"nmax must be at least 1, got {nmax}")
    start = time.perf_counter()
    F = compute_F(nmax, check=False)
    per_entry = _elapsed_ms(start) // nmax
    return [
        VerificationReport(
            Identity.LINK, n, F[n], Fraction((n + 1) * labeled_count(n + 1)),
            "rational recurrence from F(0)=1",
            "(n+1)*T(n+1) with T(m)=m^(m-2)",
            elapsed_ms=per_entry,
        )
        for n in range(1, nmax + 1)
    ]


# -- splitting relation ---------------------------------------------------


def _split_sides(n: int, k: int, binom_row: Sequence[int]) -> tuple[Fraction, Fraction]:
    lhs = Fraction(math.factorial(n + 1), 2**n) * Fraction(n + 1, n)
    rhs = (
        Fraction(n + 1, 2 * n)
        * binom_row[k + 1]
        * Fraction(math.factorial(k + 1), 2**k)
        * Fraction(math.factorial(n - k), 2 ** (n - k - 1))
    )
    return lhs, rhs


def verify_split_relation(n: int, k: int) -> bool:
    """Root weight (n+1)!/2^n (1+1/n) equals the product split at left size ``k``."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k={k} outside 0..{n - 1}")
    lhs, rhs = _split_sides(n, k, binomial_row(n + 1))
    return lhs == rhs


def split_relation_report(n: int) -> VerificationReport:
    """All k = 0..n-1 at once; rhs is the first split value that disagrees, else the common value."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    start = time.perf_counter()
    row = binomial_row(n + 1)
    lhs = rhs = None
    for k in range(n):
        lhs, rhs = _split_sides(n, k, row)
        if lhs != rhs:
            break
    return VerificationReport(
        Identity.SPLIT, n, lhs, rhs,
        "(n+1)!/2^n * (1+1/n)",
        f"(n+1)/(2n)*C(n+1,k+1)*(k+1)!/2^k*(n-k)!/2^(n-k-1), k=0..{k}",
        object_count=n,
        elapsed_ms=_elapsed_ms(start),
    )


# -- sequence table -------------------------------------------------------


@dataclass(frozen=True)
class SequenceRow:
    n: int
    catalan: int
    T: int | None
    R: int | None
    F: Fraction
    closed_rooted: int  # (n+1)^n
    closed_unlabeled: int | None  # (n+1)^(n-1)

    @property
    def consistent(self) -> bool:
        return self.F == self.closed_rooted


def sequence_table(nmax: int) -> list[SequenceRow]:
    """Rows n = 0..nmax; T, R and (n+1)^(n-1) are undefined at n = 0."""
    F = compute_F(nmax, check=False)
    cat = catalan_numbers(nmax)
    rows = []
    for n in range(nmax + 1):
        rows.append(
            SequenceRow(
                n=n,
                catalan=cat[n],
                T=labeled_count(n) if n else None,
                R=rooted_tree_count(n) if n else None,
                F=F[n],
                closed_rooted=(n + 1) ** n,
                closed_unlabeled=(n + 1) ** (n - 1) if n else None,
            )
        )
    return rows
