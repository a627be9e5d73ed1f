"""Binary tree shapes, exhaustive enumeration, hook lengths and hook weights.

A shape is a nested tuple: ``EMPTY == ()`` and a node is ``(left, right)``.
Vertices are addressed by preorder index, root = 0.  Tuples are hashable,
immutable and cheap to build, which matters when streaming millions of shapes.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal, Tuple, Union

Shape = Union[Tuple[()], Tuple["Shape", "Shape"]]
WeightForm = Literal["eq1", "eq2"]

EMPTY: Shape = ()

# Subtree sizes up to this bound are materialized once and reused;
# Catalan(9) = 4862 keeps the cache small while larger sizes stream.
_CACHE_MAX = 9


def node(left: Shape = EMPTY, right: Shape = EMPTY) -> Shape:
    return (left, right)


def size(t: Shape) -> int:
    count = 0
    stack = [t]
    while stack:
        s = stack.pop()
        if s:
            count += 1
            stack.extend(s)
    return count


def preorder(t: Shape) -> list[Shape]:
    """Non-empty subtrees in preorder; index i is vertex i."""
    out = []
    stack = [t]
    while stack:
        s = stack.pop()
        if s:
            out.append(s)
            stack.append(s[1])
            stack.append(s[0])
    return out


def children(t: Shape) -> dict[int, tuple[int | None, int | None]]:
    """Preorder index -> (left child index, right child index), None for a missing child."""
    order = preorder(t)
    hooks = hook_lengths(t) if t else {}
    result: dict[int, tuple[int | None, int | None]] = {}
    for v, (left, right) in enumerate(order):
        lsize = hooks[v + 1] if left else 0
        result[v] = (v + 1 if left else None, v + 1 + lsize if right else None)
    return result


# -- enumeration ----------------------------------------------------------


@lru_cache(maxsize=None)
def _small_shapes(n: int) -> tuple[tuple[Shape, int, int], ...]:
    if n == 0:
        return ((EMPTY, 1, 1),)
    out = []
    for k in range(n):
        for left, lnum, lden in _small_shapes(k):
            for right, rnum, rden in _small_shapes(n - 1 - k):
                out.append(((left, right), lnum * rnum * (n + 1), lden * rden * n))
    return tuple(out)


def _annotated(n: int, k: int | None = None) -> Iterator[tuple[Shape, int, int]]:
    # yields (shape, prod(h+1), prod(h)); k restricts the root's left-subtree size
    if n <= _CACHE_MAX and k is None:
        yield from _small_shapes(n)
        return
    if n == 0:
        yield EMPTY, 1, 1
        return
    sizes = range(n) if k is None else (k,)
    for k in sizes:
        r = n - 1 - k
        rights = _small_shapes(r) if r <= _CACHE_MAX else None
        for left, lnum, lden in _annotated(k):
            for right, rnum, rden in rights if rights is not None else _annotated(r):
                yield (left, right), lnum * rnum * (n + 1), lden * rden * n


@lru_cache(maxsize=None)
def _small_plain(n: int) -> tuple[Shape, ...]:
    return tuple(shape for shape, _, _ in _small_shapes(n))


def _plain(n: int, k: int | None = None) -> Iterator[Shape]:
    if n <= _CACHE_MAX and k is None:
        yield from _small_plain(n)
        return
    for k in range(n) if k is None else (k,):
        r = n - 1 - k
        rights = _small_plain(r) if r <= _CACHE_MAX else None
        for left in _plain(k):
            for right in rights if rights is not None else _plain(r):
                yield (left, right)


def enumerate_shapes(n: int, k: int | None = None) -> Iterator[Shape]:
    """Lazily yield every binary tree shape with ``n`` vertices, each exactly once.

    Order: root's left-subtree size k = 0..n-1 ascending, then recursively
    the same order on the left subtree (outer) and right subtree (inner).
    ``n = 0`` yields the single empty shape.  Passing ``k`` yields only the
    shapes whose left subtree has ``k`` vertices, so disjoint ``k`` values
    partition the stream for independent workers.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k is not None and not (0 <= k <= n - 1):
        raise ValueError(f"left-subtree size k={k} outside 0..{n - 1}")
    return _plain(n, k)


def count_shapes(n: int, k: int | None = None) -> int:
    """Number of shapes produced by actually running the enumeration."""
    return sum(1 for _ in enumerate_shapes(n, k))


def enumerate_with_hook_products(n: int, k: int | None = None) -> Iterator[tuple[Shape, int, int]]:
    """Like :func:`enumerate_shapes` but paired with ``(prod(h(v)+1), prod(h(v)))``.

    The products are assembled from the subtrees as each shape is built, so the
    hook weight of a shape is ``n!/2^n * num/den`` without a second traversal.
    ``k`` restricts the stream to shapes whose left subtree has ``k`` vertices.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k is not None and not (0 <= k <= n - 1):
        raise ValueError(f"left-subtree size k={k} outside 0..{n - 1}")
    return _annotated(n, k)


def hook_product_sum(n: int, k: int | None = None) -> tuple[int, Fraction]:
    """Return ``(shape count, sum of prod(1 + 1/h(v)))`` over shapes with ``n`` vertices.

    Identical products are tallied first, so the exact rational sum is taken
    over distinct hook products only.
    """
    tally: Counter[tuple[int, int]] = Counter()
    for _, num, den in enumerate_with_hook_products(n, k):
        tally[num, den] += 1
    total = sum((Fraction(num * mult, den) for (num, den), mult in tally.items()), Fraction(0))
    return sum(tally.values()), total


# -- hooks and weights ----------------------------------------------------


def hook_lengths(t: Shape) -> dict[int, int]:
    """Map preorder index -> hook length (number of descendants including itself)."""
    if not t:
        raise ValueError("the empty shape has no vertices")
    order = preorder(t)
    hooks = [0] * len(order)
    # reverse preorder finishes both children before their parent; the left
    # child of i sits at i+1 and the right child right after the left subtree
    for i in range(len(order) - 1, -1, -1):
        left, right = order[i]
        lsize = hooks[i + 1] if left else 0
        rsize = hooks[i + 1 + lsize] if right else 0
        hooks[i] = 1 + lsize + rsize
    return dict(enumerate(hooks))


def weight_prefactor(n: int, form: WeightForm = "eq1") -> Fraction:
    if form == "eq1":
        return Fraction(math.factorial(n), 2**n)
    if form == "eq2":
        return Fraction(math.factorial(n + 1), 2**n)
    raise ValueError(f"unknown weight form {form!r}; expected 'eq1' or 'eq2'")


def hook_weight(t: Shape, form: WeightForm = "eq1") -> Fraction:
    """Exact weight n!/2^n * prod(1 + 1/h(v)); ``form="eq2"`` uses (n+1)!/2^n."""
    hooks = hook_lengths(t)
    w = weight_prefactor(len(hooks), form)
    for h in hooks.values():
        w *= Fraction(h + 1, h)
    return w


# -- serialization --------------------------------------------------------


def serialize(t: Shape) -> str:
    """Canonical string: "." for empty, "(" + left + right + ")" for a node."""
    parts = []
    stack: list[Shape | str] = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, str):
            parts.append(s)
        elif s:
            parts.append("(")
            stack.append(")")
            stack.append(s[1])
            stack.append(s[0])
        else:
            parts.append(".")
    return "".join(parts)


def parse(text: str) -> Shape:
    """Inverse of :func:`serialize`; raises ValueError on malformed input."""
    text = text.strip()
    # each open node collects its finished children
    stack: list[list[Shape]] = []
    result: Shape | None = None
    for pos, ch in enumerate(text):
        if result is not None:
            raise ValueError(f"trailing input at position {pos} in {text!r}")
        if ch == "(":
            stack.append([])
            continue
        if ch == ".":
            done: Shape = EMPTY
        elif ch == ")":
            if not stack or len(stack[-1]) != 2:
                raise ValueError(f"unbalanced ')' at position {pos} in {text!r}")
            left, right = stack.pop()
            done = (left, right)
        else:
            raise ValueError(f"unexpected character {ch!r} at position {pos}")
        if stack:
            if len(stack[-1]) == 2:
                raise ValueError(f"node with more than two children at position {pos}")
            stack[-1].append(done)
        else:
            result = done
    if result is None:
        raise ValueError(f"incomplete shape {text!r}")
    return result
