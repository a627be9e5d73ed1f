"""Labeled and rooted trees, the Prüfer codec, and Moon's edge-cut bijection.

Counting identities checked here:

    2n T(n+1) = sum_k C(n+1, k+1) (k+1) T(k+1) (n-k) T(n-k)
    R(n+1)    = (n+1)/(2n) sum_k C(n+1, k+1) R(k+1) R(n-k)

with T(m) = m^(m-2) labeled trees and R(m) = m T(m) = m^(m-1) rooted trees.
The left side of the first one counts trees on [n+1] carrying one directed
edge; cutting that edge leaves an ordered pair of rooted trees, which is what
the right side counts.
"""

from __future__ import annotations

import heapq
import itertools
import time
from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence

from hookcal._arith import binomial_row, cayley_count, rooted_count
from hookcal.errors import CapacityError, MalformedTreeError
from hookcal.report import Identity, VerificationReport

Edge = tuple[int, int]

# 7^5 trees on [7]; exhaustive jobs beyond this are refused unless raised
DEFAULT_LABELED_CAP = 16807
# largest vertex set swept exhaustively by default for Moon's bijection
MOON_EXHAUSTIVE_MAX = 6


def _norm_edges(edges: Iterable[Sequence[int]]) -> frozenset[Edge]:
    out = set()
    for e in edges:
        u, w = e
        out.add((u, w) if u < w else (w, u))
    return frozenset(out)


def _format_edges(edges: Iterable[Edge]) -> str:
    return ",".join(f"{u}-{w}" for u, w in sorted(edges))


def _parse_edges(text: str) -> list[Edge]:
    text = text.strip()
    if not text:
        return []
    edges = []
    for item in text.split(","):
        u, sep, w = item.strip().partition("-")
        if not sep:
            raise ValueError(f"edge {item!r} is not of the form u-w")
        edges.append((int(u), int(w)))
    return edges


def _components(vertices: Iterable[int], edges: Iterable[Edge]) -> list[set[int]]:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    seen: set[int] = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for x in adj[v]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        comps.append(comp)
    return comps


def _check_tree(vertices: frozenset[int], edges: frozenset[Edge]) -> None:
    for u, w in edges:
        if u == w:
            raise MalformedTreeError(f"loop at vertex {u}")
        if u not in vertices or w not in vertices:
            raise MalformedTreeError(f"edge {u}-{w} uses a label outside {sorted(vertices)}")
    if len(edges) != len(vertices) - 1:
        raise MalformedTreeError(f"{len(edges)} edges on {len(vertices)} vertices; a tree needs {len(vertices) - 1}")
    if len(_components(vertices, edges)) != 1:
        raise MalformedTreeError("edge set is disconnected (and therefore has a cycle)")


@dataclass(frozen=True)
class LabeledTree:
    """A tree on vertex set {1, ..., n}; edges are stored as sorted pairs."""

    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", _norm_edges(edges))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def validate(self) -> LabeledTree:
        if self.n < 1:
            raise MalformedTreeError(f"n must be at least 1, got {self.n}")
        _check_tree(self.vertices, self.edges)
        return self

    def serialize(self) -> str:
        return _format_edges(self.edges)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> LabeledTree:
        edges = _parse_edges(text)
        if n is None:
            n = max((max(e) for e in edges), default=1)
        return cls(n, edges).validate()


@dataclass(frozen=True)
class RootedLabeledTree:
    """A tree on an arbitrary finite label set with one distinguished root."""

    vertices: frozenset[int]
    edges: frozenset[Edge]
    root: int

    def __init__(self, vertices: Iterable[int], edges: Iterable[Sequence[int]], root: int):
        object.__setattr__(self, "vertices", frozenset(vertices))
        object.__setattr__(self, "edges", _norm_edges(edges))
        object.__setattr__(self, "root", root)

    def validate(self) -> RootedLabeledTree:
        if self.root not in self.vertices:
            raise MalformedTreeError(f"root {self.root} is not a vertex")
        _check_tree(self.vertices, self.edges)
        return self

    def serialize(self) -> str:
        return f"{_format_edges(self.edges)}|root={self.root}"

    @classmethod
    def parse(cls, text: str) -> RootedLabeledTree:
        body, sep, tail = text.strip().rpartition("|")
        if not sep or not tail.startswith("root="):
            raise ValueError(f"rooted tree {text!r} must end with '|root=r'")
        root = int(tail[len("root="):])
        edges = _parse_edges(body)
        vertices = {root}.union(*map(set, edges))
        return cls(vertices, edges, root).validate()


@dataclass(frozen=True)
class EdgeMarkedTree:
    """A labeled tree with one edge singled out and given a direction ``marked = (tail, head)``."""

    tree: LabeledTree
    marked: Edge

    def validate(self) -> EdgeMarkedTree:
        self.tree.validate()
        u, w = self.marked
        if (min(u, w), max(u, w)) not in self.tree.edges:
            raise ValueError(f"marked edge {u}>{w} is not an edge of the tree")
        return self

    def serialize(self) -> str:
        u, w = self.marked
        return f"{self.tree.serialize()}|{u}>{w}"

    @classmethod
    def parse(cls, text: str) -> EdgeMarkedTree:
        body, sep, tail = text.strip().rpartition("|")
        u, arrow, w = tail.partition(">")
        if not sep or not arrow:
            raise ValueError(f"edge-marked tree {text!r} must end with '|u>w'")
        return cls(LabeledTree.parse(body), (int(u), int(w))).validate()


# -- Prüfer codec ---------------------------------------------------------


def prufer_decode(symbols: Sequence[int], n: int | None = None) -> LabeledTree:
    """Tree on [n] whose smallest-leaf-first Prüfer code is ``symbols``.

    ``n`` defaults to ``len(symbols) + 2``.  Every word of length n-2 over
    [n] decodes to a distinct tree.
    """
    if n is None:
        n = len(symbols) + 2
    if n < 2 or len(symbols) != n - 2:
        raise ValueError(f"a Prüfer code for n={n} has length {max(n - 2, 0)}, got {len(symbols)}")
    for s in symbols:
        if not 1 <= s <= n:
            raise ValueError(f"symbol {s} outside 1..{n}")
    degree = [1] * (n + 1)
    for s in symbols:
        degree[s] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in symbols:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    edges.append((leaves[0], leaves[1]))
    return LabeledTree(n, edges)


def prufer_encode(t: LabeledTree) -> tuple[int, ...]:
    """Inverse of :func:`prufer_decode`; repeatedly strips the smallest leaf."""
    t.validate()
    if t.n < 2:
        raise ValueError("Prüfer codes are defined for n >= 2")
    adj: dict[int, set[int]] = defaultdict(set)
    for u, w in t.edges:
        adj[u].add(w)
        adj[w].add(u)
    leaves = [v for v in range(1, t.n + 1) if len(adj[v]) == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(t.n - 2):
        leaf = heapq.heappop(leaves)
        (parent,) = adj.pop(leaf)
        adj[parent].discard(leaf)
        code.append(parent)
        if len(adj[parent]) == 1:
            heapq.heappush(leaves, parent)
    return tuple(code)


def enumerate_labeled_trees(n: int, cap: int = DEFAULT_LABELED_CAP) -> Iterator[LabeledTree]:
    """All n^(n-2) labeled trees on [n], in lexicographic order of their Prüfer codes."""
    count = cayley_count(n)
    if count > cap:
        raise CapacityError(f"labeled trees on [{n}]: {n}^{n - 2}", count, cap)
    return _labeled_trees(n)


def _labeled_trees(n: int) -> Iterator[LabeledTree]:
    if n == 1:
        yield LabeledTree(1, ())
        return
    for code in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(code, n)


def enumerate_rooted_trees(vertices: Iterable[int], cap: int = DEFAULT_LABELED_CAP) -> Iterator[RootedLabeledTree]:
    """Every rooted tree on the given labels: each labeled tree, once per choice of root."""
    labels = sorted(set(vertices))
    if not labels:
        raise ValueError("a rooted tree needs at least one vertex")
    relabel = dict(zip(range(1, len(labels) + 1), labels))
    vset = frozenset(labels)
    for t in enumerate_labeled_trees(len(labels), cap):
        edges = [(relabel[u], relabel[w]) for u, w in t.edges]
        for root in labels:
            yield RootedLabeledTree(vset, edges, root)


def enumerate_edge_marked_trees(m: int, cap: int = DEFAULT_LABELED_CAP) -> Iterator[EdgeMarkedTree]:
    """Every tree on [m] with one directed marked edge: 2(m-1) m^(m-2) objects."""
    if m < 2:
        raise ValueError(f"an edge-marked tree needs at least 2 vertices, got {m}")
    for t in enumerate_labeled_trees(m, cap):
        for u, w in sorted(t.edges):
            yield EdgeMarkedTree(t, (u, w))
            yield EdgeMarkedTree(t, (w, u))


def enumerate_rooted_pairs(m: int, cap: int = DEFAULT_LABELED_CAP) -> Iterator[tuple[RootedLabeledTree, RootedLabeledTree]]:
    """Ordered pairs of rooted trees whose label sets split [m] into two non-empty parts.

    Grouped by the size k+1 of the first part, k = 0..m-2, then by the subset
    itself in lexicographic order.
    """
    if m < 2:
        raise ValueError(f"need at least 2 labels to split, got {m}")
    labels = range(1, m + 1)
    for first_size in range(1, m):
        for part in itertools.combinations(labels, first_size):
            rest = [v for v in labels if v not in part]
            seconds = list(enumerate_rooted_trees(rest, cap))
            for a in enumerate_rooted_trees(part, cap):
                for b in seconds:
                    yield a, b


# -- Moon's bijection -----------------------------------------------------


def moon_decompose(m: EdgeMarkedTree) -> tuple[RootedLabeledTree, RootedLabeledTree]:
    """Cut the marked edge (u, w): return (component of u rooted at u, component of w rooted at w)."""
    u, w = m.marked
    edge = (min(u, w), max(u, w))
    if edge not in m.tree.edges:
        raise ValueError(f"marked edge {u}>{w} is not an edge of the tree")
    rest = m.tree.edges - {edge}
    comps = _components(m.tree.vertices, rest)
    tail = next(c for c in comps if u in c)
    head = m.tree.vertices - tail
    a = RootedLabeledTree(tail, [e for e in rest if e[0] in tail], u)
    b = RootedLabeledTree(head, [e for e in rest if e[0] in head], w)
    return a, b


def moon_compose(a: RootedLabeledTree, b: RootedLabeledTree) -> EdgeMarkedTree:
    """Join two rooted trees by an edge from root(a) to root(b) and mark it in that direction."""
    if a.vertices & b.vertices:
        raise ValueError(f"vertex sets overlap on {sorted(a.vertices & b.vertices)}")
    union = a.vertices | b.vertices
    size = len(union)
    if union != frozenset(range(1, size + 1)):
        raise ValueError(f"vertex sets must partition [1..{size}], got {sorted(union)}")
    edges = set(a.edges) | set(b.edges) | {(a.root, b.root)}
    return EdgeMarkedTree(LabeledTree(size, edges), (a.root, b.root))


@dataclass(frozen=True)
class BijectionReport:
    m: int
    marked_count: int
    pair_count: int
    decompose_failures: int
    compose_failures: int
    image_mismatches: int
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.marked_count == self.pair_count
            and self.decompose_failures == 0
            and self.compose_failures == 0
            and self.image_mismatches == 0
        )

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "marked_count": self.marked_count,
            "pair_count": self.pair_count,
            "decompose_failures": self.decompose_failures,
            "compose_failures": self.compose_failures,
            "image_mismatches": self.image_mismatches,
            "ok": self.ok,
            "elapsed_ms": self.elapsed_ms,
        }


def moon_roundtrip(m: int, cap: int = DEFAULT_LABELED_CAP) -> BijectionReport:
    """Exhaustively check both directions of the bijection on [m].

    Marked trees and rooted pairs are enumerated independently.  A marked tree
    fails if decompose-then-compose does not return it; a pair fails if
    compose-then-decompose does not return it.  ``image_mismatches`` counts
    elements of either side not hit by mapping the other side across.
    """
    start = time.perf_counter()
    marked = set()
    decompose_failures = 0
    images = set()
    for obj in enumerate_edge_marked_trees(m, cap):
        marked.add(obj)
        pair = moon_decompose(obj)
        images.add(pair)
        try:
            back = moon_compose(*pair)
        except ValueError:
            back = None
        if back != obj:
            decompose_failures += 1
    pairs = set()
    compose_failures = 0
    composed = set()
    for pair in enumerate_rooted_pairs(m, cap):
        pairs.add(pair)
        obj = moon_compose(*pair)
        composed.add(obj)
        if moon_decompose(obj) != pair:
            compose_failures += 1
    mismatches = len(marked ^ composed) + len(pairs ^ images)
    return BijectionReport(
        m=m,
        marked_count=len(marked),
        pair_count=len(pairs),
        decompose_failures=decompose_failures,
        compose_failures=compose_failures,
        image_mismatches=mismatches,
        elapsed_ms=round((time.perf_counter() - start) * 1000),
    )


# -- counting identities --------------------------------------------------


def labeled_count(m: int) -> int:
    """T(m) closed form, T(1) = 1."""
    return cayley_count(m)


def rooted_tree_count(m: int) -> int:
    """R(m) = m T(m) = m^(m-1)."""
    return rooted_count(m)


def _eq4_terms(n: int, binom: Sequence[int]) -> list[int]:
    return [
        binom[k + 1] * (k + 1) * labeled_count(k + 1) * (n - k) * labeled_count(n - k)
        for k in range(n)
    ]


def _eq5_terms(n: int, binom: Sequence[int]) -> list[int]:
    return [binom[k + 1] * rooted_tree_count(k + 1) * rooted_tree_count(n - k) for k in range(n)]


def verify_eq4(
    n: int,
    method: Literal["closed-form", "exhaustive"] = "closed-form",
    cap: int = DEFAULT_LABELED_CAP,
) -> VerificationReport:
    """Check 2n T(n+1) against the k-sum of rooted-pair counts.

    ``closed-form`` evaluates both sides with T(m) = m^(m-2).  ``exhaustive``
    counts edge-marked trees on [n+1] for the left side and ordered rooted-tree
    pairs over all label splits for the right side.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    start = time.perf_counter()
    if method == "closed-form":
        binom = binomial_row(n + 1)
        lhs = 2 * n * labeled_count(n + 1)
        rhs = sum(_eq4_terms(n, binom))
        report = VerificationReport(
            Identity.EQ4, n, Fraction(lhs), Fraction(rhs),
            "closed form 2n(n+1)^(n-1)",
            "k-sum with T(m)=m^(m-2)",
        )
    elif method == "exhaustive":
        lhs = sum(1 for _ in enumerate_edge_marked_trees(n + 1, cap))
        rhs = sum(1 for _ in enumerate_rooted_pairs(n + 1, cap))
        report = VerificationReport(
            Identity.EQ4, n, Fraction(lhs), Fraction(rhs),
            f"count of edge-marked trees on [{n + 1}]",
            "count of ordered rooted-tree pairs over label splits",
            object_count=lhs + rhs,
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    elapsed = round((time.perf_counter() - start) * 1000)
    return replace(report, elapsed_ms=elapsed)


def verify_eq5(n: int) -> VerificationReport:
    """Check R(n+1) = (n+1)/(2n) sum_k C(n+1,k+1) R(k+1) R(n-k) with R(m) = m^(m-1)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    start = time.perf_counter()
    binom = binomial_row(n + 1)
    lhs = Fraction(rooted_tree_count(n + 1))
    rhs = Fraction(n + 1, 2 * n) * sum(_eq5_terms(n, binom))
    return VerificationReport(
        Identity.EQ5, n, lhs, rhs,
        "closed form (n+1)^n",
        "rational recurrence with R(m)=m^(m-1)",
        elapsed_ms=round((time.perf_counter() - start) * 1000),
    )


def eq5_matches_eq4(n: int) -> bool:
    """True when the rooted recurrence is the labeled one rescaled by R(m) = m T(m).

    Both the k-sums and the left sides must agree after multiplying the
    labeled version by (n+1)/(2n).
    """
    binom = binomial_row(n + 1)
    sums_agree = _eq4_terms(n, binom) == _eq5_terms(n, binom)
    sides_agree = Fraction(n + 1, 2 * n) * 2 * n * labeled_count(n + 1) == rooted_tree_count(n + 1)
    return sums_agree and sides_agree
