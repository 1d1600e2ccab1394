"""Exact small-order Ramsey combinatorics: cliques, gluing, canonical forms.

Two-colourings of complete graphs are stored as bit vectors over the
row-major upper triangle (true = red).  Existence scans are chunked numpy
bitmask sweeps; growth beyond the enumeration budget runs through a
glue-and-prune frontier of canonical isomorphism classes.  The graded
variant of the Ramsey recursion and the qubit budget helpers live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache, lru_cache
from itertools import combinations

import numpy as np

__all__ = [
    "CliqueConstraint",
    "EdgeColoring",
    "BudgetError",
    "edge_index",
    "has_forbidden_clique",
    "exists_good_coloring",
    "glue_extensions",
    "canonical_key",
    "brute_force_ramsey",
    "frontier_profile",
    "graded_ramsey",
    "qubit_cost",
    "survivor_rank",
]

# Direct enumeration cap: edge counts above this would overflow the chunked
# bitmask sweep; callers must take the glue-and-prune route instead.
_ENUM_EDGE_BUDGET = 28

# Canonical labelling cap; the search is exact but has a factorial worst case.
_CANONICAL_V_BUDGET = 12

_CHUNK = 1 << 21


class BudgetError(RuntimeError):
    """A requested computation exceeds its enumeration or labelling budget.

    ``partial`` carries whatever was established before the budget ran out
    (for threshold scans, the largest order fully verified).
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class CliqueConstraint:
    """Forbidden monochromatic clique sizes: red K_m and blue K_n."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"clique sizes must be >= 1, got ({self.m}, {self.n})")


def edge_index(i: int, j: int, v: int) -> int:
    """Zero-based position of edge {i, j} in the row-major upper triangle.

    Vertices are 1-based; requires ``1 <= i < j <= v``.  Edge {1, 2} maps to
    position 0, {1, 3} to 1, and so on row by row.
    """
    if not (1 <= i < j <= v):
        raise ValueError(f"need 1 <= i < j <= v, got i={i}, j={j}, v={v}")
    return (i - 1) * v - i * (i - 1) // 2 + (j - i) - 1


@dataclass(frozen=True)
class EdgeColoring:
    """Two-colouring of K_v: ``bits[edge_index(i, j, v)]`` is true when
    edge {i, j} is red."""

    v: int
    bits: tuple[bool, ...]

    def __post_init__(self):
        if self.v < 1:
            raise ValueError(f"v must be >= 1, got {self.v}")
        expected = self.v * (self.v - 1) // 2
        if len(self.bits) != expected:
            raise ValueError(
                f"expected {expected} edge bits for v={self.v}, got {len(self.bits)}")

    @classmethod
    def from_mask(cls, v: int, mask: int) -> "EdgeColoring":
        e = v * (v - 1) // 2
        if mask < 0 or mask >> e:
            raise ValueError(f"mask out of range for {e} edges: {mask}")
        return cls(v=v, bits=tuple(bool((mask >> t) & 1) for t in range(e)))

    @property
    def mask(self) -> int:
        m = 0
        for t, bit in enumerate(self.bits):
            if bit:
                m |= 1 << t
        return m

    def is_red(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return self.bits[edge_index(i, j, self.v)]

    def red_neighbors(self) -> list[int]:
        """Adjacency of the red graph as per-vertex bitmasks (0-based)."""
        adj = [0] * self.v
        t = 0
        for i in range(self.v - 1):
            for j in range(i + 1, self.v):
                if self.bits[t]:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                t += 1
        return adj


def _has_clique(adj: list[int], vertex_count: int, size: int,
                within: int | None = None) -> bool:
    """True when the graph given by bitmask adjacency contains a clique of
    ``size`` vertices, optionally restricted to the vertex set ``within``."""
    if size <= 0:
        return True
    start = (1 << vertex_count) - 1 if within is None else within

    def rec(cands: int, need: int) -> bool:
        if need == 0:
            return True
        while cands:
            if cands.bit_count() < need:
                return False
            low = cands & -cands
            i = low.bit_length() - 1
            cands ^= low
            if need == 1 or rec(cands & adj[i], need - 1):
                return True
        return False

    return rec(start, size)


def has_forbidden_clique(coloring: EdgeColoring,
                         constraint: CliqueConstraint) -> bool:
    """True when the colouring contains a red K_m or a blue K_n."""
    v = coloring.v
    red = coloring.red_neighbors()
    full = (1 << v) - 1
    blue = [full & ~red[i] & ~(1 << i) for i in range(v)]
    return (_has_clique(red, v, constraint.m)
            or _has_clique(blue, v, constraint.n))


def _subset_edge_masks(v: int, size: int) -> list[int]:
    masks = []
    for subset in combinations(range(1, v + 1), size):
        m = 0
        for a, b in combinations(subset, 2):
            m |= 1 << edge_index(a, b, v)
        masks.append(m)
    return masks


def _enumerate_exists(v: int, constraint: CliqueConstraint) -> bool:
    """Chunked bitmask sweep for a good colouring on v vertices.

    Only masks with edge {1, 2} red are scanned: a good colouring with any
    red edge can be relabelled to put that edge first, and goodness is
    label-invariant.  The all-blue colouring is the single remaining case
    and is checked directly.
    """
    e = v * (v - 1) // 2
    if e > _ENUM_EDGE_BUDGET:
        raise BudgetError(
            f"enumeration needs 2^{e} masks, budget is 2^{_ENUM_EDGE_BUDGET}",
            partial=None)
    all_blue = EdgeColoring(v=v, bits=(False,) * e)
    if not has_forbidden_clique(all_blue, constraint):
        return True
    if e == 0:
        return False
    red_masks = [np.uint64(m) for m in _subset_edge_masks(v, constraint.m)]
    blue_masks = [np.uint64(m) for m in _subset_edge_masks(v, constraint.n)]
    total = 1 << e
    for start in range(1, total, 2 * _CHUNK):
        stop = min(start + 2 * _CHUNK, total)
        arr = np.arange(start, stop, 2, dtype=np.uint64)
        good = np.ones(arr.shape, dtype=bool)
        for sm in red_masks:
            good &= (arr & sm) != sm
            if not good.any():
                break
        else:
            for sm in blue_masks:
                good &= (arr & sm) != np.uint64(0)
                if not good.any():
                    break
        if good.any():
            return True
    return False


def exists_good_coloring(v: int, constraint: CliqueConstraint,
                         mode: str = "auto") -> bool:
    """Whether some colouring of K_v avoids red K_m and blue K_n.

    ``mode="enumerate"`` forces the bitmask sweep (edge budget 28);
    ``mode="glue"`` walks the canonical frontier from a single vertex;
    ``mode="auto"`` uses the sweep inside the budget and glue beyond.
    """
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    if mode not in ("auto", "enumerate", "glue"):
        raise ValueError(f"unknown mode {mode!r}")
    e = v * (v - 1) // 2
    if mode == "enumerate" or (mode == "auto" and e <= _ENUM_EDGE_BUDGET):
        return _enumerate_exists(v, constraint)
    frontier = _initial_frontier(constraint)
    level = 1
    while frontier and level < v:
        frontier = _glue_frontier(frontier, constraint)
        level += 1
    return bool(frontier)


def _initial_frontier(constraint: CliqueConstraint) -> list[EdgeColoring]:
    seed = EdgeColoring(v=1, bits=())
    if has_forbidden_clique(seed, constraint):
        return []
    return [seed]


def _glue_frontier(frontier: list[EdgeColoring],
                   constraint: CliqueConstraint) -> list[EdgeColoring]:
    classes: dict[bytes, EdgeColoring] = {}
    for coloring in frontier:
        for extended in glue_extensions(coloring, constraint):
            key = canonical_key(extended)
            if key not in classes:
                classes[key] = extended
    return [classes[k] for k in sorted(classes)]


def glue_extensions(coloring: EdgeColoring,
                    constraint: CliqueConstraint) -> list[EdgeColoring]:
    """All good one-vertex extensions of a good colouring.

    The input must itself be good; only cliques through the new vertex are
    re-checked.  The returned list is deduplicated up to isomorphism (one
    representative per canonical class, in deterministic order).
    """
    if has_forbidden_clique(coloring, constraint):
        raise ValueError("glue_extensions requires a good colouring")
    v = coloring.v
    red = coloring.red_neighbors()
    full = (1 << v) - 1
    blue = [full & ~red[i] & ~(1 << i) for i in range(v)]

    base_bits = {}
    for i in range(1, v + 1):
        for j in range(i + 1, v + 1):
            base_bits[(i, j)] = coloring.bits[edge_index(i, j, v)]

    seen: dict[bytes, EdgeColoring] = {}
    for assignment in range(1 << v):
        red_nbhd = assignment
        blue_nbhd = full & ~assignment
        if _has_clique(red, v, constraint.m - 1, within=red_nbhd):
            continue
        if _has_clique(blue, v, constraint.n - 1, within=blue_nbhd):
            continue
        bits = [False] * ((v + 1) * v // 2)
        for (i, j), value in base_bits.items():
            bits[edge_index(i, j, v + 1)] = value
        for i in range(1, v + 1):
            bits[edge_index(i, v + 1, v + 1)] = bool((assignment >> (i - 1)) & 1)
        extended = EdgeColoring(v=v + 1, bits=tuple(bits))
        key = canonical_key(extended)
        if key not in seen:
            seen[key] = extended
    return [seen[k] for k in sorted(seen)]


def _refined_colors(red: list[int], v: int) -> list[int]:
    """Equitable-partition colours from iterated red-degree signatures.

    Colour ids are assigned by sorting signatures, so they are invariant
    under vertex relabelling.
    """
    colors = [0] * v
    while True:
        signatures = []
        for i in range(v):
            nbr = sorted(colors[j] for j in range(v) if (red[i] >> j) & 1)
            signatures.append((colors[i], tuple(nbr)))
        ordered = sorted(set(signatures))
        new_colors = [ordered.index(s) for s in signatures]
        if new_colors == colors:
            return colors
        colors = new_colors


@lru_cache(maxsize=1 << 16)
def canonical_key(coloring: EdgeColoring) -> bytes:
    """Isomorphism-invariant key: minimal colour-and-adjacency string.

    Exact (equal keys iff isomorphic), computed by a backtracking search for
    the lexicographically minimal ordering, pruned by equitable-partition
    colours and column comparisons.  Worst case is factorial, hence the
    hard cap at v = 12.
    """
    v = coloring.v
    if v > _CANONICAL_V_BUDGET:
        raise BudgetError(
            f"canonical_key supports v <= {_CANONICAL_V_BUDGET}, got {v}",
            partial=None)
    red = coloring.red_neighbors()
    colors = _refined_colors(red, v)

    if v == 1:
        return bytes([1])

    # Monochromatic colourings: every ordering yields the same string.
    if all(coloring.bits) or not any(coloring.bits):
        cols = []
        for t in range(1, v):
            cols.append((colors[0], (1 << t) - 1 if coloring.bits[0] else 0))
        return _pack_key(v, colors[0], cols)

    best: list[tuple[int, int]] | None = None

    def column_of(candidate: int, order: list[int]) -> int:
        col = 0
        for u in order:
            col = (col << 1) | ((red[candidate] >> u) & 1)
        return col

    def search(order: list[int], cols: list[tuple[int, int]]):
        nonlocal best
        t = len(order)
        if best is not None and cols > best[:t]:
            return
        if t == v:
            if best is None or cols < best:
                best = list(cols)
            return
        remaining = [u for u in range(v) if u not in order]
        chunks = {u: (colors[u], column_of(u, order)) for u in remaining}
        minimal = min(chunks.values())
        # Lexicographic order is decided column by column, so only the
        # candidates achieving the minimal next chunk can extend a minimum.
        for u in remaining:
            if chunks[u] != minimal:
                continue
            order.append(u)
            cols.append(minimal)
            search(order, cols)
            cols.pop()
            order.pop()

    search([], [])
    assert best is not None
    first_color = best[0][0]
    return _pack_key(v, first_color, best[1:])


def _pack_key(v: int, first_color: int, cols: list[tuple[int, int]]) -> bytes:
    out = bytearray([v, first_color])
    for entry in cols:
        if isinstance(entry, tuple):
            color, col = entry
        else:
            color, col = first_color, entry
        out.append(color)
        out += int(col).to_bytes(2, "big")
    return bytes(out)


def brute_force_ramsey(constraint: CliqueConstraint, v_max: int,
                       mode: str = "auto") -> int | None:
    """Smallest v <= v_max admitting no good colouring, or None.

    ``mode="enumerate"`` insists on the bitmask sweep at every order and
    raises :class:`BudgetError` (carrying the largest verified order) once
    the edge budget is exceeded.  The default walks the glue-and-prune
    frontier, cross-checking against enumeration while the sweep is cheap.
    """
    if v_max < 1:
        raise ValueError(f"v_max must be >= 1, got {v_max}")
    if mode not in ("auto", "enumerate", "glue"):
        raise ValueError(f"unknown mode {mode!r}")

    if mode == "enumerate":
        for v in range(1, v_max + 1):
            e = v * (v - 1) // 2
            if e > _ENUM_EDGE_BUDGET:
                raise BudgetError(
                    f"enumeration budget exceeded at v={v}; orders up to "
                    f"{v - 1} admit good colourings", partial=v - 1)
            if not _enumerate_exists(v, constraint):
                return v
        return None

    frontier = _initial_frontier(constraint)
    if not frontier:
        return 1
    v = 1
    while v < v_max:
        frontier = _glue_frontier(frontier, constraint)
        v += 1
        if mode == "auto" and v * (v - 1) // 2 <= 15:
            agreed = _enumerate_exists(v, constraint)
            if agreed != bool(frontier):
                raise RuntimeError(
                    f"frontier and enumeration disagree at v={v}")
        if not frontier:
            return v
    return None


def frontier_profile(constraint: CliqueConstraint,
                     v_max: int) -> tuple[tuple[int, int], ...]:
    """Number of good canonical classes at each order 1..v_max.

    Stops early once the frontier empties; the final recorded count is 0.
    """
    if v_max < 1:
        raise ValueError(f"v_max must be >= 1, got {v_max}")
    frontier = _initial_frontier(constraint)
    profile = [(1, len(frontier))]
    v = 1
    while v < v_max and frontier:
        frontier = _glue_frontier(frontier, constraint)
        v += 1
        profile.append((v, len(frontier)))
    return tuple(profile)


@cache
def graded_ramsey(m: int, n: int) -> int:
    """Klein-graded Ramsey value by memoized recursion.

    Boundary orders are 1 and the interior satisfies the Pascal recursion,
    so the value equals binomial(m + n - 2, m - 1); the recursion is kept
    as the implementation and the closed form as the test oracle.
    """
    if m < 1 or n < 1:
        raise ValueError(f"orders must be >= 1, got ({m}, {n})")
    if m == 1 or n == 1:
        return 1
    return graded_ramsey(m - 1, n) + graded_ramsey(m, n - 1)


def qubit_cost(n: int) -> tuple[int, int]:
    """Edge-variable qubits and total with the 16-qubit work register."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    edges = math.comb(n, 2)
    return edges, edges + 16


def survivor_rank(constraint: CliqueConstraint, v: int, d: int) -> int:
    """Rank of the survivor subspace a good colouring class count certifies.

    Zero when no good colouring exists at order v, otherwise the class
    count capped at d - 1.  Orders beyond the canonical labelling budget
    raise :class:`BudgetError`.
    """
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if v > _CANONICAL_V_BUDGET:
        raise BudgetError(
            f"survivor_rank needs canonical labelling at v={v}, "
            f"budget is v <= {_CANONICAL_V_BUDGET}", partial=None)
    frontier = _initial_frontier(constraint)
    level = 1
    while frontier and level < v:
        frontier = _glue_frontier(frontier, constraint)
        level += 1
    if not frontier:
        return 0
    return min(d - 1, len(frontier))
