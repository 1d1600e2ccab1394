"""Prime-sequence numbers and window scans over Ramsey bound corridors.

A prime-sequence number of order k admits a factorisation using only the
first k primes, with a cap on how many distinct primes appear and how large
each exponent may grow.  The module enumerates such numbers inside integer
windows, ranks the admissible candidates, and scans the order k to find the
selection that persists longest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "PSQuery",
    "PrimeSignature",
    "SelectionRule",
    "SelectionResult",
    "PersistenceResult",
    "DEFAULT_RULE",
    "first_primes",
    "factorize",
    "is_prime_sequence",
    "enumerate_ps",
    "select_candidate",
    "persistence_scan",
    "growth_ratio",
]

_CRITERIA = ("fewest-distinct-primes", "smallest-max-exponent", "smallest-value")

_prime_cache: list[int] = [2, 3, 5, 7, 11, 13]


def first_primes(k: int) -> tuple[int, ...]:
    """The first ``k`` primes under standard indexing (p1 = 2, p5 = 11)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    while len(_prime_cache) < k:
        candidate = _prime_cache[-1] + 2
        while True:
            if all(candidate % p for p in _prime_cache if p * p <= candidate):
                _prime_cache.append(candidate)
                break
            candidate += 2
    return tuple(_prime_cache[:k])


@dataclass(frozen=True)
class PSQuery:
    """Membership query: basis order ``k``, distinct-prime and exponent caps."""

    k: int
    max_distinct: int = 3
    max_exponent: int = 3

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.max_distinct < 1:
            raise ValueError(f"max_distinct must be >= 1, got {self.max_distinct}")
        if self.max_exponent < 1:
            raise ValueError(f"max_exponent must be >= 1, got {self.max_exponent}")


@dataclass(frozen=True)
class PrimeSignature:
    """Sorted (prime, exponent) factorisation of a positive integer."""

    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def distinct(self) -> int:
        return len(self.factors)

    @property
    def max_exponent(self) -> int:
        return max((e for _, e in self.factors), default=0)


def factorize(q: int) -> PrimeSignature:
    """Full trial-division factorisation.  ``q`` must be >= 1."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    factors: list[tuple[int, int]] = []
    rest = q
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return PrimeSignature(tuple(factors))


def is_prime_sequence(q: int, query: PSQuery) -> bool:
    """True iff every prime factor of ``q`` lies among the first ``query.k``
    primes, at most ``query.max_distinct`` distinct primes appear, and no
    exponent exceeds ``query.max_exponent``.

    ``q = 1`` has no prime factors and satisfies any query vacuously.
    Raises ``ValueError`` for ``q < 1``.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    basis = first_primes(query.k)
    rest = q
    distinct = 0
    for p in basis:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            if e > query.max_exponent:
                return False
            distinct += 1
            if distinct > query.max_distinct:
                return False
        if rest == 1:
            break
    return rest == 1


def enumerate_ps(lo: int, hi: int, query: PSQuery) -> tuple[int, ...]:
    """All prime-sequence numbers in the half-open window ``(lo, hi]``, ascending."""
    if hi <= lo:
        raise ValueError(f"window (lo, hi] requires hi > lo, got ({lo}, {hi}]")
    start = max(lo + 1, 1)
    return tuple(q for q in range(start, hi + 1) if is_prime_sequence(q, query))


@dataclass(frozen=True)
class SelectionRule:
    """Ordered tie-break criteria used to rank admissible candidates."""

    criteria: tuple[str, ...] = (
        "smallest-max-exponent",
        "fewest-distinct-primes",
        "smallest-value",
    )

    def __post_init__(self):
        if not self.criteria:
            raise ValueError("criteria must be non-empty")
        for c in self.criteria:
            if c not in _CRITERIA:
                raise ValueError(f"unknown criterion {c!r}; expected one of {_CRITERIA}")

    def sort_key(self, q: int):
        sig = factorize(q)
        parts = []
        for c in self.criteria:
            if c == "fewest-distinct-primes":
                parts.append(sig.distinct)
            elif c == "smallest-max-exponent":
                parts.append(sig.max_exponent)
            else:
                parts.append(q)
        parts.append(q)
        return tuple(parts)


DEFAULT_RULE = SelectionRule()


@dataclass(frozen=True)
class SelectionResult:
    """Head of the ranking plus the full ranked candidate list."""

    value: int | None
    ranking: tuple[int, ...] = ()


def select_candidate(lo: int, hi: int, query: PSQuery,
                     rule: SelectionRule = DEFAULT_RULE) -> SelectionResult:
    """Rank the prime-sequence numbers in the inclusive window ``[lo, hi]``.

    Returns the ranking head, or ``value=None`` with an empty ranking when
    the window admits no candidate at this query.
    """
    if hi < lo:
        raise ValueError(f"window [lo, hi] requires hi >= lo, got [{lo}, {hi}]")
    candidates = enumerate_ps(lo - 1, hi, query)
    if not candidates:
        return SelectionResult(value=None, ranking=())
    ranked = tuple(sorted(candidates, key=rule.sort_key))
    return SelectionResult(value=ranked[0], ranking=ranked)


@dataclass(frozen=True)
class PersistenceResult:
    """Persistent selection over a scan of basis orders.

    ``value`` is the selection of the longest consecutive plateau (latest
    plateau wins ties); ``plateau`` is that plateau's inclusive ``(k_first,
    k_last)`` interval; ``selections`` records the per-k winners.
    """

    value: int
    plateau: tuple[int, int]
    selections: tuple[tuple[int, int], ...] = field(repr=False)


def persistence_scan(n_diag: int, lo: int, hi: int,
                     query_template: PSQuery | None = None,
                     rule: SelectionRule = DEFAULT_RULE) -> PersistenceResult:
    """Scan basis orders k and return the longest-lived selection.

    For each k from the smallest order admitting a candidate up to
    ``2 * n_diag - 1``, the window ``[lo, hi]`` is ranked under ``rule`` and
    the winner recorded.  The result is the value whose consecutive run of
    wins is longest, ties resolved toward the latest run.  ``query_template``
    supplies the distinct/exponent caps; its ``k`` field is replaced by the
    scan.  Raises ``ValueError`` when no k in range admits any candidate.
    """
    if n_diag < 1:
        raise ValueError(f"n_diag must be >= 1, got {n_diag}")
    template = query_template or PSQuery(k=1)
    k_max = max(1, 2 * n_diag - 1)
    selections: list[tuple[int, int]] = []
    for k in range(1, k_max + 1):
        query = PSQuery(k=k, max_distinct=template.max_distinct,
                        max_exponent=template.max_exponent)
        picked = select_candidate(lo, hi, query, rule)
        if picked.value is not None:
            selections.append((k, picked.value))
    if not selections:
        raise ValueError(
            f"no prime-sequence candidate in [{lo}, {hi}] for any k <= {k_max}")

    best_value = selections[0][1]
    best_run = (selections[0][0], selections[0][0])
    run_start = 0
    for i in range(1, len(selections) + 1):
        end_of_run = (
            i == len(selections)
            or selections[i][1] != selections[run_start][1]
            or selections[i][0] != selections[i - 1][0] + 1
        )
        if end_of_run:
            length = i - run_start
            k_first, k_last = selections[run_start][0], selections[i - 1][0]
            if length >= (best_run[1] - best_run[0] + 1):
                best_value = selections[run_start][1]
                best_run = (k_first, k_last)
            run_start = i
    return PersistenceResult(value=best_value, plateau=best_run,
                             selections=tuple(selections))


def growth_ratio(diag_values, offdiag_values) -> tuple[tuple[float, bool], ...]:
    """Pair up diagonal and off-diagonal bound values as ratios.

    Returns one ``(ratio, within_doubling)`` pair per index, where the flag
    marks ratios at most 2.  Raises on length mismatch or zero denominators.
    """
    diag = tuple(diag_values)
    off = tuple(offdiag_values)
    if len(diag) != len(off):
        raise ValueError(
            f"length mismatch: {len(diag)} diagonal vs {len(off)} off-diagonal")
    if not diag:
        raise ValueError("need at least one value pair")
    ratios = []
    for top, bottom in zip(diag, off):
        if bottom == 0:
            raise ValueError("zero denominator in growth ratio")
        rho = top / bottom
        ratios.append((rho, rho <= 2.0))
    return tuple(ratios)
