"""0/1 knapsack by meet-in-the-middle, and minimum knapsack by binary search.

``max_knapsack_mitm`` answers the capacity-``w`` maximisation probe in
O(2^(k/2) * k).  ``min_knapsack`` finds the least capacity whose probe reaches
the profit threshold, evaluating the probe at ``w`` and ``w + 1`` per step.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GuardError
from .game import as_rational

MITM_MAX_ITEMS = 40

Item = tuple[Fraction, int]


@dataclass(frozen=True)
class KnapsackInstance:
    """Items are ``(profit, weight)`` pairs; weights must be integers.

    ``threshold`` is the profit target P of the minimum (covering) form,
    ``capacity`` the weight budget W of the decision / maximisation form.
    """

    items: tuple
    threshold: Fraction | None = None
    capacity: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "items", _check_items(self.items))
        if self.threshold is not None:
            object.__setattr__(self, "threshold", as_rational(self.threshold))
        if self.capacity is not None and (not isinstance(self.capacity, int) or self.capacity < 0):
            raise ValueError("capacity must be a non-negative integer")

    @property
    def profits(self) -> tuple[Fraction, ...]:
        return tuple(p for p, _ in self.items)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.items)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)


def _check_items(items) -> tuple[Item, ...]:
    out = []
    for p, w in items:
        p = as_rational(p)
        if isinstance(w, Fraction) and w.denominator == 1:
            w = int(w)
        if isinstance(w, bool) or not isinstance(w, int):
            raise ValueError(f"knapsack weight {w!r} is not an integer")
        if p < 0 or w < 0:
            raise ValueError("knapsack profits and weights must be non-negative")
        out.append((p, w))
    return tuple(out)


def _enumerate_half(items: Sequence[Item], offset: int) -> list[tuple[int, Fraction, int]]:
    subsets = [(0, Fraction(0), 0)]
    for i, (p, w) in enumerate(items):
        bit = 1 << (offset + i)
        subsets += [(sw + w, sp + p, mask | bit) for sw, sp, mask in subsets]
    return subsets


class _MitmTables:
    """Both half-enumerations, built once and reused for every capacity probe."""

    def __init__(self, items: Sequence[Item]):
        items = _check_items(items)
        if len(items) > MITM_MAX_ITEMS:
            raise GuardError(f"{len(items)} items exceed the meet-in-the-middle guard of {MITM_MAX_ITEMS}")
        half = len(items) // 2
        self.left = sorted(_enumerate_half(items[:half], 0), key=lambda t: t[0])
        right = sorted(_enumerate_half(items[half:], half), key=lambda t: t[0])
        self.right_weights = [w for w, _, _ in right]
        # Running maxima so that "best right subset of weight <= r" is one bisect.
        self.right_best = []
        best = (Fraction(-1), 0)
        for _, p, mask in right:
            if p > best[0]:
                best = (p, mask)
            self.right_best.append(best)

    def query(self, capacity: int) -> tuple[Fraction, int]:
        best_profit, best_mask = Fraction(-1), 0
        for lw, lp, lmask in self.left:
            if lw > capacity:
                break
            j = bisect_right(self.right_weights, capacity - lw) - 1
            if j < 0:
                continue
            rp, rmask = self.right_best[j]
            if lp + rp > best_profit:
                best_profit, best_mask = lp + rp, lmask | rmask
        if best_profit < 0:
            # Only reachable with a negative capacity.
            return Fraction(0), 0
        return best_profit, best_mask


def max_knapsack_mitm(items: Sequence[Item], capacity: int) -> Fraction:
    """Maximum total profit of a subset whose weight is at most ``capacity``."""
    return _MitmTables(items).query(capacity)[0]


def _selection(mask: int, k: int) -> tuple[int, ...]:
    return tuple(i for i in range(k) if mask >> i & 1)


def solve_min_knapsack(items: Sequence[Item], threshold, probes: list | None = None
                       ) -> tuple[int, tuple[int, ...]] | None:
    """Least total weight reaching profit ``threshold``, with one optimal selection.

    Returns ``None`` when even all items together fall short.  Every capacity
    probe is appended to ``probes`` as ``(w, OPT_w)`` when a list is given.
    """
    items = _check_items(items)
    threshold = as_rational(threshold)
    if sum((p for p, _ in items), Fraction(0)) < threshold:
        return None
    tables = _MitmTables(items)
    seen: dict[int, tuple[Fraction, int]] = {}

    def probe(w: int) -> Fraction:
        if w not in seen:
            seen[w] = tables.query(w)
            if probes is not None:
                probes.append((w, seen[w][0]))
            ordered = sorted(seen.items())
            assert all(a[1][0] <= b[1][0] for a, b in zip(ordered, ordered[1:])), "OPT_w must be non-decreasing in w"
        return seen[w][0]

    if probe(0) >= threshold:
        return 0, _selection(seen[0][1], len(items))
    lo, hi = 0, sum(w for _, w in items)
    w = (lo + hi) // 2
    while True:
        below, above = probe(w), probe(w + 1)
        if below < threshold <= above:
            return w + 1, _selection(seen[w + 1][1], len(items))
        if above < threshold:
            lo = w + 1
        else:
            hi = w
        w = (lo + hi) // 2


def min_knapsack(items: Sequence[Item], threshold, probes: list | None = None) -> int | None:
    result = solve_min_knapsack(items, threshold, probes)
    return None if result is None else result[0]
