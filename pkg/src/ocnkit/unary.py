"""Minimal counter relation (MCR) of unary OCNs.

For a unary OCN, ``mcr[n]`` is the least initial counter from which the word
of length ``n`` is accepted, or ``None`` when no counter suffices. The prefix
is computed exactly with a Pareto dynamic program over (need, effect) pairs;
the ultimately periodic tail is detected on the prefix and confirmed over a
window, so anything beyond the horizon is a conjecture.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .core import Configuration, Ocn, OcnError, step


class ParetoEntry(NamedTuple):
    need: int
    effect: int


class Tail(NamedTuple):
    """``(N, k, d)``: for n >= N, entry(n + k) = entry(n) + d, definedness shifts too."""

    N: int
    k: int
    d: int


@dataclass(frozen=True)
class Mcr:
    prefix: tuple[int | None, ...]
    tail: Tail | None
    horizon: int
    confirmed_window: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if self.tail is not None:
            object.__setattr__(self, "tail", Tail(*self.tail))
        if len(self.prefix) != self.horizon + 1:
            raise ValueError("prefix must hold entries 0..horizon")

    def entry(self, n: int) -> int | None:
        """Entry ``n``; past the horizon it is extrapolated from the tail."""
        if n < len(self.prefix):
            return self.prefix[n]
        if self.tail is None:
            raise IndexError(f"index {n} beyond horizon {self.horizon} and no tail")
        N, k, d = self.tail
        shifts = -(-(n - self.horizon) // k)
        base = self.prefix[n - shifts * k]
        return None if base is None else base + shifts * d

    def to_dict(self) -> dict:
        return {
            "prefix": list(self.prefix),
            "tail": None if self.tail is None else dict(self.tail._asdict()),
            "horizon": self.horizon,
            "confirmed_window": self.confirmed_window,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Mcr:
        tail = data.get("tail")
        return cls(
            prefix=tuple(data["prefix"]),
            tail=None if tail is None else Tail(tail["N"], tail["k"], tail["d"]),
            horizon=data["horizon"],
            confirmed_window=data.get("confirmed_window", 0),
        )

    def to_semilinear(self):
        """The MCR graph as a semilinear subset of N^2 (needs a tail with d >= 0)."""
        from .semilinear import LinearSet2, SemilinearSet2

        if self.tail is None:
            raise ValueError("no periodic tail")
        N, k, d = self.tail
        if d < 0:
            raise ValueError("negative tail slope is not a subset of N^2")
        comps = [LinearSet2((n, c), ()) for n, c in enumerate(self.prefix[:N]) if c is not None]
        for r in range(N, N + k):
            c = self.entry(r)
            if c is not None:
                comps.append(LinearSet2((r, c), ((k, d),)))
        return SemilinearSet2(tuple(comps))


def require_unary(ocn: Ocn) -> str:
    if not ocn.is_unary:
        raise OcnError(f"expected a unary alphabet, got {len(ocn.alphabet)} symbols")
    return ocn.alphabet[0]


# --- exact prefix -----------------------------------------------------------

def pareto_front(entries: Sequence[tuple[int, int]]) -> list[ParetoEntry]:
    """Non-dominated (need, effect) pairs: low need and high effect are better."""
    front: list[ParetoEntry] = []
    best_effect = None
    for need, effect in sorted(set(entries), key=lambda p: (p[0], -p[1])):
        if best_effect is None or effect > best_effect:
            front.append(ParetoEntry(need, effect))
            best_effect = effect
    return front


def pareto_frontiers(ocn: Ocn, horizon: int) -> Iterator[dict[str, list[ParetoEntry]]]:
    """Yield, for n = 0..horizon, each state's frontier over length-n paths."""
    sym = require_unary(ocn)
    frontier = {q: [ParetoEntry(0, 0)] for q in ocn.initials}
    for n in range(horizon + 1):
        yield frontier
        if n == horizon:
            break
        grown: dict[str, list[tuple[int, int]]] = defaultdict(list)
        for q, entries in frontier.items():
            for eff, dst in ocn.successors(q, sym):
                for need, effect in entries:
                    total = effect + eff
                    grown[dst].append((max(need, -total), total))
        frontier = {q: pareto_front(v) for q, v in grown.items()}


def mcr_prefix(ocn: Ocn, horizon: int) -> list[int | None]:
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    out: list[int | None] = []
    for frontier in pareto_frontiers(ocn, horizon):
        needs = [f[0].need for q, f in frontier.items() if q in ocn.accepting and f]
        out.append(min(needs, default=None))
    return out


def mcr_brute(ocn: Ocn, horizon: int, counter_cap: int | None = None) -> list[int | None]:
    """Reference MCR by direct simulation, one full sweep per initial counter.

    Entries whose minimum exceeds ``counter_cap`` are ``None``. The default cap
    is large enough that every length-``horizon`` path is traversable.
    """
    sym = require_unary(ocn)
    if counter_cap is None:
        worst = max((-t[2] for t in ocn.transitions), default=0)
        counter_cap = horizon * max(worst, 0)

    # Lengths with any accepting path at all; once all are settled we can stop.
    possible = set()
    states = set(ocn.initials)
    for n in range(horizon + 1):
        if states & ocn.accepting:
            possible.add(n)
        states = {dst for q in states for _, dst in ocn.successors(q, sym)}

    result: list[int | None] = [None] * (horizon + 1)
    pending = set(possible)
    for c in range(counter_cap + 1):
        if not pending:
            break
        configs = {Configuration(q, c) for q in ocn.initials}
        for n in range(horizon + 1):
            if n in pending and any(conf.state in ocn.accepting for conf in configs):
                result[n] = c
                pending.discard(n)
            if n < horizon:
                configs = {nxt for conf in configs for nxt in step(ocn, conf, sym)}
    return result


# --- periodicity ------------------------------------------------------------

def _law_slope(prefix: Sequence[int | None], N: int, k: int) -> int | None:
    """The common shift d if the (N, k, d) law holds on the whole prefix."""
    d = None
    for n in range(N, len(prefix) - k):
        a, b = prefix[n], prefix[n + k]
        if (a is None) != (b is None):
            return None
        if a is not None:
            if d is None:
                d = b - a
            elif b - a != d:
                return None
    return 0 if d is None else d


def detect_periodicity(prefix: Sequence[int | None], confirm_window: int) -> Tail | None:
    """Least (k, N) whose law holds on the prefix over enough shifts.

    A candidate is reported only if the law was checked on at least
    ``max(confirm_window, 2k)`` indices, i.e. two full periods at minimum.
    """
    length = len(prefix)
    k = 1
    while length - k >= max(confirm_window, 2 * k):
        need = max(confirm_window, 2 * k)
        N = 0
        while length - k - N >= need:
            d = _law_slope(prefix, N, k)
            if d is not None:
                return Tail(N, k, d)
            N += 1
        k += 1
    return None


def mcr(ocn: Ocn, horizon: int = 64, confirm_window: int = 16) -> Mcr:
    prefix = mcr_prefix(ocn, horizon)
    tail = detect_periodicity(prefix, confirm_window)
    window = 0 if tail is None else len(prefix) - tail.N - tail.k
    return Mcr(tuple(prefix), tail, horizon, window)


# --- monotonicity -----------------------------------------------------------

Witness = tuple[tuple[int, int], tuple[int, int]]


def find_decrease(values: Sequence[int | None]) -> Witness | None:
    """Lexicographically least (n1, n2), n1 < n2, with values[n1] > values[n2]."""
    suffix_min = [None] * (len(values) + 1)
    for n in range(len(values) - 1, -1, -1):
        v, m = values[n], suffix_min[n + 1]
        suffix_min[n] = v if m is None or (v is not None and v < m) else m
    for n1, c1 in enumerate(values):
        later = suffix_min[n1 + 1]
        if c1 is not None and later is not None and later < c1:
            for n2 in range(n1 + 1, len(values)):
                c2 = values[n2]
                if c2 is not None and c2 < c1:
                    return (n1, c1), (n2, c2)
    return None


@dataclass(frozen=True)
class IncreasingCheck:
    increasing: bool
    witness: Witness | None = None
    prefix_only: bool = False

    def __bool__(self) -> bool:
        return self.increasing


def is_increasing(m: Mcr) -> IncreasingCheck:
    """Windowed monotonicity check of an MCR.

    With a tail (N, k, d) and d >= 0, any decreasing pair has a translate
    inside [0, N + 2k], so checking that window settles the whole relation.
    Without a tail only the computed prefix is inspected.
    """
    if m.tail is None:
        witness = find_decrease(m.prefix)
        return IncreasingCheck(witness is None, witness, prefix_only=True)
    N, k, d = m.tail
    window = [m.entry(n) for n in range(N + 2 * k + 1)]
    witness = find_decrease(window)
    if witness is not None:
        return IncreasingCheck(False, witness)
    if d < 0:
        return IncreasingCheck(False, None)
    return IncreasingCheck(True)
