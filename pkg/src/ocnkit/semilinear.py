"""Linear and semilinear sets over N^2 and N.

Only what the unary pipeline needs: membership, gamma-splitting of
single-period components to a common period, extraction of the
ultimately periodic law, and unary sets as regular expressions or DFAs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

Vec = tuple[int, int]


class SemilinearError(ValueError):
    pass


@dataclass(frozen=True)
class LinearSet2:
    """``{base + sum(l_i * p_i) : l_i in N}``; the zero period is never stored."""

    base: Vec
    periods: tuple[Vec, ...] = ()

    def __post_init__(self):
        base = tuple(int(x) for x in self.base)
        periods = []
        for p in self.periods:
            p = tuple(int(x) for x in p)
            if p != (0, 0) and p not in periods:
                periods.append(p)
        if len(base) != 2 or any(x < 0 for x in base):
            raise SemilinearError(f"base {self.base!r} is not in N^2")
        if any(len(p) != 2 or min(p) < 0 for p in periods):
            raise SemilinearError(f"periods {self.periods!r} are not in N^2")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "periods", tuple(periods))

    @property
    def period(self) -> Vec:
        """The single period, ``(0, 0)`` for a point."""
        if len(self.periods) > 1:
            raise SemilinearError("component has more than one period")
        return self.periods[0] if self.periods else (0, 0)

    def __contains__(self, point: Vec) -> bool:
        rest = (point[0] - self.base[0], point[1] - self.base[1])
        return _combination_exists(rest, self.periods)

    def to_dict(self) -> dict:
        return {"base": list(self.base), "periods": [list(p) for p in self.periods]}


def _combination_exists(target: Vec, periods: Sequence[Vec]) -> bool:
    x, y = target
    if x < 0 or y < 0:
        return False
    if not periods:
        return x == 0 and y == 0
    (p, r), rest = periods[0], periods[1:]
    bound = min(v // c for v, c in ((x, p), (y, r)) if c > 0)
    return any(_combination_exists((x - lam * p, y - lam * r), rest) for lam in range(bound + 1))


@dataclass(frozen=True)
class SemilinearSet2:
    components: tuple[LinearSet2, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __contains__(self, point: Vec) -> bool:
        return any(point in comp for comp in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def to_dict(self) -> dict:
        return {"components": [c.to_dict() for c in self.components]}

    @classmethod
    def from_dict(cls, data: dict) -> SemilinearSet2:
        return cls(tuple(
            LinearSet2(tuple(c["base"]), tuple(tuple(p) for p in c.get("periods", ())))
            for c in data["components"]
        ))


def lin_member(point: Vec, s: SemilinearSet2 | LinearSet2) -> bool:
    return tuple(point) in s


def gamma_split(component: LinearSet2, gamma: int) -> SemilinearSet2:
    """Rewrite ``Lin(b, {(p, r)})`` as gamma/p components with period (gamma, r*gamma/p)."""
    p, r = component.period
    if p == 0:
        raise SemilinearError("cannot split a component whose period has zero first coordinate")
    if gamma <= 0 or gamma % p:
        raise SemilinearError(f"gamma={gamma} is not a positive multiple of p={p}")
    times = gamma // p
    a, b = component.base
    return SemilinearSet2(tuple(
        LinearSet2((a + i * p, b + i * r), ((gamma, r * times),)) for i in range(times)
    ))


@dataclass(frozen=True)
class NormalizationFailure:
    """Two components whose slopes differ after splitting; the set is not increasing."""

    components: tuple[LinearSet2, LinearSet2]
    reason: str

    def __bool__(self) -> bool:
        return False


def normalize_common_period(s: SemilinearSet2) -> SemilinearSet2 | NormalizationFailure:
    """Bring every periodic component to one shared period (gamma, eta).

    Point components (no period) pass through untouched. Returns a
    :class:`NormalizationFailure` when the set cannot be the graph of an
    increasing function.
    """
    for comp in s.components:
        if len(comp.periods) > 1:
            raise SemilinearError(f"component {comp} has {len(comp.periods)} periods")
    points = [c for c in s.components if not c.periods]
    periodic = [c for c in s.components if c.periods]
    for comp in periodic:
        if comp.period[0] == 0:
            return NormalizationFailure((comp, comp), "period with zero length component")
    if not periodic:
        return s
    gamma = math.lcm(*(c.period[0] for c in periodic))
    split = [part for comp in periodic for part in gamma_split(comp, gamma).components]
    first = split[0]
    for other in split[1:]:
        if other.period != first.period:
            return NormalizationFailure(
                (first, other),
                f"slopes {first.period[1]}/{gamma} and {other.period[1]}/{gamma} differ",
            )
    return SemilinearSet2(tuple(points + split))


@dataclass(frozen=True)
class UltimatelyPeriodic:
    """A subset of N^2 given by its members below N + k and the (N, k, d) law."""

    N: int
    k: int
    d: int
    prefix: frozenset[Vec]
    seeds: tuple[Vec, ...] = ()

    def __contains__(self, point: Vec) -> bool:
        n, x = point
        if n >= self.N + self.k:
            shifts = (n - self.N) // self.k
            n, x = n - shifts * self.k, x - shifts * self.d
        return x >= 0 and (n, x) in self.prefix


def to_ultimately_periodic(s: SemilinearSet2) -> UltimatelyPeriodic:
    periods = {c.period for c in s.components if c.periods}
    if len(periods) > 1:
        raise SemilinearError("set is not normalized to a single common period")
    points = [c.base for c in s.components if not c.periods]
    seeds = tuple(c.base for c in s.components if c.periods)
    past_points = max((n for n, _ in points), default=-1) + 1
    if periods:
        (k, d), = periods
        N = max(max(n for n, _ in seeds), past_points)
    else:
        k, d, N = 1, 0, past_points
    limit = N + k
    prefix = set(p for p in points if p[0] < limit)
    for a, b in seeds:
        m = 0
        while a + m * k < limit:
            prefix.add((a + m * k, b + m * d))
            m += 1
    return UltimatelyPeriodic(N, k, d, frozenset(prefix), seeds)


# --- unary sets -------------------------------------------------------------

@dataclass(frozen=True)
class UnarySemilinear:
    """Union of ``{c + l*p : l in N}``; period 0 means the single point c."""

    components: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        comps = tuple(dict.fromkeys((int(c), int(p)) for c, p in self.components))
        if any(c < 0 or p < 0 for c, p in comps):
            raise SemilinearError("offsets and periods must be nonnegative")
        object.__setattr__(self, "components", comps)

    def __contains__(self, n: int) -> bool:
        return any(
            n == c if p == 0 else (n >= c and (n - c) % p == 0)
            for c, p in self.components
        )

    @property
    def is_finite(self) -> bool:
        return all(p == 0 for _, p in self.components)


def _unary_atom(symbol: str, style: str) -> str:
    if style == "math":
        return symbol
    return re.escape(symbol) if len(symbol) == 1 else f"(?:{re.escape(symbol)})"


def _power(atom: str, n: int, style: str) -> str:
    if n == 1:
        return atom
    return f"{atom}^{n}" if style == "math" else f"{atom}{{{n}}}"


def unary_semilinear_to_regex(s: UnarySemilinear, symbol: str = "σ", style: str = "re") -> str:
    """One term ``symbol^c (symbol^p)*`` per component, joined by union.

    ``style="re"`` emits a Python :mod:`re` pattern to be used with
    ``fullmatch`` on the symbol repeated n times; ``style="math"`` emits the
    textbook notation with ``ε`` and ``∅``.
    """
    if style not in ("re", "math"):
        raise ValueError(f"unknown style {style!r}")
    atom = _unary_atom(symbol, style)
    terms = []
    for c, p in s.components:
        head = _power(atom, c, style) if c else ""
        if p:
            inner = _power(atom, p, style)
            loop = f"({inner})*" if style == "math" else f"(?:{inner})*"
            if p == 1:
                loop = f"{atom}*"
            term = head + loop
        else:
            term = head
        terms.append(term)
    if style == "math":
        return " + ".join(t or "ε" for t in terms) if terms else "∅"
    if not terms:
        return "(?!)"
    return "|".join(f"(?:{t})" for t in terms)


def unary_semilinear_to_dfa(s: UnarySemilinear, symbol: str = "σ"):
    """A lasso-shaped zero-effect DOCN recognising ``{symbol^n : n in s}``."""
    from .core import Ocn

    N = max((c + 1 if p == 0 else c for c, p in s.components), default=0)
    k = math.lcm(*(p for _, p in s.components if p > 0)) if not s.is_finite else 1
    size = N + k
    states = tuple(f"q{i}" for i in range(size))
    trans = [(states[i], symbol, 0, states[i + 1]) for i in range(size - 1)]
    trans.append((states[-1], symbol, 0, states[N]))
    return Ocn(
        alphabet=(symbol,),
        states=states,
        initials=frozenset({states[0]}),
        transitions=tuple(trans),
        accepting=frozenset(states[i] for i in range(size) if i in s),
    )

