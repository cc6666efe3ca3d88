"""Uniform determinization of unary OCNs.

A unary OCN has a DOCN that agrees with it at every initial counter exactly
when its MCR is increasing. In that case the DOCN is a lasso whose
accumulated effect after n letters is ``-f(n)``, where ``f`` fills the gaps
of the MCR with the last defined value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

from .core import Ocn, bounded_equiv, parse_ocn, serialize_ocn
from .semilinear import (
    UnarySemilinear,
    unary_semilinear_to_dfa,
    unary_semilinear_to_regex,
)
from .unary import Mcr, Tail, Witness, find_decrease, is_increasing, mcr, require_unary


class DeterminizeError(ValueError):
    pass


@dataclass(frozen=True)
class FTable:
    """Completed MCR values ``f(0..N+k-1)`` and the tail they repeat with."""

    values: tuple[int, ...]
    tail: Tail

    def __call__(self, n: int) -> int:
        N, k, d = self.tail
        if n < len(self.values):
            return self.values[n]
        shifts = -(-(n - len(self.values) + 1) // k)
        return self.values[n - shifts * k] + shifts * d


def _anchored_tail(m: Mcr) -> Tail:
    # The gap-filling in f only repeats with the MCR once the tail region has
    # produced a defined value, so anchor N at the first defined index >= N.
    N, k, d = m.tail
    for n in range(N, N + k):
        if m.entry(n) is not None:
            return Tail(n, k, d)
    return Tail(N, k, 0)


def complete_f(m: Mcr) -> FTable:
    if m.tail is None:
        raise DeterminizeError("MCR has no periodic tail")
    check = is_increasing(m)
    if not check:
        raise DeterminizeError(f"MCR is not increasing (witness {check.witness})")
    tail = _anchored_tail(m)
    values = [0]
    for n in range(1, tail.N + tail.k):
        c = m.entry(n)
        values.append(values[-1] if c is None else c)
    return FTable(tuple(values), tail)


def synthesize_docn(m: Mcr, symbol: str = "σ") -> Ocn:
    f = complete_f(m)
    N, k, d = f.tail
    size = N + k
    states = tuple(f"q{i}" for i in range(size))
    trans = [(states[i], symbol, f(i) - f(i + 1), states[i + 1]) for i in range(size - 1)]
    trans.append((states[-1], symbol, f(size - 1) - f(N) - d, states[N]))
    return Ocn(
        alphabet=(symbol,),
        states=states,
        initials=frozenset({states[0]}),
        transitions=tuple(trans),
        accepting=frozenset(states[i] for i in range(size) if m.entry(i) is not None),
    )


# --- verdicts ---------------------------------------------------------------

@dataclass(frozen=True)
class UniformDet:
    kind: ClassVar[str] = "uniform-det"
    docn: Ocn
    verified_horizon: int
    verified_counter: int
    mcr: Mcr | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.kind,
            "witness": None,
            "docn": serialize_ocn(self.docn),
            "verified_horizon": self.verified_horizon,
            "verified_counter": self.verified_counter,
            "mcr": None if self.mcr is None else self.mcr.to_dict(),
        }


@dataclass(frozen=True)
class NotUniformDet:
    kind: ClassVar[str] = "not-uniform-det"
    witness: Witness
    mcr: Mcr | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.kind,
            "witness": [list(self.witness[0]), list(self.witness[1])],
            "docn": None,
            "verified_horizon": None,
            "mcr": None if self.mcr is None else self.mcr.to_dict(),
        }


@dataclass(frozen=True)
class Inconclusive:
    kind: ClassVar[str] = "inconclusive"
    reason: str
    mcr: Mcr | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.kind,
            "witness": None,
            "docn": None,
            "verified_horizon": None,
            "reason": self.reason,
            "mcr": None if self.mcr is None else self.mcr.to_dict(),
        }


Verdict = UniformDet | NotUniformDet | Inconclusive


def verdict_from_dict(data: dict) -> Verdict:
    m = Mcr.from_dict(data["mcr"]) if data.get("mcr") else None
    kind = data["verdict"]
    if kind == UniformDet.kind:
        return UniformDet(parse_ocn(data["docn"]), data["verified_horizon"],
                          data.get("verified_counter", 0), m)
    if kind == NotUniformDet.kind:
        (n1, c1), (n2, c2) = data["witness"]
        return NotUniformDet(((n1, c1), (n2, c2)), m)
    if kind == Inconclusive.kind:
        return Inconclusive(data.get("reason", ""), m)
    raise ValueError(f"unknown verdict {kind!r}")


def decide_uniform_det(
    ocn: Ocn,
    horizon: int = 64,
    confirm_window: int = 16,
    max_counter: int = 25,
    max_len: int = 100,
) -> Verdict:
    """Decide Uniform-Det for a unary OCN.

    A decreasing pair in the exact MCR prefix refutes determinizability
    outright. Otherwise, with a detected tail, the synthesized DOCN is
    checked against ``ocn`` for every counter up to ``max_counter`` and word
    length up to ``max_len`` before it is returned.
    """
    symbol = require_unary(ocn)
    m = mcr(ocn, horizon, confirm_window)
    witness = find_decrease(m.prefix)
    if witness is not None:
        return NotUniformDet(witness, m)
    if m.tail is None:
        return Inconclusive(f"no periodic tail confirmed within horizon {horizon}", m)
    check = is_increasing(m)
    if not check:
        return Inconclusive(f"tail {tuple(m.tail)} has negative slope but no witness in prefix", m)
    docn = synthesize_docn(m, symbol)
    report = bounded_equiv(ocn, docn, max_counter=max_counter, max_len=max_len)
    if not report:
        cex = report.counterexample
        return Inconclusive(
            f"conjectured tail {tuple(m.tail)} fails at length {len(cex.word)}, counter {cex.counter}",
            m,
        )
    return UniformDet(docn, max_len, max_counter, m)


# --- unary regularization ---------------------------------------------------

@dataclass(frozen=True)
class UnaryLanguage:
    """``{n : sigma^n accepted from counter c}`` in three equivalent forms."""

    counter: int
    lengths: UnarySemilinear
    regex: str
    dfa: Ocn
    exact: bool
    horizon: int

    def __contains__(self, n: int) -> bool:
        return n in self.lengths

    def to_dict(self) -> dict:
        return {
            "counter": self.counter,
            "components": [list(c) for c in self.lengths.components],
            "regex": self.regex,
            "dfa": serialize_ocn(self.dfa),
            "exact": self.exact,
            "horizon": self.horizon,
        }

    @classmethod
    def from_dict(cls, data: dict) -> UnaryLanguage:
        return cls(
            counter=data["counter"],
            lengths=UnarySemilinear(tuple(tuple(c) for c in data["components"])),
            regex=data["regex"],
            dfa=parse_ocn(data["dfa"]),
            exact=data["exact"],
            horizon=data["horizon"],
        )


def lengths_up_to_counter(m: Mcr, c: int) -> UnarySemilinear:
    if m.tail is None:
        return UnarySemilinear(tuple((n, 0) for n, v in enumerate(m.prefix) if v is not None and v <= c))
    N, k, d = m.tail
    comps = [(n, 0) for n in range(N) if m.prefix[n] is not None and m.prefix[n] <= c]
    for r in range(N, N + k):
        e = m.entry(r)
        if e is None:
            continue
        if d == 0:
            if e <= c:
                comps.append((r, k))
        elif d > 0:
            step = 0
            while e + step * d <= c:
                comps.append((r + step * k, 0))
                step += 1
        else:
            skip = max(0, -(-(e - c) // -d))
            comps.append((r + skip * k, k))
    return UnarySemilinear(tuple(comps))


def unary_language_dfa(
    ocn: Ocn, c: int, horizon: int = 64, confirm_window: int = 16
) -> UnaryLanguage:
    symbol = require_unary(ocn)
    if c < 0:
        raise ValueError("counter must be nonnegative")
    m = mcr(ocn, horizon, confirm_window)
    lengths = lengths_up_to_counter(m, c)
    return UnaryLanguage(
        counter=c,
        lengths=lengths,
        regex=unary_semilinear_to_regex(lengths, symbol),
        dfa=unary_semilinear_to_dfa(lengths, symbol),
        exact=m.tail is not None,
        horizon=horizon,
    )
