"""One-counter nets: data model, text format, and exact semantics.

An OCN reads tokens and adds an integer effect to a counter that must stay
nonnegative. There are no zero tests, so acceptance is monotone in the
initial counter.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Transition = tuple[str, str, int, str]


class OcnError(ValueError):
    """Structurally invalid automaton or input word."""


class ParseError(OcnError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _check_names(kind: str, names: Iterable[str]) -> None:
    seen = set()
    for name in names:
        if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
            raise OcnError(f"invalid {kind} name {name!r}")
        if name in seen:
            raise OcnError(f"duplicate {kind} {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class Ocn:
    """A one-counter net with a set of initial states.

    Transitions are ``(source, symbol, effect, target)`` quadruples; exact
    duplicates are collapsed, first occurrence wins the position.
    """

    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initials: frozenset[str]
    transitions: tuple[Transition, ...]
    accepting: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        trans = tuple(dict.fromkeys(
            (src, sym, int(eff), dst) for src, sym, eff, dst in self.transitions
        ))
        object.__setattr__(self, "transitions", trans)

        _check_names("symbol", self.alphabet)
        _check_names("state", self.states)
        states = set(self.states)
        symbols = set(self.alphabet)
        if not self.initials:
            raise OcnError("an OCN needs at least one initial state")
        for s in sorted(self.initials - states):
            raise OcnError(f"undeclared initial state {s!r}")
        for s in sorted(self.accepting - states):
            raise OcnError(f"undeclared accepting state {s!r}")
        for src, sym, _, dst in trans:
            for s in (src, dst):
                if s not in states:
                    raise OcnError(f"undeclared state {s!r} in transition")
            if sym not in symbols:
                raise OcnError(f"undeclared symbol {sym!r} in transition")

    @cached_property
    def _out(self) -> dict[tuple[str, str], tuple[tuple[int, str], ...]]:
        out: dict[tuple[str, str], list[tuple[int, str]]] = defaultdict(list)
        for src, sym, eff, dst in self.transitions:
            out[src, sym].append((eff, dst))
        return {key: tuple(val) for key, val in out.items()}

    def successors(self, state: str, symbol: str) -> tuple[tuple[int, str], ...]:
        """``(effect, target)`` pairs leaving ``state`` on ``symbol``."""
        return self._out.get((state, symbol), ())

    @property
    def is_unary(self) -> bool:
        return len(self.alphabet) == 1

    @property
    def max_positive_effect(self) -> int:
        return max(0, max((t[2] for t in self.transitions), default=0))

    def __str__(self) -> str:
        return serialize_ocn(self)


@dataclass(frozen=True, order=True)
class Configuration:
    state: str
    counter: int

    def __post_init__(self):
        if self.counter < 0:
            raise OcnError(f"negative counter {self.counter}")


@dataclass(frozen=True)
class PathStats:
    effect: int
    nadir: int


# --- text format ------------------------------------------------------------

_FIELDS = ("alphabet", "states", "initial", "accepting")


def parse_ocn(text: str) -> Ocn:
    """Parse the line-oriented ``.ocn`` format. ``;`` starts a comment."""
    seen: dict[str, tuple[int, list[str]]] = {}
    transitions: list[tuple[int, Transition]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected '<field>: ...', got {line!r}", lineno)
        values = rest.split()
        if key == "trans":
            if len(values) != 4:
                raise ParseError("trans needs: source symbol effect target", lineno)
            src, sym, eff, dst = values
            try:
                effect = int(eff)
            except ValueError:
                raise ParseError(f"effect {eff!r} is not an integer", lineno) from None
            transitions.append((lineno, (src, sym, effect, dst)))
        elif key in _FIELDS:
            if key in seen:
                raise ParseError(f"duplicate {key!r} declaration", lineno)
            seen[key] = (lineno, values)
        else:
            raise ParseError(f"unknown field {key!r}", lineno)

    for key in ("alphabet", "states", "initial"):
        if key not in seen:
            raise ParseError(f"missing {key!r} declaration")

    def declared(key: str, kind: str) -> list[str]:
        lineno, names = seen[key]
        dup = [n for n, c in Counter(names).items() if c > 1]
        if dup:
            raise ParseError(f"duplicate {kind} {dup[0]!r}", lineno)
        return names

    alphabet = declared("alphabet", "symbol")
    states = declared("states", "state")
    state_set, symbol_set = set(states), set(alphabet)
    for key in ("initial", "accepting"):
        if key in seen:
            lineno, names = seen[key]
            for name in names:
                if name not in state_set:
                    raise ParseError(f"undeclared state {name!r}", lineno)
    for lineno, (src, sym, _, dst) in transitions:
        for s in (src, dst):
            if s not in state_set:
                raise ParseError(f"undeclared state {s!r}", lineno)
        if sym not in symbol_set:
            raise ParseError(f"undeclared symbol {sym!r}", lineno)

    try:
        return Ocn(
            alphabet=tuple(alphabet),
            states=tuple(states),
            initials=frozenset(seen["initial"][1]),
            transitions=tuple(t for _, t in transitions),
            accepting=frozenset(seen.get("accepting", (0, []))[1]),
        )
    except OcnError as exc:
        raise ParseError(str(exc)) from None


def serialize_ocn(ocn: Ocn) -> str:
    def ordered(subset: frozenset[str]) -> str:
        return " ".join(s for s in ocn.states if s in subset)

    lines = [
        f"alphabet: {' '.join(ocn.alphabet)}",
        f"states: {' '.join(ocn.states)}",
        f"initial: {ordered(ocn.initials)}",
        f"accepting: {ordered(ocn.accepting)}".rstrip(),
    ]
    lines += [f"trans: {src} {sym} {eff} {dst}" for src, sym, eff, dst in ocn.transitions]
    return "\n".join(lines) + "\n"


# --- semantics --------------------------------------------------------------

def as_word(word: str | Sequence[str]) -> tuple[str, ...]:
    """Words are token sequences; a string is split on whitespace."""
    if isinstance(word, str):
        return tuple(word.split())
    return tuple(word)


def _check_word(ocn: Ocn, word: Sequence[str]) -> None:
    symbols = set(ocn.alphabet)
    for tok in word:
        if tok not in symbols:
            raise OcnError(f"token {tok!r} not in alphabet")


def step(ocn: Ocn, config: Configuration, symbol: str) -> set[Configuration]:
    return {
        Configuration(dst, config.counter + eff)
        for eff, dst in ocn.successors(config.state, symbol)
        if config.counter + eff >= 0
    }


def reachable_configurations(
    ocn: Ocn, word: str | Sequence[str], initial_counter: int
) -> set[Configuration]:
    """All configurations reachable after reading ``word`` from any initial state."""
    word = as_word(word)
    _check_word(ocn, word)
    current = {Configuration(q, initial_counter) for q in ocn.initials}
    for tok in word:
        current = {nxt for conf in current for nxt in step(ocn, conf, tok)}
        if not current:
            break
    return current


def accepts(ocn: Ocn, word: str | Sequence[str], initial_counter: int) -> bool:
    if initial_counter < 0:
        raise OcnError("initial counter must be nonnegative")
    return any(
        conf.state in ocn.accepting
        for conf in reachable_configurations(ocn, word, initial_counter)
    )


def path_stats(effects: Iterable[int]) -> PathStats:
    total = nadir = 0
    for eff in effects:
        total += eff
        nadir = min(nadir, total)
    return PathStats(total, nadir)


def min_initial_counter(effects: Iterable[int]) -> int:
    return -path_stats(effects).nadir


def is_deterministic(ocn: Ocn) -> bool:
    if len(ocn.initials) != 1:
        return False
    return all(len(v) <= 1 for v in ocn._out.values())


# --- bounded equivalence ----------------------------------------------------

class CounterProfile:
    """Exact acceptance tracker for many words sharing prefixes.

    Keeps, per state, the largest counter reachable. By monotonicity every
    run from a smaller counter in the same state is dominated, so membership
    answers are exact.
    """

    __slots__ = ("ocn", "best")

    def __init__(self, ocn: Ocn, best: dict[str, int]):
        self.ocn = ocn
        self.best = best

    @classmethod
    def start(cls, ocn: Ocn, counter: int) -> CounterProfile:
        return cls(ocn, {q: counter for q in ocn.initials})

    def read(self, symbol: str) -> CounterProfile:
        nxt: dict[str, int] = {}
        for q, v in self.best.items():
            for eff, dst in self.ocn.successors(q, symbol):
                w = v + eff
                if w >= 0 and w > nxt.get(dst, -1):
                    nxt[dst] = w
        return CounterProfile(self.ocn, nxt)

    @property
    def accepting(self) -> bool:
        return any(q in self.ocn.accepting for q in self.best)


@dataclass(frozen=True)
class Counterexample:
    word: tuple[str, ...]
    counter: int
    verdict_a: bool
    verdict_b: bool


@dataclass(frozen=True)
class EquivReport:
    agree: bool
    counterexample: Counterexample | None = None
    words_checked: int = 0
    counters: tuple[int, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.agree

    def to_dict(self) -> dict:
        cex = self.counterexample
        return {
            "agree": self.agree,
            "counterexample": None if cex is None else {
                "word": list(cex.word), "counter": cex.counter,
                "verdict_a": cex.verdict_a, "verdict_b": cex.verdict_b,
            },
            "words_checked": self.words_checked,
            "counters": list(self.counters),
        }

    @classmethod
    def from_dict(cls, data: dict) -> EquivReport:
        cex = data.get("counterexample")
        return cls(
            data["agree"],
            None if cex is None else Counterexample(
                tuple(cex["word"]), cex["counter"], cex["verdict_a"], cex["verdict_b"]),
            data.get("words_checked", 0),
            tuple(data.get("counters", ())),
        )


def words_up_to(alphabet: Sequence[str], max_len: int) -> Iterator[tuple[str, ...]]:
    """All words of length <= max_len in shortlex order."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def bounded_equiv(
    a: Ocn,
    b: Ocn,
    *,
    counter: int | None = None,
    max_counter: int | None = None,
    max_len: int,
) -> EquivReport:
    """Compare L(a, c) and L(b, c) on every word of length <= ``max_len``.

    Exactly one of ``counter`` (fixed mode) or ``max_counter`` (uniform mode,
    every c in 0..max_counter) must be given. The first disagreement found, in
    order of counter then shortlex word, is reported.
    """
    if set(a.alphabet) != set(b.alphabet):
        raise OcnError("alphabet mismatch")
    if (counter is None) == (max_counter is None):
        raise ValueError("give exactly one of counter= or max_counter=")
    counters = (counter,) if counter is not None else tuple(range(max_counter + 1))
    alphabet = sorted(a.alphabet)
    checked = 0
    for c in counters:
        level = [((), CounterProfile.start(a, c), CounterProfile.start(b, c))]
        for depth in range(max_len + 1):
            nxt = []
            for word, pa, pb in level:
                checked += 1
                va, vb = pa.accepting, pb.accepting
                if va != vb:
                    return EquivReport(False, Counterexample(word, c, va, vb), checked, counters)
                if depth < max_len:
                    for sym in alphabet:
                        nxt.append((word + (sym,), pa.read(sym), pb.read(sym)))
            level = nxt
    return EquivReport(True, None, checked, counters)
