"""Lossy counter machines: model, ``.lcm`` text format, and lossy semantics."""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..core import ParseError

INC, DEC, ZERO = "++", "--", "=0?"
_OP_RE = re.compile(r"^(\S+?)(\+\+|--|=0\?)$")


class LcmError(ValueError):
    pass


@dataclass(frozen=True)
class Op:
    counter: int  # 0-based index into Lcm.counters
    kind: str

    def __post_init__(self):
        if self.kind not in (INC, DEC, ZERO):
            raise LcmError(f"unknown op kind {self.kind!r}")


LcmTransition = tuple[str, Op, str]


@dataclass(frozen=True)
class Lcm:
    locations: tuple[str, ...]
    counters: tuple[str, ...]
    transitions: tuple[LcmTransition, ...]

    def __post_init__(self):
        object.__setattr__(self, "locations", tuple(self.locations))
        object.__setattr__(self, "counters", tuple(self.counters))
        object.__setattr__(self, "transitions", tuple(dict.fromkeys(self.transitions)))
        names = self.locations + self.counters
        if len(set(names)) != len(names):
            raise LcmError("location and counter names must be distinct")
        if any(not n or any(ch.isspace() for ch in n) for n in names):
            raise LcmError("names must be nonempty and whitespace-free")
        locs = set(self.locations)
        for src, op, dst in self.transitions:
            if src not in locs or dst not in locs:
                raise LcmError(f"undeclared location in transition {src} -> {dst}")
            if not 0 <= op.counter < len(self.counters):
                raise LcmError(f"op on undeclared counter index {op.counter}")

    @property
    def alphabet(self) -> tuple[str, ...]:
        """Tokens of run encodings: locations, then counter symbols."""
        return self.locations + self.counters

    def op_text(self, op: Op) -> str:
        return f"{self.counters[op.counter]}{op.kind}"


@dataclass(frozen=True, order=True)
class LcmConfig:
    location: str
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if any(v < 0 for v in self.values):
            raise LcmError("counter values must be nonnegative")


# --- text format ------------------------------------------------------------

def parse_lcm(text: str) -> Lcm:
    """``locations:``, ``counters:``, and ``trans: src z1++ dst`` lines."""
    locations = counters = None
    raw_trans = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected '<field>: ...', got {line!r}", lineno)
        values = rest.split()
        key = key.strip()
        if key == "locations":
            if locations is not None:
                raise ParseError("duplicate 'locations' declaration", lineno)
            locations = values
        elif key == "counters":
            if counters is not None:
                raise ParseError("duplicate 'counters' declaration", lineno)
            counters = values
        elif key == "trans":
            if len(values) != 3:
                raise ParseError("trans needs: source op target", lineno)
            raw_trans.append((lineno, values))
        else:
            raise ParseError(f"unknown field {key!r}", lineno)
    if locations is None:
        raise ParseError("missing 'locations' declaration")
    counters = counters or []
    index = {name: i for i, name in enumerate(counters)}
    transitions = []
    for lineno, (src, op_text, dst) in raw_trans:
        match = _OP_RE.match(op_text)
        if not match:
            raise ParseError(f"bad op {op_text!r}", lineno)
        name, kind = match.groups()
        if name not in index:
            raise ParseError(f"undeclared counter {name!r}", lineno)
        for loc in (src, dst):
            if loc not in locations:
                raise ParseError(f"undeclared location {loc!r}", lineno)
        transitions.append((src, Op(index[name], kind), dst))
    try:
        return Lcm(tuple(locations), tuple(counters), tuple(transitions))
    except LcmError as exc:
        raise ParseError(str(exc)) from None


def serialize_lcm(lcm: Lcm) -> str:
    lines = [f"locations: {' '.join(lcm.locations)}", f"counters: {' '.join(lcm.counters)}".rstrip()]
    lines += [f"trans: {src} {lcm.op_text(op)} {dst}" for src, op, dst in lcm.transitions]
    return "\n".join(lines) + "\n"


# --- semantics --------------------------------------------------------------

def op_allows(op: Op, before: Sequence[int], after: Sequence[int]) -> bool:
    """Whether ``before -> after`` is a lossy step under ``op``."""
    k = op.counter
    for j, (a, b) in enumerate(zip(before, after)):
        if j == k:
            continue
        if b > a:
            return False
    a, b = before[k], after[k]
    if op.kind == INC:
        return b <= a + 1
    if op.kind == DEC:
        return b <= a - 1
    return a == 0 and b == 0


def lcm_step(lcm: Lcm, config: LcmConfig) -> set[LcmConfig]:
    out = set()
    for src, op, dst in lcm.transitions:
        if src != config.location:
            continue
        upper = list(config.values)
        k = op.counter
        if op.kind == INC:
            upper[k] += 1
        elif op.kind == DEC:
            if upper[k] < 1:
                continue
            upper[k] -= 1
        elif upper[k] != 0:
            continue
        for vec in itertools.product(*(range(u + 1) for u in upper)):
            out.add(LcmConfig(dst, vec))
    return out


@dataclass(frozen=True)
class ReachResult:
    configs: frozenset[LcmConfig]
    saturated: bool

    def to_dict(self) -> dict:
        return {
            "configs": [[c.location, list(c.values)] for c in sorted(self.configs)],
            "saturated": self.saturated,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ReachResult:
        return cls(frozenset(LcmConfig(loc, tuple(v)) for loc, v in data["configs"]), data["saturated"])


def lcm_reach(lcm: Lcm, init: LcmConfig, cap: int) -> ReachResult:
    """Breadth-first reachability with every counter held to ``<= cap``.

    ``saturated`` is set when some successor had to be dropped for exceeding
    the cap, meaning the true reachability set may be larger.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    seen = {init}
    queue = deque([init])
    saturated = False
    while queue:
        conf = queue.popleft()
        for nxt in lcm_step(lcm, conf):
            if max(nxt.values, default=0) > cap:
                saturated = True
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return ReachResult(frozenset(seen), saturated)


# --- run encodings ----------------------------------------------------------

@dataclass(frozen=True)
class RunEncoding:
    tokens: tuple[str, ...]

    @property
    def reverse(self) -> tuple[str, ...]:
        return self.tokens[::-1]

    def __str__(self) -> str:
        return " ".join(self.tokens)


def _counter_names(lcm: Lcm | None, width: int) -> tuple[str, ...]:
    if lcm is not None:
        return lcm.counters
    return tuple(f"z{i + 1}" for i in range(width))


def encode_config(config: LcmConfig, counters: Sequence[str]) -> list[str]:
    out = [config.location]
    for name, value in zip(counters, config.values):
        out += [name] * value
    return out


def encode_run(run: Sequence[LcmConfig], lcm: Lcm | None = None) -> RunEncoding:
    """Concatenate ``l . z1^a1 ... zn^an`` blocks; validates steps when ``lcm`` is given."""
    if not run:
        raise LcmError("a run has at least one configuration")
    if lcm is not None:
        for prev, nxt in zip(run, run[1:]):
            if not any(
                src == prev.location and dst == nxt.location and op_allows(op, prev.values, nxt.values)
                for src, op, dst in lcm.transitions
            ):
                raise LcmError(f"{nxt} is not a successor of {prev}")
    names = _counter_names(lcm, len(run[0].values))
    tokens = [tok for conf in run for tok in encode_config(conf, names)]
    return RunEncoding(tuple(tokens))


def decode_reversed(lcm: Lcm, word: Iterable[str]) -> list[LcmConfig] | None:
    """Parse a reversed encoding back into a run, or ``None`` if the block shape is wrong."""
    index = {name: i for i, name in enumerate(lcm.counters)}
    locs = set(lcm.locations)
    blocks: list[LcmConfig] = []
    values = [0] * len(lcm.counters)
    allowed = len(lcm.counters)
    for tok in word:
        if tok in index:
            i = index[tok]
            if i >= allowed + 1:
                return None
            allowed = i
            values[i] += 1
        elif tok in locs:
            blocks.append(LcmConfig(tok, tuple(values)))
            values = [0] * len(lcm.counters)
            allowed = len(lcm.counters)
        else:
            return None
    if not blocks or any(values):
        return None
    return blocks[::-1]


def is_legal_reversed_run(lcm: Lcm, start: str, word: Iterable[str]) -> bool:
    """Reference check: ``word`` reverses a run of ``lcm`` from ``<start, 0..0>``."""
    run = decode_reversed(lcm, word)
    if run is None:
        return False
    if run[0] != LcmConfig(start, (0,) * len(lcm.counters)):
        return False
    return all(
        any(src == a.location and dst == b.location and op_allows(op, a.values, b.values)
            for src, op, dst in lcm.transitions)
        for a, b in zip(run, run[1:])
    )


# --- 0-finite-reach reduction -----------------------------------------------

def zero_fr_reduction(lcm: Lcm, init: LcmConfig) -> tuple[Lcm, str]:
    """Prefix ``lcm`` with a chain of increments that builds ``init``'s vector from zero.

    Returns the new machine and the location to start from with all counters 0.
    """
    if not any(init.values):
        return lcm, init.location
    incs = [i for i, v in enumerate(init.values) for _ in range(v)]
    taken = set(lcm.alphabet)
    fresh = []
    n = 0
    while len(fresh) < len(incs):
        name = f"{init.location}_pre{n}"
        n += 1
        if name not in taken:
            fresh.append(name)
            taken.add(name)
    chain = fresh + [init.location]
    extra = tuple((chain[i], Op(c, INC), chain[i + 1]) for i, c in enumerate(incs))
    new = Lcm(lcm.locations + tuple(fresh), lcm.counters, lcm.transitions + extra)
    return new, fresh[0]
