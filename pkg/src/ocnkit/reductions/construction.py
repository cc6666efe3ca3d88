"""OCNs that recognise non-runs of a lossy counter machine, and the DFA of its runs.

All encodings here are *reversed*: a run c0 -> c1 -> ... -> cr is read as the
blocks of cr, ..., c0, each block being ``zn* ... z1* loc``. Reading in
reverse lets a one-counter net detect that a counter grew illegally between
two consecutive configurations: it counts up on the later block and down on
the earlier one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..core import Ocn
from .lcm import DEC, INC, ZERO, Lcm, LcmTransition, op_allows

SCENARIOS = ("inc", "dec", "other", "zerotest")

# Effect of the edge that reads the later block's location: the later value
# b and earlier value a violate lossiness iff b + nu - a >= 0.
_NU = {"inc": -2, "dec": 0, "other": -1}


class ReductionError(ValueError):
    pass


@dataclass
class _Builder:
    """Accumulates states and transitions; converted to an immutable Ocn at the end."""

    alphabet: tuple[str, ...]
    states: list[str] = field(default_factory=list)
    transitions: list[tuple[str, str, int, str]] = field(default_factory=list)
    initials: set[str] = field(default_factory=set)
    accepting: set[str] = field(default_factory=set)

    def state(self, name: str) -> str:
        if name not in self.states:
            self.states.append(name)
        return name

    def add(self, src: str, sym: str, eff: int, dst: str) -> None:
        self.transitions.append((src, sym, eff, dst))

    def build(self) -> Ocn:
        return Ocn(tuple(self.alphabet), tuple(self.states), frozenset(self.initials),
                   tuple(self.transitions), frozenset(self.accepting))


def _resolve(lcm: Lcm, transition: int | LcmTransition) -> LcmTransition:
    if isinstance(transition, int):
        return lcm.transitions[transition]
    if transition not in lcm.transitions:
        raise ReductionError(f"{transition} is not a transition of the machine")
    return transition


def scenario_for(transition: LcmTransition, counter: int) -> str:
    op = transition[1]
    if op.counter != counter:
        return "other"
    return {INC: "inc", DEC: "dec", ZERO: "zerotest"}[op.kind]


def violation_gadget(
    lcm: Lcm,
    transition: int | LcmTransition,
    counter: int,
    scenario: str | None = None,
    prefix: str = "",
) -> Ocn:
    """Accepts (from counter 0) reversed block pairs violating ``transition`` on ``counter``.

    The later block belongs to the transition's target, the earlier one to its
    source. ``scenario`` is derived from the op when omitted and must agree
    with it when given.
    """
    src, op, dst = _resolve(lcm, transition)
    expected = scenario_for((src, op, dst), counter)
    if scenario is None:
        scenario = expected
    if scenario not in SCENARIOS:
        raise ReductionError(f"unknown scenario {scenario!r}")
    if scenario != expected:
        raise ReductionError(f"scenario {scenario!r} does not match op {lcm.op_text(op)} on counter {counter}")

    zi = lcm.counters[counter]
    others = [z for z in lcm.counters if z != zi]
    b = _Builder(lcm.alphabet)
    q0, q2 = b.state(f"{prefix}q0"), None
    b.initials.add(q0)

    if scenario != "zerotest":
        q1 = b.state(f"{prefix}q1")
        q2 = b.state(f"{prefix}q2")
        for z in others:
            b.add(q0, z, 0, q0)
        b.add(q0, zi, 1, q0)
        b.add(q0, dst, _NU[scenario], q1)
        for z in others:
            b.add(q1, z, 0, q1)
        b.add(q1, zi, -1, q1)
        b.add(q1, src, 0, q2)
    else:
        # Either block has the tested counter >= 1; one branch per block.
        a0, a1 = b.state(f"{prefix}a0"), b.state(f"{prefix}a1")
        e0, e1 = b.state(f"{prefix}b0"), b.state(f"{prefix}b1")
        q2 = b.state(f"{prefix}q2")
        for z in lcm.counters:
            w = 1 if z == zi else 0
            b.add(q0, z, w, a0)
            b.add(a0, z, w, a0)
            b.add(a1, z, 0, a1)
        b.add(a0, dst, -1, a1)
        b.add(a1, src, 0, q2)
        for z in lcm.counters:
            b.add(q0, z, 0, e0)
            b.add(e0, z, 0, e0)
            b.add(e1, z, 1 if z == zi else 0, e1)
        b.add(q0, dst, 0, e1)
        b.add(e0, dst, 0, e1)
        b.add(e1, src, -1, q2)

    for sym in lcm.alphabet:
        b.add(q2, sym, 0, q2)
    b.accepting.add(q2)
    return b.build()


def initial_config_gadget(lcm: Lcm, start: str, prefix: str = "") -> Ocn:
    """Accepts a final block ``... start`` whose counters are not all zero."""
    if start not in lcm.locations:
        raise ReductionError(f"undeclared location {start!r}")
    b = _Builder(lcm.alphabet)
    q0, q1 = b.state(f"{prefix}q0"), b.state(f"{prefix}q1")
    b.initials.add(q0)
    for z in lcm.counters:
        b.add(q0, z, 1, q0)
    b.add(q0, start, -1, q1)
    b.accepting.add(q1)
    return b.build()


def flow_violation_ocn(lcm: Lcm, start: str, prefix: str = "flow") -> Ocn:
    """Zero-effect DFA for the complement of well-formed reversed encodings.

    Well-formed: a nonempty sequence of ``zn* ... z1* loc`` blocks, the last
    location is ``start``, and each location read is the source of some
    transition into the location of the block read just before it.
    """
    if start not in lcm.locations:
        raise ReductionError(f"undeclared location {start!r}")
    n = len(lcm.counters)
    fresh = n + 1
    preds = {(s, d) for s, _, d in lcm.transitions}
    b = _Builder(lcm.alphabet)

    def name(prev: str | None, allowed: int) -> str:
        return b.state(f"{prefix}[{'^' if prev is None else prev}|{allowed}]")

    dead = b.state(f"{prefix}[dead]")
    init = name(None, fresh)
    b.initials.add(init)
    for prev in (None,) + lcm.locations:
        for allowed in range(1, fresh + 1):
            here = name(prev, allowed)
            for i, z in enumerate(lcm.counters, start=1):
                b.add(here, z, 0, name(prev, i) if i <= allowed else dead)
            for loc in lcm.locations:
                ok = prev is None or (loc, prev) in preds
                b.add(here, loc, 0, name(loc, fresh) if ok else dead)
            if (prev, allowed) != (start, fresh):
                b.accepting.add(here)
    for sym in lcm.alphabet:
        b.add(dead, sym, 0, dead)
    b.accepting.add(dead)
    return b.build()


def _check_single_edges(lcm: Lcm) -> None:
    seen = set()
    for src, _, dst in lcm.transitions:
        if (src, dst) in seen:
            raise ReductionError(
                f"several transitions {src} -> {dst}; violations would be checked "
                "against each op separately, which is unsound"
            )
        seen.add((src, dst))


def _location_state(loc: str) -> str:
    return f"at[{loc}]"


def _embed(b: _Builder, gadget: Ocn, entry: str) -> None:
    """Add ``gadget`` and copy its initial-state edges so they leave ``entry``."""
    for q in gadget.states:
        b.state(q)
    for t in gadget.transitions:
        b.add(*t)
        if t[0] in gadget.initials:
            b.add(entry, t[1], t[2], t[3])
    b.accepting |= gadget.accepting


def lcm_to_ocn(lcm: Lcm, start: str) -> Ocn:
    """OCN whose language from counter 0 is every word that is not a reversed run from ``<start, 0>``.

    Requires at most one transition per ordered pair of locations.
    """
    if start not in lcm.locations:
        raise ReductionError(f"undeclared location {start!r}")
    _check_single_edges(lcm)
    b = _Builder(lcm.alphabet)
    for loc in lcm.locations:
        here = b.state(_location_state(loc))
        b.initials.add(here)
        for z in lcm.counters:
            b.add(here, z, 0, here)
    for idx, (src, op, dst) in enumerate(lcm.transitions):
        b.add(_location_state(dst), dst, 0, _location_state(src))
        for i in range(len(lcm.counters)):
            gadget = violation_gadget(lcm, idx, i, prefix=f"v{idx}.{i}.")
            _embed(b, gadget, _location_state(dst))
    _embed(b, initial_config_gadget(lcm, start, prefix="init."), _location_state(start))
    flow = flow_violation_ocn(lcm, start)
    for q in flow.states:
        b.state(q)
    for t in flow.transitions:
        b.add(*t)
    b.initials |= flow.initials
    b.accepting |= flow.accepting
    return b.build()


def finite_reach_dfa(lcm: Lcm, start: str, bound: int) -> Ocn:
    """Zero-effect DOCN accepting reversed runs from ``<start, 0>`` with counters ``<= bound``.

    States are ``<loc, a, b>``: ``a`` holds the configuration just completed,
    ``b`` accumulates the block being read. ``loc`` and ``a`` are ``_`` before
    the first location token.
    """
    if start not in lcm.locations:
        raise ReductionError(f"undeclared location {start!r}")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    n = len(lcm.counters)
    zero = (0,) * n

    def name(state) -> str:
        loc, a, acc = state
        a_txt = "_" if a is None else ".".join(map(str, a))
        return f"<{'_' if loc is None else loc},{a_txt},{'.'.join(map(str, acc))}>"

    def steps(state):
        loc, a, acc = state
        for j, z in enumerate(lcm.counters):
            if acc[j] < bound and not any(acc[:j]):
                grown = list(acc)
                grown[j] += 1
                yield z, (loc, a, tuple(grown))
        for prev in lcm.locations:
            if loc is None or any(
                s == prev and d == loc and op_allows(op, acc, a) for s, op, d in lcm.transitions
            ):
                yield prev, (prev, acc, zero)

    b = _Builder(lcm.alphabet)
    init = (None, None, zero)
    b.initials.add(b.state(name(init)))
    seen = {init}
    queue = deque([init])
    while queue:
        state = queue.popleft()
        for sym, nxt in steps(state):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
            b.add(b.state(name(state)), sym, 0, b.state(name(nxt)))
    final = (start, zero, zero)
    if final in seen:
        b.accepting.add(name(final))
    return b.build()

