"""The separating gadgets A, B, C and the hardness wrappers built around an arbitrary OCN."""

from __future__ import annotations

from ..core import Ocn

_GADGETS = {
    # Exists-det but not 0-det: from counter 5 the q5 branch accepts every #-word.
    "A": dict(
        alphabet=("a", "b", "c", "#"),
        states=("q0", "q'", "q''", "q5"),
        transitions=(
            ("q0", "#", -5, "q5"), ("q0", "#", 0, "q'"), ("q0", "#", 0, "q''"),
            ("q'", "a", 1, "q'"), ("q'", "b", 0, "q'"), ("q'", "c", -1, "q'"),
            ("q''", "a", 0, "q''"), ("q''", "b", 1, "q''"), ("q''", "c", -1, "q''"),
            ("q5", "a", 0, "q5"), ("q5", "b", 0, "q5"), ("q5", "c", 0, "q5"),
        ),
        accepting=("q'", "q''", "q5"),
    ),
    # 0-det (empty at counter 0) but not forall-det.
    "B": dict(
        alphabet=("a", "b", "c", "#"),
        states=("q0", "q'", "q''"),
        transitions=(
            ("q0", "#", -1, "q'"), ("q0", "#", -1, "q''"),
            ("q'", "a", 1, "q'"), ("q'", "b", 0, "q'"), ("q'", "c", -1, "q'"),
            ("q''", "a", 0, "q''"), ("q''", "b", 1, "q''"), ("q''", "c", -1, "q''"),
        ),
        accepting=("q'", "q''"),
    ),
    # Forall-det but not uniform-det.
    "C": dict(
        alphabet=("a", "b", "#"),
        states=("q0", "q1", "q2"),
        transitions=(
            ("q0", "#", 0, "q1"), ("q0", "#", -1, "q2"),
            ("q1", "a", 1, "q1"), ("q1", "b", -1, "q1"),
            ("q2", "a", 0, "q2"), ("q2", "b", 0, "q2"),
        ),
        accepting=("q1", "q2"),
    ),
}

GADGET_NAMES = tuple(_GADGETS)


def gadget(name: str) -> Ocn:
    try:
        spec = _GADGETS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown gadget {name!r}; expected one of {', '.join(GADGET_NAMES)}") from None
    return Ocn(
        alphabet=spec["alphabet"],
        states=spec["states"],
        initials=frozenset({"q0"}),
        transitions=spec["transitions"],
        accepting=frozenset(spec["accepting"]),
    )


def gadget_c_zero_docn() -> Ocn:
    """The DOCN agreeing with gadget C at counter 0."""
    return Ocn(
        alphabet=("a", "b", "#"),
        states=("q0", "q1"),
        initials=frozenset({"q0"}),
        transitions=(("q0", "#", 0, "q1"), ("q1", "a", 1, "q1"), ("q1", "b", -1, "q1")),
        accepting=frozenset({"q1"}),
    )


def _fresh(taken: set[str], base: str) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _require_free(a: Ocn, symbols: tuple[str, ...]) -> None:
    clash = [s for s in symbols if s in a.alphabet]
    if clash:
        raise ValueError(f"reserved symbol(s) {', '.join(clash)} already in the alphabet")


def wrap_forall(a: Ocn) -> Ocn:
    """B with L(B,0) = #L(a,0) and L(B,k) = #Σ'* for k >= 1.

    ``a`` is 0-det iff B is forall-det.
    """
    _require_free(a, ("#",))
    alphabet = a.alphabet + ("#",)
    taken = set(a.states)
    q0, q_all = _fresh(taken, "q0"), _fresh(taken, "q_All")
    trans = list(a.transitions)
    trans.append((q0, "#", -1, q_all))
    trans += [(q0, "#", 0, s) for s in sorted(a.initials, key=a.states.index)]
    trans += [(q_all, sym, 0, q_all) for sym in alphabet]
    return Ocn(alphabet, (q0,) + a.states + (q_all,), frozenset({q0}), tuple(trans),
               a.accepting | {q_all})


def wrap_uniform_lb(a: Ocn) -> Ocn:
    """B that is uniform-det iff ``a`` is universal from counter 0.

    Words must start with ``#``. The copy of ``a`` may leave for the
    accepting sink q_All on ``$`` (and on a later ``#``) at no cost; the
    direct ``#`` edge into q_All costs 1.
    """
    _require_free(a, ("#", "$"))
    alphabet = a.alphabet + ("#", "$")
    taken = set(a.states)
    q0, q_all = _fresh(taken, "q0"), _fresh(taken, "q_All")
    trans = list(a.transitions)
    trans.append((q0, "#", -1, q_all))
    trans += [(q0, "#", 0, s) for s in sorted(a.initials, key=a.states.index)]
    for s in a.states:
        trans.append((s, "$", 0, q_all))
        trans.append((s, "#", 0, q_all))
    trans += [(q_all, sym, 0, q_all) for sym in alphabet]
    return Ocn(alphabet, (q0,) + a.states + (q_all,), frozenset({q0}), tuple(trans),
               a.accepting | {q_all})
