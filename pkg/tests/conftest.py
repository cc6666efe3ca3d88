import random
import time

import pytest
from hypothesis import strategies as st

from ocnkit.core import Ocn

SIGMA = "σ"


def random_ocn(rng: random.Random, n_states: int, alphabet=(SIGMA,), effects=(-3, 3),
               density=0.5, accepting_p=0.5) -> Ocn:
    """Each (src, sym, dst) edge is present with probability ``density``."""
    states = tuple(f"s{i}" for i in range(n_states))
    trans = [
        (src, sym, rng.randint(*effects), dst)
        for src in states for sym in alphabet for dst in states
        if rng.random() < density
    ]
    accepting = {q for q in states if rng.random() < accepting_p}
    return Ocn(alphabet, states, {states[0]}, tuple(trans), accepting)


def loop_ocn(effect: int = -1) -> Ocn:
    return Ocn((SIGMA,), ("s",), {"s"}, (("s", SIGMA, effect, "s"),), {"s"})


def three_state_ocn() -> Ocn:
    """s0 -σ,-2-> f, s0 -σ,0-> m -σ,0-> f: MCR (1, 2), (2, 0) is not increasing."""
    return Ocn(
        (SIGMA,), ("s0", "m", "f"), {"s0"},
        (("s0", SIGMA, -2, "f"), ("s0", SIGMA, 0, "m"), ("m", SIGMA, 0, "f")),
        {"f"},
    )


@st.composite
def ocns(draw, alphabet=(SIGMA,), max_states=4, effects=(-3, 3)):
    n = draw(st.integers(1, max_states))
    states = tuple(f"s{i}" for i in range(n))
    edge = st.tuples(st.sampled_from(states), st.sampled_from(alphabet),
                     st.integers(*effects), st.sampled_from(states))
    trans = draw(st.lists(edge, max_size=3 * n * len(alphabet)))
    initials = draw(st.sets(st.sampled_from(states), min_size=1))
    accepting = draw(st.sets(st.sampled_from(states)))
    return Ocn(alphabet, states, initials, tuple(trans), accepting)


def naive_accepts(ocn: Ocn, word, c: int) -> bool:
    """Depth-first enumeration of individual runs; independent of the library's search."""
    def run(state, counter, i):
        if counter < 0:
            return False
        if i == len(word):
            return state in ocn.accepting
        return any(
            run(dst, counter + eff, i + 1)
            for src, sym, eff, dst in ocn.transitions
            if src == state and sym == word[i]
        )
    return any(run(q, c, 0) for q in ocn.initials)


# --- acceptance reporting ---------------------------------------------------

_RESULTS: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _RESULTS[number] = (title, "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, verdict, duration = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}  ({duration:.2f}s)")


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
