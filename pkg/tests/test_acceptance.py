"""Acceptance criteria 1-9; each test prints a PASS/FAIL line in the terminal summary."""

import itertools
import random
import re

import pytest

from ocnkit.core import Ocn, accepts, bounded_equiv, is_deterministic, reachable_configurations, words_up_to
from ocnkit.determinizer import (
    NotUniformDet,
    UniformDet,
    complete_f,
    decide_uniform_det,
    synthesize_docn,
    unary_language_dfa,
)
from ocnkit.reductions import (
    LcmConfig,
    decode_reversed,
    encode_run,
    finite_reach_dfa,
    gadget,
    gadget_c_zero_docn,
    is_legal_reversed_run,
    lcm_reach,
    lcm_step,
    lcm_to_ocn,
    parse_lcm,
    wrap_forall,
    wrap_uniform_lb,
)
from ocnkit.semilinear import (
    LinearSet2,
    SemilinearSet2,
    UnarySemilinear,
    normalize_common_period,
    to_ultimately_periodic,
    unary_semilinear_to_regex,
)
from ocnkit.unary import is_increasing, mcr, mcr_brute, mcr_prefix

from conftest import SIGMA, Stopwatch, naive_accepts, random_ocn, three_state_ocn

ONE = parse_lcm("locations: l0\ncounters: z1\ntrans: l0 z1++ l0\n")
TWO = parse_lcm("""\
locations: l0 l1 l2
counters: z1 z2
trans: l0 z1++ l1
trans: l1 z2++ l0
trans: l1 z1-- l2
trans: l2 z1=0? l0
trans: l2 z2-- l2
""")


def unary_ocns(seed: int, count: int, max_states: int = 5):
    rng = random.Random(seed)
    return [random_ocn(rng, rng.randint(1, max_states)) for _ in range(count)]


def run_effect(docn: Ocn, n: int) -> int:
    state, total = next(iter(docn.initials)), 0
    for _ in range(n):
        ((eff, state),) = docn.successors(state, SIGMA)
        total += eff
    return total


@pytest.mark.criterion(1, "gamma-split golden test")
def test_gamma_split_golden():
    with Stopwatch() as sw:
        s = SemilinearSet2((LinearSet2((1, 0), ((4, 8),)), LinearSet2((2, 1), ((6, 12),))))
        norm = normalize_common_period(s)
        up = to_ultimately_periodic(norm)
    assert {c.period for c in norm.components} == {(12, 24)}
    assert {c.base for c in norm.components} == {(1, 0), (5, 8), (9, 16), (2, 1), (8, 13)}
    assert len(norm.components) == 5
    assert (up.N, up.k, up.d) == (9, 12, 24)
    assert sw.elapsed < 1


@pytest.mark.criterion(2, "MCR oracle equivalence")
def test_mcr_matches_brute_force():
    with Stopwatch() as sw:
        for ocn in unary_ocns(seed=2, count=200):
            assert mcr_prefix(ocn, 40) == mcr_brute(ocn, 40), ocn
    assert sw.elapsed < 10


def non_increasing_instances(seed: int, count: int):
    """s0 -σ,-a-> f beside a zero-effect chain of L letters to f, plus noise away from s0."""
    rng = random.Random(seed)
    out = [three_state_ocn()]
    while len(out) < count:
        a, length = rng.randint(1, 3), rng.randint(2, 5)
        chain = [f"m{i}" for i in range(1, length)]
        noise = [f"x{i}" for i in range(rng.randint(0, 2))]
        states = ("s0", *chain, "f", *noise)
        path = ["s0", *chain, "f"]
        trans = [("s0", SIGMA, -a, "f")]
        trans += [(u, SIGMA, 0, v) for u, v in zip(path, path[1:])]
        for src in ("f", *noise):
            for dst in ("f", *noise):
                if rng.random() < 0.4:
                    trans.append((src, SIGMA, rng.randint(-3, 3), dst))
        accepting = {"f"} | {q for q in noise if rng.random() < 0.5}
        out.append(Ocn((SIGMA,), states, {"s0"}, tuple(trans), accepting))
    return out


@pytest.mark.criterion(3, "Uniform-Det round trip")
def test_uniform_det_round_trip():
    with Stopwatch() as sw:
        positives = []
        for ocn in unary_ocns(seed=3, count=400):
            verdict = decide_uniform_det(ocn)
            if isinstance(verdict, UniformDet):
                positives.append((ocn, verdict.docn))
            if len(positives) == 50:
                break
        assert len(positives) == 50
        for ocn, docn in positives:
            assert bounded_equiv(ocn, docn, max_counter=25, max_len=100), ocn

        negatives = non_increasing_instances(seed=33, count=20)
        for i, ocn in enumerate(negatives):
            verdict = decide_uniform_det(ocn)
            assert isinstance(verdict, NotUniformDet), ocn
            (n1, c1), (n2, c2) = verdict.witness
            assert n1 < n2 and c1 > c2
            assert accepts(ocn, (SIGMA,) * n2, c2)
            assert not accepts(ocn, (SIGMA,) * n1, c2)
            if i == 0:
                assert verdict.witness == ((1, 2), (2, 0))
    assert sw.elapsed < 30


@pytest.mark.criterion(4, "DOCN weight contract")
def test_synthesized_docn_contract():
    checked = 0
    with Stopwatch() as sw:
        for ocn in unary_ocns(seed=4, count=150):
            m = mcr(ocn, 64, 16)
            if m.tail is None or not is_increasing(m):
                continue
            docn = synthesize_docn(m)
            f = complete_f(m)
            assert is_deterministic(docn)
            assert all(eff <= 0 for _, _, eff, _ in docn.transitions)
            assert all(run_effect(docn, n) == -f(n) for n in range(101))
            checked += 1
    assert checked >= 50
    assert sw.elapsed < 5


@pytest.mark.criterion(5, "gadget identities")
def test_gadget_identities():
    with Stopwatch() as sw:
        c, d = gadget("C"), gadget_c_zero_docn()
        for w in words_up_to(c.alphabet, 8):
            assert accepts(c, w, 0) == accepts(d, w, 0), w
            expected = len(w) > 0 and w[0] == "#" and "#" not in w[1:]
            assert accepts(c, w, 1) == expected, w
            assert accepts(c, w, 2) == expected, w
        b = gadget("B")
        assert not any(accepts(b, w, 0) for w in words_up_to(b.alphabet, 6))
    assert sw.elapsed < 10


def legal_runs(lcm, start: str, max_tokens: int, cap: int):
    """Every run from <start, 0..0> inside lcm_reach's cap whose encoding fits the budget."""
    init = LcmConfig(start, (0,) * len(lcm.counters))
    reach = lcm_reach(lcm, init, cap).configs
    size = lambda conf: 1 + sum(conf.values)
    runs, frontier = [], [[init]]
    while frontier:
        run = frontier.pop()
        runs.append(run)
        used = sum(size(conf) for conf in run)
        for nxt in lcm_step(lcm, run[-1]):
            if nxt in reach and used + size(nxt) <= max_tokens:
                frontier.append(run + [nxt])
    return runs


def mutations(word: tuple, alphabet, rng: random.Random):
    w = list(word)
    i = rng.randrange(len(w) + 1)
    kind = rng.choice(("insert", "delete", "replace", "swap"))
    if kind == "insert":
        w.insert(i, rng.choice(alphabet))
    elif kind == "delete" and w:
        del w[min(i, len(w) - 1)]
    elif kind == "replace" and w:
        w[min(i, len(w) - 1)] = rng.choice(alphabet)
    elif len(w) > 1:
        j = min(i, len(w) - 2)
        w[j], w[j + 1] = w[j + 1], w[j]
    return tuple(w)


def well_formed_words(lcm, start: str, max_tokens: int, bound: int):
    """Reversed encodings of Δ-consistent location sequences ending at ``start``, values <= bound."""
    vectors = list(itertools.product(range(bound + 1), repeat=len(lcm.counters)))
    succ = {}
    for src, _, dst in lcm.transitions:
        succ.setdefault(src, set()).add(dst)
    out, frontier = [], [[LcmConfig(start, v)] for v in vectors if 1 + sum(v) <= max_tokens]
    while frontier:
        run = frontier.pop()
        out.append(encode_run(run).reverse)
        used = sum(1 + sum(c.values) for c in run)
        for dst in sorted(succ.get(run[-1].location, ())):
            for v in vectors:
                if used + 1 + sum(v) <= max_tokens:
                    frontier.append(run + [LcmConfig(dst, v)])
    return out


@pytest.mark.criterion(6, "LCM reduction cross-check")
def test_lcm_reduction_cross_check():
    rng = random.Random(6)
    with Stopwatch() as sw:
        for lcm, wf_tokens in ((ONE, 10), (TWO, 8)):
            ocn = lcm_to_ocn(lcm, "l0")
            legal = [encode_run(run, lcm).reverse for run in legal_runs(lcm, "l0", 12, 3)]
            assert len(legal) > 10
            for w in legal:
                assert is_legal_reversed_run(lcm, "l0", w)
                assert not accepts(ocn, w, 0), w

            mutants = set()
            for _ in range(1500):
                m = mutations(rng.choice(legal), lcm.alphabet, rng)
                if not is_legal_reversed_run(lcm, "l0", m):
                    mutants.add(m)
            assert len(mutants) >= 50
            for m in mutants:
                assert accepts(ocn, m, 0), m

            dfa = finite_reach_dfa(lcm, "l0", 3)
            words = well_formed_words(lcm, "l0", wf_tokens, 3)
            assert len(words) > 50
            for w in words:
                assert decode_reversed(lcm, w) is not None
                assert accepts(dfa, w, 0) == (not accepts(ocn, w, 0)), w
    assert sw.elapsed < 30


UNIVERSAL = Ocn(("a", "b"), ("s",), {"s"}, (("s", "a", 0, "s"), ("s", "b", 0, "s")), {"s"})
DYCK = Ocn(("a", "b"), ("s",), {"s"}, (("s", "a", -1, "s"), ("s", "b", 1, "s")), {"s"})
LAST_B = Ocn(("a", "b"), ("x", "y"), {"x"},
             (("x", "a", 0, "x"), ("x", "b", 0, "y"), ("y", "a", 0, "x"), ("y", "b", 0, "y")), {"y"})


@pytest.mark.criterion(7, "wrapper identities")
def test_wrapper_identities():
    with Stopwatch() as sw:
        for a in (UNIVERSAL, LAST_B, DYCK):
            b = wrap_forall(a)
            for w in words_up_to(b.alphabet, 5):
                starts = len(w) > 0 and w[0] == "#"
                in_a = starts and set(w[1:]) <= set(a.alphabet) and accepts(a, w[1:], 0)
                assert accepts(b, w, 0) == in_a, w
                assert accepts(b, w, 1) == starts, w

        for a in (UNIVERSAL, LAST_B, DYCK):
            b = wrap_uniform_lb(a)
            for w in words_up_to(b.alphabet, 5):
                if not w or w[0] != "#":
                    assert not accepts(b, w, 0) and not accepts(b, w, 1), w
                    continue
                assert accepts(b, w, 1), w
                if a is UNIVERSAL:
                    assert accepts(b, w, 0), w
                if "$" in w:
                    cut = w.index("$")
                    body = w[1:cut]
                    if set(body) <= set(a.alphabet) and reachable_configurations(a, body, 0):
                        assert accepts(b, w, 0), w
    assert sw.elapsed < 10


@pytest.mark.criterion(8, "unary regularization")
def test_regularization():
    with Stopwatch() as sw:
        for ocn in unary_ocns(seed=8, count=50):
            for c in range(11):
                lang = unary_language_dfa(ocn, c)
                configs = {(q, c) for q in ocn.initials}
                for n in range(201):
                    direct = any(q in ocn.accepting for q, _ in configs)
                    assert (n in lang) == direct, (ocn, c, n)
                    if n <= 16 and n % 4 == 0:
                        assert direct == accepts(ocn, (SIGMA,) * n, c)
                    configs = {(dst, x + eff) for q, x in configs
                               for eff, dst in ocn.successors(q, SIGMA) if x + eff >= 0}
                    # Monotonicity lets the per-state maximum stand in for the whole set.
                    best = {}
                    for q, x in configs:
                        best[q] = max(best.get(q, x), x)
                    configs = set(best.items())

        rng = random.Random(88)
        for _ in range(200):
            comps = tuple((rng.randint(0, 12), rng.choice((0, 0, 1, 2, 3, 5, 7)))
                          for _ in range(rng.randint(0, 4)))
            s = UnarySemilinear(comps)
            pattern = re.compile(unary_semilinear_to_regex(s))
            for n in range(101):
                arith = any(n == c if p == 0 else (n >= c and (n - c) % p == 0) for c, p in comps)
                assert bool(pattern.fullmatch(SIGMA * n)) == arith, (comps, n)
    assert sw.elapsed < 10


@pytest.mark.criterion(9, "monotonicity")
def test_monotonicity():
    rng = random.Random(9)
    alphabet = ("a", "b", "c")
    with Stopwatch() as sw:
        for _ in range(500):
            ocn = random_ocn(rng, rng.randint(1, 5), alphabet=alphabet, density=0.3)
            word = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
            c = rng.randint(0, 6)
            low = accepts(ocn, word, c)
            assert low == naive_accepts(ocn, word, c)
            if low:
                assert accepts(ocn, word, c + 1)
    assert sw.elapsed < 5
