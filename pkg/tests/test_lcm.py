import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ocnkit.core import ParseError
from ocnkit.reductions import (
    DEC,
    INC,
    ZERO,
    Lcm,
    LcmConfig,
    LcmError,
    Op,
    decode_reversed,
    encode_run,
    is_legal_reversed_run,
    lcm_reach,
    lcm_step,
    op_allows,
    parse_lcm,
    serialize_lcm,
    zero_fr_reduction,
)

TWO_COUNTER = """\
locations: l0 l1 l2
counters: z1 z2
trans: l0 z1++ l1   ; bump
trans: l1 z2++ l0
trans: l1 z1-- l2
trans: l2 z1=0? l0
trans: l2 z2-- l2
"""


def one_loop(op_kind=INC):
    return Lcm(("l0",), ("z1",), (("l0", Op(0, op_kind), "l0"),))


class TestFormat:
    def test_parse(self):
        lcm = parse_lcm(TWO_COUNTER)
        assert lcm.locations == ("l0", "l1", "l2") and lcm.counters == ("z1", "z2")
        assert lcm.transitions[2] == ("l1", Op(0, DEC), "l2")
        assert lcm.transitions[3][1] == Op(0, ZERO)

    def test_round_trip(self):
        lcm = parse_lcm(TWO_COUNTER)
        assert parse_lcm(serialize_lcm(lcm)) == lcm

    @pytest.mark.parametrize("text, fragment", [
        ("counters: z1\n", "missing 'locations'"),
        ("locations: a\ncounters: z1\ntrans: a z9++ a\n", "undeclared counter"),
        ("locations: a\ncounters: z1\ntrans: a z1** a\n", "bad op"),
        ("locations: a\ncounters: z1\ntrans: a z1++ b\n", "undeclared location"),
        ("locations: a\ncounters: a\n", "distinct"),
    ])
    def test_errors(self, text, fragment):
        with pytest.raises(ParseError, match=fragment):
            parse_lcm(text)

    def test_bad_op_kind(self):
        with pytest.raises(LcmError):
            Op(0, "**")


class TestStep:
    def test_increment(self):
        assert lcm_step(one_loop(), LcmConfig("l0", (0,))) == {
            LcmConfig("l0", (0,)), LcmConfig("l0", (1,))}

    def test_decrement_from_zero(self):
        assert lcm_step(one_loop(DEC), LcmConfig("l0", (0,))) == set()

    def test_zero_test_fails(self):
        assert lcm_step(one_loop(ZERO), LcmConfig("l0", (2,))) == set()

    def test_other_counters_lossy(self):
        lcm = Lcm(("a",), ("z1", "z2"), (("a", Op(1, DEC), "a"),))
        succ = lcm_step(lcm, LcmConfig("a", (1, 2)))
        assert succ == {LcmConfig("a", (x, y)) for x in (0, 1) for y in (0, 1)}

    @given(st.sampled_from((INC, DEC, ZERO)), st.integers(0, 3), st.integers(0, 3))
    def test_step_matches_op_allows(self, kind, x, y):
        lcm = Lcm(("a",), ("z1", "z2"), (("a", Op(0, kind), "a"),))
        before = (x, y)
        succ = lcm_step(lcm, LcmConfig("a", before))
        brute = {LcmConfig("a", (u, v)) for u in range(6) for v in range(6)
                 if op_allows(Op(0, kind), before, (u, v))}
        assert succ == brute


class TestReach:
    def test_saturates(self):
        result = lcm_reach(one_loop(), LcmConfig("l0", (0,)), cap=5)
        assert len(result.configs) == 6 and result.saturated

    def test_no_transitions(self):
        init = LcmConfig("l0", (3,))
        result = lcm_reach(Lcm(("l0",), ("z1",), ()), init, cap=5)
        assert result.configs == {init} and not result.saturated

    def test_zero_guard(self):
        result = lcm_reach(one_loop(ZERO), LcmConfig("l0", (0,)), cap=5)
        assert result.configs == {LcmConfig("l0", (0,))} and not result.saturated

    def test_dict_round_trip(self):
        from ocnkit.reductions import ReachResult
        result = lcm_reach(parse_lcm(TWO_COUNTER), LcmConfig("l0", (0, 0)), cap=2)
        assert ReachResult.from_dict(result.to_dict()) == result


class TestEncoding:
    def test_single(self):
        enc = encode_run([LcmConfig("l0", (0,))])
        assert str(enc) == "l0" and enc.reverse == ("l0",)

    def test_two_steps(self):
        enc = encode_run([LcmConfig("l0", (0,)), LcmConfig("l0", (1,))], one_loop())
        assert enc.tokens == ("l0", "l0", "z1")
        assert enc.reverse == ("z1", "l0", "l0")

    def test_two_counters(self):
        assert encode_run([LcmConfig("l0", (2, 0))]).tokens == ("l0", "z1", "z1")

    def test_not_a_run(self):
        with pytest.raises(LcmError):
            encode_run([LcmConfig("l0", (0,)), LcmConfig("l0", (2,))], one_loop())

    def test_empty(self):
        with pytest.raises(LcmError):
            encode_run([])

    def test_decode(self):
        lcm = parse_lcm(TWO_COUNTER)
        assert decode_reversed(lcm, "z2 z1 l0".split()) == [LcmConfig("l0", (1, 1))]
        assert decode_reversed(lcm, "z1 z2 l0".split()) is None
        assert decode_reversed(lcm, "l0 z1".split()) is None
        assert decode_reversed(lcm, []) is None

    @given(st.lists(st.tuples(st.sampled_from(("l0", "l1", "l2")),
                              st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4))
    def test_decode_inverts_encode(self, blocks):
        lcm = parse_lcm(TWO_COUNTER)
        run = [LcmConfig(loc, (x, y)) for loc, x, y in blocks]
        assert decode_reversed(lcm, encode_run(run, None).reverse) == run

    def test_legal_run_check(self):
        lcm = one_loop()
        assert is_legal_reversed_run(lcm, "l0", "z1 l0 l0".split())
        assert not is_legal_reversed_run(lcm, "l0", "z1 z1 l0 l0".split())
        assert not is_legal_reversed_run(lcm, "l0", "z1 l0".split())


class TestZeroFr:
    def test_trivial(self):
        lcm = one_loop()
        assert zero_fr_reduction(lcm, LcmConfig("l0", (0,))) == (lcm, "l0")

    def test_chain(self):
        lcm = Lcm(("q",), ("z1",), ())
        new, start = zero_fr_reduction(lcm, LcmConfig("q", (2,)))
        assert new.locations == ("q", "q_pre0", "q_pre1")
        assert start == "q_pre0"
        assert new.transitions == (("q_pre0", Op(0, INC), "q_pre1"), ("q_pre1", Op(0, INC), "q"))

    def test_two_counters_largest_last(self):
        lcm = Lcm(("q",), ("z1", "z2"), ())
        new, start = zero_fr_reduction(lcm, LcmConfig("q", (1, 1)))
        assert len(new.locations) == 3
        ops = [op for _, op, _ in new.transitions]
        assert ops == [Op(0, INC), Op(1, INC)]
        assert new.transitions[-1][2] == "q"

    def test_fresh_names_avoid_clashes(self):
        lcm = Lcm(("q", "q_pre0"), ("z1",), ())
        new, start = zero_fr_reduction(lcm, LcmConfig("q", (1,)))
        assert start == "q_pre1"

    @pytest.mark.parametrize("values", [(1, 0), (0, 2), (1, 1), (2, 1)])
    def test_reach_projects(self, values):
        lcm = parse_lcm(TWO_COUNTER)
        init = LcmConfig("l0", values)
        new, start = zero_fr_reduction(lcm, init)
        reached = lcm_reach(new, LcmConfig(start, (0, 0)), cap=5).configs
        projected = {c for c in reached if c.location in lcm.locations}
        # Losses along the chain let it arrive with any vector below init.
        below = itertools.product(*(range(v + 1) for v in values))
        expected = set().union(*(lcm_reach(lcm, LcmConfig("l0", b), cap=5).configs for b in below))
        assert projected == expected
        assert lcm_reach(lcm, init, cap=5).configs <= projected
