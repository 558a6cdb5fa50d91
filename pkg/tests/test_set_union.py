import itertools

import pytest

from infoshare.core import StructuralError, Universe, popcount, union_all
from infoshare.set_union import (
    ThreePartyCase,
    compute_v,
    multiparty_aon,
    multiparty_aon_trace,
    pareto_repair,
    three_party,
    three_party_disjoint,
    three_party_trace,
    two_party,
)

U = Universe(tuple("abcdefgh"))
e = U.encode


def gains(reports, outputs):
    return tuple(popcount(y & ~x) for x, y in zip(reports, outputs))


def test_two_party_example():
    y1, y2 = two_party(e("ab"), e("bcd"))
    assert (y1, y2) == (e("abc"), e("abcd"))
    assert gains((e("ab"), e("bcd")), (y1, y2)) == (1, 1)


def test_two_party_trivial_cases():
    assert two_party(e("a"), e("a")) == (e("a"), e("a"))
    assert two_party(0, e("a")) == (0, e("a"))
    assert two_party(e("a"), 0) == (e("a"), 0)


def test_two_party_outputs_stay_in_union():
    for x1, x2 in itertools.product(range(16), repeat=2):
        y1, y2 = two_party(x1, x2)
        assert x1 & ~y1 == 0 and x2 & ~y2 == 0
        assert (y1 | y2) & ~(x1 | x2) == 0


def test_three_party_case1_example():
    d = Universe(tuple("123456"))
    reports = tuple(d.encode(s) for s in ("1234", "125", "36"))
    trace = three_party_trace(*reports)
    assert trace.case is ThreePartyCase.CASE1
    assert [d.decode(y) for y in trace.outputs] == [list("123456"), list("12356"), list("1356")]
    assert gains(reports, trace.outputs) == (2, 2, 2)
    assert three_party(*reports) == trace.outputs


def test_three_party_full_overlap():
    x = e("ab")
    assert three_party(x, x, x) == (x, x, x)
    assert three_party_trace(x, x, x).common == x


def test_three_party_disjoint_singletons():
    reports = (e("a"), e("b"), e("c"))
    assert three_party(*reports) == (e("abc"),) * 3
    assert three_party_disjoint(*reports) == (e("abc"),) * 3


def test_three_party_disjoint_examples():
    reports = (e("a"), e("bc"), e("def"))
    assert gains(reports, three_party_disjoint(*reports)) == (2, 3, 3)
    reports = (0, e("a"), e("b"))
    assert gains(reports, three_party_disjoint(*reports)) == (0, 1, 1)
    with pytest.raises(StructuralError):
        three_party_disjoint(e("ab"), e("b"), 0)


def test_pareto_repair_noop_when_uniform():
    reports = (e("a"), e("b"), e("c"))
    out = three_party(*reports)
    assert pareto_repair(reports, out) == out


def test_pareto_repair_tops_up_to_v_star():
    reports = (e("ab"), e("cd"), e("e"))
    outputs = (e("abcde"), e("abcde"), e("ae"))
    repaired = pareto_repair(reports, outputs)
    assert gains(reports, repaired) == (3, 3, 3)
    assert repaired[2] == e("abce")


def test_pareto_repair_respects_pool_cap():
    reports = (e("a"), e("b"), e("cdef"))
    outputs = (e("abcd"), e("abcd"), e("acdef"))
    repaired = pareto_repair(reports, outputs)
    assert gains(reports, repaired) == (3, 3, 2)


def test_compute_v_example():
    trace = compute_v([e("a"), e("bc"), e("def")])
    assert trace.value == 4
    assert trace.deficits == (5, 4, 3)
    assert [trace.without(k) for k in range(3)] == [2, 1, 1]


def test_compute_v_small_cases():
    assert compute_v([e("a")]).value == 0
    assert compute_v([e("a"), e("b")]).value == 1
    assert compute_v([]).value == 0


def test_multiparty_example():
    reports = (e("a"), e("bc"), e("def"))
    out = multiparty_aon(reports)
    assert gains(reports, out) == (4, 4, 3)
    assert out[0] == e("abcde")


def test_multiparty_second_example():
    d = Universe(("e1", "e2", "e3", "e4"))
    reports = tuple(d.encode(s) for s in (["e1"], ["e1", "e2"], ["e3", "e4"]))
    res = multiparty_aon_trace(reports)
    assert res.trace.value == 2
    assert res.trace.deficits == (3, 2, 2)
    assert [d.decode(y) for y in res.outputs] == [["e1", "e2", "e3"], ["e1", "e2", "e3", "e4"], ["e1", "e2", "e3", "e4"]]


def test_multiparty_nonparticipant_gets_nothing():
    reports = (e("a"), 0, e("bc"))
    res = multiparty_aon_trace(reports)
    assert res.participants == (0, 2)
    assert res.outputs[1] == 0
    assert res.outputs == (e("ab"), 0, e("abc"))


def test_multiparty_rejects_partial_reports_against_truth():
    with pytest.raises(StructuralError):
        multiparty_aon((e("a"), e("b")), true_sets=(e("ab"), e("b")))


def test_multiparty_outputs_within_union():
    for sets in itertools.product(range(8), repeat=3):
        out = multiparty_aon(sets)
        union = union_all(sets)
        for x, y in zip(sets, out):
            assert x & ~y == 0 and y & ~union == 0
