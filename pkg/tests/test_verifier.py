from fractions import Fraction as F

from infoshare import mechanisms, set_union
from infoshare.average_point import PointInstance
from infoshare.core import SetInstance, Universe
from infoshare.general_mechanism import make_coverage_value
from infoshare.interval_search import Interval, IntervalInstance
from infoshare.verifier import (
    average_game,
    check_average_delta,
    check_pareto,
    check_phi_inequality,
    check_strong_dominance,
    check_symmetry_intervals,
    check_symmetry_sets,
    check_truthful_aon,
    check_truthful_subsets,
    check_welfare_optimal_v,
    general_game,
    interval_game,
    lemma2_violations,
    merge,
    pareto_dominating_vector,
    replay_truthful_aon,
    replay_truthful_subsets,
    set_union_game,
    skipped,
    stable_v_oracle,
    two_party_equal_benefit,
)

U = Universe(tuple("abcdef"))
e = U.encode
DISJOINT = SetInstance(U, (e("a"), e("bc"), e("def")))


def test_truthful_aon_multiparty_example():
    report = check_truthful_aon(set_union_game(DISJOINT))
    assert report.passed and report.checked == 12


def test_truthful_aon_negative_control_replays():
    game = set_union_game(DISJOINT, mechanisms.favor_first)
    report = check_truthful_aon(game)
    assert not report.passed
    assert replay_truthful_aon(game, report.counterexample)


def test_truthful_subsets_two_and_three_party():
    inst = SetInstance(U, (e("abc"), e("cdef")))
    assert check_truthful_subsets(mechanisms.two_party, inst).passed
    d = Universe(tuple("123456"))
    case1 = SetInstance(d, tuple(d.encode(s) for s in ("1234", "125", "36")))
    assert check_truthful_subsets(mechanisms.three_party, case1).passed
    assert check_truthful_subsets(mechanisms.three_party, case1, repair=True).passed


def test_truthful_subsets_negative_control_replays():
    report = check_truthful_subsets(mechanisms.favor_first, DISJOINT)
    assert not report.passed
    assert replay_truthful_subsets(mechanisms.favor_first, DISJOINT, report.counterexample)


def test_truthful_subsets_refuses_large_universe():
    big = SetInstance(Universe(tuple("abcdefg")), (1, 2))
    report = check_truthful_subsets(mechanisms.two_party, big, max_universe=6)
    assert report.skipped and report.verdict == "skipped"


def test_pareto_identity_allocation_passes():
    report = check_pareto(DISJOINT, DISJOINT.true_sets, DISJOINT.true_sets)
    assert report.passed


def test_pareto_characterization_holds_but_cap_allows_improvement():
    # Benefits (4,4,3) match the characterization, yet player 3 is capped at 3,
    # so (3,3,3) is a utility improvement for player 3 that costs nobody.
    out = set_union.multiparty_aon(DISJOINT.true_sets)
    assert lemma2_violations(DISJOINT.true_sets, out) == []
    assert pareto_dominating_vector([5, 4, 3], [4, 4, 3]) is not None
    report = check_pareto(DISJOINT, DISJOINT.true_sets, out)
    assert not report.passed and report.counterexample["check"] == "oracle"


def test_pareto_top_player_at_cap_is_optimal():
    assert pareto_dominating_vector([2, 4, 4], [2, 1, 1]) is None


def test_pareto_characterization_violation():
    reports = (e("a"), e("b"), e("c"))
    outputs = (e("abc"), e("b"), e("ac"))
    report = check_pareto(SetInstance(U, reports), reports, outputs)
    assert not report.passed
    assert report.counterexample["check"] == "characterization"
    assert report.counterexample["violating_players"] == [2]


def test_welfare_oracle_examples():
    assert check_welfare_optimal_v(DISJOINT.true_sets).passed
    assert stable_v_oracle([frozenset("a"), frozenset("bc"), frozenset("def")]) == 4
    assert stable_v_oracle([frozenset("a"), frozenset("b")]) == 1
    assert stable_v_oracle([frozenset("a")]) == 0
    bad = check_welfare_optimal_v(DISJOINT.true_sets, compute=mechanisms.broken_compute_v)
    assert not bad.passed and bad.counterexample["oracle"] == 4


def test_symmetry_sets():
    u = Universe(tuple("abcde"))
    assert check_symmetry_sets(SetInstance(u, (u.encode("ab"), u.encode("cd"), u.encode("e")))).passed
    control = SetInstance(u, (u.encode("a"), u.encode("bc"), u.encode("de")))
    assert check_symmetry_sets(control).passed
    assert not check_symmetry_sets(control, mechanisms.index_biased).passed


def test_symmetry_intervals():
    inst = IntervalInstance(3, (Interval(2, 6), Interval(0, 4), Interval(2, 6)))
    assert check_symmetry_intervals(inst).passed
    assert not check_symmetry_intervals(inst, None, mechanisms.first_tie_only_search).passed


def test_strong_dominance():
    d = Universe(("e1", "e2", "e3", "e4"))
    inst = SetInstance(d, (d.encode(["e1"]), d.encode(["e1", "e2"]), d.encode(["e3", "e4"])))
    assert check_strong_dominance(inst).passed
    same = SetInstance(U, (e("ab"), e("ab"), e("c")))
    assert check_strong_dominance(same).passed
    control = SetInstance(Universe(tuple("abcd")), (1, 0b110, 1))
    report = check_strong_dominance(control, mechanisms.reversed_order_last)
    assert not report.passed and report.counterexample["contained"] == 1


def test_phi_inequality():
    V = make_coverage_value([e("ab"), e("bc"), e("c")])
    assert check_phi_inequality(V).passed
    assert not check_phi_inequality(V, phi=mechanisms.broken_phi).passed


def test_average_delta():
    inst = PointInstance((0, 1, 2))
    assert check_average_delta(inst).passed
    assert check_average_delta(PointInstance((F(1, 2),) * 4)).passed
    assert not check_average_delta(inst, mechanisms.leaky_average).passed


def test_average_weak_dominance_fails_off_full_participation():
    # With player 3 absent, player 2 lands on the true average alone, so
    # joining only exposes it to player 1's far-off point.
    report = check_truthful_aon(average_game(PointInstance((0, 1, 2))))
    assert not report.passed
    assert report.counterexample == {
        "player": 2,
        "participating": [True, True, False],
        "utility_in": F(-1),
        "utility_out": F(0),
    }


def test_interval_and_general_controls():
    inst = IntervalInstance(F(9, 2), (Interval(0, 10), Interval(2, 5), Interval(4, 9)))
    assert check_truthful_aon(interval_game(inst)).passed
    assert not check_truthful_aon(interval_game(inst, mechanisms.one_sided_search)).passed
    V = make_coverage_value([e("ab"), e("bc"), e("c")])
    assert check_truthful_aon(general_game(V)).passed
    assert not check_truthful_aon(general_game(V, mechanisms.greedy_general)).passed


def test_two_party_equal_benefit_helper():
    assert two_party_equal_benefit(e("ab"), e("bcd")) is None


def test_merge_counts_skips_and_keeps_first_failure():
    from infoshare.verifier import PropertyReport

    reports = [
        PropertyReport("p", True, 2),
        skipped("p", "too big"),
        PropertyReport("p", False, 1, {"k": 1}),
        PropertyReport("p", False, 1, {"k": 2}),
    ]
    merged = merge("p", reports)
    assert not merged.passed and merged.counterexample == {"k": 1}
    assert merged.skipped_instances == 1 and merged.checked == 4
    assert merge("p", [skipped("p", "x")]).skipped
