import oracles
import pytest

from geodesic_growth.analysis import classify, linear_recurrence
from geodesic_growth.automaton import (
    ConeDFA,
    InconsistentAtK,
    dfa_count,
    infer_geodesic_dfa,
    infer_with_escalation,
    validate,
)
from geodesic_growth.catalog import builtin
from geodesic_growth.engine import bfs_census


def census(group, genset, n):
    return bfs_census(*builtin(group, genset), n)


def test_integers():
    c = census("Z", "std", 12)
    dfa = infer_geodesic_dfa(c, 1, 12)
    assert dfa.n_states == 3
    assert dfa_count(dfa, 5) == 11
    assert validate(dfa, c).passed
    assert dfa.accepts("ttt") and not dfa.accepts("tT")


def test_z_times_c2():
    c = census("ZxC2", "ta", 30)
    dfa = infer_geodesic_dfa(c, 2, 12)
    assert dfa.n_states <= 12
    assert dfa_count(dfa, 5) == 40
    assert dfa.per_length_counts(10)[2:] == [2 * n + 2 for n in range(2, 11)]
    assert validate(dfa, c).passed


def test_dinf_and_g1():
    c = census("Dinf", "ts", 30)
    assert validate(infer_geodesic_dfa(c, 2, 12), c).passed
    c = census("G1", "at", 25)
    dfa = infer_geodesic_dfa(c, 3, 12)
    assert validate(dfa, c).passed


def test_accepted_words_are_the_geodesics():
    G, X = builtin("G1", "at")
    c = bfs_census(G, X, 12)
    dfa = infer_with_escalation(c, 12)
    _, _, geo = oracles.brute_force(G, X, 6)
    geo = {tuple(X.labels[i] for i in w) for w in geo}
    for word, _ in oracles.enumerate_words(G, list(X.elements), 6):
        labels = tuple(X.labels[i] for i in word)
        assert dfa.accepts(labels) == (labels in geo)


def test_inconsistent_lookahead_is_reported():
    c = census("G1", "at", 12)
    with pytest.raises(InconsistentAtK) as info:
        infer_geodesic_dfa(c, 1, 12)
    assert info.value.k == 1
    assert infer_with_escalation(c, 12).k == 3
    with pytest.raises(ValueError):
        infer_geodesic_dfa(c, 3, 4)
    with pytest.raises(ValueError):
        infer_geodesic_dfa(c, 0, 12)


def test_corrupted_transition_fails_validation():
    c = census("ZxC2", "ta", 20)
    dfa = infer_geodesic_dfa(c, 2, 12)
    broken = ConeDFA(dfa.labels, [dict(row) for row in dfa.transitions], dfa.start, dfa.k, dfa.n_train)
    s = next(i for i, row in enumerate(broken.transitions) if row and i != broken.start)
    broken.transitions[s].popitem()
    report = validate(broken, c)
    assert not report.passed and report.first_mismatch is not None


def test_removing_any_transition_decreases_some_count():
    c = census("Dinf", "ts", 20)
    dfa = infer_geodesic_dfa(c, 2, 12)
    base = dfa.counts(20)
    for s, row in enumerate(dfa.transitions):
        for letter in list(row):
            trans = [dict(r) for r in dfa.transitions]
            del trans[s][letter]
            smaller = ConeDFA(dfa.labels, trans, dfa.start, dfa.k, dfa.n_train).counts(20)
            assert smaller != base and all(a <= b for a, b in zip(smaller, base))


def test_text_round_trip():
    c = census("ZxC2", "tc", 16)
    dfa = infer_with_escalation(c, 12)
    text = dfa.to_text()
    assert text.startswith(f"# states {dfa.n_states} start {dfa.start} k {dfa.k} n_train 12\n")
    back = ConeDFA.from_text(text, dfa.labels)
    assert back.transitions == dfa.transitions and back.counts(16) == dfa.counts(16)


@pytest.mark.parametrize("group,genset", [("Z", "std"), ("Z", "doubled"), ("ZxC2", "ta"), ("ZxC2", "tc"), ("Dinf", "ts")])
def test_recurrence_order_bounded_by_states_and_verdicts_agree(group, genset):
    c = census(group, genset, 30)
    dfa = infer_with_escalation(c, 12, k_max=4)
    counts = dfa.counts(60)
    rec = linear_recurrence(dfa.per_length_counts(60), max_order=8)
    assert rec is not None and rec.order <= dfa.n_states
    assert classify(counts).verdict == classify(c.cumulative_Gamma).verdict
