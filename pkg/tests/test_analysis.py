from fractions import Fraction
from itertools import pairwise, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodesic_growth.analysis import (
    AnalysisError,
    GrowthSequence,
    berlekamp_massey,
    classify,
    exponential_rate,
    finite_difference_degree,
    lemma52_bound_check,
    lemma52_per_length_bound,
    linear_recurrence,
    nth_root_floor,
    word_shape_bound,
)
from geodesic_growth.catalog import builtin
from geodesic_growth.engine import bfs_census
from geodesic_growth.gensets import main_theorem_genset
from geodesic_growth.groups import builtin_group

PRIMES = [p for p in range(2, 3000) if all(p % q for q in range(2, int(p**0.5) + 1))]


def gamma(group, genset, n):
    return bfs_census(*builtin(group, genset), n).cumulative_Gamma


def test_growth_sequence_conversions():
    g = GrowthSequence([1, 3, 6], "cumulative")
    assert g.per_length() == [1, 2, 3]
    assert GrowthSequence([1, 2, 3], "per-length").cumulative() == [1, 3, 6]
    with pytest.raises(AnalysisError):
        GrowthSequence([3, 2])
    with pytest.raises(AnalysisError):
        GrowthSequence([1, -1], "per-length")


def test_degree_examples():
    assert finite_difference_degree(gamma("Z", "std", 25)) == 1
    assert finite_difference_degree(gamma("ZxC2", "ta", 25)) == 2
    assert finite_difference_degree(gamma("G1", "at", 25)) == 3
    assert finite_difference_degree([2**n for n in range(30)]) is None
    with pytest.raises(AnalysisError):
        finite_difference_degree([1, 2, 3])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(0, 3))
def test_degree_is_exact_for_polynomials(coeffs, bump):
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    seq = [sum(c * n**i for i, c in enumerate(coeffs)) for n in range(40)]
    d = finite_difference_degree(seq)
    expected = len(coeffs) - 1 if any(coeffs) else 0
    assert d == expected
    # perturbing one entry inside the window must break the verdict at that degree
    seq2 = list(seq)
    seq2[-1 - bump] += 1
    assert finite_difference_degree(seq2) != expected or expected >= 8


def test_quasi_polynomial_with_lag():
    seq = [n // 2 for n in range(40)]
    assert finite_difference_degree(seq) is None
    assert finite_difference_degree(seq, lag=2) == 1


def test_berlekamp_massey():
    fib = [0, 1]
    for _ in range(20):
        fib.append(fib[-1] + fib[-2])
    assert berlekamp_massey(fib) == (1, 1)
    assert berlekamp_massey([2**n for n in range(10)]) == (2,)
    assert berlekamp_massey([Fraction(1, 2) ** n for n in range(10)]) == (Fraction(1, 2),)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-3, 3), min_size=1, max_size=4).filter(lambda c: c[-1] != 0),
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
)
def test_berlekamp_massey_recovers_generated_sequences(coeffs, init):
    d = len(coeffs)
    seq = list(init[:d])
    while len(seq) < 3 * d + 6:
        seq.append(sum(c * seq[-1 - i] for i, c in enumerate(coeffs)))
    found = berlekamp_massey(seq)
    assert len(found) <= d
    # whatever it finds regenerates the sequence
    L = len(found)
    for n in range(L, len(seq)):
        assert seq[n] == sum(c * seq[n - 1 - i] for i, c in enumerate(found))


def test_recurrence_examples():
    r = linear_recurrence(gamma("Z", "std", 30), max_order=8)
    assert r.order == 2 and r.coefficients == (2, -1) and r.verified >= 10
    r = linear_recurrence(gamma("ZxC2", "ta", 30), max_order=8)
    assert r.coefficients == (3, -3, 1)
    assert r.start + r.order <= 5
    assert linear_recurrence(PRIMES[:30], max_order=6) is None
    with pytest.raises(AnalysisError):
        linear_recurrence([1, 2, 3], max_order=8)


def test_recurrence_extend_and_characteristic():
    r = linear_recurrence([2**n + 1 for n in range(30)], max_order=4)
    assert r.extend([2**n + 1 for n in range(30)], 32)[-1] == 2**31 + 1
    assert r.characteristic() == [1, -3, 2]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**40), st.integers(1, 60))
def test_nth_root_floor_is_sound_and_tight(value, n):
    b = nth_root_floor(value, n)
    assert Fraction(b) ** n <= value
    import math

    assert Fraction(math.nextafter(b, math.inf)) ** n > value


def test_exponential_rates():
    doubled = gamma("Z", "doubled", 20)
    lower, est = exponential_rate(doubled, (10, 20))
    assert lower >= 1.3 and abs(est - 2) < 1e-9
    plane = gamma("Z2", "std", 16)
    lower, _ = exponential_rate(plane, (10, 16))
    assert lower >= 1.5
    with pytest.raises(AnalysisError):
        exponential_rate([1] * 20, 10)
    with pytest.raises(AnalysisError):
        exponential_rate([0] * 20, 10)


def test_classify_examples():
    c = classify(gamma("G1", "at", 30))
    assert c.verdict == "polynomial" and c.degree == 3 and c.summary() == "polynomial degree 3"
    c = classify(gamma("G2", "abt", 25))
    assert c.verdict == "exponential" and c.rate_lower_bound >= 1.1
    c = classify(gamma("Heisenberg", "std", 14), rate_window=(8, 14), min_length=15)
    assert c.verdict == "exponential"
    with pytest.raises(AnalysisError):
        classify([1, 2, 3])


@pytest.mark.parametrize("group,genset", [("Z", "std"), ("Z", "doubled"), ("ZxC2", "ta"), ("ZxC2", "tc"), ("Dinf", "ts")])
def test_virtually_cyclic_never_inconclusive(group, genset):
    c = classify(gamma(group, genset, 30))
    assert c.verdict in ("polynomial", "exponential")


def test_classify_through_recurrence():
    # n^2 for even n, n^2 + 1 for odd n: not an eventual polynomial, but rational
    seq = [n * n + (n % 2) for n in range(40)]
    c = classify(seq, max_period=1)
    assert c.verdict == "polynomial" and c.degree == 2 and c.period == 2
    assert c.evidence["source"] == "recurrence extrapolation"
    fib = [1, 2]
    while len(fib) < 40:
        fib.append(fib[-1] + fib[-2])
    c = classify(fib)
    assert c.verdict == "exponential" and 1.6 < c.rate_estimate < 1.62


def test_classify_inconclusive_on_slow_non_rational():
    # on a short prefix the n-th roots of a polynomially growing sequence still
    # exceed 1 + delta; with enough terms they drop below and nothing fires
    short = [sum(PRIMES[:n]) for n in range(40)]
    assert classify(short).verdict == "exponential"
    long = [sum(PRIMES[:n]) for n in range(300)]
    assert classify(long).verdict == "inconclusive"


def test_word_shape_bound_by_enumeration():
    # words y^±.. u1 y^±.. with at most k of the m other letters, counted directly
    def brute(n, k, m):
        total = 0
        letters = ["y", "Y"] + [f"u{i}" for i in range(m)]
        for w in product(letters, repeat=n):
            if sum(c.startswith("u") for c in w) > k:
                continue
            if any({a, b} == {"y", "Y"} for a, b in pairwise(w)):
                continue
            total += 1
        return total

    for n in range(7):
        for k in range(3):
            for m in (1, 2):
                assert brute(n, k, m) <= word_shape_bound(n, k, m)


def test_lemma52_examples():
    G, X = builtin("ZxC2", "ta")
    c = bfs_census(G, X, 20, track=[["a"]])
    rep = lemma52_bound_check(c, dominant=["t", "T"])
    assert rep.k == 1 and rep.m == 1 and rep.passed
    for row in rep.rows[1:]:
        assert row.sphere_geodesics <= lemma52_per_length_bound(row.n, 1, 1) == 8 * row.n

    G = builtin_group("G1")
    X = main_theorem_genset(G, G.names["a"], 3, [G.names["a"]])
    c = bfs_census(G, X, 30, track=[X.non_dominant()])
    assert lemma52_bound_check(c).passed

    G, X = builtin("Z", "doubled")
    c = bfs_census(G, X, 20, track=[["s", "S"]])
    with pytest.raises(AnalysisError, match="not stable"):
        lemma52_bound_check(c, dominant=["t", "T"])
    with pytest.raises(AnalysisError):
        lemma52_bound_check(bfs_census(*builtin("Z", "std"), 5))


def test_quasi_polynomial_period_beyond_recurrence_order():
    # Heisenberg word growth: order-9 recurrence, characteristic (x-1)^5 (x^2+1)(x^2+x+1)
    c = bfs_census(*builtin("Heisenberg", "std"), 36)
    cl = classify(c.cumulative_gamma, max_order=12, holdout=8)
    assert cl.verdict == "polynomial" and cl.degree == 4 and cl.period == 12
