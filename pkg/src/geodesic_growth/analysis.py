"""Classification of exact integer growth sequences.

Everything here works on Python integers and :class:`fractions.Fraction`;
floating point appears only in reported rate estimates, and the reported
lower bounds are rounded downward so they stay valid.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb


class AnalysisError(ValueError):
    pass


@dataclass
class GrowthSequence:
    values: list[int]
    kind: str = "cumulative"  # or "per-length"

    def __post_init__(self):
        self.values = [int(v) for v in self.values]
        if self.kind not in ("cumulative", "per-length"):
            raise AnalysisError(f"unknown sequence kind {self.kind!r}")
        if any(v < 0 for v in self.values):
            raise AnalysisError("growth values must be non-negative")
        if self.kind == "cumulative" and any(b < a for a, b in zip(self.values, self.values[1:])):
            raise AnalysisError("cumulative sequence must be non-decreasing")

    def per_length(self) -> list[int]:
        if self.kind == "per-length":
            return list(self.values)
        return self.values[:1] + [b - a for a, b in zip(self.values, self.values[1:])]

    def cumulative(self) -> list[int]:
        if self.kind == "cumulative":
            return list(self.values)
        out, s = [], 0
        for v in self.values:
            s += v
            out.append(s)
        return out


@dataclass
class Classification:
    verdict: str  # polynomial | exponential | inconclusive
    degree: int | None = None
    period: int | None = None
    rate_lower_bound: float | None = None
    rate_estimate: float | None = None
    recurrence: Recurrence | None = None
    evidence: dict = field(default_factory=dict)

    def summary(self) -> str:
        if self.verdict == "polynomial":
            s = f"polynomial degree {self.degree}"
            if self.period and self.period > 1:
                s += f" (quasi-polynomial, period {self.period})"
            return s
        if self.verdict == "exponential":
            return f"exponential rate >= {self.rate_lower_bound:.6f} (estimate {self.rate_estimate:.6f})"
        return "inconclusive"


# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------


def differences(seq: Sequence[int], lag: int = 1) -> list[int]:
    return [seq[i] - seq[i - lag] for i in range(lag, len(seq))]


def finite_difference_degree(seq: Sequence[int], window: int = 10, cap: int = 8, lag: int = 1) -> int | None:
    """Smallest ``d <= cap`` whose ``(d+1)``-th difference vanishes on the last ``window`` entries.

    With ``lag > 1`` the differences are taken with that step, which detects
    quasi-polynomials of period ``lag``.  Degrees whose difference table would
    be shorter than ``window`` are skipped.
    """
    if len(seq) < window + cap:
        raise AnalysisError(f"need at least {window + cap} terms, got {len(seq)}")
    diff = list(seq)
    for d in range(cap + 1):
        diff = differences(diff, lag)
        if len(diff) < window:
            return None
        if all(x == 0 for x in diff[-window:]):
            return d
    return None


# ---------------------------------------------------------------------------
# linear recurrences
# ---------------------------------------------------------------------------


@dataclass
class Recurrence:
    """``a(n) = sum_i coefficients[i] * a(n-1-i)`` for every ``n >= start + order``."""

    coefficients: tuple[Fraction, ...]
    start: int
    fitted: int
    verified: int

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def holds(self, seq: Sequence[int], n: int) -> bool:
        return seq[n] == sum(c * seq[n - 1 - i] for i, c in enumerate(self.coefficients))

    def extend(self, seq: Sequence[int], length: int) -> list[int]:
        out = list(seq)
        while len(out) < length:
            n = len(out)
            v = sum(c * out[n - 1 - i] for i, c in enumerate(self.coefficients))
            if v.denominator != 1:
                raise AnalysisError("recurrence does not stay integral")
            out.append(int(v))
        return out

    def characteristic(self) -> list[Fraction]:
        """Coefficients of ``x^d - c1 x^{d-1} - ... - cd``, highest degree first."""
        return [Fraction(1)] + [-c for c in self.coefficients]


def berlekamp_massey(seq: Sequence[int | Fraction], max_order: int | None = None) -> tuple[Fraction, ...] | None:
    """Shortest linear recurrence generating ``seq`` over the rationals.

    With ``max_order`` set, gives up (returns None) as soon as the recurrence
    would need more terms than that; the order never shrinks once grown.
    """
    s = [Fraction(x) for x in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n] + sum(C[i] * s[n - i] for i in range(1, L + 1))
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        C = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for i, x in enumerate(B):
            C[i + m] -= coef * x
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
            if max_order is not None and L > max_order:
                return None
        else:
            m += 1
    C = C + [Fraction(0)] * max(0, L + 1 - len(C))
    return tuple(-c for c in C[1 : L + 1])


def linear_recurrence(seq: Sequence[int], max_order: int = 8, holdout: int = 10) -> Recurrence | None:
    """Minimal-order recurrence, fitted away from the last ``holdout`` terms.

    The fit may skip an initial segment (recurrences of growth series often
    only hold once ``n`` is past a few exceptional small lengths).  For each
    order the fitting prefix must contain at least twice the order, and the
    recurrence must reproduce every later term, the holdout included,
    exactly.
    """
    seq = [int(x) for x in seq]
    if len(seq) < 2 * max_order + holdout:
        raise AnalysisError(f"need at least {2 * max_order + holdout} terms, got {len(seq)}")
    fit_end = len(seq) - holdout
    best: Recurrence | None = None
    for start in range(fit_end):
        prefix = seq[start:fit_end]
        if len(prefix) < 2:
            break
        coeffs = berlekamp_massey(prefix, max_order)
        if coeffs is None:
            continue
        order = len(coeffs)
        if len(prefix) < 2 * order:
            continue
        if best is not None and order >= best.order:
            continue
        rec = Recurrence(coeffs, start, len(prefix), len(seq) - max(fit_end, start + order))
        if all(rec.holds(seq, n) for n in range(start + order, len(seq))):
            best = rec
    return best


# ---------------------------------------------------------------------------
# exponential rate
# ---------------------------------------------------------------------------


def nth_root_floor(value: int, n: int) -> float:
    """Largest double ``b`` found with ``b**n <= value`` (exact check), i.e. a sound lower bound."""
    if value <= 0 or n <= 0:
        raise AnalysisError("need positive value and exponent")
    guess = math.exp(math.log(value) / n)
    b = guess
    while Fraction(b) ** n > value:
        b = math.nextafter(b, 0.0)
    up = math.nextafter(b, math.inf)
    while Fraction(up) ** n <= value:
        b, up = up, math.nextafter(up, math.inf)
    return b


def _window_range(length: int, window) -> range:
    if isinstance(window, int):
        if window > length:
            raise AnalysisError("window longer than the sequence")
        return range(length - window, length)
    lo, hi = window
    if lo < 1 or hi >= length or lo > hi:
        raise AnalysisError(f"window {window} not inside 1..{length - 1}")
    return range(lo, hi + 1)


def exponential_rate(seq: Sequence[int], window=10, kind: str = "cumulative") -> tuple[float, float]:
    """``(min over window of seq[n]^(1/n), last per-length ratio)``.

    The first number certifies ``seq[n] >= b**n`` on the window.  It is not a
    bound on the limiting rate, which can sit below it (geodesic counts are
    submultiplicative, so the n-th roots decrease towards the rate).

    ``window`` is either a count of final terms or an inclusive ``(lo, hi)``
    range of indices.  The lower bound uses downward rounding.
    """
    gs = GrowthSequence(list(seq), kind)
    vals = gs.values
    idx = [n for n in _window_range(len(vals), window) if n > 0]
    if not idx:
        raise AnalysisError("window contains no positive index")
    if any(vals[n] == 0 for n in idx):
        raise AnalysisError("zero values in the window")
    lower = min(nth_root_floor(vals[n], n) for n in idx)
    per = gs.per_length()
    last = idx[-1]
    if per[last] == 0 or per[last - 1] == 0:
        raise AnalysisError("zero per-length counts in the tail")
    estimate = per[last] / per[last - 1]
    return lower, estimate


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _polynomial_test(seq, window, cap, max_period):
    for lag in range(1, max_period + 1):
        if len(seq) < lag * (cap + 1) + window:
            break
        d = finite_difference_degree(seq, window, cap, lag)
        if d is not None:
            return d, lag
    return None


def classify(
    seq: Sequence[int],
    *,
    kind: str = "cumulative",
    window: int = 10,
    cap: int = 8,
    delta: float = 0.1,
    max_order: int = 8,
    holdout: int = 10,
    max_period: int = 1,
    rate_window=None,
    extrapolate_to: int = 1000,
    min_length: int = 25,
) -> Classification:
    """Decide polynomial vs exponential growth from exact data.

    Order of tests: exact eventual polynomial on the raw data; then a linear
    recurrence, whose extrapolated terms are fed to the polynomial test
    (lags up to four times the recurrence order, to catch quasi-polynomials) and to
    the rate test; then the rate test on the raw data; otherwise
    inconclusive.  The exponential verdict requires the n-th-root lower
    bound to reach ``1 + delta``.
    """
    gs = GrowthSequence(list(seq), kind)
    vals = gs.cumulative()
    if len(vals) < min_length:
        raise AnalysisError(f"need at least {min_length} terms, got {len(vals)}")
    evidence: dict = {"terms": len(vals), "window": window, "delta": delta}

    if len(vals) >= window + cap:
        found = _polynomial_test(vals, window, cap, max_period)
        if found:
            d, lag = found
            evidence["source"] = "raw data"
            return Classification("polynomial", d, lag, evidence=evidence)

    rec = None
    if len(vals) >= 2 * max_order + holdout:
        rec = linear_recurrence(vals, max_order, holdout)
    if rec is not None:
        evidence["source"] = "recurrence extrapolation"
        evidence["recurrence_start"] = rec.start
        ext = rec.extend(vals, max(extrapolate_to, len(vals)))
        # a period is the lcm of root-of-unity orders, which can exceed the order
        # itself (roots of x^2+1 and x^2+x+1 give period 12 from order 4)
        found = _polynomial_test(ext, window, cap, max(max_period, 4 * rec.order))
        if found:
            d, lag = found
            return Classification("polynomial", d, lag, recurrence=rec, evidence=evidence)
        try:
            lower, est = exponential_rate(ext, window, "cumulative")
        except AnalysisError:
            lower = None
        if lower is not None and lower >= 1 + delta:
            raw_lower, est = exponential_rate(vals, rate_window or window, "cumulative")
            evidence["extrapolated_rate_lower_bound"] = lower
            return Classification("exponential", rate_lower_bound=raw_lower, rate_estimate=est,
                                  recurrence=rec, evidence=evidence)
        return Classification("inconclusive", recurrence=rec, evidence=evidence)

    evidence["source"] = "raw data"
    try:
        lower, est = exponential_rate(vals, rate_window or window, "cumulative")
    except AnalysisError as exc:
        evidence["rate_error"] = str(exc)
        return Classification("inconclusive", evidence=evidence)
    if lower >= 1 + delta:
        return Classification("exponential", rate_lower_bound=lower, rate_estimate=est, evidence=evidence)
    return Classification("inconclusive", rate_lower_bound=lower, rate_estimate=est, evidence=evidence)


# ---------------------------------------------------------------------------
# dominating-generator counting bound
# ---------------------------------------------------------------------------


def lemma52_per_length_bound(n: int, k: int, m: int) -> int:
    return (k + 1) * 2 ** (k + 1) * m**k * comb(n, k)


def lemma52_cumulative_bound(n: int, k: int, m: int) -> int:
    return 2 ** (k + 1) * m**k * (k + 1) * (n + 1) * comb(n, k)


def word_shape_bound(n: int, k: int, m: int) -> int:
    """Number of words ``y^±n0 u1 y^±n1 ... u_l y^±n_l`` with ``l <= k`` letters ``u_i`` from ``m``."""
    return sum(2 ** (l + 1) * m**l * comb(n, l) for l in range(min(k, n) + 1))


@dataclass
class BoundRow:
    n: int
    sphere_geodesics: int
    cumulative: int
    shape_bound: int
    per_length_bound: int
    cumulative_bound: int
    applicable: bool
    ok: bool


@dataclass
class Lemma52Report:
    k: int
    m: int
    rows: list[BoundRow]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)


def lemma52_bound_check(census, dominant: Sequence[str] | None = None, k: int | None = None,
                        stability_window: int = 8) -> Lemma52Report:
    """Check the polynomial counting bound for a generating set with a dominating letter.

    ``k`` defaults to the measured maximum number of non-dominant letters in
    a geodesic; the census must track the non-dominant letters.  The
    closed-form bound ``(k+1) 2^(k+1) m^k C(n,k)`` dominates the word-shape
    count only once ``C(n,k) >= C(n,l)`` for all ``l <= k``; below that
    length only the shape count is checked.
    """
    from .engine import letter_stats

    X = census.genset
    dominant = tuple(dominant) if dominant is not None else X.dominant
    if not dominant:
        raise AnalysisError("no dominant letter given")
    others = [lab for lab in X.labels if lab not in dominant]
    m = len(others)
    stats = letter_stats(census, others)
    running = []
    cur = 0
    for s in stats:
        cur = max(cur, s)
        running.append(cur)
    tail = running[-stability_window:]
    if len(stats) <= stability_window or len(set(tail)) != 1:
        raise AnalysisError(f"k not stable on the last {stability_window} lengths: {stats[-stability_window:]}")
    measured = running[-1]
    if k is None:
        k = measured
    elif k < measured:
        raise AnalysisError(f"k={k} is below the measured maximum {measured}")
    rows = []
    sig = census.sphere_geodesics
    cum = census.cumulative_Gamma
    for n in range(census.n_max + 1):
        shape = word_shape_bound(n, k, m)
        f = lemma52_per_length_bound(n, k, m)
        F = lemma52_cumulative_bound(n, k, m)
        applicable = all(comb(n, l) <= comb(n, k) for l in range(k + 1))
        ok = sig[n] <= shape
        if applicable:
            ok = ok and sig[n] <= f and cum[n] <= F
        rows.append(BoundRow(n, sig[n], cum[n], shape, f, F, applicable, ok))
    return Lemma52Report(k, m, rows)
