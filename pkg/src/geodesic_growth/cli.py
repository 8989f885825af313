"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 invalid input, 3 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .analysis import AnalysisError, classify, lemma52_bound_check, linear_recurrence
from .automaton import InconsistentAtK, infer_with_escalation, validate
from .documents import DocumentError, genset_document, load_group
from .engine import (
    CensusError,
    ElementCapExceeded,
    bfs_census,
    letter_stats,
    pure_subalphabet_max_geodesic_length,
)
from .gensets import (
    GenSetError,
    double,
    from_words,
    g2_short_set,
    main_theorem_genset,
    short_subset,
)
from .groups import CoordinateOverflow, GroupError
from .hull import HullError, witness_reports

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _group_and_genset(args):
    doc = load_group(args.group)
    return doc.group, doc.genset(args.genset), doc


def _split_labels(s: str | None) -> list[str]:
    if not s:
        return []
    return [t for t in s.replace(",", " ").split() if t]


def _named_element(G, X, ref: str):
    if ref in G.names:
        return G.names[ref]
    if X is not None:
        return X.evaluate(ref)
    raise InputError(f"unknown element {ref!r}")


def _table(rows, header) -> str:
    cols = list(zip(header, *rows)) if rows else [(h,) for h in header]
    widths = [max(len(str(c)) for c in col) for col in cols]
    lines = ["  ".join(str(h).rjust(w) for h, w in zip(header, widths))]
    for row in rows:
        lines.append("  ".join(str(c).rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def cmd_census(args, out) -> int:
    G, X, _ = _group_and_genset(args)
    track = [_split_labels(args.track)] if args.track else []
    pure = [_split_labels(args.pure)] if args.pure else []
    c = bfs_census(G, X, args.n, track=track, pure=pure)
    header = ["length", "sphere_size", "sphere_geodesics", "cumulative_gamma", "cumulative_Gamma"]
    rows = [list(r) for r in c.rows()]
    if track:
        hi = letter_stats(c, track[0])
        header.append("max_tracked")
        for r, h in zip(rows, hi):
            r.append(h)
    out.write(f"# group {G.name} genset {X.name} letters {' '.join(X.labels)}\n")
    out.write(_table(rows, header))
    if pure:
        out.write(f"# longest geodesic over {' '.join(pure[0])}: "
                  f"{pure_subalphabet_max_geodesic_length(c, pure[0])}\n")
    if args.csv:
        Path(args.csv).write_text(c.to_csv(), newline="")
    return EXIT_OK


def _classify_kwargs(args) -> dict:
    kw = {"window": args.window, "cap": args.cap, "delta": args.delta, "max_order": args.max_order}
    if args.rate_window:
        kw["rate_window"] = tuple(args.rate_window)
    kw["min_length"] = min(25, args.n + 1)
    return kw


def cmd_classify(args, out) -> int:
    G, X, _ = _group_and_genset(args)
    c = bfs_census(G, X, args.n)
    cl = classify(c.cumulative_Gamma, **_classify_kwargs(args))
    out.write(f"{cl.summary()}\n")
    ev = dict(cl.evidence)
    if cl.recurrence is not None:
        r = cl.recurrence
        ev["recurrence"] = " ".join(str(x) for x in r.coefficients) + f" (from n={r.start + r.order})"
    for key in sorted(ev):
        out.write(f"  {key}: {ev[key]}\n")
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["verdict", "degree", "rate_lower_bound", "rate_estimate", "window", "recurrence"])
        w.writerow([cl.verdict, "" if cl.degree is None else cl.degree,
                    "" if cl.rate_lower_bound is None else repr(cl.rate_lower_bound),
                    "" if cl.rate_estimate is None else repr(cl.rate_estimate), args.window,
                    " ".join(str(x) for x in cl.recurrence.coefficients) if cl.recurrence else ""])
        Path(args.csv).write_text(buf.getvalue(), newline="")
    return EXIT_OK


def cmd_witness(args, out) -> int:
    G, X, _ = _group_and_genset(args)
    reports = witness_reports(G, X, args.n)
    for r in reports:
        out.write(r.to_text() + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_build_genset(args, out) -> int:
    doc = load_group(args.group)
    G = doc.group
    base = doc.genset(args.genset) if args.genset else None
    if args.kind == "main-theorem":
        if args.x is None or args.N is None:
            raise InputError("main-theorem needs --x and --N")
        x = _named_element(G, base, args.x)
        seed = [_named_element(G, base, s) for s in _split_labels(args.seed or args.x)]
        X = main_theorem_genset(G, x, args.N, seed)
    elif args.kind == "double":
        if base is None:
            raise InputError("double needs --genset")
        X = double(base)
    elif args.kind == "substitute":
        if base is None or not args.words:
            raise InputError("substitute needs --genset and --words")
        words = {}
        for item in args.words:
            lab, _, w = item.partition("=")
            if not w:
                raise InputError(f"--words entries look like label=word, got {item!r}")
            words[lab] = w
        X = from_words(G, base, words)
    elif args.kind == "g2-short":
        if base is None:
            raise InputError("g2-short needs --genset")
        for s in g2_short_set(G, base):
            out.write(f"{G.format(s.element)} {' '.join(s.spelling)}\n")
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(args.kind)
    text = genset_document(X)
    if args.output:
        Path(args.output).write_text(text)
    out.write(text)
    return EXIT_OK


def cmd_sweep_n(args, out) -> int:
    lo, hi = args.N_range
    if lo > hi or lo < 1:
        raise InputError(f"empty or invalid N range {lo}..{hi}")
    doc = load_group(args.group)
    G = doc.group
    x = _named_element(G, None, args.x)
    seed = [_named_element(G, None, s) for s in _split_labels(args.seed or args.x)]
    rows = []
    for N in range(lo, hi + 1):
        X = main_theorem_genset(G, x, N, seed)
        S = short_subset(X)
        nd = X.non_dominant()
        c = bfs_census(G, X, args.n, track=[nd], pure=[S])
        k = max(letter_stats(c, nd))
        pure_len = pure_subalphabet_max_geodesic_length(c, S)
        cl = classify(c.cumulative_Gamma, cap=args.cap, min_length=min(25, args.n + 1))
        try:
            l52 = "pass" if lemma52_bound_check(c).passed else "FAIL"
        except AnalysisError:
            l52 = "k unstable"
        rows.append([N, len(X), k, pure_len, l52, cl.summary()])
    out.write(_table(rows, ["N", "letters", "k", "pure_S_max", "lemma52", "verdict"]))
    return EXIT_OK


def cmd_automaton(args, out) -> int:
    G, X, _ = _group_and_genset(args)
    n_val = max(args.n_validate, args.n_train)
    c = bfs_census(G, X, n_val)
    try:
        dfa = infer_with_escalation(c, args.n_train, k_max=args.k)
    except InconsistentAtK as exc:
        out.write(f"{exc}\n")
        return EXIT_FAIL
    v = validate(dfa, c)
    prefix = args.out_prefix
    if prefix:
        Path(f"{prefix}.dfa.txt").write_text(dfa.to_text())
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "dfa_Gamma", "census_Gamma"])
        for l, (a, b) in enumerate(zip(v.dfa_counts, v.census_counts)):
            w.writerow([l, a, b])
        Path(f"{prefix}.counts.csv").write_text(buf.getvalue(), newline="")
    out.write(f"states {dfa.n_states} k {dfa.k} n_train {dfa.n_train}\n")
    if v.passed:
        out.write(f"validated against census for n <= {c.n_max}\n")
        rec = linear_recurrence(v.dfa_counts, max_order=min(8, (len(v.dfa_counts) - 10) // 2))
        if rec is not None:
            out.write(f"recurrence order {rec.order}: {' '.join(str(x) for x in rec.coefficients)}\n")
        return EXIT_OK
    out.write(f"validation FAILED at n={v.first_mismatch}\n")
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geodesic-growth", description="Geodesic growth of concrete groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, genset=True):
        sp.add_argument("--group", required=True, help="built-in group name or JSON group document")
        if genset:
            sp.add_argument("--genset", required=True, help="generating set name (built-in or from the document)")

    sp = sub.add_parser("census", help="per-length sphere and geodesic counts")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--track", help="letters whose occurrences are tracked (comma or space separated)")
    sp.add_argument("--pure", help="letters for the pure-subalphabet geodesic length")
    sp.add_argument("--csv", help="write the census CSV here")
    sp.set_defaults(func=cmd_census)

    def classify_opts(sp):
        sp.add_argument("--window", type=int, default=10)
        sp.add_argument("--cap", type=int, default=8, help="maximum polynomial degree tested")
        sp.add_argument("--delta", type=float, default=0.1)
        sp.add_argument("--max-order", type=int, default=8)

    sp = sub.add_parser("classify", help="polynomial / exponential verdict for Γ")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    classify_opts(sp)
    sp.add_argument("--rate-window", type=int, nargs=2, metavar=("LO", "HI"))
    sp.add_argument("--csv")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("witness", help="hull-edge witnesses of exponential growth")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("build-genset", help="construct a generating set and print it as JSON")
    sp.add_argument("--group", required=True)
    sp.add_argument("--kind", required=True, choices=["main-theorem", "double", "substitute", "g2-short"])
    sp.add_argument("--genset", help="base generating set")
    sp.add_argument("--x", help="element with finite-index abelian normal closure")
    sp.add_argument("--N", type=int)
    sp.add_argument("--seed", help="seed elements of the short set (default: x)")
    sp.add_argument("--words", nargs="+", help="label=word substitutions")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_build_genset)

    sp = sub.add_parser("sweep-n", help="main-theorem generating sets over a range of N")
    common(sp, genset=False)
    sp.add_argument("--x", required=True)
    sp.add_argument("--seed")
    sp.add_argument("--N-range", type=int, nargs=2, required=True, metavar=("LO", "HI"))
    sp.add_argument("--n", type=int, default=40)
    sp.add_argument("--cap", type=int, default=12)
    sp.set_defaults(func=cmd_sweep_n)

    sp = sub.add_parser("automaton", help="infer and validate a geodesic automaton")
    common(sp)
    sp.add_argument("--k", type=int, default=5, help="largest lookahead tried")
    sp.add_argument("--n-train", type=int, default=12)
    sp.add_argument("--n-validate", type=int, default=30)
    sp.add_argument("--out-prefix")
    sp.set_defaults(func=cmd_automaton)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (ElementCapExceeded, CoordinateOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, DocumentError, GenSetError, GroupError, CensusError, HullError, AnalysisError,
            KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
