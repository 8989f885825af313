"""
Automata from cone types
========================

Merge elements whose geodesic continuations (up to k letters) agree and
read off an automaton.  If the lookahead is large enough the automaton's
path counts reproduce the census exactly.
"""

from geodesic_growth import (
    bfs_census,
    builtin,
    infer_with_escalation,
    linear_recurrence,
    validate,
)

for group, name in [("Z", "std"), ("ZxC2", "ta"), ("Dinf", "ts"), ("G1", "at")]:
    G, X = builtin(group, name)
    c = bfs_census(G, X, 30)
    dfa = infer_with_escalation(c, 12)
    report = validate(dfa, c)
    rec = linear_recurrence(dfa.counts(40))
    print(f"{group}/{name}: k={dfa.k} states={dfa.n_states} validated to 30: {report.passed}")
    print("   recurrence:", [str(x) for x in rec.coefficients])

G, X = builtin("ZxC2", "ta")
dfa = infer_with_escalation(bfs_census(G, X, 20), 12)
print()
print(dfa.to_text())
