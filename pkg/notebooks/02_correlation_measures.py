"""
Correlation measures on a few textbook states
=============================================

Every measure is evaluated on a ``BipartiteCut``, which caches marginals and
the measurement optimization so that several measures share the work.
"""

from qmonogamy import BipartiteCut, MeasureKind, evaluate, bell_state, w_state, ghz

cuts = {
    "bell A:B": BipartiteCut(bell_state(), [0]),
    "W pair A:B": BipartiteCut(w_state(3).reduced([0, 1]), [0]),
    "GHZ pair A:B": BipartiteCut(ghz(3).reduced([0, 1]), [0]),
    "W A:BC": BipartiteCut(w_state(3), [0]),
}

print(f"{'':14s}" + "".join(f"{k.name[:10]:>12s}" for k in MeasureKind))
for label, cut in cuts.items():
    row = []
    for kind in MeasureKind:
        try:
            row.append(f"{evaluate(kind, cut).raw:12.5f}")
        except ValueError:
            row.append(f"{'-':>12s}")
    print(f"{label:14s}" + "".join(row))

# %%
# Discord and work-deficit come out of a grid scan followed by a simplex
# refinement; the report says how far the refinement moved.

v = evaluate("discord", BipartiteCut(w_state(3).reduced([0, 1]), [0]))
print(v.basis, v.optimizer_report.as_dict())
