"""Command-line entry point: ``qmonogamy <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import campaign
from .measures import DEFAULT_MEASURES, MeasureKind, OptimizerSettings
from .states import save_states


def _measures(text: str):
    if text.strip().lower() == "all":
        return DEFAULT_MEASURES
    return tuple(MeasureKind.parse(t) for t in text.split(",") if t.strip())


def _write(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _settings(args) -> OptimizerSettings:
    return OptimizerSettings(n_theta=args.grid_theta, n_phi=args.grid_phi, diameter_tol=args.simplex_tol)


def _add_scoring_args(p):
    p.add_argument("--in", dest="inp", required=True, help="state file (JSON)")
    p.add_argument("--measures", default="all", help="comma list of measures, or 'all' for the six default measures")
    p.add_argument("--nodal", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--grid-theta", type=int, default=OptimizerSettings.n_theta)
    p.add_argument("--grid-phi", type=int, default=OptimizerSettings.n_phi)
    p.add_argument("--simplex-tol", type=float, default=OptimizerSettings.diameter_tol)


def cmd_gen(args):
    entries = campaign.generate_states(args.family, args.n, args.count, args.seed, args.r)
    save_states(args.out, entries, family=args.family, base_seed=args.seed, n_qubits=args.n)
    return 0


def cmd_score(args):
    records = campaign.score_file(args.inp, _measures(args.measures), args.nodal, _settings(args), args.workers)
    campaign.write_records_csv(records, args.out)
    if args.json:
        campaign.write_report_json(records, args.json, {"input": args.inp, "measures": args.measures, "nodal": args.nodal})
    return 0


def cmd_verify(args):
    records = campaign.score_file(args.inp, _measures(args.measures), args.nodal, _settings(args), args.workers)
    campaign.write_report_json(records, args.report, {"input": args.inp, "measures": args.measures, "nodal": args.nodal})
    summary = campaign.summarize(records)
    for name, s in summary["by_measure"].items():
        print(
            f"{name:28s} records={s['records']:6d} fail_entropy={s['fail_entropy']} "
            f"fail_improved={s['fail_improved']} fail_x0={s['fail_x0']} max_x0={s['max_x0']:.6f}"
        )
    return 1 if summary["failing_records"] else 0


def cmd_campaign(args):
    cfg = campaign.CampaignConfig(
        family=args.family,
        n_qubits=args.n,
        count=args.count,
        base_seed=args.seed,
        measures=_measures(args.measures),
        nodal=args.nodal,
        settings=_settings(args),
        r=args.r,
        workers=args.workers,
        records_path=args.out,
        report_path=args.json,
        states_path=args.states,
    )
    campaign.run_campaign(cfg)
    return 0


def cmd_hist(args):
    rows = campaign.read_records_csv(args.inp)
    values = campaign.column_values(rows, args.column, args.measure)
    spec = campaign.HistogramSpec(args.column, args.bins, tuple(args.range) if args.range else None)
    _write(args.out, campaign.histogram_csv(campaign.histogram(values, spec)))
    return 0


def cmd_scatter(args):
    rows = campaign.read_records_csv(args.inp)
    points = campaign.scatter_export(rows, args.x, args.y, args.measure)
    _write(args.out, campaign.scatter_csv(points, args.x, args.y))
    return 0


def cmd_analytic(args):
    rows = campaign.analytic_table(args.family, args.n, args.sweep)
    _write(args.out, campaign.analytic_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmonogamy", description="Monogamy scores and their lower bounds on multiqubit states.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a state file")
    p.add_argument("--family", choices=campaign.FAMILIES, required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int, default=1, help="excitations for the dicke family")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("score", help="write monogamy records for a state file")
    _add_scoring_args(p)
    p.add_argument("--out", required=True, help="records CSV")
    p.add_argument("--json", help="optional JSON report with optimizer diagnostics")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("verify", help="check every bound; exit status 1 if any check fails")
    _add_scoring_args(p)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("campaign", help="generate and score in one step")
    p.add_argument("--family", choices=campaign.FAMILIES, required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--measures", default="all")
    p.add_argument("--nodal", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--grid-theta", type=int, default=OptimizerSettings.n_theta)
    p.add_argument("--grid-phi", type=int, default=OptimizerSettings.n_phi)
    p.add_argument("--simplex-tol", type=float, default=OptimizerSettings.diameter_tol)
    p.add_argument("--out", required=True, help="records CSV")
    p.add_argument("--json")
    p.add_argument("--states", help="also write the generated states here")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("hist", help="histogram one (possibly derived) record column")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--column", required=True, help="e.g. delta+entropy_a or x0")
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--measure", help="keep only rows of this measure")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("scatter", help="export two record columns as points")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--x", default="delta")
    p.add_argument("--y", default="neg_entropy")
    p.add_argument("--measure")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("analytic", help="closed-form reduced eigenvalue and entropy bound table")
    p.add_argument("--family", choices=("ghzw", "dicke", "ghz", "w"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sweep", type=int, default=11, help="grid points per amplitude axis")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analytic)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"qmonogamy: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
