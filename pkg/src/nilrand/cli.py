"""Command line front end.

Subcommands: classify and order for exact one-off computations, predict for
the closed-form tables, simulate for the Monte Carlo campaigns (CSV plus
optional JSON output), appendix for the arithmetic-statistics checks.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import arithstat, experiments, predict
from .heiscalc import MalcevTriple
from .quotients import classify_one_relator, heis_quotient_order

_SIM_KINDS = {
    "heatmap": experiments.RANK_HEATMAP,
    "heis-table": experiments.HEIS_TABLE,
    "balanced-orders": experiments.BALANCED_ORDERS,
    "dd-census": experiments.DD_CENSUS,
}


def _parse_relators(text: str) -> list[MalcevTriple]:
    relators = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        i, j, k = (int(x) for x in part.split(","))
        relators.append(MalcevTriple(i, j, k))
    if not relators:
        raise argparse.ArgumentTypeError("no relators given")
    return relators


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilrand",
        description="Exact algebra and Monte Carlo experiments for random "
                    "nilpotent groups and Heisenberg quotients")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a one-relator quotient")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("order", help="order data of a multi-relator quotient")
    p.add_argument("--relators", type=_parse_relators, required=True,
                   metavar='"i,j,k;i,j,k;..."')

    p = sub.add_parser("predict", help="closed-form probability tables")
    psub = p.add_subparsers(dest="predict_command", required=True)
    pt = psub.add_parser("table", help="cyclic-probability table")
    pt.add_argument("--max-m", type=int, default=10)

    p = sub.add_parser("simulate", help="run a Monte Carlo campaign")
    p.add_argument("campaign", choices=sorted(_SIM_KINDS))
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--r-min", type=int, default=1)
    p.add_argument("--r-max", type=int, default=1)
    p.add_argument("--len", type=int, default=1000, dest="length")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="FILE.csv")
    p.add_argument("--json", dest="json_out", metavar="FILE.json")

    p = sub.add_parser("appendix", help="arithmetic-statistics checks")
    p.add_argument("check",
                   choices=["uniformity", "primitivity", "det-gcd", "monotonicity"])
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--len", type=int, default=1000, dest="length")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mod", type=int, default=5, help="modulus for uniformity")
    p.add_argument("--k", type=int, default=3, help="matrix count for det-gcd")

    return parser


def _cmd_classify(args) -> int:
    desc = classify_one_relator(MalcevTriple(args.i, args.j, args.k))
    _emit(dataclasses.asdict(desc))
    return 0


def _cmd_order(args) -> int:
    qo = heis_quotient_order(args.relators)
    out = dataclasses.asdict(qo)
    out["order"] = qo.order if qo.is_finite else "INFINITE"
    _emit(out)
    return 0


def _cmd_predict(args) -> int:
    _emit(predict.cyclic_table(args.max_m))
    return 0


def _cmd_simulate(args) -> int:
    cfg = experiments.ExperimentConfig(
        kind=_SIM_KINDS[args.campaign], m=args.m, r_min=args.r_min,
        r_max=args.r_max, length=args.length, trials=args.trials,
        seed=args.seed)
    report = experiments.run(cfg)
    experiments.write_csv(report, args.out)
    if args.json_out:
        experiments.write_json(report, args.json_out)
    comparison = experiments.compare_with_predictions(report)
    _emit(comparison)
    return 0


def _cmd_appendix(args) -> int:
    if args.check == "monotonicity":
        dist = arithstat.exact_coord_dist(args.m, min(args.length, 512))
        _emit({"m": args.m, "len": dist.len,
               "monotone": arithstat.check_monotonicity(dist)})
    elif args.check == "uniformity":
        dev = arithstat.residue_deviation(
            args.m, args.length, args.mod, args.trials, args.seed)
        _emit({"m": args.m, "mod": args.mod, "trials": args.trials,
               "max_deviation": dev})
    elif args.check == "primitivity":
        freq = arithstat.primitivity_frequency(
            args.m, args.length, args.trials, args.seed)
        _emit({"m": args.m, "trials": args.trials, "frequency": freq,
               "predicted": predict.prob_primitive(args.m).value})
    else:
        rep = arithstat.det_gcd_report(
            args.m, args.k, args.length, args.trials, args.seed)
        _emit({"m": args.m, "k": args.k, "trials": rep.trials,
               "freq_gcd_one": rep.freq_gcd_one,
               "freq_any_singular": rep.freq_any_singular,
               "predicted": rep.predicted.value})
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "classify": _cmd_classify,
        "order": _cmd_order,
        "predict": _cmd_predict,
        "simulate": _cmd_simulate,
        "appendix": _cmd_appendix,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
