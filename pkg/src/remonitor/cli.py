"""Command-line front end: ``remonitor validate | analyze | example``."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .documents import DocumentError, dumps, load_instance, pd_document
from .graphs import auxiliary_graph, bi_auxiliary_graph, equivalence_classes, minimal_coloring, support_graph, to_dot
from .powergame import REPORTED_PAYOFFS, PowerGame
from .prob_core import FLOAT_TOL, ProbabilityError
from .report import analyze

EXIT_HOLDS, EXIT_NOT_ESTABLISHED, EXIT_ERROR = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="remonitor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check an instance document")
    v.add_argument("file")
    v.add_argument("--float", action="store_true", dest="float_mode")
    v.add_argument("--tol", type=float, default=FLOAT_TOL)

    a = sub.add_parser("analyze", help="analyze an instance document and print a JSON report")
    a.add_argument("file")
    a.add_argument("--mode", choices=("majority", "support"), default="majority")
    a.add_argument("--epsilon", default=None, help="target precision, e.g. 0.19 or 19/100")
    a.add_argument("--oneshot", action="store_true")
    a.add_argument("--simulate", type=int, default=None, metavar="N")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--workers", type=int, default=1)
    a.add_argument("--float", action="store_true", dest="float_mode")
    a.add_argument("--tol", type=float, default=FLOAT_TOL)
    a.add_argument("--dot-graphs", default=None, metavar="DIR")
    a.add_argument("--trials-csv", default=None, metavar="PATH")
    a.add_argument("--output", "-o", default=None)

    e = sub.add_parser("example", help="emit a bundled example")
    esub = e.add_subparsers(dest="example", required=True)
    pd = esub.add_parser("pd", help="the two-player power-control monitoring instance")
    pd.add_argument("--x", default="1/10")
    pd.add_argument("--xp", default="1/10")
    pd.add_argument("--y", default="1/10")
    pd.add_argument("--broadcast", choices=("noiseless", "bsc", "none"), default="noiseless")
    pd.add_argument("--flip", default="1/10", help="crossover probability of the bsc broadcast")
    pg = esub.add_parser("powergame", help="evaluate SINR and energy efficiency at a power pair")
    pg.add_argument("--p1", type=float, required=True)
    pg.add_argument("--p2", type=float, required=True)
    pg.add_argument("--M", type=int, default=2)
    pg.add_argument("--N", type=float, default=2.0)
    pg.add_argument("--g1", type=float, default=1.0)
    pg.add_argument("--g2", type=float, default=1.0)
    pg.add_argument("--sigma2", type=float, default=1.0)
    pg.add_argument("--reported", action="store_true", help="also print the quoted payoff matrix")
    return parser


def _write_dot(inst, directory: str, mode: str) -> None:
    os.makedirs(directory, exist_ok=True)
    for p in inst.players:
        aux = auxiliary_graph(equivalence_classes(p.monitoring, "majority"))
        with open(os.path.join(directory, f"auxiliary_{p.name}.dot"), "w") as fh:
            fh.write(to_dot(aux, f"auxiliary_{p.name}"))
        with open(os.path.join(directory, f"support_{p.name}.dot"), "w") as fh:
            fh.write(to_dot(support_graph(p.monitoring), f"support_{p.name}"))
    bi = bi_auxiliary_graph(inst, mode)
    with open(os.path.join(directory, "bi_auxiliary.dot"), "w") as fh:
        fh.write(to_dot(bi, "bi_auxiliary", minimal_coloring(bi)))


def _validate(args) -> int:
    try:
        load_instance(args.file, exact=not args.float_mode, tol=args.tol)
    except (OSError, DocumentError) as exc:
        print(f"invalid: {exc}")
        return EXIT_ERROR
    print("valid")
    return EXIT_HOLDS


def _analyze(args) -> int:
    try:
        inst, doc = load_instance(args.file, exact=not args.float_mode, tol=args.tol)
        report, holds, sim = analyze(
            inst,
            mode=args.mode,
            epsilon=args.epsilon,
            oneshot=args.oneshot,
            simulate=args.simulate,
            seed=args.seed,
            workers=args.workers,
            reference=doc.get("reference"),
            keep_outcomes=args.trials_csv is not None,
        )
    except (OSError, DocumentError, ProbabilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = dumps(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.dot_graphs:
        _write_dot(inst, args.dot_graphs, args.mode)
    if args.trials_csv and sim is not None:
        with open(args.trials_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["trial"] + [f"error_{p.name}" for p in inst.players])
            for t, row in enumerate(sim.outcomes):
                writer.writerow([t] + [int(v) for v in row])
    return EXIT_HOLDS if holds else EXIT_NOT_ESTABLISHED


def _example(args) -> int:
    if args.example == "pd":
        try:
            doc = pd_document(args.x, args.xp, args.y, args.broadcast, args.flip)
        except (ValueError, ProbabilityError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_HOLDS
    game = PowerGame(M=args.M, N=args.N, gain1=args.g1, gain2=args.g2, sigma2=args.sigma2)
    try:
        sinr = game.sinr(args.p1, args.p2)
        utilities = game.utilities(args.p1, args.p2)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out = {"powers": [args.p1, args.p2], "sinr": list(sinr), "utility": list(utilities)}
    if args.reported:
        out["reported_payoffs"] = {k: list(v) for k, v in REPORTED_PAYOFFS.items()}
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_HOLDS


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "validate":
        return _validate(args)
    if args.command == "analyze":
        return _analyze(args)
    return _example(args)


if __name__ == "__main__":
    sys.exit(main())
