"""Trainer CLI: train, ablate, gen-corpus.

Exit codes follow the extractor's convention: 0 success, 1 usage error
(including invalid config/grid files), 2 data or I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .ablation import format_table, run_ablation
from .config import AblationConfig, InvalidConfig, load_config, load_grid
from .data import DatasetFormatError, UnlabeledData
from .synth import IoFailure, generate_corpus
from .train import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_EPOCHS,
    DEFAULT_FOLDS,
    SingleClassFold,
    train,
    write_report,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="apivec-trainer", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    train_cmd = commands.add_parser("train", help="cross-validated training")
    train_cmd.add_argument("--data", required=True, metavar="DIR")
    train_cmd.add_argument("--config", default=None, metavar="FILE")
    train_cmd.add_argument("--folds", type=int, default=DEFAULT_FOLDS)
    train_cmd.add_argument("--epochs", type=int, default=DEFAULT_EPOCHS, metavar="E")
    train_cmd.add_argument("--seed", type=int, default=0, metavar="S")
    train_cmd.add_argument("--batch-size", type=int, default=DEFAULT_BATCH_SIZE, metavar="B")
    train_cmd.add_argument("--out", default=None, metavar="DIR")

    ablate_cmd = commands.add_parser("ablate", help="run a configuration grid")
    ablate_cmd.add_argument("--data", required=True, metavar="DIR")
    ablate_cmd.add_argument("--grid", required=True, metavar="FILE")
    ablate_cmd.add_argument("--folds", type=int, default=DEFAULT_FOLDS)
    ablate_cmd.add_argument("--epochs", type=int, default=5, metavar="E")
    ablate_cmd.add_argument("--seed", type=int, default=0, metavar="S")
    ablate_cmd.add_argument("--batch-size", type=int, default=DEFAULT_BATCH_SIZE, metavar="B")
    ablate_cmd.add_argument("--out", default=None, metavar="DIR")

    synth_cmd = commands.add_parser("gen-corpus", help="generate a labeled synthetic corpus")
    synth_cmd.add_argument("--out", required=True, metavar="DIR")
    synth_cmd.add_argument("--samples", type=int, default=200, metavar="N")
    synth_cmd.add_argument("--malicious-fraction", type=float, default=0.5, metavar="F")
    synth_cmd.add_argument("--seed", type=int, default=0, metavar="S")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "train":
            config = load_config(args.config) if args.config else AblationConfig()
            report = train(
                args.data,
                config,
                folds=args.folds,
                epochs=args.epochs,
                seed=args.seed,
                batch_size=args.batch_size,
            )
            s = report.summary
            print(
                f"{args.folds}-fold CV over {args.epochs} epochs in {report.wall_time_s:.1f}s: "
                f"AUC {s['auc_mean']:.4f} ±{s['auc_ci95']:.4f}, "
                f"ACC {s['acc_mean']:.4f} ±{s['acc_ci95']:.4f}, "
                f"recall@0.1%FPR {s['recall_at_fpr_mean']:.4f} ±{s['recall_at_fpr_ci95']:.4f}"
            )
            if args.out:
                write_report(report, args.out)
                print(f"report.json and roc.csv written to {args.out}")
        elif args.command == "ablate":
            grid = load_grid(args.grid)
            reports = run_ablation(
                args.data,
                grid,
                folds=args.folds,
                epochs=args.epochs,
                seed=args.seed,
                batch_size=args.batch_size,
                out_dir=args.out,
            )
            print(format_table(reports))
            if args.out:
                print(f"per-config reports and comparison.json written to {args.out}")
        elif args.command == "gen-corpus":
            try:
                label_file = generate_corpus(
                    args.samples, args.malicious_fraction, args.seed, args.out
                )
            except ValueError as exc:
                print(f"apivec-trainer: error: {exc}", file=sys.stderr)
                return 1
            print(f"wrote {args.samples} reports and {label_file}")
    except InvalidConfig as exc:
        print(f"apivec-trainer: error: {exc}", file=sys.stderr)
        return 1
    except (DatasetFormatError, UnlabeledData, SingleClassFold, IoFailure, OSError) as exc:
        print(f"apivec-trainer: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
