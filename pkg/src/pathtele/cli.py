"""Command-line experiment runner.

    pathtele teleport-six --visibility 0.83 --out six.csv
    pathtele sweep-visibility --grid 0,0.5,1 --format json --out sweep.json
    pathtele characterize-source --werner-p 0.962

Exit status: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .config import EXPERIMENTS, ConfigError, ExperimentConfig, load_config
from .experiments import Table, run_experiment

log = logging.getLogger("pathtele")

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _grid(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pathtele", description="Path-encoded teleportation experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="YAML or JSON experiment file")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--seed", type=int)
        p.add_argument("--mode", choices=["exact", "sampled"])
        p.add_argument("--n-events", type=int)
        p.add_argument("--werner-p", type=float)
        p.add_argument("--visibility", type=float)
        p.add_argument("--path1-depol", type=float)
        if name == "sweep-visibility":
            p.add_argument("--grid", type=_grid, help="comma-separated visibilities")
    return parser


def _csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def render_csv(table: Table, config: ExperimentConfig) -> str:
    buf = io.StringIO()
    for key, value in table.metadata.items():
        buf.write(f"# {key}: {json.dumps(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_csv_value(v) for v in row])
    return buf.getvalue()


def render_json(table: Table, config: ExperimentConfig) -> str:
    doc = {
        "config": config.model_dump(exclude={"out"}),
        "metadata": table.metadata,
        "rows": [dict(zip(table.columns, row)) for row in table.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    overrides = {
        "out": args.out,
        "format": args.format,
        "seed": args.seed,
        "mode": args.mode,
        "n_events": args.n_events,
        "noise.werner_p": args.werner_p,
        "noise.path_visibility": args.visibility,
        "noise.path1_depolarizing": args.path1_depol,
        "visibility_grid": getattr(args, "grid", None),
    }
    try:
        config = load_config(args.config, args.command, overrides)
        table = run_experiment(config)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = (render_json if config.format == "json" else render_csv)(table, config)
    if config.out is None or config.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(Path(config.out), "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {config.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    log.info("wrote %s (%d rows)", config.out, len(table.rows))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
