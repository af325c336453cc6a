"""Command-line entry point: train, gridsearch, convergence, plot, render."""

from __future__ import annotations

import argparse
import sys

from .gridworld import encode_full, encode_partial, parse_env_id, render_rgb, reset
from .harness import (
    beta_grid_search,
    best_beta,
    emit_plot,
    load_config,
    run_experiment,
    steps_to_convergence,
)


def _parse_overrides(pairs):
    overrides = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise SystemExit(f"--override expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        overrides[key.strip()] = value.strip()
    return overrides


def cmd_train(args) -> int:
    config = load_config(args.config, _parse_overrides(args.override))
    path = run_experiment(config, args.seed)
    print(path)
    return 0


def cmd_gridsearch(args) -> int:
    config = load_config(args.config, _parse_overrides(args.override))
    grid = [float(v) for v in args.grid.split(",") if v.strip()]
    rows = beta_grid_search(config, grid)
    print(f"{'beta':>10}  {'median steps':>12}")
    for beta, steps in rows:
        print(f"{beta:>10g}  {'-' if steps is None else steps:>12}")
    print(f"best beta: {best_beta(rows):g}")
    return 0


def cmd_convergence(args) -> int:
    steps = steps_to_convergence(args.metrics, args.optimal,
                                 threshold=args.threshold, window=args.window)
    print("-" if steps is None else steps)
    return 0


def cmd_plot(args) -> int:
    labels = args.labels.split(",") if args.labels else args.metrics
    emit_plot(args.metrics, labels, args.optimal, args.out)
    print(args.out)
    return 0


def cmd_render(args) -> int:
    config = parse_env_id(args.env, seed=args.seed)
    state = reset(config, args.seed)
    tensor = encode_full(state) if args.view == "full" else encode_partial(state)
    if args.format == "enc":
        with open(args.out, "w") as fh:
            w, h, _ = tensor.shape
            for y in range(h):
                fh.write(" ".join(
                    ",".join(str(int(v)) for v in tensor[x, y])
                    for x in range(w)) + "\n")
    else:
        from PIL import Image
        image = render_rgb(tensor, config.tile_size)
        Image.fromarray(image).save(args.out, format="PNG")
    print(args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridcurio")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="run one training experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--override", action="append", metavar="key=value")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("gridsearch", help="grid search over beta")
    p.add_argument("--config", required=True)
    p.add_argument("--grid", required=True, help="comma-separated betas")
    p.add_argument("--override", action="append", metavar="key=value")
    p.set_defaults(func=cmd_gridsearch)

    p = sub.add_parser("convergence", help="steps-to-convergence of a run")
    p.add_argument("--metrics", required=True)
    p.add_argument("--optimal", type=float, required=True)
    p.add_argument("--threshold", type=float, default=0.95)
    p.add_argument("--window", type=int, default=1)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("plot", help="SVG learning curves")
    p.add_argument("metrics", nargs="+")
    p.add_argument("--labels", help="comma-separated, one per metrics file")
    p.add_argument("--optimal", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("render", help="dump an observation to disk")
    p.add_argument("--env", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--view", choices=["full", "partial"], required=True)
    p.add_argument("--format", choices=["enc", "rgb"], required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
