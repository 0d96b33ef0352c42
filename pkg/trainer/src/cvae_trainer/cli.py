"""Command-line interface.

* ``train --data DIR --out CKPT --epochs E --seed S``: fit the model on an
  exported scene dataset; writes the checkpoint and a loss-curve CSV next
  to it.
* ``infer --ckpt CKPT --scene condition.pras --seed S --out map.dmap``:
  decode one guidance raster from a prior latent sample.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from .data import train_val_split
from .infer import infer_dmap
from .train import TrainConfig, load_checkpoint, train


def _cmd_train(args: argparse.Namespace) -> int:
    config = TrainConfig(
        learning_rate=args.lr,
        beta=args.beta,
        batch_size=args.batch_size,
        epochs=args.epochs,
        seed=args.seed,
    )
    train_set, _ = train_val_split(args.data)
    out = Path(args.out)
    losses = train(train_set, config, out, curve_path=out.with_suffix(".losses.csv"))
    print(f"trained {config.epochs} epochs on {len(train_set)} scenes; "
          f"loss {losses[0]:.2f} -> {losses[-1]:.2f}; checkpoint: {out}")
    return 0


def _cmd_infer(args: argparse.Namespace) -> int:
    model, _ = load_checkpoint(args.ckpt)
    infer_dmap(model, args.scene, args.seed, args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cvae-trainer", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train on an exported scene dataset")
    p.add_argument("--data", required=True, help="dataset directory (scene_* subdirs)")
    p.add_argument("--out", required=True, help="checkpoint output path")
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lr", type=float, default=0.001)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--batch-size", type=int, default=16)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("infer", help="emit a DMAP from a condition image")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--scene", required=True, help="condition.pras path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="DMAP output path")
    p.set_defaults(func=_cmd_infer)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
