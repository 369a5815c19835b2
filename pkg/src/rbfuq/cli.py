"""Command-line front end.

Subcommands:

* ``sample``           write the first N mapped low-discrepancy points as CSV
* ``mean``             run the full mean-estimation pipeline once
* ``study``            run a convergence study, write CSV + JSON sidecar
* ``reference``        compute and store a reference mean field
* ``validate-config``  check a config file and exit

Exit codes: 0 success, 2 configuration error (including usage errors),
3 numerical failure (singular or unusable collocation system),
4 external-solver failure.  Flags override config keys, which override
package defaults.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .collocation import SingularGramError, assemble_gram
from .config import ConfigError, RunConfig, load_config
from .models import External, ExternalError, write_qoi
from .param_space import halton_points
from .quadrature import cc_rule, estimate_mean, kernel_moments, moment_weights
from .study import (
    StudyError,
    evaluate_samples,
    kernel_reference,
    run_study,
    write_report,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_EXTERNAL = 4


def _load(args) -> RunConfig:
    cfg = load_config(args.config)
    if getattr(args, "jobs", None) is not None:
        cfg = _replace(cfg, jobs=args.jobs)
    if getattr(args, "out", None) is not None:
        cfg = _replace(cfg, out_dir=args.out)
    if getattr(args, "n", None) is not None:
        cfg = _replace(cfg, n=args.n)
    return cfg


def _replace(cfg: RunConfig, **kw) -> RunConfig:
    import dataclasses

    return dataclasses.replace(cfg, **kw)


def _out_path(cfg: RunConfig, name: str) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return os.path.join(cfg.out_dir, name)


def _format_row(values) -> str:
    return ",".join(format(float(v), ".17g") for v in values)


def cmd_sample(args) -> int:
    cfg = _load(args)
    n = cfg.sample_count()
    rows = halton_points(cfg.domain, n).points if n > 0 else []
    path = _out_path(cfg, "points.csv")
    header = ",".join(f"y{d + 1}" for d in range(cfg.domain.dim))
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(_format_row(row) + "\n")
    print(f"wrote {n} points to {path}")
    return EXIT_OK


def _print_plan(cfg: RunConfig, n: int) -> None:
    rule = cc_rule(cfg.domain, cfg.level, max_points=cfg.max_quad_points)
    print(f"samples: {n}")
    print(f"collocation system: {n} x {n}")
    print(
        f"quadrature: level {cfg.level}, {rule.points_per_dim}^{cfg.domain.dim}"
        f" = {rule.npoints} points"
    )
    if isinstance(cfg.model, External):
        print(f"external command: {cfg.model.command}")
        print(f"sample root: {cfg.model.samples_dir}")


def cmd_mean(args) -> int:
    cfg = _load(args)
    n = cfg.sample_count()
    setting = cfg.first_kernel()
    if args.dry_run:
        _print_plan(cfg, n)
        return EXIT_OK
    points = halton_points(cfg.domain, n)
    table = evaluate_samples(cfg.model, points, jobs=cfg.jobs)
    rule = cc_rule(cfg.domain, cfg.level, max_points=cfg.max_quad_points)
    spec = setting.spec(cfg.domain.dim)
    gram = assemble_gram(spec, points)
    b = kernel_moments(spec, points, rule)
    weights = moment_weights(gram, setting.regularization, b)
    mean = estimate_mean(weights, table)
    mean_path = _out_path(cfg, "mean.bin")
    write_qoi(mean_path, mean)
    weights_path = _out_path(cfg, "weights.csv")
    header = "index," + ",".join(f"y{d + 1}" for d in range(cfg.domain.dim)) + ",weight"
    with open(weights_path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for i, (row, w) in enumerate(zip(points.points, weights.omega)):
            fh.write(f"{i}," + _format_row(row) + "," + format(w, ".17g") + "\n")
    if mean.size == 1:
        print(f"mean estimate: {mean[0]:.17g}")
    print(f"wrote {mean_path} ({mean.size} values) and {weights_path}")
    return EXIT_OK


def cmd_study(args) -> int:
    cfg = _load(args)
    study_cfg = cfg.study()
    if args.dry_run:
        n_max = study_cfg.schedule[-1]
        if study_cfg.reference.kind == "kernel":
            n_max = max(n_max, study_cfg.reference.n_max)
        _print_plan(cfg, n_max)
        print(f"schedule: {list(study_cfg.schedule)}")
        print(f"kernels: {[k.column for k in study_cfg.kernels]}")
        return EXIT_OK
    report = run_study(study_cfg)
    csv_path, json_path = write_report(report, _out_path(cfg, cfg.csv_name))
    for column in report.columns:
        order = report.orders[column]
        shown = "n/a" if order is None else f"{order:.3f}"
        print(f"{column}: final error {report.errors[column][-1]:.3e}, order {shown}")
    print(f"wrote {csv_path} and {json_path}")
    return EXIT_OK


def cmd_reference(args) -> int:
    cfg = _load(args)
    ref = cfg.reference
    if args.dry_run:
        n = ref.n_max if ref.kind == "kernel" else 0
        _print_plan(cfg, n)
        return EXIT_OK
    if ref.kind == "exact":
        field = cfg.model.exact_mean()
        meta = {"kind": "exact"}
    else:
        study_cfg = _reference_study(cfg)
        field = kernel_reference(study_cfg, ref.n_max, ref.kernel)
        meta = {
            "kind": "kernel",
            "n_max": ref.n_max,
            "kernel": ref.kernel.column,
        }
    path = _out_path(cfg, "reference.bin")
    write_qoi(path, field.values)
    meta_path = _out_path(cfg, "reference.json")
    with open(meta_path, "w", newline="\n") as fh:
        json.dump({**meta, "m": int(field.m)}, fh, indent=2)
        fh.write("\n")
    print(f"wrote {path} ({field.m} values)")
    return EXIT_OK


def _reference_study(cfg: RunConfig):
    # kernel_reference only needs model/domain/level plumbing; build a
    # minimal single-point-schedule study around the reference kernel.
    from .study import StudyConfig

    return StudyConfig(
        model=cfg.model,
        domain=cfg.domain,
        kernels=(cfg.reference.kernel,),
        schedule=(1,),
        level=cfg.level,
        norm=cfg.norm,
        reference=cfg.reference,
        jobs=cfg.jobs,
        max_quad_points=cfg.max_quad_points,
        fit_window=cfg.fit_window,
    )


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    if cfg.schedule is not None and cfg.kernels:
        cfg.study()
    print(f"config ok: {args.config}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbfuq",
        description="Kernel-based stochastic collocation for forward UQ",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_n=False):
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--jobs", type=int, help="max concurrent external solves")
        p.add_argument("--out", help="output directory (overrides config)")
        p.add_argument("--dry-run", action="store_true", help="print the plan only")
        if with_n:
            p.add_argument("--n", type=int, help="sample count (overrides config)")

    p = sub.add_parser("sample", help="write the first N collocation points")
    common(p, with_n=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("mean", help="estimate the mean once")
    common(p, with_n=True)
    p.set_defaults(func=cmd_mean)

    p = sub.add_parser("study", help="run a convergence study")
    common(p)
    p.set_defaults(func=cmd_study)

    p = sub.add_parser("reference", help="compute and store a reference mean")
    common(p)
    p.set_defaults(func=cmd_reference)

    p = sub.add_parser("validate-config", help="check a config file")
    p.add_argument("--config", required=True, help="JSON config file")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SingularGramError, StudyError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ExternalError as exc:
        print(f"external solver failure: {exc}", file=sys.stderr)
        return EXIT_EXTERNAL
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
