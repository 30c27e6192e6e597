"""Command-line entry point.

Subcommands mirror the three-step methodology: `adder-metrics` (functional
characterization), `ber-sweep` / `pos-tag` (application accuracy), `dse`
(join with hardware costs and explore). Every output file gets a
.manifest.json sibling recording version, resolved configuration, seed and
input digests; rerunning with the recorded parameters reproduces the
output byte for byte.
"""

import argparse
import dataclasses
import glob
import hashlib
import json
import os
import secrets
import sys
import time

from . import __version__
from .adders import builtin_from_spec, error_metrics, load_netlist
from .dse import (emit_report, filter_budget, join_points, load_accuracy,
                  load_costs, pareto_front, savings_report)
from .errors import AcslabError, ConfigError
from .pipeline import MODULATIONS, PipelineConfig, ber_sweep, write_ber_csv
from .pos import HmmModel, accuracy, float_viterbi, quantize_hmm, tag

NETLIST_EXTS = (".net", ".nl", ".netlist")


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(out_path, subcommand, config, seed, inputs):
    manifest = {
        "tool": "acslab",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "seed": seed,
        "inputs": {p: _sha256(p) for p in inputs if p and os.path.exists(p)},
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    path = out_path.rstrip("/") + ".manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return path


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(32)
    print(f"seed not given; generated seed={seed}")
    return seed


def _netlist_files(directory):
    files = []
    for ext in NETLIST_EXTS:
        files.extend(glob.glob(os.path.join(directory, f"*{ext}")))
    return sorted(files)


def _load_netlist_file(path):
    with open(path, encoding="utf-8") as fh:
        return load_netlist(fh.read(), name=os.path.splitext(os.path.basename(path))[0])


def _resolve_adders(spec):
    """--adders value: a netlist directory or comma-separated builtin specs."""
    if os.path.isdir(spec):
        files = _netlist_files(spec)
        if not files:
            raise ConfigError(f"no netlist files in {spec}")
        return [_load_netlist_file(f) for f in files], files
    return [builtin_from_spec(tok) for tok in spec.split(",") if tok.strip()], []


def cmd_adder_metrics(args):
    adders = []
    inputs = []
    failures = []
    for spec in args.builtin or []:
        for tok in spec.split(","):
            if tok.strip():
                adders.append(builtin_from_spec(tok))
    if args.netlist_dir:
        files = _netlist_files(args.netlist_dir)
        if not files:
            print(f"error: no netlist files in {args.netlist_dir}", file=sys.stderr)
            return 1
        for f in files:
            try:
                adders.append(_load_netlist_file(f))
                inputs.append(f)
            except AcslabError as exc:
                failures.append((f, str(exc)))
    if not adders and not failures:
        print("error: no adders given (use --builtin and/or --netlist-dir)",
              file=sys.stderr)
        return 2
    seed = _resolve_seed(args)
    os.makedirs(args.out, exist_ok=True)
    written = []
    for adder in adders:
        report = error_metrics(adder, mode=args.mode, count=args.samples,
                               seed=seed, jobs=args.jobs)
        path = os.path.join(args.out, f"{adder.name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
        written.append(path)
    cfg = {"mode": args.mode, "samples": args.samples, "jobs": args.jobs,
           "adders": [a.name for a in adders]}
    _write_manifest(args.out, "adder-metrics", cfg, seed, inputs)
    print(f"wrote {len(written)} report(s) to {args.out}")
    for f, msg in failures:
        print(f"error: {f}: {msg}", file=sys.stderr)
    return 1 if failures else 0


def cmd_ber_sweep(args):
    cfg = PipelineConfig.from_json(args.config) if args.config else PipelineConfig()
    seed = _resolve_seed(args)
    cfg = dataclasses.replace(cfg, master_seed=seed)
    if args.runs:
        cfg = dataclasses.replace(cfg, runs_per_snr=args.runs)
    if args.modulation and args.modulation != "all":
        cfg = dataclasses.replace(cfg, modulation=args.modulation)
    errs = cfg.validation_errors()
    if errs:
        for e in errs:
            print(f"config error: {e}", file=sys.stderr)
        return 2
    mods = list(MODULATIONS) if args.modulation == "all" else [cfg.modulation]
    adders, netlist_files = _resolve_adders(args.adders)
    with open(args.corpus, encoding="utf-8") as fh:
        corpus = fh.read()
    rows = ber_sweep(cfg, adders, corpus, modulations=mods, jobs=args.jobs)
    write_ber_csv(rows, args.out)
    _write_manifest(args.out, "ber-sweep", cfg.to_dict(), seed,
                    [args.config, args.corpus, *netlist_files])
    print(f"wrote {len(rows)} row(s) to {args.out}")
    return 0


def cmd_pos_tag(args):
    model = HmmModel.from_json(args.model)
    with open(args.sentences, encoding="utf-8") as fh:
        sentences = [line.split() for line in fh.read().splitlines() if line.strip()]
    with open(args.gold, encoding="utf-8") as fh:
        gold = [line.split() for line in fh.read().splitlines() if line.strip()]
    if not sentences:
        print("error: no sentences to tag", file=sys.stderr)
        return 2
    problems = []
    if len(sentences) != len(gold):
        problems.append(f"{len(sentences)} sentences but {len(gold)} gold lines")
    for i, (s, g) in enumerate(zip(sentences, gold), start=1):
        if len(s) != len(g):
            problems.append(f"sentence {i}: {len(s)} words but {len(g)} gold tags")
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return 2
    adders, netlist_files = _resolve_adders(args.adders)
    qhmm = quantize_hmm(model, scale=args.scale, clamp=args.clamp)
    gold_flat = [t for g in gold for t in g]
    rows = []
    oracle = [t for s in sentences for t in float_viterbi(model, s)]
    rows.append(("float_oracle", accuracy(oracle, gold_flat), len(gold_flat)))
    for adder in adders:
        pred = [t for s in sentences for t in tag(qhmm, s, adder)]
        rows.append((adder.name, accuracy(pred, gold_flat), len(gold_flat)))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        fh.write("adder,accuracy_pct,tokens\n")
        for name, acc, tokens in rows:
            fh.write(f"{name},{acc!r},{tokens}\n")
    cfg = {"scale": args.scale, "clamp": args.clamp,
           "adders": [a.name for a in adders]}
    _write_manifest(args.out, "pos-tag", cfg, args.seed,
                    [args.model, args.sentences, args.gold, *netlist_files])
    print(f"wrote {len(rows)} row(s) to {args.out}")
    return 0


def cmd_dse(args):
    metric = {"ber": "ber", "accuracy": "accuracy_pct"}[args.metric] \
        if args.metric else None
    acc_rows = load_accuracy(args.accuracy, metric=metric,
                             modulation=args.modulation)
    costs = load_costs(args.costs)
    points = join_points(acc_rows, costs)
    candidates = [p for p in points if p.adder != args.baseline]
    budget = {}
    if args.max_ber is not None:
        budget["max_ber"] = args.max_ber
    if args.min_accuracy is not None:
        budget["min_accuracy_pct"] = args.min_accuracy
    if args.max_area is not None:
        budget["max_area"] = args.max_area
    if args.max_power is not None:
        budget["max_power"] = args.max_power
    if budget:
        candidates = filter_budget(candidates, **budget)
    if args.drop_corrupt:
        candidates = [p for p in candidates if not p.corrupt]
    front = pareto_front(candidates) if any(not p.corrupt for p in candidates) else []
    fmt = args.format or ("json" if args.out.endswith(".json") else "csv")
    emit_report(front, candidates, args.out, fmt=fmt)
    inputs = [args.accuracy, args.costs]
    if args.baseline:
        savings = savings_report(points, args.baseline)
        spath = os.path.splitext(args.out)[0] + ".savings.json"
        with open(spath, "w", encoding="utf-8") as fh:
            json.dump({"baseline": args.baseline, "savings": savings}, fh, indent=2)
            fh.write("\n")
        print(f"wrote savings vs {args.baseline} to {spath}")
    cfg = {"metric": args.metric, "modulation": args.modulation,
           "baseline": args.baseline, "budget": budget,
           "drop_corrupt": args.drop_corrupt}
    _write_manifest(args.out, "dse", cfg, args.seed, inputs)
    print(f"wrote {len(candidates)} point(s) ({len(front)} on the front) to {args.out}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="acslab",
        description="Approximate-adder Viterbi decoder exploration workbench")
    p.add_argument("--version", action="version", version=f"acslab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("adder-metrics", help="error-characterize adders")
    m.add_argument("--builtin", action="append",
                   help="comma list of builtin specs, e.g. exact:12,lower_or:12:6")
    m.add_argument("--netlist-dir", help="directory of gate netlist files")
    m.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    m.add_argument("--samples", type=int, help="sample count for sampled mode")
    m.add_argument("--seed", type=int)
    m.add_argument("--jobs", type=int, default=1)
    m.add_argument("--out", required=True, help="output directory of JSON reports")
    m.set_defaults(func=cmd_adder_metrics)

    b = sub.add_parser("ber-sweep", help="BER-vs-SNR sweep of the comm pipeline")
    b.add_argument("--config", help="pipeline config JSON")
    b.add_argument("--adders", required=True,
                   help="netlist directory or comma list of builtin specs")
    b.add_argument("--corpus", required=True, help="UTF-8 text to transmit")
    b.add_argument("--modulation", choices=[*MODULATIONS, "all"])
    b.add_argument("--runs", type=int, help="override runs per SNR point")
    b.add_argument("--seed", type=int)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", required=True, help="output CSV")
    b.set_defaults(func=cmd_ber_sweep)

    t = sub.add_parser("pos-tag", help="tag sentences with approximate ACS taggers")
    t.add_argument("--model", required=True, help="HMM model JSON")
    t.add_argument("--sentences", required=True, help="one sentence per line")
    t.add_argument("--gold", required=True, help="one gold tag line per sentence")
    t.add_argument("--adders", required=True,
                   help="netlist directory or comma list of builtin specs")
    t.add_argument("--scale", type=float, default=1024.0)
    t.add_argument("--clamp", type=float, default=32.0)
    t.add_argument("--seed", type=int)
    t.add_argument("--jobs", type=int, default=1,
                   help="accepted for uniformity; tagging runs serially")
    t.add_argument("--out", required=True, help="output CSV")
    t.set_defaults(func=cmd_pos_tag)

    d = sub.add_parser("dse", help="join accuracy with costs, explore the space")
    d.add_argument("--accuracy", required=True, help="accuracy CSV")
    d.add_argument("--costs", required=True, help="cost CSV")
    d.add_argument("--metric", choices=["ber", "accuracy"])
    d.add_argument("--modulation", choices=list(MODULATIONS))
    d.add_argument("--baseline", help="baseline adder for savings")
    d.add_argument("--max-ber", type=float)
    d.add_argument("--min-accuracy", type=float)
    d.add_argument("--max-area", type=float)
    d.add_argument("--max-power", type=float)
    d.add_argument("--drop-corrupt", action="store_true",
                   help="drop corrupt-flagged points from the report")
    d.add_argument("--format", choices=["csv", "json"])
    d.add_argument("--seed", type=int,
                   help="recorded in the manifest; dse itself is deterministic")
    d.add_argument("--jobs", type=int, default=1,
                   help="accepted for uniformity; joins run serially")
    d.add_argument("--out", required=True, help="output report (csv or json)")
    d.set_defaults(func=cmd_dse)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AcslabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
