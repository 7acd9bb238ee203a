"""Command-line entry point: one binary, subcommand style.

Every command resolves a RunConfig (JSON file plus flag overrides), writes its
artifacts under the output directory, and drops a manifest recording the
resolved configuration, the package version, and SHA-256 digests of every
input it read, sufficient to re-run the command exactly.  Manifests carry no
wall-clock timestamps, so repeated runs with the same seed are byte-identical.
Failures print a single machine-parseable JSON line to stderr and exit 1.
"""
from __future__ import annotations

import argparse
import dataclasses
import csv as csv_mod
import hashlib
import json
import sys
from pathlib import Path


from . import __version__
from .agents import CohortSpec, generate_cohort
from .agents.cohort import DEMOGRAPHIC_COLUMNS
from .errors import GamesightError, InputError
from .features import (
    Dataset,
    behavioral_names,
    drop_low_coverage,
    drop_near_zero_variance,
    extract_features,
    label_correlations,
    names as catalog_names,
    prune_correlated,
)
from .games.levels import default_pack_dir, load_pack
from .ml import GridConfig, LeakageAudit, phase1_complete_labels, phase2_grid
from .ml.report import render_phase1_table
from .solvers import validate_level_pack
from .telemetry.store import parse_session, serialize_session

BEHAVIORAL_ROLES = {"behavioral", "derived", "derived_flag"}

DEFAULT_CONFIG = {
    "levels_dir": None,          # null = the shipped default pack
    "out_dir": "out",
    "store_dir": "store",
    "seed": 20250809,
    "cohort": {
        "n_participants": 132,
        "suitable_fraction": 0.6,
        "labeled_count": 39,
    },
    "preprocess": {
        "min_coverage": 0.7,
        "variance_eps": 1e-8,
        "correlation_threshold": 0.95,
    },
    "phase1": {"k_folds": 5},
    "phase2": {
        "k_folds": 5,
        "k_values": [5, 10, 15],
        "pca_components": 10,
        "correlation_threshold": 0.25,
    },
    "correlations": {"threshold": 0.25},
    "serve": {"bind": "127.0.0.1:8787"},
}


# ---------------------------------------------------------------------------
# config and manifest plumbing
# ---------------------------------------------------------------------------

def _merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(args) -> dict:
    config = dict(DEFAULT_CONFIG)
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.exists():
            raise InputError(f"config file not found: {path}")
        config = _merge(config, json.loads(path.read_text()))
    if getattr(args, "seed", None) is not None:
        config["seed"] = args.seed
    if getattr(args, "out", None):
        config["out_dir"] = args.out
    if getattr(args, "levels", None):
        config["levels_dir"] = args.levels
    if getattr(args, "k_folds", None) is not None:
        config["phase1"]["k_folds"] = args.k_folds
        config["phase2"]["k_folds"] = args.k_folds
    if getattr(args, "threshold", None) is not None:
        config["correlations"]["threshold"] = args.threshold
    if getattr(args, "oversample", None):
        config["phase2"]["oversample"] = args.oversample
    return config


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(out_dir: Path, command: str, config: dict,
                   inputs: list[Path], outputs: list[str]) -> None:
    digest_inputs = {}
    for p in sorted(set(str(i) for i in inputs)):
        path = Path(p)
        if path.is_file():
            digest_inputs[p] = _sha256(path)
        elif path.is_dir():
            for child in sorted(path.rglob("*")):
                if child.is_file():
                    digest_inputs[str(child)] = _sha256(child)
    manifest = {
        "command": command,
        "package": "gamesight",
        "version": __version__,
        "seed": config.get("seed"),
        "config": config,
        "inputs": digest_inputs,
        "outputs": sorted(outputs),
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"manifest_{command}.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _levels_dir(config: dict) -> Path:
    return Path(config["levels_dir"]) if config["levels_dir"] else default_pack_dir()


def _out_dir(config: dict) -> Path:
    out = Path(config["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_serve(args, config) -> int:  # pragma: no cover - blocking server loop
    from .telemetry.service import serve_forever
    host, _, port = config["serve"]["bind"].partition(":")
    serve_forever(host or "127.0.0.1", int(port or 8787), config["store_dir"],
                  _levels_dir(config))
    return 0


def cmd_validate_levels(args, config) -> int:
    levels = _levels_dir(config)
    pack = load_pack(levels)
    report = validate_level_pack(pack)
    out = _out_dir(config)
    (out / "level_validation.json").write_text(
        json.dumps(report.to_rows(), indent=2) + "\n")
    (out / "level_validation.txt").write_text(report.render() + "\n")
    write_manifest(out, "validate-levels", config, [levels],
                   ["level_validation.json", "level_validation.txt"])
    print(report.render())
    if not report.ok:
        failures = ", ".join(f"{r.game_id}/{r.stage_id}: {r.detail}"
                             for r in report.failures())
        raise InputError(f"level pack validation failed: {failures}")
    return 0


def _cohort_spec(config: dict) -> CohortSpec:
    c = config["cohort"]
    return CohortSpec(
        n_participants=int(c.get("n_participants", 132)),
        suitable_fraction=float(c.get("suitable_fraction", 0.6)),
        labeled_count=int(c.get("labeled_count", 39)),
        profile_noise_sd=float(c.get("profile_noise_sd", CohortSpec().profile_noise_sd)),
        seed=int(config["seed"]),
    )


def cmd_simulate(args, config) -> int:
    levels = _levels_dir(config)
    pack = load_pack(levels)
    report = validate_level_pack(pack)
    if not report.ok:
        raise InputError("level pack failed validation; run validate-levels")
    spec = _cohort_spec(config)
    cohort = generate_cohort(spec, pack)
    out = _out_dir(config)
    sessions_dir = out / "sessions"
    sessions_dir.mkdir(exist_ok=True)
    outputs = []
    for log in cohort.logs:
        path = sessions_dir / f"{log.session_id}.ndjson"
        path.write_text(serialize_session(log))
        outputs.append(f"sessions/{log.session_id}.ndjson")

    demo_path = out / "demographics.csv"
    with open(demo_path, "w", newline="") as f:
        writer = csv_mod.writer(f)
        writer.writerow(DEMOGRAPHIC_COLUMNS)
        for row in cohort.demographics:
            writer.writerow([row[c] for c in DEMOGRAPHIC_COLUMNS])
    truth_path = out / "ground_truth.csv"
    with open(truth_path, "w", newline="") as f:
        writer = csv_mod.writer(f)
        writer.writerow(["Session ID", "suitable", "labeled"])
        for log, label, labeled in zip(cohort.logs, cohort.labels, cohort.labeled_mask):
            writer.writerow([log.session_id, int(label), int(labeled)])
    outputs += ["demographics.csv", "ground_truth.csv"]
    write_manifest(out, "simulate", config, [levels], outputs)
    print(f"simulated {len(cohort.logs)} participants "
          f"({int(cohort.labeled_mask.sum())} labeled) -> {out}")
    return 0


def _read_demographics(path: Path) -> list[dict]:
    with open(path, newline="") as f:
        return list(csv_mod.DictReader(f))


def cmd_extract(args, config) -> int:
    out = _out_dir(config)
    sessions_dir = Path(args.sessions or out / "sessions")
    demo_path = Path(args.demographics or out / "demographics.csv")
    if not sessions_dir.is_dir():
        raise InputError(f"sessions directory not found: {sessions_dir}")
    logs = [parse_session(p.read_text()) for p in sorted(sessions_dir.glob("*.ndjson"))]
    demographics = _read_demographics(demo_path) if demo_path.exists() else []
    by_session = {d.get("Session ID", ""): d for d in demographics}
    by_code: dict[str, list[dict]] = {}
    for d in demographics:
        by_code.setdefault(d.get("Unique Gameplay Tracking Code", ""), []).append(d)

    rows, labels = [], []
    for log in logs:
        demo = by_session.get(log.session_id)
        if demo is None and log.tracking_code:
            candidates = by_code.get(log.tracking_code, [])
            if len(candidates) > 1:
                raise InputError(
                    f"tracking code {log.tracking_code} is ambiguous "
                    f"({len(candidates)} demographic rows); session ids required")
            demo = candidates[0] if candidates else None
        rows.append(extract_features(log, demo))
        raw = (demo or {}).get("Predicted Programming Suitability", "")
        labels.append(int(raw) if raw not in ("", None) else None)
    ds = Dataset(catalog_names(), rows, labels)
    dataset_path = out / "dataset.csv"
    ds.to_csv(dataset_path)
    write_manifest(out, "extract", config, [sessions_dir, demo_path], ["dataset.csv"])
    print(f"extracted {ds.n_rows} rows x {len(ds.feature_names)} features -> {dataset_path}")
    return 0


def cmd_preprocess(args, config) -> int:
    out = _out_dir(config)
    dataset_path = Path(args.dataset or out / "dataset.csv")
    ds = Dataset.from_csv(dataset_path)
    pp = config["preprocess"]
    removals = []
    ds, r1 = drop_low_coverage(ds, float(pp["min_coverage"]), roles=BEHAVIORAL_ROLES)
    ds, r2 = drop_near_zero_variance(ds, float(pp["variance_eps"]), roles=BEHAVIORAL_ROLES)
    ds, r3 = prune_correlated(ds, float(pp["correlation_threshold"]), roles=BEHAVIORAL_ROLES)
    removals = [dataclasses.asdict(r) for r in (*r1, *r2, *r3)]
    out_path = out / "dataset_preprocessed.csv"
    ds.to_csv(out_path)
    (out / "preprocess_removals.json").write_text(json.dumps(removals, indent=2) + "\n")
    write_manifest(out, "preprocess", config, [dataset_path],
                   ["dataset_preprocessed.csv", "preprocess_removals.json"])
    print(f"preprocessed: {len(ds.feature_names)} features kept, "
          f"{len(removals)} removed -> {out_path}")
    return 0


def cmd_phase1(args, config) -> int:
    out = _out_dir(config)
    dataset_path = Path(args.dataset or out / "dataset_preprocessed.csv")
    ds = Dataset.from_csv(dataset_path)
    result = phase1_complete_labels(ds, k_folds=int(config["phase1"]["k_folds"]),
                                    seed=int(config["seed"]))
    from .ml.report import rows_to_csv
    rows_to_csv(result.rows, out / "phase1_report.csv")
    table = render_phase1_table(result.rows)
    (out / "phase1_report.txt").write_text(
        table + f"\n\nselected: {result.best_algorithm} "
        f"(cv accuracy {result.held_out_accuracy:.4f}); "
        f"inferred {result.inferred_count} labels\n")
    result.dataset.to_csv(out / "dataset_completed.csv")
    write_manifest(out, "phase1", config, [dataset_path],
                   ["phase1_report.csv", "phase1_report.txt", "dataset_completed.csv"])
    print(table)
    print(f"selected: {result.best_algorithm} "
          f"(cv accuracy {result.held_out_accuracy:.4f})")
    return 0


def _grid_config(config: dict) -> GridConfig:
    p2 = config["phase2"]
    oversample = {"on": (True,), "off": (False,),
                  "both": (False, True)}[p2.get("oversample", "both")]
    return GridConfig(
        k_values=tuple(int(k) for k in p2["k_values"]),
        pca_components=int(p2["pca_components"]),
        correlation_threshold=float(p2["correlation_threshold"]),
        k_folds=int(p2["k_folds"]),
        oversample_options=oversample,
    )


def cmd_phase2(args, config) -> int:
    out = _out_dir(config)
    dataset_path = Path(args.dataset or out / "dataset_completed.csv")
    ds = Dataset.from_csv(dataset_path)
    keep = [n for n in behavioral_names() if n in ds.feature_names]
    bds = ds.with_features(keep)
    audit = LeakageAudit() if getattr(args, "audit", False) else None
    report = phase2_grid(bds, _grid_config(config), seed=int(config["seed"]), audit=audit)
    if audit is not None:
        audit.assert_clean()
    report.to_csv(out / "phase2_report.csv")
    (out / "phase2_report.txt").write_text(report.render() + "\n")
    best = report.best()
    write_manifest(out, "phase2", config, [dataset_path],
                   ["phase2_report.csv", "phase2_report.txt"])
    print(report.render())
    print(f"\nbest: {best.display_algorithm} / {best.strategy_name} "
          f"accuracy={best.metrics.accuracy:.4f} precision={best.metrics.precision:.4f}"
          + ("" if audit is None else f"; leakage audit clean "
             f"({len(audit.fit_records)} fit records)"))
    return 0


def cmd_correlations(args, config) -> int:
    """Exploratory feature-vs-label correlations over the full catalog.

    Labels come from the completed dataset; features come from the unpruned
    extraction when it sits beside it, since the redundancy pruning that
    precedes modeling may drop variables the exploratory report must show.
    """
    out = _out_dir(config)
    dataset_path = Path(args.dataset or out / "dataset_completed.csv")
    ds = Dataset.from_csv(dataset_path)
    inputs = [dataset_path]
    full_path = dataset_path.parent / "dataset.csv"
    if args.dataset is None and full_path.exists():
        full = Dataset.from_csv(full_path)
        if full.n_rows == ds.n_rows:
            full.labels = list(ds.labels)
            full.label_sources = list(ds.label_sources)
            ds = full
            inputs.append(full_path)
    keep = [n for n in behavioral_names() if n in ds.feature_names]
    threshold = float(config["correlations"]["threshold"])
    pairs = label_correlations(ds.with_features(keep), threshold)
    with open(out / "correlations.csv", "w", newline="") as f:
        writer = csv_mod.writer(f)
        writer.writerow(["feature", "pearson_r"])
        for name, r in pairs:
            writer.writerow([name, f"{r:.6f}"])
    width = max((len(n) for n, _ in pairs), default=20)
    lines = [f"feature-vs-label correlations with |r| > {threshold}",
             "-" * (width + 10)]
    lines += [f"{name:<{width}}  {r:+.3f}" for name, r in pairs]
    (out / "correlations.txt").write_text("\n".join(lines) + "\n")
    write_manifest(out, "correlations", config, inputs,
                   ["correlations.csv", "correlations.txt"])
    print("\n".join(lines))
    return 0


def cmd_report(args, config) -> int:
    out = _out_dir(config)
    rendered = []
    for name in ("phase1_report.txt", "phase2_report.txt", "correlations.txt",
                 "level_validation.txt"):
        path = out / name
        if path.exists():
            rendered.append(f"== {name}\n{path.read_text()}")
    if not rendered:
        raise InputError(f"no report artifacts found under {out}")
    summary = "\n".join(rendered)
    (out / "report_summary.txt").write_text(summary)
    write_manifest(out, "report", config, [], ["report_summary.txt"])
    print(summary)
    return 0


def cmd_e2e(args, config) -> int:
    cmd_simulate(args, config)
    args.sessions = None
    args.demographics = None
    args.dataset = None
    cmd_extract(args, config)
    cmd_preprocess(args, config)
    cmd_phase1(args, config)
    args.dataset = None
    cmd_phase2(args, config)
    args.dataset = None
    cmd_correlations(args, config)
    cmd_report(args, config)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamesight",
        description="Game-based behavioral assessment pipeline")
    parser.add_argument("--config", help="JSON config file; flags override its fields")
    parser.add_argument("--seed", type=int, help="global seed (64-bit unsigned)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--levels", help="level pack directory (default: shipped pack)")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the telemetry ingestion service")
    serve.add_argument("--bind", help="host:port to bind")
    serve.add_argument("--store", help="store directory")

    sub.add_parser("validate-levels", help="solve every level and check limits")
    sub.add_parser("simulate", help="generate the synthetic cohort")

    extract = sub.add_parser("extract", help="extract the variable catalog per session")
    extract.add_argument("--sessions", help="directory of exported session files")
    extract.add_argument("--demographics", help="demographics CSV")

    for name, helptext in (("preprocess", "coverage/variance/correlation pruning"),
                           ("phase1", "complete labels from personality features"),
                           ("phase2", "gameplay-only prediction grids"),
                           ("correlations", "feature-vs-label correlation report")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--dataset", help="input dataset CSV")
        if name == "phase2":
            p.add_argument("--audit", action="store_true",
                           help="run the fit-row leakage audit")
            p.add_argument("--oversample", choices=["on", "off", "both"],
                           help="restrict the grid's oversampling axis")
        if name == "correlations":
            p.add_argument("--threshold", type=float,
                           help="absolute correlation cutoff")
        if name in ("phase1", "phase2"):
            p.add_argument("--k-folds", type=int, help="cross-validation folds")

    sub.add_parser("report", help="bundle rendered report artifacts")
    e2e = sub.add_parser("e2e", help="simulate -> extract -> preprocess -> phase1 "
                                     "-> phase2 -> report")
    e2e.add_argument("--audit", action="store_true")
    return parser


COMMANDS = {
    "serve": cmd_serve,
    "validate-levels": cmd_validate_levels,
    "simulate": cmd_simulate,
    "extract": cmd_extract,
    "preprocess": cmd_preprocess,
    "phase1": cmd_phase1,
    "phase2": cmd_phase2,
    "correlations": cmd_correlations,
    "report": cmd_report,
    "e2e": cmd_e2e,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for attr in ("sessions", "demographics", "dataset", "audit", "k_folds",
                 "threshold", "oversample"):
        if not hasattr(args, attr):
            setattr(args, attr, None)
    try:
        config = load_config(args)
        if getattr(args, "bind", None):
            config["serve"]["bind"] = args.bind
        if getattr(args, "store", None):
            config["store_dir"] = args.store
        return COMMANDS[args.command](args, config)
    except GamesightError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
