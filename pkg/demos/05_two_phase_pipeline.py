"""The two-phase framework end to end on a reduced cohort.

Phase 1 completes suitability labels from the questionnaire features; phase 2
predicts them from gameplay behavior alone across the selection and reduction
grids.  For the full-scale run use the CLI: ``gamesight e2e --out out``.
"""
from gamesight.agents import CohortSpec, generate_cohort
from gamesight.features import (
    Dataset,
    behavioral_names,
    drop_low_coverage,
    drop_near_zero_variance,
    extract_features,
    names,
    prune_correlated,
)
from gamesight.games.levels import load_default_pack
from gamesight.ml import GridConfig, LeakageAudit, ModelSpec, phase1_complete_labels, phase2_grid
from gamesight.ml.report import render_phase1_table

BEHAVIORAL = {"behavioral", "derived", "derived_flag"}

pack = load_default_pack()
cohort = generate_cohort(CohortSpec(n_participants=44, labeled_count=16, seed=5), pack)
rows = [extract_features(log, demo)
        for log, demo in zip(cohort.logs, cohort.demographics)]
labels = [int(label) if labeled else None
          for label, labeled in zip(cohort.labels, cohort.labeled_mask)]
ds = Dataset(names(), rows, labels)

ds, _ = drop_low_coverage(ds, 0.7, roles=BEHAVIORAL)
ds, _ = drop_near_zero_variance(ds, 1e-8, roles=BEHAVIORAL)
ds, removed = prune_correlated(ds, 0.95, roles=BEHAVIORAL)
print(f"preprocessing kept {len(ds.feature_names)} features "
      f"(pruned {len(removed)} as redundant)\n")

phase1 = phase1_complete_labels(ds, k_folds=4, seed=5)
print(render_phase1_table(phase1.rows))
print(f"\nselected {phase1.best_algorithm}; inferred {phase1.inferred_count} labels\n")

grid = GridConfig(
    models=(("Random Forest", ModelSpec("random_forest", {"n_trees": 40})),
            ("MLP-64h", ModelSpec("mlp", {"hidden_layers": [64], "epochs": 250}))),
    k_values=(5, 10),
    k_folds=4,
    pca_components=5,
)
audit = LeakageAudit()
report = phase2_grid(phase1.dataset.with_features(behavioral_names()), grid,
                     seed=5, audit=audit)
audit.assert_clean()
print(report.render())
best = report.best()
print(f"\nbest configuration: {best.display_algorithm} / {best.strategy_name} "
      f"accuracy {best.metrics.accuracy:.2f} (leakage audit clean over "
      f"{len(audit.fit_records)} fit records)")
