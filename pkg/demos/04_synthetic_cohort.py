"""Simulate trait-parameterized players and inspect their behavioral signatures.

A small cohort is enough to see the suitability signatures: more puzzle wins
and side challenges, more menu navigation, fewer pauses, retries, surrenders.
"""

from gamesight.agents import CohortSpec, TraitProfile, generate_cohort, simulate_participant
from gamesight.features import Dataset, extract_features, label_correlations, names
from gamesight.games.levels import load_default_pack

pack = load_default_pack()

ace = simulate_participant(TraitProfile.uniform(1.0), pack, seed=1, session_id="ace")
struggler = simulate_participant(TraitProfile(0.15, 0.4, 0.4, 0.2, 0.2, 0.4), pack,
                                 seed=2, session_id="struggler")
for log in (ace, struggler):
    kinds = {}
    for event in log.events:
        kinds[event.event_type] = kinds.get(event.event_type, 0) + 1
    print(f"{log.session_id}: {len(log.events)} events, "
          f"wins={kinds.get('win', 0)} restarts={kinds.get('restart', 0)} "
          f"surrenders={kinds.get('surrender', 0)} skips={kinds.get('skip', 0)} "
          f"code={log.tracking_code}")

spec = CohortSpec(n_participants=40, labeled_count=12, seed=11)
cohort = generate_cohort(spec, pack)
rows = [extract_features(log, demo)
        for log, demo in zip(cohort.logs, cohort.demographics)]
ds = Dataset(names(), rows, [int(label) for label in cohort.labels])

print("\nfeature-vs-suitability correlations (|r| > 0.25):")
for feature, r in label_correlations(ds, threshold=0.25)[:12]:
    print(f"  {r:+.2f}  {feature}")
