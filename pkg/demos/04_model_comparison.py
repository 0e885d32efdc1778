"""Cognitive cycle vs a traditional collaborative-filtering baseline.

Runs both recommenders over the same users with matched configuration
(same neighbor count, same list length) and the same preferred-genre
precision metric, then prints the per-user series side by side — the
``mira compare`` subcommand in library form.
"""

from mira import CycleConfig, compare_models, top_users_by_rating_count

from demo_data import load

catalog, store = load()
users = top_users_by_rating_count(store, 10)
config = CycleConfig(k=8, n_similar=10, n_recommendations=20, seed=0)

mira_report, baseline_report = compare_models(store, catalog, users, config)

print(f"config: k={config.k}, {config.n_similar} similar users, "
      f"{config.n_recommendations} recommendations\n")
print(f"{'user':>6}  {'cycle':>7}  {'baseline':>8}")
for user_id in users:
    print(f"{user_id:>6}  {mira_report.per_user[user_id]:7.3f}  "
          f"{baseline_report.per_user[user_id]:8.3f}")
print(f"{'MEAN':>6}  {mira_report.mean_precision:7.3f}  "
      f"{baseline_report.mean_precision:8.3f}")

gap = mira_report.mean_precision - baseline_report.mean_precision
direction = "ahead of" if gap > 0 else "behind"
print(f"\nthe cognitive model is {abs(gap):.3f} {direction} the baseline "
      "on this corpus")
