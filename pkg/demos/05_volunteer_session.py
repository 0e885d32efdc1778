"""A volunteer rating session, end to end.

Builds a session CSV the way a volunteer would (rate everything you have
watched), ingests it as a fresh user next to the existing store, generates
recommendations for that user and scores them against the session's own
preferred genres — the ``mira rate-session`` flow in library form.
"""

from mira import (
    CycleConfig,
    evaluate_session,
    fetch_user,
    fit_catalog_model,
    ingest_session_ratings,
    preferred_genres,
    run_cycle,
)

from demo_data import load

catalog, store = load()

# the volunteer watched a slice of the catalog and loves the genres of
# the first few movies they rated
volunteer_id = 90001
watched = catalog.ids()[::7][:30]
rows = ["user_id,movie_id,rating"]
for i, movie_id in enumerate(watched):
    value = 5 if i % 3 == 0 else (4 if i % 3 == 1 else 2)
    rows.append(f"{volunteer_id},{movie_id},{value}")
session_csv = "\n".join(rows) + "\n"
print(f"session file: {len(watched)} ratings for fresh user {volunteer_id}")

extended = ingest_session_ratings(session_csv, store, catalog)
print(f"store grew from {store.n_users()} to {extended.n_users()} users; "
      "the original store is untouched")

config = CycleConfig(k=8, n_similar=10, n_recommendations=15, seed=0)
history = fetch_user(extended, volunteer_id)
preferred = preferred_genres(history, catalog)
print(f"\nvolunteer's preferred genres: {', '.join(preferred.genres)}")

model = fit_catalog_model(catalog, config.k, config.seed)
rec = run_cycle(extended, catalog, model, config, volunteer_id)
print(f"recommended cluster: {rec.cluster_label}")
for item in rec.items[:10]:
    marks = catalog[item.movie_id].genres & set(preferred.genres)
    flag = "+" if marks else " "
    print(f"  {flag} {item.rank:2d}. [{item.mean_rating:.2f}] {item.title}")

report = evaluate_session(extended, catalog, volunteer_id, config)
print(f"\nsession precision: {report.per_user[volunteer_id]:.3f} "
      "(fraction of recommendations carrying a preferred genre)")
