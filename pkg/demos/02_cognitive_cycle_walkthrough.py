"""One recommendation, one stage at a time.

Walks a single stimulus through the whole cycle and prints what each
module hands to the next: the sensed user id, the declarative-memory
lookup, the similar users, the workspace histogram, the attention
codelet's cluster choice, the rating competition and the final prepared
list. The composed run_cycle call at the end produces the identical list.
"""

from mira import (
    CycleConfig,
    attend,
    build_histogram,
    compete,
    fetch_user,
    fit_catalog_model,
    prepare,
    run_cycle,
    sense,
    top_n_similar,
    top_users_by_rating_count,
    user_cluster,
)

from demo_data import load

catalog, store = load()
config = CycleConfig(k=8, n_similar=10, n_recommendations=10, seed=0)
model = fit_catalog_model(catalog, config.k, config.seed)
print(f"fitted shared K-Means model: k={model.k}, seed={model.seed}, "
      f"{model.iterations_run} iterations")

user_id = top_users_by_rating_count(store, 3)[-1]

stimulus = sense(user_id)
print(f"\n[stimulus]    user id {stimulus.user_id}")

history = fetch_user(store, stimulus.user_id)
liked = sum(1 for v in history.ratings.values() if v >= 4)
print(f"[declarative] {len(history.ratings)} rated movies, {liked} rated >= 4")

similar = top_n_similar(store, stimulus.user_id, config.n_similar)
print(f"[similar]     top {len(similar)} users by cosine similarity:")
for neighbor in similar[:5]:
    print(f"                user {neighbor.user_id:4d}  similarity "
          f"{neighbor.similarity:.4f}  ({len(neighbor.history.ratings)} ratings)")

histogram = build_histogram(similar, catalog, model, history)
print(f"[workspace]   histogram of {len(histogram)} unseen movies "
      f"from the similar users")

user_c = user_cluster(history, catalog, model)
attended = attend(histogram, user_c)
print(f"[attention]   user's cluster is {user_c}; "
      f"{len(attended)} histogram entries share it")

result = compete(attended, config.n_recommendations)
print(f"[competition] {len(result.winners)} winners by mean similar-user rating")

rec = prepare(result, catalog, user_c, model, config, stimulus.user_id)
print(f"[prepare]     cluster labeled {rec.cluster_label!r}")

print("\nfinal recommendation list:")
for item in rec.items:
    print(f"  {item.rank:2d}. [{item.mean_rating:.2f}] {item.title}")

assert rec == run_cycle(store, catalog, model, config, user_id)
print("\nrun_cycle() composes the same stages and returns the identical list")
