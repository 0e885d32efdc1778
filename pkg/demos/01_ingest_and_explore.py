"""Ingest a MovieLens-format dataset and look around.

Shows the parsing entry points, the catalog/store structures and their
invariants: the fixed 18-genre vocabulary, the user->movie / movie->user
transpose pair, and the per-user rating histograms the rest of the
pipeline is built on.
"""

from collections import Counter

from mira import GENRES, serialize_ratings, parse_ratings

from demo_data import load, dataset_paths

catalog, store = load()
movies_path, ratings_path = dataset_paths()

print(f"dataset: {movies_path.parent}")
print(f"  {len(catalog)} movies, {store.n_users()} users, "
      f"{store.n_ratings()} ratings")

print("\ngenre vocabulary (fixed order):")
print("  " + ", ".join(GENRES))

genre_counts = Counter()
for movie_id in catalog.ids():
    for genre in catalog[movie_id].genres:
        genre_counts[genre] += 1
print("\nmost common genres in this catalog:")
for genre, count in genre_counts.most_common(6):
    print(f"  {genre:12s} {count:5d} movies")

sizes = sorted(len(r) for r in store.by_user.values())
print("\nratings per user:")
print(f"  min {sizes[0]}, median {sizes[len(sizes) // 2]}, max {sizes[-1]}")
print(f"  store-wide mean rating: {store.global_mean():.3f}")

# the two indexes are exact transposes; spot-check one movie
movie_id = catalog.ids()[0]
raters = store.by_movie.get(movie_id, {})
print(f"\nmovie {movie_id} ({catalog[movie_id].title!r}) was rated by "
      f"{len(raters)} users")
for user_id, value in list(raters.items())[:5]:
    assert store.by_user[user_id][movie_id] == value
print("  transpose invariant spot-checked: by_user agrees with by_movie")

# stores round-trip through the wire format
reparsed = parse_ratings(serialize_ratings(store), catalog)
print(f"\nround trip through the wire format: "
      f"{'identical' if reparsed.by_user == store.by_user else 'DIFFERENT'} store")
