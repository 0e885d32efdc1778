"""The precision experiment grid.

Sweeps cluster counts against similar-user counts for a panel of heavy
raters and prints the mean-precision table, the same computation the
``mira experiment`` subcommand writes to CSV/JSON. Precision counts a
recommended movie as correct when it carries at least one of the user's
six preferred genres.
"""

from mira import run_grid, top_users_by_rating_count

from demo_data import load

KS = (4, 6, 8, 10)
SIMILARS = (5, 10, 20)
N_RECOMMENDATIONS = 20
SEED = 0

catalog, store = load()
users = top_users_by_rating_count(store, 8)
print(f"evaluating users {users}")
print(f"{N_RECOMMENDATIONS} recommendations per cycle, seed {SEED}\n")

grid = run_grid(store, catalog, users, KS, SIMILARS, N_RECOMMENDATIONS, SEED)

header = "k \\ n_similar" + "".join(f"{s:>9}" for s in SIMILARS)
print(header)
for k in KS:
    row = f"{k:>13}"
    for n_similar in SIMILARS:
        row += f"{grid.cells[(k, n_similar)].mean_precision:9.3f}"
    print(row)

best_cell = max(grid.cells, key=lambda cell: grid.cells[cell].mean_precision)
print(f"\nbest cell: k={best_cell[0]}, n_similar={best_cell[1]} "
      f"(mean precision {grid.cells[best_cell].mean_precision:.3f})")

print("\nper-user detail for the best cell:")
for user_id, value in grid.cells[best_cell].per_user.items():
    print(f"  user {user_id:4d}: {value:.3f}")
