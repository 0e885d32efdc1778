"""The fixed 18-genre MovieLens vocabulary, in canonical order."""

GENRES = (
    "Action",
    "Adventure",
    "Animation",
    "Children's",
    "Comedy",
    "Crime",
    "Documentary",
    "Drama",
    "Fantasy",
    "Film-Noir",
    "Horror",
    "Musical",
    "Mystery",
    "Romance",
    "Sci-Fi",
    "Thriller",
    "War",
    "Western",
)

GENRE_INDEX = {name: i for i, name in enumerate(GENRES)}

N_GENRES = len(GENRES)
