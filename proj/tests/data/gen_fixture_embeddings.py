#!/usr/bin/env python3
"""Generate the fixture embedding store and its golden results.

Usage: gen_fixture_embeddings.py ZOO_DATA LEXICON OUT_DIR

Writes OUT_DIR/fixture_embeddings.txt (150 words, 8 dimensions) and
OUT_DIR/fixture_golden.json. The golden numbers come from a brute-force
evaluation written independently of the C++ library: numpy distances, a
full sort per query, and NLTK's Porter stemmer.

Requires numpy and nltk.
"""

import itertools
import json
import sys
from pathlib import Path

import numpy as np
from nltk.stem.porter import PorterStemmer

SEED = 20161125
DIM = 8
RETRIEVE_N = 10
K_MAX = 8
SPREAD = 0.3
PAPER_FIVE = ["hair", "eggs", "milk", "venomous", "domestic"]
FEATURES = ["hair", "feathers", "eggs", "milk", "airborne", "aquatic", "predator", "toothed",
            "backbone", "breathes", "venomous", "fins", "legs", "tail", "domestic", "catsize"]

PLURALS = ["scorpions", "frogs", "wolves", "ponies", "lions"]
OTHER_ANIMALS = ["horse", "rabbit", "tiger", "camel", "otter", "eagle", "owl", "cobra", "lizard",
                 "shark", "salmon", "beetle", "spider", "jellyfish", "snail", "zebra", "badger", "fox",
                 "bison", "koala", "heron", "robin", "parrot", "iguana", "gecko", "trout", "eel",
                 "salamander", "cricket", "ant"]
NON_ANIMALS = ["table", "granite", "river", "piano", "cloud", "bridge", "lantern", "pencil",
               "carpet", "window", "mountain", "sugar", "engine", "candle", "basket"]

# The martin-extensions mode reproduces the reference C implementation,
# which leaves words of one or two letters untouched.
_porter = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)


def stem(word):
    return word if len(word) <= 2 else _porter.stem(word, to_lowercase=False)


def normalize(word):
    return "_".join(word.strip().lower().split())


def read_zoo(path):
    rows = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        fields = line.strip().split(",")
        rows.append((fields[0], [int(v) for v in fields[1:17]], int(fields[17])))
    return rows


def read_lexicon(path):
    lemmas = set()
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0]
        if line.strip():
            lemmas.add(normalize(line))
    return lemmas, {stem(l) for l in lemmas}


def is_animal(word, lemmas, stems):
    def one(token):
        return token in lemmas or stem(token) in stems
    token = normalize(word)
    if one(token):
        return True
    cut = max(token.rfind("-"), token.rfind("_"))
    return 0 <= cut < len(token) - 1 and one(token[cut + 1:])


def build_store(zoo):
    rng = np.random.RandomState(SEED)
    centroids = {c: rng.normal(0.0, 1.0, DIM) for c in range(1, 8)}
    vectors = {}
    for name, _, cls in zoo:
        if name not in vectors:
            vectors[name] = centroids[cls] + rng.normal(0.0, 0.6, DIM)
    for word in PLURALS:
        vectors[word] = vectors[word[:-1] if word[:-1] in vectors else
                                {"wolves": "wolf", "ponies": "pony"}[word]] + rng.normal(0.0, 0.15, DIM)
    # Distractors sit where analogy targets tend to land, so that they
    # compete with the Zoo animals for the top ranks.
    names = sorted({name for name, _, _ in zoo})
    def near_target(spread):
        a, b, c = rng.choice(len(names), 3, replace=False)
        return vectors[names[c]] + vectors[names[b]] - vectors[names[a]] + rng.normal(0.0, spread, DIM)
    for word in OTHER_ANIMALS:
        vectors[word] = near_target(SPREAD)
    for word in NON_ANIMALS:
        vectors[word] = near_target(SPREAD)
    words = sorted(vectors)
    matrix = np.array([np.round(vectors[w], 4) for w in words])
    # The C++ store keeps single precision.
    matrix = matrix.astype(np.float32).astype(np.float64)
    return words, matrix


def ranked(target, words, matrix, exclude, n):
    d2 = ((matrix - target) ** 2).sum(axis=1)
    order = sorted((i for i in range(len(words)) if words[i] not in exclude), key=lambda i: (d2[i], words[i]))
    return order[:n + 1], d2


def equations(zoo):
    """Default Boolean selection: paper-five features, no class filter,
    all three roles, solvable with a solution distinct from a, b and c."""
    cols = [FEATURES.index(f) for f in PAPER_FIVE]
    order = sorted(range(len(zoo)), key=lambda i: zoo[i][0])
    proj = [tuple(zoo[i][1][c] for c in cols) for i in range(len(zoo))]
    out = []
    for x, y, z in itertools.combinations(order, 3):
        for a, b, c in ((x, y, z), (y, x, z), (z, x, y)):
            sol = []
            for pa, pb, pc in zip(proj[a], proj[b], proj[c]):
                if pa == pb:
                    sol.append(pc)
                elif pa == pc:
                    sol.append(pb)
                else:
                    sol = None
                    break
            if sol is not None and tuple(sol) not in (proj[a], proj[b], proj[c]):
                out.append((a, b, c))
    return out


def main():
    zoo_path, lexicon_path, out_dir = sys.argv[1:4]
    zoo = read_zoo(zoo_path)
    lemmas, stems = read_lexicon(lexicon_path)
    words, matrix = build_store(zoo)
    index = {w: i for i, w in enumerate(words)}
    zoo_stems = {stem(normalize(n)) for n, _, _ in zoo}
    animal = [is_animal(w, lemmas, stems) for w in words]
    matches = [animal[i] and stem(normalize(w)) in zoo_stems for i, w in enumerate(words)]
    for w in NON_ANIMALS:
        assert not animal[index[w]], w
    for w in OTHER_ANIMALS:
        assert animal[index[w]] and not matches[index[w]], w

    eqs = equations(zoo)
    hits = [0] * K_MAX
    min_gap = float("inf")
    first_ranks = []
    for a, b, c in eqs:
        na, nb, nc = zoo[a][0], zoo[b][0], zoo[c][0]
        target = matrix[index[nc]] + matrix[index[nb]] - matrix[index[na]]
        top, d2 = ranked(target, words, matrix, {na, nb, nc}, RETRIEVE_N)
        gaps = np.diff([d2[i] for i in top])
        min_gap = min(min_gap, float(gaps.min()))
        rank = 0
        first = 0
        for i in top[:RETRIEVE_N]:
            if animal[i]:
                rank += 1
                if matches[i]:
                    first = rank
                    break
        first_ranks.append(first)
        for k in range(1, K_MAX + 1):
            hits[k - 1] += 0 < first <= k
    assert min_gap > 1e-9, min_gap

    rng = np.random.RandomState(SEED + 1)
    queries = []
    for _ in range(100):
        q = np.round(rng.normal(0.0, 1.2, DIM), 4)
        top, d2 = ranked(q, words, matrix, set(), RETRIEVE_N)
        queries.append({"query": [float(v) for v in q],
                        "neighbors": [words[i] for i in top[:RETRIEVE_N]],
                        "distances": [float(np.sqrt(d2[i])) for i in top[:RETRIEVE_N]]})

    out = Path(out_dir)
    with open(out / "fixture_embeddings.txt", "w") as f:
        for w, row in zip(words, matrix):
            f.write(w + " " + " ".join("%.4f" % v for v in row) + "\n")
    golden = {
        "words": len(words),
        "dimension": DIM,
        "equations": len(eqs),
        "retrieve_n": RETRIEVE_N,
        "hits_at_k": hits,
        "precision_at_k": [h / len(eqs) for h in hits],
        "no_match": first_ranks.count(0),
        "animals": [w for i, w in enumerate(words) if animal[i]],
        "zoo_matches": [w for i, w in enumerate(words) if matches[i]],
        "knn_queries": queries,
    }
    with open(out / "fixture_golden.json", "w") as f:
        json.dump(golden, f, indent=1)
        f.write("\n")
    print(len(eqs), ["%.4f" % (h / len(eqs)) for h in hits], "min gap", min_gap)


if __name__ == "__main__":
    main()
