#pragma once

// Arithmetic analogical proportions over real vectors (a - b = c - d) and
// exact Euclidean nearest-neighbor retrieval over an embedding store.

#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "analogy/embeddings.hpp"

namespace analogy {

// d = c + b - a. Throws InvalidInput on empty or mismatched dimensions.
RealVector arithmetic_solve(std::span<const double> a, std::span<const double> b,
                            std::span<const double> c);

// max_i |(a_i - b_i) - (c_i - d_i)| <= tol
bool arithmetic_ap(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c, std::span<const double> d, double tol);

// Cosine similarity between (b - a) and (d - c). Throws UndefinedScore when
// either difference is the zero vector.
double parallelogram_score(std::span<const double> a, std::span<const double> b,
                           std::span<const double> c, std::span<const double> d);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

struct NeighborHit {
  std::string word;
  double distance = 0.0;
  std::size_t rank = 0;  // 1-based
};

// The k stored words closest to `query`, ascending by distance, equal
// distances ordered by word. Words in `exclude` are looked up with the
// store's folding and skipped. Full scan; throws InvalidInput on an empty
// store, k == 0 or a dimension mismatch.
std::vector<NeighborHit> nearest_neighbors(std::span<const double> query, const EmbeddingStore& store,
                                           std::size_t k,
                                           const std::unordered_set<std::string>& exclude = {});

// Runs independent queries on up to `workers` threads. `excludes` is
// either empty or one set per query. Results are in query order.
std::vector<std::vector<NeighborHit>> nearest_neighbors_batch(
    std::span<const RealVector> queries, const EmbeddingStore& store, std::size_t k,
    std::span<const std::unordered_set<std::string>> excludes, unsigned workers);

}  // namespace analogy
