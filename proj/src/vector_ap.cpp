#include "analogy/vector_ap.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "analogy/errors.hpp"

namespace analogy {

namespace {

void require_dims(std::size_t n, std::span<const double> x) {
  if (n == 0) throw InvalidInput("vectors must have positive dimension");
  if (x.size() != n) {
    throw InvalidInput("dimension mismatch: " + std::to_string(n) + " vs " + std::to_string(x.size()));
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

struct Candidate {
  double dist2;
  std::size_t index;
};

}  // namespace

RealVector arithmetic_solve(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
  require_dims(a.size(), b);
  require_dims(a.size(), c);
  RealVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = c[i] + b[i] - a[i];
  return d;
}

bool arithmetic_ap(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                   std::span<const double> d, double tol) {
  require_dims(a.size(), b);
  require_dims(a.size(), c);
  require_dims(a.size(), d);
  if (tol < 0.0) throw InvalidInput("tolerance must be nonnegative");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs((a[i] - b[i]) - (c[i] - d[i])) > tol) return false;
  }
  return true;
}

double parallelogram_score(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                           std::span<const double> d) {
  require_dims(a.size(), b);
  require_dims(a.size(), c);
  require_dims(a.size(), d);
  RealVector u(a.size()), v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    u[i] = b[i] - a[i];
    v[i] = d[i] - c[i];
  }
  const double nu = std::sqrt(dot(u, u));
  const double nv = std::sqrt(dot(v, v));
  if (nu == 0.0 || nv == 0.0) throw UndefinedScore("parallelogram score of a zero difference vector");
  return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  require_dims(a.size(), b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

std::vector<NeighborHit> nearest_neighbors(std::span<const double> query, const EmbeddingStore& store,
                                           std::size_t k, const std::unordered_set<std::string>& exclude) {
  if (store.empty()) throw InvalidInput("nearest-neighbor query on an empty store");
  if (k == 0) throw InvalidInput("k must be at least 1");
  require_dims(store.dimension(), query);

  std::vector<bool> skip;
  if (!exclude.empty()) {
    skip.assign(store.size(), false);
    for (const auto& w : exclude) {
      if (auto idx = store.index_of(w)) skip[*idx] = true;
    }
  }

  auto closer = [&](const Candidate& x, const Candidate& y) {
    if (x.dist2 != y.dist2) return x.dist2 < y.dist2;
    return store.word(x.index) < store.word(y.index);
  };

  // Max-heap of the best k seen so far; the root is the worst kept hit.
  std::vector<Candidate> heap;
  heap.reserve(k + 1);
  const std::size_t dim = store.dimension();
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (!skip.empty() && skip[i]) continue;
    auto row = store.row(i);
    double d2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double diff = static_cast<double>(row[j]) - query[j];
      d2 += diff * diff;
    }
    Candidate cand{d2, i};
    if (heap.size() < k) {
      heap.push_back(cand);
      std::push_heap(heap.begin(), heap.end(), closer);
    } else if (closer(cand, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), closer);
      heap.back() = cand;
      std::push_heap(heap.begin(), heap.end(), closer);
    }
  }
  std::sort_heap(heap.begin(), heap.end(), closer);

  std::vector<NeighborHit> hits;
  hits.reserve(heap.size());
  for (std::size_t r = 0; r < heap.size(); ++r) {
    hits.push_back({store.word(heap[r].index), std::sqrt(heap[r].dist2), r + 1});
  }
  return hits;
}

std::vector<std::vector<NeighborHit>> nearest_neighbors_batch(
    std::span<const RealVector> queries, const EmbeddingStore& store, std::size_t k,
    std::span<const std::unordered_set<std::string>> excludes, unsigned workers) {
  if (!excludes.empty() && excludes.size() != queries.size()) {
    throw InvalidInput("one exclusion set per query is required");
  }
  std::vector<std::vector<NeighborHit>> results(queries.size());
  static const std::unordered_set<std::string> kNone;
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      results[q] = nearest_neighbors(queries[q], store, k, excludes.empty() ? kNone : excludes[q]);
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || queries.size() < 2) {
    work(0, queries.size());
    return results;
  }
  const std::size_t chunk = (queries.size() + workers - 1) / workers;
  std::vector<std::jthread> threads;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t begin = 0; begin < queries.size(); begin += chunk) {
    const std::size_t end = std::min(queries.size(), begin + chunk);
    threads.emplace_back([&, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  threads.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace analogy
