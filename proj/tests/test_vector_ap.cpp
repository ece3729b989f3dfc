#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "analogy/ap_core.hpp"
#include "analogy/vector_ap.hpp"
#include "doctest.h"

using namespace analogy;

TEST_CASE("arithmetic solving") {
  CHECK(arithmetic_solve(RealVector{1, 0}, RealVector{0, 0}, RealVector{0, 1}) == RealVector{-1, 1});
  CHECK(arithmetic_solve(RealVector{3, 4}, RealVector{3, 4}, RealVector{-2, 7}) == RealVector{-2, 7});
  CHECK(arithmetic_solve(RealVector{0, 0}, RealVector{1, 0}, RealVector{0, 1}) == RealVector{1, 1});
  CHECK_THROWS_AS(arithmetic_solve(RealVector{1}, RealVector{1, 2}, RealVector{1}), InvalidInput);
  CHECK_THROWS_AS(arithmetic_solve(RealVector{}, RealVector{}, RealVector{}), InvalidInput);
}

TEST_CASE("arithmetic proportions agree with the Boolean ones on bits") {
  int true_rows = 0;
  for (unsigned v = 0; v < 16; ++v) {
    const double a = (v >> 3) & 1, b = (v >> 2) & 1, c = (v >> 1) & 1, d = v & 1;
    const bool arithmetic = arithmetic_ap(RealVector{a}, RealVector{b}, RealVector{c}, RealVector{d}, 0.0);
    CHECK(arithmetic == bool_ap(to_bit(a != 0), to_bit(b != 0), to_bit(c != 0), to_bit(d != 0)));
    true_rows += arithmetic;
  }
  CHECK(true_rows == 6);
  CHECK(arithmetic_ap(RealVector{2, 5}, RealVector{2, 5}, RealVector{-1, 0}, RealVector{-1, 0}, 0.0));
  CHECK_FALSE(arithmetic_ap(RealVector{0}, RealVector{1}, RealVector{0}, RealVector{1.5}, 0.1));
  CHECK(arithmetic_ap(RealVector{0}, RealVector{1}, RealVector{0}, RealVector{1.05}, 0.1));
}

TEST_CASE("additive grouping and solve round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  auto random_vector = [&](std::size_t n) {
    RealVector v(n);
    for (auto& x : v) x = u(rng);
    return v;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto a = random_vector(n), b = random_vector(n), c = random_vector(n);
    const auto a2 = random_vector(n), b2 = random_vector(n), c2 = random_vector(n);
    const auto d = arithmetic_solve(a, b, c);
    const auto d2 = arithmetic_solve(a2, b2, c2);
    CHECK(arithmetic_ap(a, b, c, d, 1e-9));
    RealVector sa(n), sb(n), sc(n), sd(n);
    for (std::size_t i = 0; i < n; ++i) {
      sa[i] = a[i] + a2[i];
      sb[i] = b[i] + b2[i];
      sc[i] = c[i] + c2[i];
      sd[i] = d[i] + d2[i];
    }
    CHECK(arithmetic_ap(sa, sb, sc, sd, 1e-9));
    CHECK(parallelogram_score(a, b, c, d) >= 1.0 - 1e-9);
  }
}

TEST_CASE("parallelogram score") {
  const RealVector a{0, 0}, b{1, 2}, c{5, 5};
  CHECK(parallelogram_score(a, b, c, arithmetic_solve(a, b, c)) == doctest::Approx(1.0));
  CHECK(parallelogram_score(a, b, c, RealVector{4, 3}) == doctest::Approx(-1.0));
  CHECK(parallelogram_score(a, b, c, RealVector{7, 4}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(parallelogram_score(a, a, c, RealVector{6, 6}), UndefinedScore);
  CHECK_THROWS_AS(parallelogram_score(a, b, c, c), UndefinedScore);
}

namespace {

EmbeddingStore toy_store() {
  EmbeddingStore store(2);
  store.add("x", RealVector{1, 0});
  store.add("y", RealVector{0, 1});
  store.add("z", RealVector{0.9, 0.1});
  return store;
}

std::vector<std::string> words_of(const std::vector<NeighborHit>& hits) {
  std::vector<std::string> out;
  for (const auto& h : hits) out.push_back(h.word);
  return out;
}

}  // namespace

TEST_CASE("nearest neighbors on a toy store") {
  const auto store = toy_store();
  auto self = nearest_neighbors(RealVector{1, 0}, store, 1);
  REQUIRE(self.size() == 1);
  CHECK(self[0].word == "x");
  CHECK(self[0].distance == 0.0);
  CHECK(self[0].rank == 1);

  auto hits = nearest_neighbors(RealVector{1, 0}, store, 3, {"x"});
  CHECK(words_of(hits) == std::vector<std::string>{"z", "y"});
  CHECK(hits[1].rank == 2);
  CHECK(hits[1].distance == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(nearest_neighbors(RealVector{1, 0}, store, 0), InvalidInput);
  CHECK_THROWS_AS(nearest_neighbors(RealVector{1, 0, 0}, store, 1), InvalidInput);
  CHECK_THROWS_AS(nearest_neighbors(RealVector{1, 0}, EmbeddingStore(2), 1), InvalidInput);
}

TEST_CASE("distance ties break by word") {
  EmbeddingStore store(1);
  store.add("pear", RealVector{1});
  store.add("apple", RealVector{-1});
  store.add("fig", RealVector{1});
  store.add("kiwi", RealVector{3});
  auto hits = nearest_neighbors(RealVector{0}, store, 4);
  CHECK(words_of(hits) == std::vector<std::string>{"apple", "fig", "pear", "kiwi"});
}

TEST_CASE("exhaustive oracle on a 1000-word store") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t dim = 16;
  EmbeddingStore store(dim);
  for (int i = 0; i < 1000; ++i) {
    RealVector v(dim);
    for (auto& x : v) x = std::round(g(rng) * 4.0) / 4.0;  // coarse grid to provoke ties
    store.add("w" + std::to_string(i), v);
  }
  std::vector<RealVector> queries;
  std::vector<std::unordered_set<std::string>> excludes;
  for (int q = 0; q < 100; ++q) {
    RealVector v(dim);
    for (auto& x : v) x = std::round(g(rng) * 4.0) / 4.0;
    queries.push_back(v);
    excludes.push_back({"w" + std::to_string(rng() % 1000)});
  }
  const auto batch = nearest_neighbors_batch(queries, store, 10, excludes, 4);
  REQUIRE(batch.size() == queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    std::vector<std::pair<double, std::string>> all;
    for (std::size_t i = 0; i < store.size(); ++i) {
      if (excludes[q].contains(store.word(i))) continue;
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double diff = queries[q][j] - store.row(i)[j];
        s += diff * diff;
      }
      all.emplace_back(s, store.word(i));
    }
    std::sort(all.begin(), all.end());
    std::vector<std::string> expected;
    for (std::size_t i = 0; i < 10; ++i) expected.push_back(all[i].second);
    CHECK(words_of(batch[q]) == expected);
    CHECK(words_of(nearest_neighbors(queries[q], store, 10, excludes[q])) == expected);
  }
}

TEST_CASE("batch queries match single queries for any worker count") {
  const auto store = toy_store();
  std::vector<RealVector> queries = {{1, 0}, {0, 1}, {0.5, 0.5}};
  const auto one = nearest_neighbors_batch(queries, store, 2, {}, 1);
  const auto many = nearest_neighbors_batch(queries, store, 2, {}, 8);
  REQUIRE(one.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(words_of(one[i]) == words_of(many[i]));
}
