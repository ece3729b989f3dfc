#include "analogy/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "analogy/errors.hpp"
#include "analogy/vector_ap.hpp"
#include "json.hpp"

namespace analogy {

std::string to_string(Roles roles) { return roles == Roles::single ? "single" : "all3"; }

std::string to_string(Denominator denominator) {
  switch (denominator) {
    case Denominator::all:
      return "all";
    case Denominator::solvable:
      return "solvable";
    case Denominator::novel:
      return "novel";
  }
  return {};
}

Roles parse_roles(std::string_view text) {
  if (text == "single") return Roles::single;
  if (text == "all3") return Roles::all_three;
  throw InvalidInput("roles must be 'single' or 'all3', got '" + std::string(text) + "'");
}

Denominator parse_denominator(std::string_view text) {
  if (text == "all") return Denominator::all;
  if (text == "solvable") return Denominator::solvable;
  if (text == "novel") return Denominator::novel;
  throw InvalidInput("denominator must be 'all', 'solvable' or 'novel', got '" + std::string(text) + "'");
}

std::vector<TripletEquation> enumerate_triplets(const ZooDataset& dataset, bool class_distinct, Roles roles) {
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return dataset[x].name < dataset[y].name; });

  std::vector<TripletEquation> out;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t x = order[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t y = order[j];
      if (class_distinct && dataset[x].class_label == dataset[y].class_label) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::size_t z = order[k];
        if (class_distinct && (dataset[z].class_label == dataset[x].class_label ||
                               dataset[z].class_label == dataset[y].class_label)) {
          continue;
        }
        out.push_back({x, y, z, 0});
        if (roles == Roles::all_three) {
          out.push_back({y, x, z, 1});
          out.push_back({z, x, y, 2});
        }
      }
    }
  }
  return out;
}

std::size_t count_class_distinct_triples(const ZooDataset& dataset) {
  std::map<int, std::size_t> sizes;
  for (const auto& r : dataset.records()) ++sizes[r.class_label];
  // Third elementary symmetric polynomial of the class sizes.
  std::size_t e1 = 0, e2 = 0, e3 = 0;
  for (const auto& [label, s] : sizes) {
    e3 += e2 * s;
    e2 += e1 * s;
    e1 += s;
  }
  return e3;
}

namespace {

void require_index(const ZooDataset& dataset, std::size_t i) {
  if (i >= dataset.size()) throw InvalidInput("animal index " + std::to_string(i) + " outside the dataset");
}

// Codes of every record under one subset, packed 4 bits per feature for
// hashing.
class ProjectedDataset {
 public:
  ProjectedDataset(const ZooDataset& dataset, const FeatureSubset& subset) : width_(subset.size()) {
    if (width_ > 16) throw InvalidInput("at most 16 features can be projected");
    codes_.reserve(dataset.size() * width_);
    for (const auto& r : dataset.records()) {
      auto c = project_codes(r, subset);
      codes_.insert(codes_.end(), c.begin(), c.end());
    }
    keys_.resize(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      keys_[i] = pack(row(i));
      by_key_[keys_[i]].push_back(i);
    }
  }

  std::size_t width() const { return width_; }
  std::span<const Code> row(std::size_t i) const { return {codes_.data() + i * width_, width_}; }
  std::uint64_t key(std::size_t i) const { return keys_[i]; }

  const std::vector<std::size_t>& matches(std::uint64_t key) const {
    static const std::vector<std::size_t> kNone;
    auto it = by_key_.find(key);
    return it == by_key_.end() ? kNone : it->second;
  }

  static std::uint64_t pack(std::span<const Code> codes) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < codes.size(); ++i) k |= static_cast<std::uint64_t>(codes[i]) << (4 * i);
    return k;
  }

 private:
  std::size_t width_;
  std::vector<Code> codes_;
  std::vector<std::uint64_t> keys_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_key_;
};

struct FastEval {
  bool solved = false;
  bool novel = false;
  std::uint32_t failed = 0;  // bit i set when feature i is unsolvable
  std::uint64_t key = 0;
  std::array<Code, 16> solution{};
  const std::vector<std::size_t>* matches = nullptr;
};

FastEval evaluate(const ProjectedDataset& proj, const TripletEquation& eq) {
  FastEval ev;
  auto a = proj.row(eq.a), b = proj.row(eq.b), c = proj.row(eq.c);
  for (std::size_t i = 0; i < proj.width(); ++i) {
    if (a[i] == b[i]) {
      ev.solution[i] = c[i];
    } else if (a[i] == c[i]) {
      ev.solution[i] = b[i];
    } else {
      ev.failed |= 1u << i;
    }
  }
  if (ev.failed) return ev;
  ev.solved = true;
  ev.key = ProjectedDataset::pack(std::span<const Code>(ev.solution.data(), proj.width()));
  ev.novel = ev.key != proj.key(eq.a) && ev.key != proj.key(eq.b) && ev.key != proj.key(eq.c);
  ev.matches = &proj.matches(ev.key);
  for (std::size_t m : *ev.matches) {
    auto r = proj.row(m);
    if (!std::equal(r.begin(), r.end(), ev.solution.begin())) {
      throw std::logic_error("matched animal does not equal the solved vector");
    }
  }
  return ev;
}

std::string boolean_trace_line(const ZooDataset& dataset, const FeatureSubset& subset, const TripletEquation& eq,
                               const FastEval& ev) {
  nlohmann::ordered_json j;
  j["a"] = dataset.key(eq.a);
  j["b"] = dataset.key(eq.b);
  j["c"] = dataset.key(eq.c);
  if (ev.solved) {
    std::vector<Code> codes(ev.solution.begin(), ev.solution.begin() + subset.size());
    j["solution"] = ItemVector(subset.schema(), std::move(codes)).to_string();
    j["novel"] = ev.novel;
    auto matches = nlohmann::ordered_json::array();
    for (std::size_t m : *ev.matches) matches.push_back(dataset.key(m));
    j["matches"] = matches;
  } else {
    j["solution"] = nullptr;
    auto failed = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (ev.failed & (1u << i)) failed.push_back(subset.names()[i]);
    }
    j["unsolvable"] = failed;
  }
  return j.dump();
}

struct PartialCounts {
  BooleanCounts counts;
  std::vector<std::size_t> failed_by_feature;
  std::unordered_set<std::uint64_t> solutions;
  std::string trace;
};

// Splits [0, n) into contiguous chunks, one per worker, and runs `fn` on
// each. Exceptions from workers are rethrown on the calling thread.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
  const std::size_t size = (n + chunks - 1) / std::max<std::size_t>(chunks, 1);
  if (chunks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    for (std::size_t ci = 0; ci < chunks; ++ci) {
      const std::size_t begin = std::min(n, ci * size);
      const std::size_t end = std::min(n, begin + size);
      threads.emplace_back([&, ci, begin, end] {
        try {
          fn(ci, begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

Prediction predict_boolean(const TripletEquation& equation, const ZooDataset& dataset, const FeatureSubset& subset) {
  require_index(dataset, equation.a);
  require_index(dataset, equation.b);
  require_index(dataset, equation.c);
  const ItemVector a = project(dataset[equation.a], subset);
  const ItemVector b = project(dataset[equation.b], subset);
  const ItemVector c = project(dataset[equation.c], subset);

  Prediction p;
  p.equation = equation;
  auto outcome = vec_solve(a, b, c);
  p.unsolvable = std::move(outcome.unsolvable);
  if (!outcome.solution) return p;
  p.novel = *outcome.solution != a && *outcome.solution != b && *outcome.solution != c;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (project(dataset[i], subset) == *outcome.solution) p.matches.push_back(i);
  }
  p.solution = std::move(outcome.solution);
  return p;
}

std::vector<std::string> match_existing(const ItemVector& x, const ZooDataset& dataset, const FeatureSubset& subset) {
  if (!(x.schema() == *subset.schema())) {
    throw InvalidInput("vector schema does not match the feature subset");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (project(dataset[i], subset) == x) out.push_back(dataset.key(i));
  }
  return out;
}

std::size_t BooleanCounts::denominator(Denominator d) const {
  switch (d) {
    case Denominator::all:
      return equations;
    case Denominator::solvable:
      return solvable;
    case Denominator::novel:
      return novel;
  }
  return 0;
}

std::size_t BooleanCounts::numerator(Denominator d) const { return d == Denominator::novel ? novel_hits : hits; }

std::optional<double> PrecisionReport::precision(Denominator d) const {
  const std::size_t den = counts.denominator(d);
  if (den == 0) return std::nullopt;
  return static_cast<double>(counts.numerator(d)) / static_cast<double>(den);
}

PrecisionReport boolean_precision(const ZooDataset& dataset, const FeatureSubset& subset, const BooleanConfig& config,
                                  std::ostream* trace, const std::string& features_spec) {
  const ProjectedDataset proj(dataset, subset);
  const auto equations = enumerate_triplets(dataset, config.class_distinct, config.roles);

  const unsigned workers = std::max(1u, config.workers);
  std::vector<PartialCounts> partials(workers);
  parallel_chunks(equations.size(), workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    PartialCounts& part = partials[chunk];
    part.failed_by_feature.assign(subset.size(), 0);
    for (std::size_t i = begin; i < end; ++i) {
      const FastEval ev = evaluate(proj, equations[i]);
      ++part.counts.equations;
      if (ev.solved) {
        const bool hit = !ev.matches->empty();
        ++part.counts.solvable;
        part.counts.hits += hit;
        part.solutions.insert(ev.key);
        if (ev.novel) {
          ++part.counts.novel;
          part.counts.novel_hits += hit;
        }
      } else {
        for (std::size_t f = 0; f < subset.size(); ++f) {
          if (ev.failed & (1u << f)) ++part.failed_by_feature[f];
        }
      }
      if (trace) {
        part.trace += boolean_trace_line(dataset, subset, equations[i], ev);
        part.trace += '\n';
      }
    }
  });

  PrecisionReport report;
  report.features_spec = features_spec;
  report.features = subset.names();
  report.legs = subset.legs_encoding();
  report.config = config;
  if (subset.size() == kZooFeatureCount) {
    report.mode = "boolean_16";
  } else if (subset.names() == std::vector<std::string>(kPaperFiveFeatures.begin(), kPaperFiveFeatures.end())) {
    report.mode = "boolean_5";
  } else {
    report.mode = "boolean";
  }

  std::unordered_set<std::uint64_t> solutions;
  std::vector<std::size_t> failed(subset.size(), 0);
  for (auto& part : partials) {
    report.counts.equations += part.counts.equations;
    report.counts.solvable += part.counts.solvable;
    report.counts.novel += part.counts.novel;
    report.counts.hits += part.counts.hits;
    report.counts.novel_hits += part.counts.novel_hits;
    solutions.insert(part.solutions.begin(), part.solutions.end());
    for (std::size_t f = 0; f < part.failed_by_feature.size(); ++f) failed[f] += part.failed_by_feature[f];
    if (trace) *trace << part.trace;
  }
  report.counts.distinct_solutions = solutions.size();
  for (std::size_t f = 0; f < subset.size(); ++f) report.counts.unsolvable_by_feature[subset.names()[f]] = failed[f];
  return report;
}

std::vector<TripletEquation> boolean_selected_equations(const ZooDataset& dataset, const FeatureSubset& subset,
                                                        const BooleanConfig& config) {
  const ProjectedDataset proj(dataset, subset);
  std::vector<TripletEquation> out;
  for (const auto& eq : enumerate_triplets(dataset, config.class_distinct, config.roles)) {
    if (config.denominator == Denominator::all) {
      out.push_back(eq);
      continue;
    }
    const FastEval ev = evaluate(proj, eq);
    if (!ev.solved) continue;
    if (config.denominator == Denominator::novel && !ev.novel) continue;
    out.push_back(eq);
  }
  return out;
}

std::optional<double> reference_precision(const SelectionMode& mode) {
  if (mode.kind == SelectionMode::Kind::paper_five) return kReferencePrecisionFive;
  if (mode.kind == SelectionMode::Kind::all_16) return kReferencePrecisionAll16;
  return std::nullopt;
}

std::vector<SweepEntry> sweep_conventions(const ZooDataset& dataset, const FeatureSubset& subset, unsigned workers) {
  std::vector<SweepEntry> out;
  for (bool class_distinct : {true, false}) {
    for (Roles roles : {Roles::single, Roles::all_three}) {
      BooleanConfig cfg;
      cfg.class_distinct = class_distinct;
      cfg.roles = roles;
      cfg.workers = workers;
      const auto report = boolean_precision(dataset, subset, cfg);
      for (Denominator d : {Denominator::all, Denominator::solvable, Denominator::novel}) {
        out.push_back({class_distinct, roles, d, report.precision(d)});
      }
    }
  }
  return out;
}

std::optional<SweepEntry> best_match(const std::vector<SweepEntry>& sweep, double target) {
  std::optional<SweepEntry> best;
  for (const auto& e : sweep) {
    if (!e.precision) continue;
    if (!best || std::abs(*e.precision - target) < std::abs(*best->precision - target)) best = e;
  }
  return best;
}

std::vector<const Candidate*> EmbeddingPrediction::proposals() const {
  std::vector<const Candidate*> out;
  for (const auto& c : candidates) {
    if (c.is_animal) out.push_back(&c);
  }
  return out;
}

namespace {

// 1-based rank among animal proposals of the first Zoo match, 0 if none.
std::size_t first_zoo_rank(const EmbeddingPrediction& p) {
  std::size_t rank = 0;
  for (const auto& c : p.candidates) {
    if (!c.is_animal) continue;
    ++rank;
    if (c.matches_zoo) return rank;
  }
  return 0;
}

void flag_candidates(EmbeddingPrediction& p, const std::vector<NeighborHit>& hits, const AnimalLexicon& lexicon,
                     const ZooMatcher& matcher, const EmbeddingConfig& config) {
  p.candidates.clear();
  for (const auto& h : hits) {
    Candidate c;
    c.word = h.word;
    c.distance = h.distance;
    c.is_animal = lexicon.is_animal(h.word, config.animal);
    c.matches_zoo = c.is_animal && !matcher.match(h.word).empty();
    p.candidates.push_back(std::move(c));
  }
}

std::unordered_set<std::string> query_exclusions(const ZooDataset& dataset, const TripletEquation& eq,
                                                 const EmbeddingConfig& config) {
  if (!config.exclude_query_words) return {};
  return {dataset[eq.a].name, dataset[eq.b].name, dataset[eq.c].name};
}

}  // namespace

EmbeddingOutcome embedding_predict(const TripletEquation& equation, const ZooDataset& dataset,
                                   const EmbeddingStore& store, const AnimalLexicon& lexicon,
                                   const ZooMatcher& matcher, const EmbeddingConfig& config) {
  require_index(dataset, equation.a);
  require_index(dataset, equation.b);
  require_index(dataset, equation.c);
  if (config.retrieve_n == 0) throw InvalidInput("retrieve_n must be at least 1");

  EmbeddingOutcome out;
  std::array<std::optional<RealVector>, 3> vecs;
  const std::array<std::size_t, 3> ids = {equation.a, equation.b, equation.c};
  for (std::size_t i = 0; i < 3; ++i) {
    vecs[i] = lookup(store, dataset[ids[i]].name);
    if (!vecs[i]) out.oov.push_back(dataset[ids[i]].name);
  }
  if (!out.oov.empty()) return out;

  EmbeddingPrediction p;
  p.equation = equation;
  p.target = arithmetic_solve(*vecs[0], *vecs[1], *vecs[2]);
  auto hits = nearest_neighbors(p.target, store, config.retrieve_n, query_exclusions(dataset, equation, config));
  flag_candidates(p, hits, lexicon, matcher, config);
  out.prediction = std::move(p);
  return out;
}

std::optional<double> precision_at_k(const std::vector<EmbeddingPrediction>& predictions, std::size_t k) {
  if (k == 0) throw InvalidInput("k must be at least 1");
  if (predictions.empty()) return std::nullopt;
  std::size_t hits = 0;
  for (const auto& p : predictions) {
    const std::size_t r = first_zoo_rank(p);
    hits += r != 0 && r <= k;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

std::optional<double> EmbeddingReport::precision_at(std::size_t k) const {
  if (evaluated == 0 || k == 0 || k > hits_at_k.size()) return std::nullopt;
  return static_cast<double>(hits_at_k[k - 1]) / static_cast<double>(evaluated);
}

EmbeddingReport embedding_precision(const ZooDataset& dataset, const EmbeddingStore& store,
                                    const AnimalLexicon& lexicon, const std::vector<TripletEquation>& equations,
                                    const EmbeddingConfig& config, std::ostream* trace) {
  if (config.retrieve_n == 0) throw InvalidInput("retrieve_n must be at least 1");
  if (config.k_max == 0 || config.k_max > config.retrieve_n) {
    throw InvalidInput("k_max must lie in 1..retrieve_n");
  }
  const ZooMatcher matcher(dataset);

  EmbeddingReport report;
  report.config = config;
  report.equations = equations.size();
  report.store_size = store.size();
  report.store_dimension = store.dimension();

  std::vector<std::optional<RealVector>> vectors(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) vectors[i] = lookup(store, dataset[i].name);

  std::vector<TripletEquation> kept;
  std::vector<RealVector> targets;
  std::vector<std::unordered_set<std::string>> excludes;
  for (const auto& eq : equations) {
    require_index(dataset, eq.a);
    require_index(dataset, eq.b);
    require_index(dataset, eq.c);
    bool ok = true;
    for (std::size_t id : {eq.a, eq.b, eq.c}) {
      if (!vectors[id]) {
        report.oov_words.insert(dataset[id].name);
        ok = false;
      }
    }
    if (!ok) {
      ++report.skipped_oov;
      continue;
    }
    kept.push_back(eq);
    targets.push_back(arithmetic_solve(*vectors[eq.a], *vectors[eq.b], *vectors[eq.c]));
    if (config.exclude_query_words) excludes.push_back(query_exclusions(dataset, eq, config));
  }

  std::vector<std::vector<NeighborHit>> neighbors;
  if (!targets.empty()) {
    neighbors = nearest_neighbors_batch(targets, store, config.retrieve_n, excludes, config.workers);
  }

  report.evaluated = kept.size();
  report.hits_at_k.assign(config.k_max, 0);
  for (std::size_t q = 0; q < kept.size(); ++q) {
    EmbeddingPrediction p;
    p.equation = kept[q];
    flag_candidates(p, neighbors[q], lexicon, matcher, config);
    const std::size_t r = first_zoo_rank(p);
    if (r != 0) {
      for (std::size_t k = r; k <= config.k_max; ++k) ++report.hits_at_k[k - 1];
    }
    if (trace) {
      nlohmann::ordered_json j;
      j["a"] = dataset.key(p.equation.a);
      j["b"] = dataset.key(p.equation.b);
      j["c"] = dataset.key(p.equation.c);
      auto cands = nlohmann::ordered_json::array();
      for (const auto& c : p.candidates) {
        cands.push_back({{"word", c.word}, {"distance", c.distance}, {"animal", c.is_animal}, {"zoo", c.matches_zoo}});
      }
      j["candidates"] = cands;
      j["first_zoo_rank"] = r;
      *trace << j.dump() << '\n';
    }
  }
  return report;
}

}  // namespace analogy
