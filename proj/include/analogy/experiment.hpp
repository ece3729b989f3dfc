#pragma once

// Creating animals from triplets of known ones: enumerate triplets, solve
// a:b::c:x per feature subset, and measure how often the created animal
// already exists. The embedding mode predicts d = c + b - a and ranks the
// nearest vocabulary words instead.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "analogy/ap_core.hpp"
#include "analogy/embeddings.hpp"
#include "analogy/lexicon.hpp"
#include "analogy/zoo.hpp"

namespace analogy {

enum class Roles {
  single,     // one equation per unordered triple
  all_three,  // each member of the triple once in the "a" slot
};

enum class Denominator {
  all,       // every enumerated equation
  solvable,  // equations solvable on every selected feature
  novel,     // solvable, and the solution differs from all three sources
};

std::string to_string(Roles roles);
std::string to_string(Denominator denominator);
Roles parse_roles(std::string_view text);              // "single" | "all3"
Denominator parse_denominator(std::string_view text);  // "all" | "solvable" | "novel"

// Record indices into a ZooDataset. `role` is the position (0..2) within
// the name-sorted triple of the member placed in the "a" slot.
struct TripletEquation {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  std::uint8_t role = 0;

  bool operator==(const TripletEquation&) const = default;
};

// Every unordered 3-subset (optionally restricted to three distinct
// classes), in lexicographic order of names; with Roles::all_three each
// subset yields three equations.
std::vector<TripletEquation> enumerate_triplets(const ZooDataset& dataset, bool class_distinct, Roles roles);

// Number of class-distinct unordered triples, from class sizes alone.
std::size_t count_class_distinct_triples(const ZooDataset& dataset);

struct Prediction {
  TripletEquation equation;
  std::optional<ItemVector> solution;
  std::vector<UnsolvableComponent> unsolvable;
  std::vector<std::size_t> matches;  // records whose projection equals the solution
  bool novel = false;                // solved and distinct from the projections of a, b and c

  bool solved() const { return solution.has_value(); }
};

// Throws InvalidInput when an index is outside the dataset.
Prediction predict_boolean(const TripletEquation& equation, const ZooDataset& dataset,
                           const FeatureSubset& subset);

// Record keys of every animal whose projection equals `x`.
std::vector<std::string> match_existing(const ItemVector& x, const ZooDataset& dataset,
                                        const FeatureSubset& subset);

struct BooleanConfig {
  bool class_distinct = false;
  Roles roles = Roles::all_three;
  Denominator denominator = Denominator::novel;
  unsigned workers = 1;
};

struct BooleanCounts {
  std::size_t equations = 0;
  std::size_t solvable = 0;
  std::size_t novel = 0;
  std::size_t hits = 0;        // solvable equations with at least one match
  std::size_t novel_hits = 0;  // novel equations with at least one match
  std::size_t distinct_solutions = 0;
  // Equations for which the feature was unsolvable (an equation may count
  // under several features).
  std::map<std::string, std::size_t> unsolvable_by_feature;

  std::size_t denominator(Denominator d) const;
  std::size_t numerator(Denominator d) const;
};

struct PrecisionReport {
  std::string mode;  // boolean_16, boolean_5 or boolean
  std::string features_spec;
  std::vector<std::string> features;
  LegsEncoding legs = LegsEncoding::nominal;
  BooleanConfig config;
  BooleanCounts counts;

  // Hits over the given denominator; nullopt when the denominator is 0.
  std::optional<double> precision(Denominator d) const;
  std::optional<double> headline() const { return precision(config.denominator); }
};

// Runs the pipeline over the whole dataset. When `trace` is set, one JSON
// line per equation is written to it in enumeration order.
PrecisionReport boolean_precision(const ZooDataset& dataset, const FeatureSubset& subset,
                                  const BooleanConfig& config, std::ostream* trace = nullptr,
                                  const std::string& features_spec = "");

// Equations counted in the configured Boolean denominator.
std::vector<TripletEquation> boolean_selected_equations(const ZooDataset& dataset, const FeatureSubset& subset,
                                                        const BooleanConfig& config);

// Published Boolean precision for the 5-feature and 16-feature runs.
inline constexpr double kReferencePrecisionFive = 0.5967;
inline constexpr double kReferencePrecisionAll16 = 0.2264;
std::optional<double> reference_precision(const SelectionMode& mode);

struct SweepEntry {
  bool class_distinct = false;
  Roles roles = Roles::single;
  Denominator denominator = Denominator::all;
  std::optional<double> precision;
};

// Every (class filter x roles x denominator) convention on one subset.
std::vector<SweepEntry> sweep_conventions(const ZooDataset& dataset, const FeatureSubset& subset, unsigned workers);
// Entry whose precision is closest to `target`; ties keep sweep order.
std::optional<SweepEntry> best_match(const std::vector<SweepEntry>& sweep, double target);

struct EmbeddingConfig {
  std::size_t retrieve_n = 10;
  std::size_t k_max = 8;
  bool exclude_query_words = true;
  AnimalMatchOptions animal;
  unsigned workers = 1;
};

struct Candidate {
  std::string word;
  double distance = 0.0;
  bool is_animal = false;
  bool matches_zoo = false;
};

struct EmbeddingPrediction {
  TripletEquation equation;
  RealVector target;
  std::vector<Candidate> candidates;  // ascending distance, at most retrieve_n

  // Animal candidates in rank order.
  std::vector<const Candidate*> proposals() const;
};

struct EmbeddingOutcome {
  std::optional<EmbeddingPrediction> prediction;
  std::vector<std::string> oov;  // names that could not be resolved in the store
};

EmbeddingOutcome embedding_predict(const TripletEquation& equation, const ZooDataset& dataset,
                                   const EmbeddingStore& store, const AnimalLexicon& lexicon,
                                   const ZooMatcher& matcher, const EmbeddingConfig& config = {});

// Fraction of predictions whose first k animal proposals contain a Zoo
// animal; nullopt on an empty list. Throws InvalidInput when k == 0.
std::optional<double> precision_at_k(const std::vector<EmbeddingPrediction>& predictions, std::size_t k);

struct EmbeddingReport {
  std::string features_spec;
  BooleanConfig equation_config;
  EmbeddingConfig config;
  std::size_t equations = 0;
  std::size_t evaluated = 0;
  std::size_t skipped_oov = 0;
  std::set<std::string> oov_words;
  std::vector<std::size_t> hits_at_k;  // index k-1
  std::size_t store_size = 0;
  std::size_t store_dimension = 0;

  std::optional<double> precision_at(std::size_t k) const;
};

// Published P@1..P@8 of the embedding run.
inline constexpr std::array<double, 8> kReferencePrecisionAtK = {0.4633, 0.6460, 0.7394, 0.7875,
                                                                 0.8133, 0.8260, 0.8321, 0.8344};

EmbeddingReport embedding_precision(const ZooDataset& dataset, const EmbeddingStore& store,
                                    const AnimalLexicon& lexicon, const std::vector<TripletEquation>& equations,
                                    const EmbeddingConfig& config, std::ostream* trace = nullptr);

}  // namespace analogy
