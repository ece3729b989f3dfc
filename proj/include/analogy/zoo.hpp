#pragma once

// The UCI Zoo dataset: 101 animals, 15 binary attributes, a nominal leg
// count and a class label 1..7.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "analogy/ap_core.hpp"

namespace analogy {

inline constexpr std::size_t kZooFeatureCount = 16;
inline constexpr std::size_t kCanonicalZooSize = 101;
inline constexpr std::size_t kLegsColumn = 12;
inline constexpr std::array<std::string_view, kZooFeatureCount> kZooFeatures = {
    "hair",     "feathers", "eggs", "milk",     "airborne", "aquatic",  "predator", "toothed",
    "backbone", "breathes", "venomous", "fins", "legs",     "tail",     "domestic", "catsize"};
inline constexpr std::array<int, 6> kLegValues = {0, 2, 4, 5, 6, 8};
inline constexpr std::array<std::string_view, 5> kPaperFiveFeatures = {"hair", "eggs", "milk", "venomous",
                                                                       "domestic"};

struct AnimalRecord {
  std::string name;
  std::array<std::uint8_t, kZooFeatureCount> attributes{};  // legs column holds the raw count
  int class_label = 0;

  int legs() const { return attributes[kLegsColumn]; }
  bool operator==(const AnimalRecord&) const = default;
};

class ZooDataset {
 public:
  ZooDataset() = default;
  explicit ZooDataset(std::vector<AnimalRecord> records);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const AnimalRecord& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<AnimalRecord>& records() const { return records_; }

  // Unique lookup key of record i: the name, or name#n for the n-th
  // (n >= 2) occurrence of a repeated name.
  const std::string& key(std::size_t i) const { return keys_[i]; }
  std::optional<std::size_t> find(std::string_view key) const;
  // Every record carrying this printed name.
  std::vector<std::size_t> find_all(std::string_view name) const;

  const std::vector<std::string>& warnings() const { return warnings_; }
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

 private:
  std::vector<AnimalRecord> records_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::vector<std::string> warnings_;
};

// 18 comma-separated fields: name, 16 attributes, class. Throws ParseError
// with the row number; a row count other than 101 is only a warning.
AnimalRecord parse_zoo_row(std::string_view line, const std::string& source, std::size_t row);
ZooDataset read_zoo(std::istream& in, const std::string& source);
ZooDataset load_zoo(const std::filesystem::path& path);
std::string format_zoo_row(const AnimalRecord& record);
void write_zoo(const ZooDataset& dataset, std::ostream& out);

// How the leg count enters a projection.
enum class LegsEncoding {
  nominal,    // domain {0,2,4,5,6,8}
  binarized,  // 1 iff the animal has legs
};

// Ordered selection of Zoo features; projection order is selection order.
class FeatureSubset {
 public:
  explicit FeatureSubset(std::vector<std::string> names, LegsEncoding legs = LegsEncoding::nominal);

  std::size_t size() const { return columns_.size(); }
  std::span<const std::size_t> columns() const { return columns_; }
  const std::vector<std::string>& names() const { return names_; }
  LegsEncoding legs_encoding() const { return legs_; }
  const SchemaPtr& schema() const { return schema_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> columns_;
  LegsEncoding legs_;
  SchemaPtr schema_;
};

struct FeatureCohort {
  std::string feature;
  int majority_value = 0;
  std::size_t majority_size = 0;
};

// Binary features ranked by the size of their majority-value cohort,
// descending; ties keep declaration order.
std::vector<FeatureCohort> rank_by_majority_cohort(const ZooDataset& dataset);

struct SelectionMode {
  enum class Kind { paper_five, heuristic_top_k, explicit_list, all_16 };
  Kind kind = Kind::paper_five;
  std::size_t k = 5;
  std::vector<std::string> names;

  static SelectionMode paper_five() { return {Kind::paper_five, 5, {}}; }
  static SelectionMode all_16() { return {Kind::all_16, kZooFeatureCount, {}}; }
  static SelectionMode top_k(std::size_t k) { return {Kind::heuristic_top_k, k, {}}; }
  static SelectionMode explicit_list(std::vector<std::string> names) {
    return {Kind::explicit_list, names.size(), std::move(names)};
  }

  // "paper5", "all16", "top<k>-heuristic" or "list:a,b,c".
  static SelectionMode parse(std::string_view spec);
  std::string describe() const;
};

FeatureSubset select_features(const ZooDataset& dataset, const SelectionMode& mode,
                              LegsEncoding legs = LegsEncoding::nominal);

std::vector<Code> project_codes(const AnimalRecord& animal, const FeatureSubset& subset);
ItemVector project(const AnimalRecord& animal, const FeatureSubset& subset);

}  // namespace analogy
