#include "analogy/zoo.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "analogy/errors.hpp"

namespace analogy {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::size_t zoo_column(std::string_view name) {
  auto it = std::find(kZooFeatures.begin(), kZooFeatures.end(), name);
  if (it == kZooFeatures.end()) throw InvalidInput("unknown Zoo feature '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - kZooFeatures.begin());
}

}  // namespace

ZooDataset::ZooDataset(std::vector<AnimalRecord> records) : records_(std::move(records)) {
  std::unordered_map<std::string, std::size_t> occurrences;
  keys_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const std::size_t n = ++occurrences[records_[i].name];
    std::string key = n == 1 ? records_[i].name : records_[i].name + "#" + std::to_string(n);
    if (!by_key_.emplace(key, i).second) {
      throw InvalidInput("record key '" + key + "' collides with an existing name");
    }
    keys_.push_back(std::move(key));
  }
}

std::optional<std::size_t> ZooDataset::find(std::string_view key) const {
  auto it = by_key_.find(std::string(key));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> ZooDataset::find_all(std::string_view name) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].name == name) out.push_back(i);
  }
  return out;
}

AnimalRecord parse_zoo_row(std::string_view line, const std::string& source, std::size_t row) {
  auto fields = split(trim(line), ',');
  if (fields.size() != kZooFeatureCount + 2) {
    throw ParseError(source, row, "expected 18 fields, found " + std::to_string(fields.size()));
  }
  AnimalRecord rec;
  rec.name = std::string(fields[0]);
  if (rec.name.empty()) throw ParseError(source, row, "empty animal name");
  for (std::size_t i = 0; i < kZooFeatureCount; ++i) {
    auto v = parse_int(fields[i + 1]);
    const std::string feature(kZooFeatures[i]);
    if (!v) throw ParseError(source, row, "non-integer value for " + feature);
    if (i == kLegsColumn) {
      if (std::find(kLegValues.begin(), kLegValues.end(), *v) == kLegValues.end()) {
        throw ParseError(source, row, "legs=" + std::to_string(*v) + " outside {0,2,4,5,6,8}");
      }
    } else if (*v != 0 && *v != 1) {
      throw ParseError(source, row, feature + "=" + std::to_string(*v) + " is not binary");
    }
    rec.attributes[i] = static_cast<std::uint8_t>(*v);
  }
  auto cls = parse_int(fields.back());
  if (!cls || *cls < 1 || *cls > 7) throw ParseError(source, row, "class label outside 1..7");
  rec.class_label = *cls;
  return rec;
}

ZooDataset read_zoo(std::istream& in, const std::string& source) {
  std::vector<AnimalRecord> records;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    records.push_back(parse_zoo_row(line, source, row));
  }
  ZooDataset dataset;
  try {
    dataset = ZooDataset(std::move(records));
  } catch (const InvalidInput& e) {
    throw ParseError(source, 0, e.what());
  }
  if (dataset.size() != kCanonicalZooSize) {
    dataset.warn(source + ": " + std::to_string(dataset.size()) + " records (canonical file has 101)");
  }
  return dataset;
}

ZooDataset load_zoo(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open dataset");
  return read_zoo(in, path.string());
}

std::string format_zoo_row(const AnimalRecord& record) {
  std::string out = record.name;
  for (auto v : record.attributes) out += "," + std::to_string(v);
  out += "," + std::to_string(record.class_label);
  return out;
}

void write_zoo(const ZooDataset& dataset, std::ostream& out) {
  for (const auto& r : dataset.records()) out << format_zoo_row(r) << '\n';
}

FeatureSubset::FeatureSubset(std::vector<std::string> names, LegsEncoding legs)
    : names_(std::move(names)), legs_(legs) {
  if (names_.empty()) throw InvalidInput("empty feature subset");
  std::unordered_set<std::string> seen;
  std::vector<Feature> features;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw InvalidInput("feature '" + n + "' selected twice");
    const std::size_t col = zoo_column(n);
    columns_.push_back(col);
    if (col == kLegsColumn && legs_ == LegsEncoding::nominal) {
      std::vector<std::string> values;
      for (int v : kLegValues) values.push_back(std::to_string(v));
      features.push_back(Feature::nominal(n, std::move(values)));
    } else {
      features.push_back(Feature::binary(n));
    }
  }
  schema_ = make_schema(std::move(features));
}

std::vector<FeatureCohort> rank_by_majority_cohort(const ZooDataset& dataset) {
  std::vector<FeatureCohort> out;
  for (std::size_t col = 0; col < kZooFeatureCount; ++col) {
    if (col == kLegsColumn) continue;
    std::size_t ones = 0;
    for (const auto& r : dataset.records()) ones += r.attributes[col];
    const std::size_t zeros = dataset.size() - ones;
    out.push_back({std::string(kZooFeatures[col]), ones > zeros ? 1 : 0, std::max(ones, zeros)});
  }
  std::stable_sort(out.begin(), out.end(), [](const FeatureCohort& a, const FeatureCohort& b) {
    return a.majority_size > b.majority_size;
  });
  return out;
}

SelectionMode SelectionMode::parse(std::string_view spec) {
  if (spec == "paper5") return paper_five();
  if (spec == "all16") return all_16();
  if (spec.starts_with("list:")) {
    std::vector<std::string> names;
    for (auto n : split(spec.substr(5), ',')) {
      if (n.empty()) throw InvalidInput("empty feature name in '" + std::string(spec) + "'");
      names.emplace_back(n);
    }
    return explicit_list(std::move(names));
  }
  constexpr std::string_view suffix = "-heuristic";
  if (spec.starts_with("top") && spec.ends_with(suffix)) {
    auto digits = spec.substr(3, spec.size() - 3 - suffix.size());
    auto k = parse_int(digits);
    if (k && *k > 0) return top_k(static_cast<std::size_t>(*k));
  }
  throw InvalidInput("unknown feature selection '" + std::string(spec) +
                     "' (expected paper5, all16, top<k>-heuristic or list:a,b,...)");
}

std::string SelectionMode::describe() const {
  switch (kind) {
    case Kind::paper_five:
      return "paper5";
    case Kind::all_16:
      return "all16";
    case Kind::heuristic_top_k:
      return "top" + std::to_string(k) + "-heuristic";
    case Kind::explicit_list: {
      std::string out = "list:";
      for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
      return out;
    }
  }
  return {};
}

FeatureSubset select_features(const ZooDataset& dataset, const SelectionMode& mode, LegsEncoding legs) {
  switch (mode.kind) {
    case SelectionMode::Kind::paper_five:
      return FeatureSubset({kPaperFiveFeatures.begin(), kPaperFiveFeatures.end()}, legs);
    case SelectionMode::Kind::all_16:
      return FeatureSubset({kZooFeatures.begin(), kZooFeatures.end()}, legs);
    case SelectionMode::Kind::explicit_list:
      return FeatureSubset(mode.names, legs);
    case SelectionMode::Kind::heuristic_top_k: {
      auto ranked = rank_by_majority_cohort(dataset);
      if (mode.k == 0 || mode.k > ranked.size()) {
        throw InvalidInput("heuristic top-k needs 1 <= k <= " + std::to_string(ranked.size()));
      }
      std::vector<std::string> names;
      for (std::size_t i = 0; i < mode.k; ++i) names.push_back(ranked[i].feature);
      return FeatureSubset(std::move(names), legs);
    }
  }
  throw InvalidInput("unknown selection mode");
}

std::vector<Code> project_codes(const AnimalRecord& animal, const FeatureSubset& subset) {
  std::vector<Code> codes;
  codes.reserve(subset.size());
  for (std::size_t col : subset.columns()) {
    const int v = animal.attributes[col];
    if (col != kLegsColumn) {
      codes.push_back(static_cast<Code>(v));
    } else if (subset.legs_encoding() == LegsEncoding::binarized) {
      codes.push_back(v > 0 ? 1 : 0);
    } else {
      auto it = std::find(kLegValues.begin(), kLegValues.end(), v);
      codes.push_back(static_cast<Code>(it - kLegValues.begin()));
    }
  }
  return codes;
}

ItemVector project(const AnimalRecord& animal, const FeatureSubset& subset) {
  return ItemVector(subset.schema(), project_codes(animal, subset));
}

}  // namespace analogy
