#include "analogy/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace analogy {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string legs_name(LegsEncoding legs) { return legs == LegsEncoding::nominal ? "nominal" : "binarized"; }

}  // namespace

std::string percent(const std::optional<double>& value) {
  if (!value) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", *value * 100.0);
  return buf;
}

Json to_json(const SweepEntry& entry) {
  Json j;
  j["class_distinct"] = entry.class_distinct;
  j["roles"] = to_string(entry.roles);
  j["denominator"] = to_string(entry.denominator);
  j["precision"] = optional_number(entry.precision);
  return j;
}

Json to_json(const PrecisionReport& report, const std::optional<double>& reference,
             const std::vector<SweepEntry>* sweep) {
  Json j;
  j["schema"] = "analogy.boolean-report/1";
  j["mode"] = report.mode;
  j["features_spec"] = report.features_spec;
  j["features"] = report.features;
  j["legs"] = legs_name(report.legs);
  j["config"] = {{"class_distinct", report.config.class_distinct},
                 {"roles", to_string(report.config.roles)},
                 {"denominator", to_string(report.config.denominator)}};
  const auto& c = report.counts;
  j["counts"] = {{"equations", c.equations}, {"solvable", c.solvable},   {"novel", c.novel},
                 {"hits", c.hits},           {"novel_hits", c.novel_hits}, {"distinct_solutions", c.distinct_solutions}};
  j["precision"] = {{"all", optional_number(report.precision(Denominator::all))},
                    {"solvable", optional_number(report.precision(Denominator::solvable))},
                    {"novel", optional_number(report.precision(Denominator::novel))}};
  j["headline"] = optional_number(report.headline());
  Json unsolvable = Json::object();
  for (const auto& name : report.features) unsolvable[name] = c.unsolvable_by_feature.at(name);
  j["unsolvable_by_feature"] = unsolvable;
  j["reference"] = optional_number(reference);
  if (sweep) {
    Json entries = Json::array();
    for (const auto& e : *sweep) entries.push_back(to_json(e));
    j["sweep"] = entries;
    if (reference) {
      if (auto best = best_match(*sweep, *reference)) {
        Json b = to_json(*best);
        b["abs_error"] = std::abs(*best->precision - *reference);
        j["best_match"] = b;
      }
    }
  }
  return j;
}

Json to_json(const EmbeddingReport& report) {
  Json j;
  j["schema"] = "analogy.embedding-report/1";
  j["features_spec"] = report.features_spec;
  j["equation_config"] = {{"class_distinct", report.equation_config.class_distinct},
                          {"roles", to_string(report.equation_config.roles)},
                          {"denominator", to_string(report.equation_config.denominator)}};
  j["config"] = {{"retrieve_n", report.config.retrieve_n},
                 {"k_max", report.config.k_max},
                 {"exclude_query_words", report.config.exclude_query_words},
                 {"stem_fallback", report.config.animal.stem_fallback},
                 {"final_segment", report.config.animal.final_segment}};
  j["store"] = {{"size", report.store_size}, {"dimension", report.store_dimension}};
  j["equations"] = report.equations;
  j["evaluated"] = report.evaluated;
  j["skipped_oov"] = report.skipped_oov;
  j["oov_words"] = Json(std::vector<std::string>(report.oov_words.begin(), report.oov_words.end()));
  Json table = Json::array();
  for (std::size_t k = 1; k <= report.hits_at_k.size(); ++k) {
    Json row;
    row["k"] = k;
    row["hits"] = report.hits_at_k[k - 1];
    row["precision"] = optional_number(report.precision_at(k));
    row["reference"] = k <= kReferencePrecisionAtK.size() ? Json(kReferencePrecisionAtK[k - 1]) : Json(nullptr);
    table.push_back(row);
  }
  j["precision_at_k"] = table;
  return j;
}

std::string render_table(const PrecisionReport& report, const std::optional<double>& reference) {
  std::ostringstream out;
  const auto& c = report.counts;
  out << "Boolean precision (" << report.mode << ", features: ";
  for (std::size_t i = 0; i < report.features.size(); ++i) out << (i ? "," : "") << report.features[i];
  out << ")\n";
  out << "  class filter: " << (report.config.class_distinct ? "on" : "off")
      << "   roles: " << to_string(report.config.roles) << "   legs: " << legs_name(report.legs) << "\n";
  out << "  equations " << c.equations << "   solvable " << c.solvable << "   novel " << c.novel
      << "   hits " << c.hits << "   novel hits " << c.novel_hits << "\n";
  out << "  denominator   precision\n";
  for (Denominator d : {Denominator::all, Denominator::solvable, Denominator::novel}) {
    char line[64];
    std::snprintf(line, sizeof(line), "  %-12s  %s%s\n", to_string(d).c_str(), percent(report.precision(d)).c_str(),
                  d == report.config.denominator ? "  <- headline" : "");
    out << line;
  }
  if (reference) out << "  reference     " << percent(reference) << "\n";
  return out.str();
}

std::string render_sweep(const std::vector<SweepEntry>& sweep, const std::optional<double>& reference) {
  std::ostringstream out;
  out << "  class-filter  roles   denominator  precision\n";
  for (const auto& e : sweep) {
    char line[96];
    std::snprintf(line, sizeof(line), "  %-12s  %-6s  %-11s  %s\n", e.class_distinct ? "on" : "off",
                  to_string(e.roles).c_str(), to_string(e.denominator).c_str(), percent(e.precision).c_str());
    out << line;
  }
  if (reference) {
    if (auto best = best_match(sweep, *reference)) {
      out << "  best match for " << percent(reference) << ": class filter " << (best->class_distinct ? "on" : "off")
          << ", roles " << to_string(best->roles) << ", denominator " << to_string(best->denominator) << " -> "
          << percent(best->precision) << "\n";
    }
  }
  return out.str();
}

std::string render_table(const EmbeddingReport& report) {
  std::ostringstream out;
  out << "Embedding precision@k (store: " << report.store_size << " words, dim " << report.store_dimension
      << ")\n";
  out << "  equations " << report.equations << "   evaluated " << report.evaluated << "   skipped (OOV) "
      << report.skipped_oov << "\n";
  out << "  ";
  for (std::size_t k = 1; k <= report.hits_at_k.size(); ++k) {
    char cell[16];
    std::snprintf(cell, sizeof(cell), "%8s", ("P@" + std::to_string(k)).c_str());
    out << cell;
  }
  out << "\n  ";
  for (std::size_t k = 1; k <= report.hits_at_k.size(); ++k) {
    char cell[16];
    auto p = report.precision_at(k);
    if (p) {
      std::snprintf(cell, sizeof(cell), "%8.2f", *p * 100.0);
    } else {
      std::snprintf(cell, sizeof(cell), "%8s", "-");
    }
    out << cell;
  }
  out << "\n";
  if (!report.oov_words.empty()) {
    out << "  out of vocabulary:";
    for (const auto& w : report.oov_words) out << ' ' << w;
    out << "\n";
  }
  return out.str();
}

}  // namespace analogy
