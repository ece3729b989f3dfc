#pragma once

// Machine-readable (JSON) and tabular renderings of experiment reports.
//
// Boolean report schema ("analogy.boolean-report/1"):
//   schema, mode, features_spec, features[], legs,
//   config {class_distinct, roles, denominator},
//   counts {equations, solvable, novel, hits, novel_hits, distinct_solutions},
//   precision {all, solvable, novel}   (null when the denominator is 0)
//   headline                           (precision under config.denominator)
//   unsolvable_by_feature {feature: count}
//   reference                          (published value or null)
//   sweep[] {class_distinct, roles, denominator, precision}   (optional)
//   best_match {..., abs_error}                               (optional)
//
// Embedding report schema ("analogy.embedding-report/1"):
//   schema, features_spec, equation_config {...},
//   config {retrieve_n, k_max, exclude_query_words, stem_fallback, final_segment},
//   store {size, dimension}, equations, evaluated, skipped_oov, oov_words[],
//   precision_at_k [{k, hits, precision, reference}]
//
// Worker counts are deliberately not echoed so that reports are identical
// across thread counts.

#include <optional>
#include <string>
#include <vector>

#include "analogy/experiment.hpp"
#include "json.hpp"

namespace analogy {

using Json = nlohmann::ordered_json;

Json to_json(const PrecisionReport& report, const std::optional<double>& reference = std::nullopt,
             const std::vector<SweepEntry>* sweep = nullptr);
Json to_json(const SweepEntry& entry);
Json to_json(const EmbeddingReport& report);

std::string render_table(const PrecisionReport& report, const std::optional<double>& reference = std::nullopt);
std::string render_table(const EmbeddingReport& report);
std::string render_sweep(const std::vector<SweepEntry>& sweep, const std::optional<double>& reference);

// "59.68%" style, or "undefined".
std::string percent(const std::optional<double>& value);

}  // namespace analogy
