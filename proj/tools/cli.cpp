#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "CLI11.hpp"
#include "analogy/ap_core.hpp"
#include "analogy/embeddings.hpp"
#include "analogy/errors.hpp"
#include "analogy/experiment.hpp"
#include "analogy/lexicon.hpp"
#include "analogy/report.hpp"
#include "analogy/vector_ap.hpp"
#include "analogy/zoo.hpp"

namespace analogy::cli {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand errors on the command line (bits, tokens, vector widths).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Bit parse_bit_operand(const std::string& s) {
  if (s == "0") return Bit::zero;
  if (s == "1") return Bit::one;
  throw UsageError("'" + s + "' is not a bit (expected 0 or 1)");
}

// Symbols drawn from the domain spanned by the operands themselves.
std::vector<Symbol> nominal_operands(const std::vector<std::string>& operands) {
  std::vector<std::string> values;
  for (const auto& o : operands) {
    if (o.empty()) throw UsageError("empty nominal operand");
    if (std::find(values.begin(), values.end(), o) == values.end()) values.push_back(o);
  }
  if (values.size() < 2) values.push_back("<other>");
  auto domain = std::make_shared<const NominalDomain>("value", values);
  std::vector<Symbol> out;
  for (const auto& o : operands) out.emplace_back(domain, o);
  return out;
}

// "11001" style bit strings, or comma-separated tokens per feature. A
// column whose tokens are all 0/1 is binary, any other column is nominal
// over the tokens it contains.
std::vector<ItemVector> vector_operands(const std::vector<std::string>& operands, const std::string& feature_names) {
  std::vector<std::vector<std::string>> rows;
  const bool tokenized = std::any_of(operands.begin(), operands.end(),
                                     [](const std::string& o) { return o.find(',') != std::string::npos; });
  for (const auto& o : operands) {
    if (tokenized) {
      rows.push_back(split_commas(o));
    } else {
      std::vector<std::string> bits;
      for (char ch : o) bits.emplace_back(1, ch);
      rows.push_back(std::move(bits));
    }
  }
  const std::size_t width = rows.front().size();
  if (width == 0) throw UsageError("empty vector operand");
  for (const auto& r : rows) {
    if (r.size() != width) throw UsageError("vector operands have different lengths");
  }
  std::vector<std::string> names = feature_names.empty() ? std::vector<std::string>{} : split_commas(feature_names);
  if (!names.empty() && names.size() != width) {
    throw UsageError("--names lists " + std::to_string(names.size()) + " features, vectors have " +
                     std::to_string(width));
  }
  std::vector<Feature> features;
  for (std::size_t i = 0; i < width; ++i) {
    std::string name = names.empty() ? "f" + std::to_string(i + 1) : names[i];
    std::vector<std::string> values;
    bool binary = true;
    for (const auto& r : rows) {
      if (r[i] != "0" && r[i] != "1") binary = false;
      if (std::find(values.begin(), values.end(), r[i]) == values.end()) values.push_back(r[i]);
    }
    if (binary) {
      features.push_back(Feature::binary(std::move(name)));
    } else {
      if (values.size() < 2) values.push_back("<other>");
      features.push_back(Feature::nominal(std::move(name), std::move(values)));
    }
  }
  auto schema = make_schema(std::move(features));
  std::vector<ItemVector> out;
  for (const auto& r : rows) {
    try {
      out.push_back(ItemVector::from_tokens(schema, r));
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct SolveArgs {
  std::string kind;
  std::vector<std::string> operands;
  std::string names;
  bool strict = false;
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  if (args.operands.size() != 3) throw UsageError("solve takes exactly three operands");
  if (args.kind == "bool") {
    auto x = bool_solve(parse_bit_operand(args.operands[0]), parse_bit_operand(args.operands[1]),
                        parse_bit_operand(args.operands[2]));
    out << (x ? (to_bool(*x) ? "1" : "0") : "unsolvable") << '\n';
    return !x && args.strict ? kExitUnsolvable : kExitOk;
  }
  if (args.kind == "nominal") {
    auto s = nominal_operands(args.operands);
    auto x = nominal_solve(s[0], s[1], s[2]);
    out << (x ? x->value() : "unsolvable") << '\n';
    return !x && args.strict ? kExitUnsolvable : kExitOk;
  }
  auto v = vector_operands(args.operands, args.names);
  auto outcome = vec_solve(v[0], v[1], v[2]);
  out << (outcome.solved() ? outcome.solution->to_string() : "unsolvable") << '\n';
  const auto& schema = v[0].schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    out << "  " << schema[i].name << ": " << v[0].token(i) << ':' << v[1].token(i) << "::" << v[2].token(i)
        << ":x -> ";
    if (outcome.components[i]) {
      out << schema[i].token(*outcome.components[i]) << '\n';
    } else {
      out << "unsolvable\n";
    }
  }
  return !outcome.solved() && args.strict ? kExitUnsolvable : kExitOk;
}

int cmd_check(const SolveArgs& args, std::ostream& out) {
  if (args.operands.size() != 4) throw UsageError("check takes exactly four operands");
  bool holds = false;
  if (args.kind == "bool") {
    holds = bool_ap(parse_bit_operand(args.operands[0]), parse_bit_operand(args.operands[1]),
                    parse_bit_operand(args.operands[2]), parse_bit_operand(args.operands[3]));
  } else if (args.kind == "nominal") {
    auto s = nominal_operands(args.operands);
    holds = nominal_ap(s[0], s[1], s[2], s[3]);
  } else {
    auto v = vector_operands(args.operands, args.names);
    holds = vec_ap(v[0], v[1], v[2], v[3]);
  }
  out << (holds ? "true" : "false") << '\n';
  return !holds && args.strict ? kExitUnsolvable : kExitOk;
}

struct BooleanArgs {
  std::string dataset;
  std::string features = "paper5";
  std::string legs = "nominal";
  bool class_distinct = false;
  std::string roles = "all3";
  std::string denominator = "novel";
  unsigned workers = 1;
  std::string out;
  std::string trace;
  bool sweep = false;
};

LegsEncoding parse_legs(const std::string& s) {
  if (s == "nominal") return LegsEncoding::nominal;
  if (s == "binarized") return LegsEncoding::binarized;
  throw ConfigError("--legs must be nominal or binarized");
}

BooleanConfig boolean_config(const BooleanArgs& a) {
  if (a.workers == 0) throw ConfigError("--workers must be at least 1");
  BooleanConfig cfg;
  try {
    cfg.class_distinct = a.class_distinct;
    cfg.roles = parse_roles(a.roles);
    cfg.denominator = parse_denominator(a.denominator);
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  cfg.workers = a.workers;
  return cfg;
}

ZooDataset load_dataset(const std::string& path, std::ostream& err) {
  if (path.empty()) throw ConfigError("--dataset is required");
  auto ds = load_zoo(path);
  for (const auto& w : ds.warnings()) err << "warning: " << w << '\n';
  return ds;
}

std::pair<SelectionMode, FeatureSubset> feature_subset(const ZooDataset& ds, const std::string& spec,
                                                       const std::string& legs) {
  try {
    auto mode = SelectionMode::parse(spec);
    return {mode, select_features(ds, mode, parse_legs(legs))};
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failure on " + path);
}

std::unique_ptr<std::ofstream> open_trace(const std::string& path) {
  if (path.empty()) return nullptr;
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw std::runtime_error("cannot write " + path);
  return f;
}

int cmd_run_boolean(const BooleanArgs& a, std::ostream& out, std::ostream& err) {
  const BooleanConfig cfg = boolean_config(a);
  const ZooDataset ds = load_dataset(a.dataset, err);
  const auto [mode, subset] = feature_subset(ds, a.features, a.legs);
  if (mode.kind == SelectionMode::Kind::heuristic_top_k) {
    err << "heuristic feature ranking:";
    for (const auto& c : rank_by_majority_cohort(ds)) err << ' ' << c.feature << '=' << c.majority_size;
    err << '\n';
  }
  auto trace = open_trace(a.trace);
  const auto report = boolean_precision(ds, subset, cfg, trace.get(), mode.describe());
  const auto reference = subset.legs_encoding() == LegsEncoding::nominal ? reference_precision(mode) : std::nullopt;

  std::vector<SweepEntry> sweep;
  if (a.sweep) sweep = sweep_conventions(ds, subset, cfg.workers);

  out << render_table(report, reference);
  if (a.sweep) out << render_sweep(sweep, reference);
  out << "headline precision: " << percent(report.headline()) << '\n';
  if (!a.out.empty()) {
    write_text(a.out, to_json(report, reference, a.sweep ? &sweep : nullptr).dump(2) + "\n");
  }
  return kExitOk;
}

struct EmbeddingArgs {
  BooleanArgs equations;
  std::string embeddings;
  std::string lexicon;
  std::size_t retrieve_n = 10;
  std::size_t k_max = 8;
  bool fold_case = false;
  bool keep_query_words = false;
  bool no_stem_fallback = false;
};

int cmd_run_embedding(const EmbeddingArgs& a, std::ostream& out, std::ostream& err) {
  const BooleanConfig eq_cfg = boolean_config(a.equations);
  if (a.retrieve_n == 0) throw ConfigError("--retrieve-n must be at least 1");
  if (a.k_max == 0 || a.k_max > a.retrieve_n) throw ConfigError("--k-max must lie in 1..--retrieve-n");
  if (a.embeddings.empty()) throw ConfigError("--embeddings is required");
  if (a.lexicon.empty()) throw ConfigError("--lexicon is required");
  if (!std::filesystem::exists(a.embeddings)) {
    throw ConfigError("embedding file '" + a.embeddings +
                      "' not found; extract the needed words from a full embedding file with "
                      "`analogy snapshot --embeddings FULL --zoo DATASET --out FIXTURE`");
  }

  const ZooDataset ds = load_dataset(a.equations.dataset, err);
  const auto [mode, subset] = feature_subset(ds, a.equations.features, a.equations.legs);
  const AnimalLexicon lexicon = load_lexicon(a.lexicon);
  LoadOptions load;
  load.fold_case = a.fold_case;
  const EmbeddingStore store = load_embeddings(a.embeddings, load);
  for (const auto& w : store.warnings()) err << "warning: " << w << '\n';

  EmbeddingConfig cfg;
  cfg.retrieve_n = a.retrieve_n;
  cfg.k_max = a.k_max;
  cfg.exclude_query_words = !a.keep_query_words;
  cfg.animal.stem_fallback = !a.no_stem_fallback;
  cfg.workers = eq_cfg.workers;

  const auto equations = boolean_selected_equations(ds, subset, eq_cfg);
  auto trace = open_trace(a.equations.trace);
  auto report = embedding_precision(ds, store, lexicon, equations, cfg, trace.get());
  report.features_spec = mode.describe();
  report.equation_config = eq_cfg;

  out << render_table(report);
  if (!a.equations.out.empty()) write_text(a.equations.out, to_json(report).dump(2) + "\n");
  return kExitOk;
}

struct SnapshotArgs {
  std::string embeddings;
  std::string words_file;
  std::vector<std::string> words;
  std::string zoo;
  bool fold_case = false;
  std::string out;
};

int cmd_snapshot(const SnapshotArgs& a, std::ostream& out, std::ostream& err) {
  if (a.embeddings.empty() || a.out.empty()) throw ConfigError("--embeddings and --out are required");
  std::unordered_set<std::string> wanted;
  auto add = [&](const std::string& w) {
    if (w.empty()) return;
    if (a.fold_case) {
      wanted.insert(normalize_token(w));
    } else {
      wanted.insert(w);
    }
  };
  for (const auto& w : a.words) add(w);
  if (!a.words_file.empty()) {
    std::ifstream f(a.words_file);
    if (!f) throw ParseError(a.words_file, 0, "cannot open word list");
    std::string line;
    while (std::getline(f, line)) {
      for (const auto& t : tokenize(line)) add(t);
    }
  }
  if (!a.zoo.empty()) {
    const ZooDataset ds = load_dataset(a.zoo, err);
    for (const auto& r : ds.records()) add(r.name);
  }
  if (wanted.empty()) throw ConfigError("snapshot needs at least one word (--word, --words or --zoo)");

  LoadOptions load;
  load.restrict_to = wanted;
  load.fold_case = a.fold_case;
  const EmbeddingStore store = load_embeddings(a.embeddings, load);
  if (store.empty()) throw ConfigError("none of the requested words is in " + a.embeddings);
  save_embeddings(store, a.out);
  out << "wrote " << store.size() << " of " << wanted.size() << " requested words to " << a.out << '\n';
  return kExitOk;
}

int cmd_features(const std::string& dataset, std::ostream& out, std::ostream& err) {
  const ZooDataset ds = load_dataset(dataset, err);
  out << "feature     majority  cohort\n";
  for (const auto& c : rank_by_majority_cohort(ds)) {
    char line[64];
    std::snprintf(line, sizeof(line), "%-10s  %8d  %6zu\n", c.feature.c_str(), c.majority_value, c.majority_size);
    out << line;
  }
  return kExitOk;
}

int cmd_score(const std::string& embeddings, bool fold_case, const std::vector<std::string>& sentences,
              std::ostream& out, std::ostream& err) {
  if (sentences.size() != 4) throw UsageError("score takes four sentences a b c d");
  if (embeddings.empty()) throw ConfigError("--embeddings is required");
  std::unordered_set<std::string> needed;
  std::vector<std::vector<std::string>> words;
  for (const auto& s : sentences) {
    words.push_back(tokenize(s));
    for (const auto& w : words.back()) needed.insert(fold_case ? normalize_token(w) : w);
  }
  LoadOptions load;
  load.restrict_to = needed;
  load.fold_case = fold_case;
  const EmbeddingStore store = load_embeddings(embeddings, load);
  std::vector<RealVector> means;
  for (const auto& w : words) {
    auto s = sentence_embedding(store, w);
    for (const auto& o : s.oov) err << "warning: out of vocabulary: " << o << '\n';
    means.push_back(std::move(s.vector));
  }
  const double cosine = parallelogram_score(means[0], means[1], means[2], means[3]);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "cos(b-a, d-c)     = %.4f\n1 - cos(b-a, d-c) = %.4f\n", cosine, 1.0 - cosine);
  out << buf;
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analogical proportions: solving, checking and Zoo creativity experiments", "analogy"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI configuration file (command-line flags take precedence)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a:b::c:x");
  solve->add_option("kind", solve_args.kind, "bool | nominal | vector")
      ->required()
      ->check(CLI::IsMember({"bool", "nominal", "vector"}));
  solve->add_option("operands", solve_args.operands, "a b c")->required()->expected(3);
  solve->add_option("--names", solve_args.names, "Comma-separated feature names for vector operands");
  solve->add_flag("--strict", solve_args.strict, "Exit with status 1 when there is no solution");

  SolveArgs check_args;
  auto* check = app.add_subcommand("check", "Check whether a:b::c:d holds");
  check->add_option("kind", check_args.kind, "bool | nominal | vector")
      ->required()
      ->check(CLI::IsMember({"bool", "nominal", "vector"}));
  check->add_option("operands", check_args.operands, "a b c d")->required()->expected(4);
  check->add_option("--names", check_args.names, "Comma-separated feature names for vector operands");
  check->add_flag("--strict", check_args.strict, "Exit with status 1 when the proportion does not hold");

  auto add_equation_options = [](CLI::App* sub, BooleanArgs& a) {
    sub->add_option("--dataset", a.dataset, "UCI zoo.data file")->envname("ANALOGY_DATASET");
    sub->add_option("--features", a.features, "paper5 | all16 | top<k>-heuristic | list:a,b,...")
        ->envname("ANALOGY_FEATURES")
        ->capture_default_str();
    sub->add_option("--legs", a.legs, "nominal | binarized")->envname("ANALOGY_LEGS")->capture_default_str();
    sub->add_flag("--class-distinct,!--no-class-distinct", a.class_distinct,
                  "Keep only triplets of three distinct classes")
        ->envname("ANALOGY_CLASS_DISTINCT");
    sub->add_option("--roles", a.roles, "single | all3")->envname("ANALOGY_ROLES")->capture_default_str();
    sub->add_option("--denominator", a.denominator, "all | solvable | novel")
        ->envname("ANALOGY_DENOMINATOR")
        ->capture_default_str();
    sub->add_option("--workers", a.workers, "Worker threads")->envname("ANALOGY_WORKERS")->capture_default_str();
    sub->add_option("--out", a.out, "Write the JSON report here")->envname("ANALOGY_OUT");
    sub->add_option("--trace", a.trace, "Write one JSON line per equation here")->envname("ANALOGY_TRACE");
  };

  BooleanArgs boolean_args;
  auto* run_boolean = app.add_subcommand("run-boolean", "Boolean creativity precision over the Zoo dataset");
  add_equation_options(run_boolean, boolean_args);
  run_boolean->add_flag("--sweep", boolean_args.sweep, "Also evaluate every counting convention");

  EmbeddingArgs emb_args;
  auto* run_embedding = app.add_subcommand("run-embedding", "Embedding precision@k over Boolean-selected triplets");
  add_equation_options(run_embedding, emb_args.equations);
  run_embedding->add_option("--embeddings", emb_args.embeddings, "Text embedding file")
      ->envname("ANALOGY_EMBEDDINGS");
  run_embedding->add_option("--lexicon", emb_args.lexicon, "Animal lexicon file")->envname("ANALOGY_LEXICON");
  run_embedding->add_option("--retrieve-n", emb_args.retrieve_n, "Neighbors retrieved per prediction")
      ->envname("ANALOGY_RETRIEVE_N")
      ->capture_default_str();
  run_embedding->add_option("--k-max", emb_args.k_max, "Largest k reported")
      ->envname("ANALOGY_K_MAX")
      ->capture_default_str();
  run_embedding->add_flag("--fold-case", emb_args.fold_case, "Lowercase the vocabulary when loading")
      ->envname("ANALOGY_FOLD_CASE");
  run_embedding->add_flag("--keep-query-words", emb_args.keep_query_words,
                          "Do not exclude a, b and c from the neighbors")
      ->envname("ANALOGY_KEEP_QUERY_WORDS");
  run_embedding->add_flag("--no-stem-fallback", emb_args.no_stem_fallback,
                          "Animal test by exact lexicon membership only")
      ->envname("ANALOGY_NO_STEM_FALLBACK");

  SnapshotArgs snap_args;
  auto* snapshot = app.add_subcommand("snapshot", "Extract selected words from an embedding file");
  snapshot->add_option("--embeddings", snap_args.embeddings, "Source embedding file")
      ->envname("ANALOGY_EMBEDDINGS");
  snapshot->add_option("--words", snap_args.words_file, "File of words to keep");
  snapshot->add_option("--word", snap_args.words, "Word to keep (repeatable)");
  snapshot->add_option("--zoo", snap_args.zoo, "Keep every animal name of this dataset");
  snapshot->add_flag("--fold-case", snap_args.fold_case, "Lowercase the vocabulary");
  snapshot->add_option("--out", snap_args.out, "Destination file");

  std::string features_dataset;
  auto* features = app.add_subcommand("features", "Rank binary features by majority-cohort size");
  features->add_option("--dataset", features_dataset, "UCI zoo.data file")->envname("ANALOGY_DATASET");

  std::string score_embeddings;
  bool score_fold = false;
  std::vector<std::string> score_sentences;
  auto* score = app.add_subcommand("score", "Parallelogram score of four sentences (mean word vectors)");
  score->add_option("--embeddings", score_embeddings, "Embedding file")->envname("ANALOGY_EMBEDDINGS");
  score->add_flag("--fold-case", score_fold, "Lowercase the vocabulary");
  score->add_option("sentences", score_sentences, "a b c d (quote each sentence)")->required()->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_args, out);
    if (check->parsed()) return cmd_check(check_args, out);
    if (run_boolean->parsed()) return cmd_run_boolean(boolean_args, out, err);
    if (run_embedding->parsed()) return cmd_run_embedding(emb_args, out, err);
    if (snapshot->parsed()) return cmd_snapshot(snap_args, out, err);
    if (features->parsed()) return cmd_features(features_dataset, out, err);
    if (score->parsed()) return cmd_score(score_embeddings, score_fold, score_sentences, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace analogy::cli
