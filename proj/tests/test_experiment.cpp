#include <algorithm>
#include <set>
#include <sstream>

#include "analogy/experiment.hpp"
#include "analogy/report.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace analogy;

namespace {

const ZooDataset& zoo() {
  static const ZooDataset dataset = load_zoo(testing::zoo_path());
  return dataset;
}

const AnimalLexicon& lexicon() {
  static const AnimalLexicon lex = load_lexicon(testing::lexicon_path());
  return lex;
}

const EmbeddingStore& fixture_store() {
  static const EmbeddingStore store = load_embeddings(testing::fixture_store_path());
  return store;
}

const nlohmann::json& golden() {
  static const nlohmann::json j = nlohmann::json::parse(testing::read_file(testing::fixture_golden_path()));
  return j;
}

FeatureSubset paper_five() { return select_features(zoo(), SelectionMode::paper_five()); }

TripletEquation equation(std::string_view a, std::string_view b, std::string_view c) {
  return {*zoo().find(a), *zoo().find(b), *zoo().find(c), 0};
}

std::vector<std::string> matched_names(const Prediction& p) {
  std::vector<std::string> out;
  for (std::size_t m : p.matches) out.push_back(zoo().key(m));
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

ZooDataset mini_zoo(const std::vector<std::pair<std::string, int>>& animals) {
  std::vector<AnimalRecord> records;
  for (const auto& [name, cls] : animals) {
    AnimalRecord r;
    r.name = name;
    r.class_label = cls;
    records.push_back(r);
  }
  return ZooDataset(records);
}

}  // namespace

TEST_CASE("triplet enumeration") {
  CHECK(enumerate_triplets(zoo(), false, Roles::single).size() == 166650);
  CHECK(enumerate_triplets(zoo(), false, Roles::all_three).size() == 3 * 166650);

  const auto distinct = enumerate_triplets(zoo(), true, Roles::single);
  CHECK(distinct.size() == count_class_distinct_triples(zoo()));
  CHECK(distinct.size() == 74679);
  for (const auto& eq : distinct) {
    const int x = zoo()[eq.a].class_label, y = zoo()[eq.b].class_label, z = zoo()[eq.c].class_label;
    REQUIRE((x != y && x != z && y != z));
  }

  SUBCASE("small fixture") {
    const auto ds = mini_zoo({{"ant", 1}, {"bee", 1}, {"cod", 2}, {"dog", 3}});
    const auto all = enumerate_triplets(ds, false, Roles::single);
    CHECK(all.size() == 4);
    const auto kept = enumerate_triplets(ds, true, Roles::single);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0] == TripletEquation{0, 2, 3, 0});
    CHECK(kept[1] == TripletEquation{1, 2, 3, 0});
    CHECK(count_class_distinct_triples(ds) == 2);

    const auto roles = enumerate_triplets(ds, true, Roles::all_three);
    REQUIRE(roles.size() == 6);
    CHECK(roles[1] == TripletEquation{2, 0, 3, 1});
    CHECK(roles[2] == TripletEquation{3, 0, 2, 2});
  }
}

TEST_CASE("worked examples on the five features") {
  const auto five = paper_five();
  const auto first = predict_boolean(equation("seasnake", "frog#2", "aardvark"), zoo(), five);
  REQUIRE(first.solved());
  CHECK(first.solution->to_string() == "11100");
  CHECK(contains(matched_names(first), "platypus"));
  CHECK(first.novel);

  const auto second = predict_boolean(equation("platypus", "antelope", "stingray"), zoo(), five);
  REQUIRE(second.solved());
  CHECK(second.solution->to_string() == "00010");
  const auto names = matched_names(second);
  CHECK(contains(names, "scorpion"));
  CHECK(contains(names, "seasnake"));
  for (std::size_t m : second.matches) CHECK(project(zoo()[m], five) == *second.solution);
}

TEST_CASE("monotremes from milk and eggs") {
  const auto subset = select_features(zoo(), SelectionMode::parse("list:milk,eggs"));
  auto v = [&](const char* bits) { return ItemVector::from_bits(subset.schema(), bits); };
  const auto outcome = vec_solve(v("00"), v("10"), v("01"));
  REQUIRE(outcome.solved());
  CHECK(outcome.solution->to_string() == "11");
  CHECK(match_existing(*outcome.solution, zoo(), subset) == std::vector<std::string>{"platypus"});

  // Same equation over real animals: a neither suckles nor lays eggs,
  // b suckles, c lays eggs.
  std::optional<std::size_t> none, milk, eggs;
  for (std::size_t i = 0; i < zoo().size(); ++i) {
    const auto s = project(zoo()[i], subset).to_string();
    if (s == "00" && !none) none = i;
    if (s == "10" && !milk) milk = i;
    if (s == "01" && !eggs) eggs = i;
  }
  REQUIRE(none);
  REQUIRE(milk);
  REQUIRE(eggs);
  const auto p = predict_boolean({*none, *milk, *eggs, 0}, zoo(), subset);
  REQUIRE(p.solved());
  CHECK(matched_names(p) == std::vector<std::string>{"platypus"});
}

TEST_CASE("unsolvable equations name the feature") {
  const auto five = paper_five();
  // aardvark has hair, seasnake does not: 1:0::0:x on hair.
  const auto p = predict_boolean(equation("aardvark", "seasnake", "stingray"), zoo(), five);
  CHECK_FALSE(p.solved());
  CHECK(p.matches.empty());
  REQUIRE_FALSE(p.unsolvable.empty());
  CHECK(p.unsolvable[0].feature_name == "hair");
  CHECK_THROWS_AS(predict_boolean({0, 1, 500, 0}, zoo(), five), InvalidInput);
}

TEST_CASE("matching existing animals") {
  const auto all = select_features(zoo(), SelectionMode::all_16());
  for (std::size_t i = 0; i < zoo().size(); ++i) {
    CHECK(contains(match_existing(project(zoo()[i], all), zoo(), all), zoo().key(i)));
  }
  const auto five = paper_five();
  CHECK(match_existing(ItemVector::from_bits(five.schema(), "11111"), zoo(), five).empty());
  const auto other = select_features(zoo(), SelectionMode::parse("list:milk,eggs"));
  CHECK_THROWS_AS(match_existing(ItemVector::from_bits(other.schema(), "11"), zoo(), five), InvalidInput);
}

TEST_CASE("central permutation within a triple") {
  const auto five = paper_five();
  for (const auto& eq : enumerate_triplets(zoo(), true, Roles::single)) {
    if ((eq.a * 7 + eq.b) % 13 != 0) continue;
    const auto p = predict_boolean(eq, zoo(), five);
    const auto q = predict_boolean({eq.a, eq.c, eq.b, eq.role}, zoo(), five);
    CHECK(p.solved() == q.solved());
    if (p.solved()) CHECK(*p.solution == *q.solution);
  }
}

TEST_CASE("creativity: distinct sources never reproduce a source") {
  const auto five = paper_five();
  for (const auto& eq : enumerate_triplets(zoo(), false, Roles::all_three)) {
    if (eq.a % 5 != 0) continue;
    const auto pa = project(zoo()[eq.a], five), pb = project(zoo()[eq.b], five), pc = project(zoo()[eq.c], five);
    if (pa == pb || pa == pc || pb == pc) continue;
    const auto p = predict_boolean(eq, zoo(), five);
    if (p.solved()) REQUIRE(p.novel);
  }
}

TEST_CASE("fast counting agrees with the typed pipeline") {
  for (const char* spec : {"paper5", "all16"}) {
    const auto subset = select_features(zoo(), SelectionMode::parse(spec));
    BooleanConfig cfg;
    cfg.roles = Roles::single;
    cfg.class_distinct = true;
    const auto report = boolean_precision(zoo(), subset, cfg);

    BooleanCounts expected;
    std::set<std::string> solutions;
    for (const auto& eq : enumerate_triplets(zoo(), true, Roles::single)) {
      const auto p = predict_boolean(eq, zoo(), subset);
      ++expected.equations;
      if (!p.solved()) continue;
      ++expected.solvable;
      solutions.insert(p.solution->to_string());
      expected.hits += !p.matches.empty();
      if (p.novel) {
        ++expected.novel;
        expected.novel_hits += !p.matches.empty();
      }
    }
    CHECK(report.counts.equations == expected.equations);
    CHECK(report.counts.solvable == expected.solvable);
    CHECK(report.counts.hits == expected.hits);
    CHECK(report.counts.novel == expected.novel);
    CHECK(report.counts.novel_hits == expected.novel_hits);
    CHECK(report.counts.distinct_solutions == solutions.size());
  }
}

TEST_CASE("Boolean precision on the canonical data") {
  const auto five = boolean_precision(zoo(), paper_five(), BooleanConfig{});
  CHECK(five.mode == "boolean_5");
  CHECK(five.counts.equations == 499950);
  CHECK(five.counts.novel == 45901);
  CHECK(five.counts.novel_hits == 27392);
  CHECK(*five.headline() == doctest::Approx(0.5967).epsilon(1e-3));

  const auto all = boolean_precision(zoo(), select_features(zoo(), SelectionMode::all_16()), BooleanConfig{});
  CHECK(all.mode == "boolean_16");
  CHECK(all.counts.novel == 44871);
  CHECK(all.counts.novel_hits == 9501);
  CHECK(std::abs(*all.headline() - kReferencePrecisionAll16) < 0.03);

  std::size_t unsolvable = 0;
  for (const auto& [feature, n] : five.counts.unsolvable_by_feature) unsolvable += n;
  CHECK(unsolvable >= five.counts.equations - five.counts.solvable);
}

TEST_CASE("reports do not depend on the worker count") {
  BooleanConfig one;
  BooleanConfig four;
  four.workers = 4;
  std::ostringstream trace_one, trace_four;
  const auto a = boolean_precision(zoo(), paper_five(), one, &trace_one, "paper5");
  const auto b = boolean_precision(zoo(), paper_five(), four, &trace_four, "paper5");
  CHECK(to_json(a).dump() == to_json(b).dump());
  const std::string text = trace_one.str();
  CHECK(text == trace_four.str());
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == a.counts.equations);

  std::istringstream lines(text);
  std::string first;
  std::getline(lines, first);
  const auto j = nlohmann::json::parse(first);
  CHECK(j.contains("a"));
  CHECK(j.contains("solution"));
}

TEST_CASE("degenerate datasets have undefined precision") {
  const auto ds = mini_zoo({{"ant", 1}});
  const auto report = boolean_precision(ds, select_features(ds, SelectionMode::paper_five()), BooleanConfig{});
  CHECK(report.counts.equations == 0);
  CHECK_FALSE(report.headline().has_value());
  CHECK(to_json(report)["headline"].is_null());
}

TEST_CASE("convention sweep") {
  const auto sweep = sweep_conventions(zoo(), paper_five(), 2);
  CHECK(sweep.size() == 12);
  const auto best = best_match(sweep, kReferencePrecisionFive);
  REQUIRE(best);
  CHECK_FALSE(best->class_distinct);
  CHECK(best->roles == Roles::all_three);
  CHECK(best->denominator == Denominator::novel);
  CHECK_FALSE(best_match({}, 0.5).has_value());
  CHECK(parse_roles("all3") == Roles::all_three);
  CHECK(parse_denominator("solvable") == Denominator::solvable);
  CHECK_THROWS_AS(parse_roles("two"), InvalidInput);
  CHECK_THROWS_AS(parse_denominator("most"), InvalidInput);
}

TEST_CASE("embedding prediction on a hand-built store") {
  const auto ds = mini_zoo({{"aardvark", 1}, {"frog", 5}, {"platypus", 1}, {"seasnake", 3}});
  EmbeddingStore store(2);
  store.add("seasnake", RealVector{0, 0});
  store.add("frog", RealVector{1, 0});
  store.add("aardvark", RealVector{0, 1});
  store.add("platypus", RealVector{1, 1.05});
  store.add("sofa", RealVector{1.2, 1.2});
  const AnimalLexicon lex({"aardvark", "frog", "platypus", "seasnake"}, "mini");
  const ZooMatcher matcher(ds);

  const auto out = embedding_predict({3, 1, 0, 0}, ds, store, lex, matcher);
  REQUIRE(out.prediction);
  const auto& p = *out.prediction;
  CHECK(p.target == RealVector{1, 1});
  REQUIRE(p.candidates.size() == 2);
  CHECK(p.candidates[0].word == "platypus");
  CHECK(p.candidates[0].matches_zoo);
  CHECK(p.candidates[1].word == "sofa");
  CHECK_FALSE(p.candidates[1].is_animal);
  REQUIRE(p.proposals().size() == 1);
  CHECK(p.proposals()[0]->word == "platypus");

  SUBCASE("a equals b returns c when query words are kept") {
    EmbeddingConfig keep;
    keep.exclude_query_words = false;
    const auto same = embedding_predict({1, 1, 0, 0}, ds, store, lex, matcher, keep);
    REQUIRE(same.prediction);
    CHECK(same.prediction->target == RealVector{0, 1});
    CHECK(same.prediction->proposals()[0]->word == "aardvark");
  }
  SUBCASE("missing animals are reported") {
    const auto ds2 = mini_zoo({{"aardvark", 1}, {"frog", 5}, {"yeti", 3}});
    const auto miss = embedding_predict({2, 1, 0, 0}, ds2, store, lex, ZooMatcher(ds2));
    CHECK_FALSE(miss.prediction);
    CHECK(miss.oov == std::vector<std::string>{"yeti"});
  }
}

TEST_CASE("precision at k") {
  EmbeddingPrediction hit, late, miss;
  hit.candidates = {{"emu", 1.0, true, true}};
  late.candidates = {{"yak", 1.0, true, false}, {"rock", 1.5, false, false}, {"emu", 2.0, true, true}};
  miss.candidates = {{"yak", 1.0, true, false}};
  const std::vector<EmbeddingPrediction> preds = {hit, late, miss};
  CHECK(*precision_at_k(preds, 1) == doctest::Approx(1.0 / 3));
  CHECK(*precision_at_k(preds, 2) == doctest::Approx(2.0 / 3));
  CHECK(*precision_at_k(preds, 10) == doctest::Approx(2.0 / 3));
  CHECK_FALSE(precision_at_k({}, 1).has_value());
  CHECK_THROWS_AS(precision_at_k(preds, 0), InvalidInput);
  const std::vector<EmbeddingPrediction> all_hits = {hit, hit};
  for (std::size_t k = 1; k <= 8; ++k) CHECK(*precision_at_k(all_hits, k) == 1.0);
}

TEST_CASE("fixture store matches the golden report") {
  const auto equations = boolean_selected_equations(zoo(), paper_five(), BooleanConfig{});
  REQUIRE(equations.size() == golden()["equations"].get<std::size_t>());
  EmbeddingConfig cfg;
  cfg.workers = 3;
  const auto report = embedding_precision(zoo(), fixture_store(), lexicon(), equations, cfg);
  CHECK(report.evaluated == equations.size());
  CHECK(report.skipped_oov == 0);
  CHECK(report.hits_at_k == golden()["hits_at_k"].get<std::vector<std::size_t>>());
  for (std::size_t k = 2; k <= 8; ++k) CHECK(*report.precision_at(k) >= *report.precision_at(k - 1));

  // Recount through the single-query path on a sample.
  const ZooMatcher matcher(zoo());
  std::vector<EmbeddingPrediction> sample;
  std::size_t rank1 = 0;
  for (std::size_t i = 0; i < equations.size(); i += 97) {
    auto out = embedding_predict(equations[i], zoo(), fixture_store(), lexicon(), matcher, cfg);
    REQUIRE(out.prediction);
    CHECK(out.prediction->candidates.size() == cfg.retrieve_n);
    rank1 += !out.prediction->proposals().empty() && out.prediction->proposals()[0]->matches_zoo;
    sample.push_back(std::move(*out.prediction));
  }
  CHECK(*precision_at_k(sample, 1) == doctest::Approx(static_cast<double>(rank1) / sample.size()));

  const auto animals = golden()["animals"].get<std::vector<std::string>>();
  for (const auto& w : fixture_store().words()) {
    CHECK_MESSAGE(lexicon().is_animal(w) == contains(animals, w), w);
  }
}

TEST_CASE("embedding runs skip out-of-vocabulary animals") {
  EmbeddingStore partial(fixture_store().dimension());
  for (std::size_t i = 0; i < fixture_store().size(); ++i) {
    if (fixture_store().word(i) == "platypus") continue;
    partial.add(fixture_store().word(i), fixture_store().row(i));
  }
  const auto equations = boolean_selected_equations(zoo(), paper_five(), BooleanConfig{});
  const auto report = embedding_precision(zoo(), partial, lexicon(), equations, EmbeddingConfig{});
  CHECK(report.skipped_oov > 0);
  CHECK(report.evaluated + report.skipped_oov == equations.size());
  CHECK(report.oov_words == std::set<std::string>{"platypus"});

  EmbeddingConfig bad;
  bad.k_max = 11;
  CHECK_THROWS_AS(embedding_precision(zoo(), partial, lexicon(), equations, bad), InvalidInput);
}
