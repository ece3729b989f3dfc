#pragma once

// Deciding whether a word names an animal, and whether it names one of
// the Zoo animals after stemming.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "analogy/zoo.hpp"

namespace analogy {

// Classic Porter stemmer (steps 1a-5b, reference C behaviour). Expects a
// lowercase token; words of one or two letters are returned unchanged.
std::string stem(std::string_view word);

// Lowercased and trimmed; inner whitespace becomes '_'.
std::string normalize_token(std::string_view word);

struct AnimalMatchOptions {
  bool stem_fallback = true;   // also accept words whose stem is a lemma stem
  bool final_segment = true;   // "sea-snake" / "sea_snake" also tested as "snake"
};

class AnimalLexicon {
 public:
  // Throws InvalidInput when no lemma remains after normalization.
  AnimalLexicon(const std::vector<std::string>& lemmas, std::string source_tag);

  std::size_t size() const { return lemmas_.size(); }
  const std::string& source_tag() const { return source_; }
  const std::set<std::string>& lemmas() const { return lemmas_; }
  bool contains(std::string_view lemma) const { return lemmas_.contains(normalize_token(lemma)); }

  bool is_animal(std::string_view word, const AnimalMatchOptions& options = {}) const;

 private:
  bool matches_one(const std::string& token, const AnimalMatchOptions& options) const;

  std::set<std::string> lemmas_;
  std::unordered_set<std::string> stems_;
  std::string source_;
};

// One lemma per line, '#' starts a comment. Throws ParseError on an
// unreadable or empty file.
AnimalLexicon read_lexicon(std::istream& in, const std::string& source);
AnimalLexicon load_lexicon(const std::filesystem::path& path);

// Zoo records whose stemmed name equals the stemmed (normalized) word.
class ZooMatcher {
 public:
  explicit ZooMatcher(const ZooDataset& dataset);

  const std::vector<std::size_t>& match(std::string_view word) const;

 private:
  std::unordered_map<std::string, std::vector<std::size_t>> by_stem_;
};

std::vector<std::size_t> matches_zoo(std::string_view word, const ZooDataset& dataset);

}  // namespace analogy
