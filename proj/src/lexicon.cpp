#include "analogy/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>

#include "analogy/errors.hpp"

namespace analogy {

std::string normalize_token(std::string_view word) {
  auto is_ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!word.empty() && is_ws(word.front())) word.remove_prefix(1);
  while (!word.empty() && is_ws(word.back())) word.remove_suffix(1);
  std::string out;
  out.reserve(word.size());
  for (unsigned char ch : word) out += is_ws(ch) ? '_' : static_cast<char>(std::tolower(ch));
  return out;
}

AnimalLexicon::AnimalLexicon(const std::vector<std::string>& lemmas, std::string source_tag)
    : source_(std::move(source_tag)) {
  for (const auto& l : lemmas) {
    auto n = normalize_token(l);
    if (n.empty()) continue;
    stems_.insert(stem(n));
    lemmas_.insert(std::move(n));
  }
  if (lemmas_.empty()) throw InvalidInput("animal lexicon '" + source_ + "' is empty");
}

bool AnimalLexicon::matches_one(const std::string& token, const AnimalMatchOptions& options) const {
  if (lemmas_.contains(token)) return true;
  return options.stem_fallback && stems_.contains(stem(token));
}

bool AnimalLexicon::is_animal(std::string_view word, const AnimalMatchOptions& options) const {
  const std::string token = normalize_token(word);
  if (token.empty()) return false;
  if (matches_one(token, options)) return true;
  if (options.final_segment) {
    auto pos = token.find_last_of("-_");
    if (pos != std::string::npos && pos + 1 < token.size()) {
      return matches_one(token.substr(pos + 1), options);
    }
  }
  return false;
}

AnimalLexicon read_lexicon(std::istream& in, const std::string& source) {
  std::vector<std::string> lemmas;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    lemmas.push_back(line);
  }
  try {
    return AnimalLexicon(lemmas, source);
  } catch (const InvalidInput& e) {
    throw ParseError(source, 0, e.what());
  }
}

AnimalLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open lexicon");
  return read_lexicon(in, path.string());
}

ZooMatcher::ZooMatcher(const ZooDataset& dataset) {
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_stem_[stem(normalize_token(dataset[i].name))].push_back(i);
  }
}

const std::vector<std::size_t>& ZooMatcher::match(std::string_view word) const {
  static const std::vector<std::size_t> kNone;
  auto it = by_stem_.find(stem(normalize_token(word)));
  return it == by_stem_.end() ? kNone : it->second;
}

std::vector<std::size_t> matches_zoo(std::string_view word, const ZooDataset& dataset) {
  return ZooMatcher(dataset).match(word);
}

}  // namespace analogy
