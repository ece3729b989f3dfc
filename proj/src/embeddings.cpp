#include "analogy/embeddings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

namespace analogy {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<float> parse_float(std::string_view s) {
  float value = 0.0f;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::size_t dimension, bool fold_case)
    : dimension_(dimension), fold_case_(fold_case) {
  if (dimension_ == 0) throw InvalidInput("embedding dimension must be positive");
}

std::string EmbeddingStore::key(std::string_view word) const {
  return fold_case_ ? lowercase(word) : std::string(word);
}

bool EmbeddingStore::add(std::string_view word, std::span<const float> vector) {
  if (vector.size() != dimension_) {
    throw InvalidInput("vector for '" + std::string(word) + "' has dimension " +
                       std::to_string(vector.size()) + ", store has " + std::to_string(dimension_));
  }
  if (word.empty()) throw InvalidInput("empty word");
  std::string k = key(word);
  auto [it, inserted] = index_.try_emplace(k, words_.size());
  if (!inserted) return false;
  words_.push_back(std::move(k));
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

bool EmbeddingStore::add(std::string_view word, std::span<const double> vector) {
  std::vector<float> narrowed(vector.begin(), vector.end());
  return add(word, std::span<const float>(narrowed));
}

std::optional<std::size_t> EmbeddingStore::index_of(std::string_view word) const {
  auto it = fold_case_ ? index_.find(lowercase(word)) : index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingStore read_embeddings(std::istream& in, const std::string& source, const LoadOptions& options) {
  EmbeddingStore store;
  bool initialized = false;
  std::string line;
  std::vector<float> values;
  std::size_t line_no = 0;
  std::vector<std::string> duplicates;

  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) throw ParseError(source, line_no, "line has no vector components");

    if (!initialized) {
      store = EmbeddingStore(fields.size() - 1, options.fold_case);
      initialized = true;
    }
    const std::size_t dim = store.dimension();
    if (fields.size() < dim + 1) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(dim) + " components, found " +
                           std::to_string(fields.size() - 1));
    }
    // Some distributed vocabularies contain tokens with embedded spaces:
    // the last `dim` fields are the vector, everything before is the word.
    const std::size_t word_fields = fields.size() - dim;
    for (std::size_t i = 1; i < word_fields; ++i) {
      if (parse_float(fields[i])) {
        throw ParseError(source, line_no,
                         "expected " + std::to_string(dim) + " components, found " +
                             std::to_string(fields.size() - 1));
      }
    }
    std::string word(fields[0]);
    for (std::size_t i = 1; i < word_fields; ++i) {
      word += ' ';
      word += fields[i];
    }

    if (options.restrict_to && !options.restrict_to->contains(store.key(word))) continue;

    values.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      auto v = parse_float(fields[word_fields + i]);
      if (!v) {
        throw ParseError(source, line_no, "malformed number '" + std::string(fields[word_fields + i]) + "'");
      }
      values[i] = *v;
    }
    if (!store.add(word, std::span<const float>(values))) duplicates.push_back(word);
  }
  if (in.bad()) throw ParseError(source, 0, "read failure");
  if (!initialized) throw ParseError(source, 0, "no embeddings found");
  for (const auto& w : duplicates) store.warn("duplicate word '" + w + "' ignored (first occurrence kept)");
  return store;
}

EmbeddingStore load_embeddings(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open embedding file");
  return read_embeddings(in, path.string(), options);
}

void write_embeddings(const EmbeddingStore& store, std::ostream& out) {
  std::vector<std::size_t> order(store.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return store.word(a) < store.word(b); });
  char buf[64];
  for (std::size_t i : order) {
    out << store.word(i);
    for (float v : store.row(i)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

void save_embeddings(const EmbeddingStore& store, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_embeddings(store, out);
  if (!out) throw std::runtime_error("write failure on " + path.string());
}

std::optional<RealVector> lookup(const EmbeddingStore& store, std::string_view word) {
  auto idx = store.index_of(word);
  if (!idx) return std::nullopt;
  auto row = store.row(*idx);
  return RealVector(row.begin(), row.end());
}

SentenceEmbedding sentence_embedding(const EmbeddingStore& store, std::span<const std::string> words) {
  SentenceEmbedding result;
  result.vector.assign(store.dimension(), 0.0);
  std::size_t found = 0;
  for (const auto& w : words) {
    auto idx = store.index_of(w);
    if (!idx) {
      result.oov.push_back(w);
      continue;
    }
    auto row = store.row(*idx);
    for (std::size_t i = 0; i < row.size(); ++i) result.vector[i] += row[i];
    ++found;
  }
  if (found == 0) throw EmptySentence("no word of the sentence is in the vocabulary");
  for (auto& v : result.vector) v /= static_cast<double>(found);
  return result;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto f : split_fields(text)) out.emplace_back(f);
  return out;
}

}  // namespace analogy
