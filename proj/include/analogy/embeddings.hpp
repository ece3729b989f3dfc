#pragma once

// Word embeddings in the whitespace-separated text format
// `word v1 v2 ... vD`, one word per line, no header.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "analogy/errors.hpp"

namespace analogy {

using RealVector = std::vector<double>;

struct LoadOptions {
  // Keep only these words (matched after case folding when enabled).
  std::optional<std::unordered_set<std::string>> restrict_to;
  // Store every word lowercased; the first occurrence of a folded key wins.
  bool fold_case = false;
};

// Read-only after construction. Vectors are held in single precision to
// keep full-size vocabularies resident; all arithmetic on them is done in
// double precision.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dimension, bool fold_case = false);

  // Returns false when the (folded) word is already stored; the first
  // vector is kept.
  bool add(std::string_view word, std::span<const double> vector);
  bool add(std::string_view word, std::span<const float> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  bool fold_case() const { return fold_case_; }

  // Applies the store's case folding to `word`.
  std::string key(std::string_view word) const;
  std::optional<std::size_t> index_of(std::string_view word) const;
  const std::string& word(std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const { return words_; }
  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
  }

  // Non-fatal load diagnostics (duplicates, row-count notes).
  const std::vector<std::string>& warnings() const { return warnings_; }
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

 private:
  std::size_t dimension_ = 0;
  bool fold_case_ = false;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> warnings_;
};

// Throws ParseError naming the line on inconsistent dimensions or
// malformed numbers, and when the file cannot be read.
EmbeddingStore load_embeddings(const std::filesystem::path& path, const LoadOptions& options = {});
EmbeddingStore read_embeddings(std::istream& in, const std::string& source,
                               const LoadOptions& options = {});

// Words sorted lexicographically, shortest round-trip float formatting.
void write_embeddings(const EmbeddingStore& store, std::ostream& out);
void save_embeddings(const EmbeddingStore& store, const std::filesystem::path& path);

std::optional<RealVector> lookup(const EmbeddingStore& store, std::string_view word);

class EmptySentence : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct SentenceEmbedding {
  RealVector vector;
  std::vector<std::string> oov;  // skipped out-of-vocabulary words, in input order
};

// Componentwise mean of the in-vocabulary word vectors. Throws
// EmptySentence when no word is found.
SentenceEmbedding sentence_embedding(const EmbeddingStore& store, std::span<const std::string> words);

// Splits on whitespace.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace analogy
