#pragma once

// Analogical proportions a:b::c:d over Boolean and nominal values, and
// componentwise over item vectors described by a feature schema.

#include <array>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace analogy {

enum class Bit : std::uint8_t { zero = 0, one = 1 };

constexpr Bit operator!(Bit b) { return b == Bit::zero ? Bit::one : Bit::zero; }
constexpr Bit to_bit(bool v) { return v ? Bit::one : Bit::zero; }
constexpr bool to_bool(Bit b) { return b == Bit::one; }

// Index of a value inside its feature's domain. Binary features use 0/1.
using Code = std::uint16_t;

// a:b::c:d holds for exactly the patterns (s,s,s,s), (s,t,s,t), (s,s,t,t).
// Over {0,1} this is the Boolean truth table; over a finite domain it is
// the nominal extension.
template <std::equality_comparable T>
constexpr bool pattern_ap(const T& a, const T& b, const T& c, const T& d) {
  return (a == b && c == d) || (a == c && b == d);
}

// Unique solution of a:b::c:x when it exists (a == b or a == c).
template <std::equality_comparable T>
constexpr std::optional<T> pattern_solve(const T& a, const T& b, const T& c) {
  if (a == b) return c;
  if (a == c) return b;
  return std::nullopt;
}

// ((a & ~b) == (c & ~d)) & ((~a & b) == (~c & d))
bool bool_ap(Bit a, Bit b, Bit c, Bit d);

// x = a ^ b ^ c when a == b or a == c; nullopt for 1:0::0:x and 0:1::1:x.
std::optional<Bit> bool_solve(Bit a, Bit b, Bit c);

// A finite attribute domain with at least two distinct values.
class NominalDomain {
 public:
  NominalDomain(std::string name, std::vector<std::string> values);

  const std::string& name() const { return name_; }
  std::span<const std::string> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::optional<Code> code_of(std::string_view value) const;
  const std::string& value(Code code) const;

  bool operator==(const NominalDomain& other) const {
    return name_ == other.name_ && values_ == other.values_;
  }

 private:
  std::string name_;
  std::vector<std::string> values_;
};

using DomainPtr = std::shared_ptr<const NominalDomain>;

class Symbol {
 public:
  // Throws InvalidInput when `value` is not a member of `domain`.
  Symbol(DomainPtr domain, std::string_view value);

  const NominalDomain& domain() const { return *domain_; }
  Code code() const { return code_; }
  const std::string& value() const { return domain_->value(code_); }

  bool same_domain(const Symbol& other) const;
  bool operator==(const Symbol& other) const {
    return same_domain(other) && code_ == other.code_;
  }

 private:
  DomainPtr domain_;
  Code code_;
};

// Both throw InvalidInput when the symbols come from different domains.
bool nominal_ap(const Symbol& a, const Symbol& b, const Symbol& c, const Symbol& d);
std::optional<Symbol> nominal_solve(const Symbol& a, const Symbol& b, const Symbol& c);

enum class FeatureKind { binary, nominal };

struct Feature {
  std::string name;
  FeatureKind kind = FeatureKind::binary;
  DomainPtr domain;  // set for nominal features only

  static Feature binary(std::string name);
  static Feature nominal(std::string name, std::vector<std::string> values);

  std::size_t cardinality() const { return kind == FeatureKind::binary ? 2 : domain->size(); }
  std::string token(Code code) const;
  std::optional<Code> parse(std::string_view token) const;

  bool operator==(const Feature& other) const;
};

// Ordered feature declarations; the position of a feature is the vector
// component it describes.
class FeatureSchema {
 public:
  explicit FeatureSchema(std::vector<Feature> features);

  std::size_t size() const { return features_.size(); }
  const Feature& operator[](std::size_t i) const { return features_[i]; }
  std::span<const Feature> features() const { return features_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::vector<std::string> names() const;
  bool all_binary() const;

  bool operator==(const FeatureSchema& other) const { return features_ == other.features_; }

 private:
  std::vector<Feature> features_;
};

using SchemaPtr = std::shared_ptr<const FeatureSchema>;

SchemaPtr make_schema(std::vector<Feature> features);
SchemaPtr make_binary_schema(const std::vector<std::string>& names);

class ItemVector {
 public:
  // Throws InvalidInput when the codes do not fit the schema.
  ItemVector(SchemaPtr schema, std::vector<Code> codes);

  // One token per feature: "0"/"1" for binary features, a domain value
  // for nominal ones.
  static ItemVector from_tokens(SchemaPtr schema, std::span<const std::string> tokens);
  // Compact form for all-binary schemas, e.g. "01110".
  static ItemVector from_bits(SchemaPtr schema, std::string_view bits);

  const FeatureSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  std::size_t size() const { return codes_.size(); }
  Code operator[](std::size_t i) const { return codes_[i]; }
  std::span<const Code> codes() const { return codes_; }

  std::string token(std::size_t i) const { return (*schema_)[i].token(codes_[i]); }
  // "01110" for all-binary schemas, comma-separated tokens otherwise.
  std::string to_string() const;

  // Componentwise negation; only defined on all-binary schemas.
  ItemVector negated() const;

  bool same_schema(const ItemVector& other) const;
  bool operator==(const ItemVector& other) const {
    return same_schema(other) && codes_ == other.codes_;
  }

 private:
  SchemaPtr schema_;
  std::vector<Code> codes_;
};

struct UnsolvableComponent {
  std::size_t feature = 0;
  std::string feature_name;
  std::array<std::string, 3> triple;  // tokens of a, b, c
};

struct SolveOutcome {
  std::vector<std::optional<Code>> components;
  std::vector<UnsolvableComponent> unsolvable;
  std::optional<ItemVector> solution;  // present iff `unsolvable` is empty

  bool solved() const { return solution.has_value(); }
};

// Componentwise AP; throws InvalidInput on schema mismatch.
bool vec_ap(const ItemVector& a, const ItemVector& b, const ItemVector& c, const ItemVector& d);
SolveOutcome vec_solve(const ItemVector& a, const ItemVector& b, const ItemVector& c);

// Unchecked fast path over raw codes of equal length. Writes the solution
// into `out` and returns nullopt, or returns the first unsolvable index.
std::optional<std::size_t> solve_codes(std::span<const Code> a, std::span<const Code> b,
                                       std::span<const Code> c, std::span<Code> out);

}  // namespace analogy
