#include "analogy/ap_core.hpp"

#include <algorithm>
#include <unordered_set>

#include "analogy/errors.hpp"

namespace analogy {

bool bool_ap(Bit a, Bit b, Bit c, Bit d) {
  const bool A = to_bool(a), B = to_bool(b), C = to_bool(c), D = to_bool(d);
  return ((A && !B) == (C && !D)) && ((!A && B) == (!C && D));
}

std::optional<Bit> bool_solve(Bit a, Bit b, Bit c) {
  if (a != b && a != c) return std::nullopt;
  return to_bit((to_bool(a) != to_bool(b)) != to_bool(c));
}

NominalDomain::NominalDomain(std::string name, std::vector<std::string> values)
    : name_(std::move(name)), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InvalidInput("nominal domain '" + name_ + "' needs at least two values");
  }
  std::unordered_set<std::string> seen;
  for (const auto& v : values_) {
    if (v.empty()) throw InvalidInput("nominal domain '" + name_ + "' has an empty value");
    if (!seen.insert(v).second) {
      throw InvalidInput("nominal domain '" + name_ + "' repeats value '" + v + "'");
    }
  }
}

std::optional<Code> NominalDomain::code_of(std::string_view value) const {
  auto it = std::find(values_.begin(), values_.end(), value);
  if (it == values_.end()) return std::nullopt;
  return static_cast<Code>(it - values_.begin());
}

const std::string& NominalDomain::value(Code code) const { return values_.at(code); }

Symbol::Symbol(DomainPtr domain, std::string_view value) : domain_(std::move(domain)) {
  auto code = domain_->code_of(value);
  if (!code) {
    throw InvalidInput("'" + std::string(value) + "' is not in domain '" + domain_->name() + "'");
  }
  code_ = *code;
}

bool Symbol::same_domain(const Symbol& other) const {
  return domain_ == other.domain_ || *domain_ == *other.domain_;
}

namespace {

void require_same_domain(const Symbol& a, const Symbol& b, const Symbol& c) {
  if (!a.same_domain(b) || !a.same_domain(c)) {
    throw InvalidInput("nominal analogy over symbols from different domains");
  }
}

}  // namespace

bool nominal_ap(const Symbol& a, const Symbol& b, const Symbol& c, const Symbol& d) {
  require_same_domain(a, b, c);
  require_same_domain(a, d, d);
  return pattern_ap(a.code(), b.code(), c.code(), d.code());
}

std::optional<Symbol> nominal_solve(const Symbol& a, const Symbol& b, const Symbol& c) {
  require_same_domain(a, b, c);
  if (a == b) return c;
  if (a == c) return b;
  return std::nullopt;
}

Feature Feature::binary(std::string name) { return Feature{std::move(name), FeatureKind::binary, nullptr}; }

Feature Feature::nominal(std::string name, std::vector<std::string> values) {
  auto domain = std::make_shared<const NominalDomain>(name, std::move(values));
  return Feature{std::move(name), FeatureKind::nominal, std::move(domain)};
}

std::string Feature::token(Code code) const {
  if (kind == FeatureKind::binary) return code ? "1" : "0";
  return domain->value(code);
}

std::optional<Code> Feature::parse(std::string_view token) const {
  if (kind == FeatureKind::binary) {
    if (token == "0") return Code{0};
    if (token == "1") return Code{1};
    return std::nullopt;
  }
  return domain->code_of(token);
}

bool Feature::operator==(const Feature& other) const {
  if (name != other.name || kind != other.kind) return false;
  if (kind == FeatureKind::binary) return true;
  return domain == other.domain || *domain == *other.domain;
}

FeatureSchema::FeatureSchema(std::vector<Feature> features) : features_(std::move(features)) {
  if (features_.empty()) throw InvalidInput("feature schema is empty");
  std::unordered_set<std::string> seen;
  for (const auto& f : features_) {
    if (f.name.empty()) throw InvalidInput("feature with empty name");
    if (f.kind == FeatureKind::nominal && !f.domain) {
      throw InvalidInput("nominal feature '" + f.name + "' has no domain");
    }
    if (!seen.insert(f.name).second) throw InvalidInput("duplicate feature '" + f.name + "'");
  }
}

std::optional<std::size_t> FeatureSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(features_.size());
  for (const auto& f : features_) out.push_back(f.name);
  return out;
}

bool FeatureSchema::all_binary() const {
  return std::all_of(features_.begin(), features_.end(),
                     [](const Feature& f) { return f.kind == FeatureKind::binary; });
}

SchemaPtr make_schema(std::vector<Feature> features) {
  return std::make_shared<const FeatureSchema>(std::move(features));
}

SchemaPtr make_binary_schema(const std::vector<std::string>& names) {
  std::vector<Feature> features;
  features.reserve(names.size());
  for (const auto& n : names) features.push_back(Feature::binary(n));
  return make_schema(std::move(features));
}

ItemVector::ItemVector(SchemaPtr schema, std::vector<Code> codes)
    : schema_(std::move(schema)), codes_(std::move(codes)) {
  if (!schema_) throw InvalidInput("item vector without schema");
  if (codes_.size() != schema_->size()) {
    throw InvalidInput("item vector has " + std::to_string(codes_.size()) + " components, schema has " +
                       std::to_string(schema_->size()));
  }
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i] >= (*schema_)[i].cardinality()) {
      throw InvalidInput("value out of domain for feature '" + (*schema_)[i].name + "'");
    }
  }
}

ItemVector ItemVector::from_tokens(SchemaPtr schema, std::span<const std::string> tokens) {
  if (tokens.size() != schema->size()) {
    throw InvalidInput("expected " + std::to_string(schema->size()) + " values, got " +
                       std::to_string(tokens.size()));
  }
  std::vector<Code> codes(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto code = (*schema)[i].parse(tokens[i]);
    if (!code) {
      throw InvalidInput("'" + tokens[i] + "' is not a valid value for feature '" + (*schema)[i].name + "'");
    }
    codes[i] = *code;
  }
  return ItemVector(std::move(schema), std::move(codes));
}

ItemVector ItemVector::from_bits(SchemaPtr schema, std::string_view bits) {
  std::vector<std::string> tokens;
  tokens.reserve(bits.size());
  for (char ch : bits) tokens.emplace_back(1, ch);
  return from_tokens(std::move(schema), tokens);
}

std::string ItemVector::to_string() const {
  std::string out;
  const bool compact = schema_->all_binary();
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += token(i);
  }
  return out;
}

ItemVector ItemVector::negated() const {
  if (!schema_->all_binary()) throw InvalidInput("negation is only defined on all-binary vectors");
  std::vector<Code> flipped(codes_.size());
  std::transform(codes_.begin(), codes_.end(), flipped.begin(), [](Code c) { return Code(1 - c); });
  return ItemVector(schema_, std::move(flipped));
}

bool ItemVector::same_schema(const ItemVector& other) const {
  return schema_ == other.schema_ || *schema_ == *other.schema_;
}

namespace {

void require_same_schema(const ItemVector& a, const ItemVector& b, const ItemVector& c) {
  if (!a.same_schema(b) || !a.same_schema(c)) {
    throw InvalidInput("analogy over item vectors with different schemas");
  }
}

bool component_ap(const Feature& f, Code a, Code b, Code c, Code d) {
  if (f.kind == FeatureKind::binary) {
    return bool_ap(Bit(a), Bit(b), Bit(c), Bit(d));
  }
  return pattern_ap(a, b, c, d);
}

std::optional<Code> component_solve(const Feature& f, Code a, Code b, Code c) {
  if (f.kind == FeatureKind::binary) {
    auto x = bool_solve(Bit(a), Bit(b), Bit(c));
    if (!x) return std::nullopt;
    return static_cast<Code>(*x);
  }
  return pattern_solve(a, b, c);
}

}  // namespace

bool vec_ap(const ItemVector& a, const ItemVector& b, const ItemVector& c, const ItemVector& d) {
  require_same_schema(a, b, c);
  require_same_schema(a, d, d);
  const auto& schema = a.schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (!component_ap(schema[i], a[i], b[i], c[i], d[i])) return false;
  }
  return true;
}

SolveOutcome vec_solve(const ItemVector& a, const ItemVector& b, const ItemVector& c) {
  require_same_schema(a, b, c);
  const auto& schema = a.schema();
  SolveOutcome outcome;
  outcome.components.reserve(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    auto x = component_solve(schema[i], a[i], b[i], c[i]);
    outcome.components.push_back(x);
    if (!x) {
      outcome.unsolvable.push_back({i, schema[i].name, {a.token(i), b.token(i), c.token(i)}});
    }
  }
  if (outcome.unsolvable.empty()) {
    std::vector<Code> codes;
    codes.reserve(schema.size());
    for (const auto& x : outcome.components) codes.push_back(*x);
    outcome.solution.emplace(a.schema_ptr(), std::move(codes));
  }
  return outcome;
}

std::optional<std::size_t> solve_codes(std::span<const Code> a, std::span<const Code> b,
                                       std::span<const Code> c, std::span<Code> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) {
      out[i] = c[i];
    } else if (a[i] == c[i]) {
      out[i] = b[i];
    } else {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace analogy
