#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace hcr {

// All thresholds, fractions and support ratios are exact. Potentials are
// integers (binary weights), so every firing decision reduces to an exact
// integer/rational comparison.
using Rational = boost::rational<std::int64_t>;

/// Parses "3/4", "2", "-1/2" or a finite decimal such as "0.125".
Rational parse_rational(std::string_view text);
/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// True iff count >= threshold, compared exactly.
inline bool at_least(std::int64_t count, const Rational& threshold) {
  return Rational(count) >= threshold;
}

// Error taxonomy. Each maps onto one CLI exit code (see tools/hcr_cli.cpp).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct LookupError : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct QueryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};
/// A failure pattern or edge set does not satisfy the survival constraints
/// a detailed network builder requires.
struct ConstraintViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConceptId {
  int level = 0;
  int index = 0;
  auto operator<=>(const ConceptId&) const = default;
};

struct NeuronId {
  int layer = 0;
  int index = 0;
  auto operator<=>(const NeuronId&) const = default;
};

using ConceptSet = std::set<ConceptId>;
using NeuronSet = std::set<NeuronId>;

/// "level:index", e.g. "2:5".
std::string to_string(ConceptId c);
std::string to_string(NeuronId n);
ConceptId parse_concept_id(std::string_view text);
NeuronId parse_neuron_id(std::string_view text);

}  // namespace hcr
