#include "hcr/common.hpp"

#include <charconv>
#include <limits>

namespace hcr {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParameterError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::pair<int, int> parse_pair(std::string_view text, std::string_view what) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParameterError("malformed " + std::string(what) + " '" + std::string(text) +
                         "', expected level:index");
  }
  const auto a = parse_int(text.substr(0, colon), what);
  const auto b = parse_int(text.substr(colon + 1), what);
  if (a < 0 || b < 0 || a > std::numeric_limits<int>::max() || b > std::numeric_limits<int>::max()) {
    throw ParameterError("out-of-range " + std::string(what) + " '" + std::string(text) + "'");
  }
  return {static_cast<int>(a), static_cast<int>(b)};
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParameterError("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash), "rational numerator");
    const auto den = parse_int(text.substr(slash + 1), "rational denominator");
    if (den == 0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15) throw ParameterError("too many decimal digits in '" + std::string(text) + "'");
    std::string digits(text.substr(0, dot));
    digits += frac;
    if (digits.empty() || digits == "-" || digits == "+") {
      throw ParameterError("malformed rational '" + std::string(text) + "'");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(parse_int(digits, "rational"), den);
  }
  return Rational(parse_int(text, "rational"));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

std::string to_string(ConceptId c) {
  return std::to_string(c.level) + ":" + std::to_string(c.index);
}

std::string to_string(NeuronId n) {
  return std::to_string(n.layer) + ":" + std::to_string(n.index);
}

ConceptId parse_concept_id(std::string_view text) {
  auto [level, index] = parse_pair(text, "concept id");
  return {level, index};
}

NeuronId parse_neuron_id(std::string_view text) {
  auto [layer, index] = parse_pair(text, "neuron id");
  return {layer, index};
}

}  // namespace hcr
