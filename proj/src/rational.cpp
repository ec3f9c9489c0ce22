#include "conelab/rational.hpp"

#include "conelab/error.hpp"

#include <cctype>

namespace conelab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::canonical_missing: return "canonical_missing";
    case ErrorCode::underdetermined: return "underdetermined";
    case ErrorCode::inconsistent: return "inconsistent";
    case ErrorCode::wrong_count: return "wrong_count";
    case ErrorCode::not_spanning: return "not_spanning";
    case ErrorCode::degenerate_pairing: return "degenerate_pairing";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::inconsistent_cover: return "inconsistent_cover";
    case ErrorCode::inconsistent_incidence: return "inconsistent_incidence";
    case ErrorCode::schema: return "schema";
    case ErrorCode::unverified: return "unverified";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::invalid_argument, "not a rational: \"" + std::string(text) + "\"");
  }
  Integer d(std::string(den), 10);
  if (d == 0) {
    throw Error(ErrorCode::invalid_argument, "zero denominator: \"" + std::string(text) + "\"");
  }
  Rational out(Integer(std::string(num), 10), d);
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

int sign(const Rational& value) { return sgn(value); }

long to_long(const Rational& value) {
  if (value.get_den() != 1 || !value.get_num().fits_slong_p()) {
    throw Error(ErrorCode::invalid_argument, "expected a machine integer, got " + to_string(value));
  }
  return value.get_num().get_si();
}

}  // namespace conelab
