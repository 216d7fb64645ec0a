#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace koszul {

/// Exact rational scalar. All coefficient arithmetic in the engine is exact;
/// there is no floating point anywhere.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// (-1)^n for possibly negative n.
inline int sign_pow(long n) { return (n % 2 == 0) ? 1 : -1; }

inline bool is_odd(long n) { return n % 2 != 0; }

/// Renders in canonical "p" or "p/q" form, q > 0.
std::string to_string(const Rational& r);

/// Parses "p", "-p", "p/q" with arbitrary precision. Returns nullopt on any
/// lexical problem (empty, stray characters, zero denominator).
std::optional<Rational> parse_rational(const std::string& text);

struct context_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct degree_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct spec_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct truncation_required : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct nilpotency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace koszul
