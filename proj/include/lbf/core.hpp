#pragma once

// Shared vocabulary: exact rationals and the error hierarchy used by every
// lbf-kit module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lbf {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Rational power with integer (possibly negative) exponent.
inline Rational pow(const Rational& base, int e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("pow: zero to a negative power");
    return pow(Rational(1) / base, -e);
  }
  Rational out = 1;
  Rational b = base;
  for (unsigned k = static_cast<unsigned>(e); k != 0; k >>= 1) {
    if (k & 1u) out *= b;
    b *= b;
  }
  return out;
}

/// Base of everything the toolkit throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched algebras, invalid parameters, unknown names.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A function atom was differentiated without a registered rule.
class MissingRuleError : public Error {
 public:
  using Error::Error;
};

/// Numeric evaluation hit an atom with no value or evaluator.
class UnboundAtomError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside a documented regime or constraint.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace lbf
