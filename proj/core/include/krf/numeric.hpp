#pragma once

// Exact integer/rational scalars and a few dense-matrix helpers shared by
// every module. All arithmetic in this library is exact.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace krf {

using Integer = mpz_class;
using Rational = mpq_class;

template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// Thrown when an exact quantity that must be integral is not.
class IntegralityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Returns the numerator of q after asserting q is an integer.
inline Integer to_integer(const Rational& q, const char* what) {
  if (q.get_den() != 1) {
    throw IntegralityError(std::string(what) + ": expected integer, got " + q.get_str());
  }
  return q.get_num();
}

inline std::int64_t to_int64(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw std::overflow_error(std::string(what) + ": value out of range");
  return z.get_si();
}

/// "num/den" with den > 0 always present (used by the JSON golden format).
inline std::string rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

/// Parses "p", "p/q" or "-p/q".
Rational parse_rational(const std::string& text);

/// Fraction-free (Bareiss) determinant. Empty matrix has determinant 1.
Integer bareiss_determinant(Matrix<Integer> m);

/// Exact determinant over the rationals by Gaussian elimination.
Rational rational_determinant(Matrix<Rational> m);

/// Inverse of a nonsingular rational matrix; throws std::domain_error if singular.
Matrix<Rational> rational_inverse(const Matrix<Rational>& m);

/// n! as a big integer.
Integer factorial(unsigned n);

}  // namespace krf
