#include "projglue/mathkit/rational.hpp"

#include <cmath>

#include "projglue/errors.hpp"

namespace projglue {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorKind::kInvalidInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::kInvalidInput, "non-finite value has no rational form");
  }
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  const BigInt& num = q.get_num();
  const BigInt& den = q.get_den();
  if (!is_perfect_square(num) || !is_perfect_square(den)) return std::nullopt;
  BigInt rn = sqrt(num);
  BigInt rd = sqrt(den);
  return make_rational(rn, rd);
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long long to_int64(const BigInt& n) {
  if (!n.fits_slong_p()) throw Error(ErrorKind::kInvalidInput, "integer out of range");
  return n.get_si();
}

}  // namespace projglue
