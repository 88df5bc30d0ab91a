#pragma once

#include <compare>
#include <map>
#include <string>

#include "projglue/mathkit/rational.hpp"

namespace projglue {

// Integer Laurent polynomial in one symbol s. Throughout the library s stands
// for e^{tau/3}; zero coefficients are never stored, so two polynomials are
// equal exactly when their coefficient maps are.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long long c);  // NOLINT: constants convert implicitly
  static LaurentPoly monomial(const BigInt& coeff, int exponent);
  static LaurentPoly s() { return monomial(1, 1); }
  static LaurentPoly s_inv() { return monomial(1, -1); }

  const std::map<int, BigInt>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  BigInt coefficient(int exponent) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  // Total order used as a dedup key; no algebraic meaning.
  friend std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b);

  double evaluate_at(double s) const;
  std::string to_string() const;

 private:
  void add_term(int exponent, const BigInt& coeff);
  std::map<int, BigInt> coeffs_;
};

// Value of p at s = e^{tau/3}.
double laurent_eval(const LaurentPoly& p, double tau);

}  // namespace projglue
