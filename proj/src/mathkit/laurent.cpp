#include "projglue/mathkit/laurent.hpp"

#include <cmath>
#include <sstream>

namespace projglue {

LaurentPoly::LaurentPoly(long long c) {
  if (c != 0) coeffs_.emplace(0, BigInt(static_cast<long>(c)));
}

LaurentPoly LaurentPoly::monomial(const BigInt& coeff, int exponent) {
  LaurentPoly p;
  p.add_term(exponent, coeff);
  return p;
}

BigInt LaurentPoly::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(int exponent, const BigInt& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(exponent, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) coeffs_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.coeffs_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.coeffs_) {
    for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
  }
  return r;
}

std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b) {
  auto ia = a.coeffs_.begin();
  auto ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first <=> ib->first;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia == a.coeffs_.end() && ib == b.coeffs_.end()) return std::strong_ordering::equal;
  return ia == a.coeffs_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

double LaurentPoly::evaluate_at(double s) const {
  double sum = 0.0;
  for (const auto& [e, c] : coeffs_) sum += c.get_d() * std::pow(s, e);
  return sum;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    BigInt mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "s";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

double laurent_eval(const LaurentPoly& p, double tau) {
  return p.evaluate_at(std::exp(tau / 3.0));
}

}  // namespace projglue
