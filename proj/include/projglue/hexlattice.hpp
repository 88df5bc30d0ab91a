#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projglue/mathkit/exact_matrix.hpp"
#include "projglue/mathkit/rational.hpp"

namespace projglue::hexlattice {

using IntMat2 = ExactMatrix<BigInt, 2>;

// Rows are the lattice generators w1, w2 written in the minimal hex basis
// (v1, v2). Always nonsingular.
class HexShape {
 public:
  explicit HexShape(IntMat2 m);
  HexShape(long long a, long long b, long long c, long long d)
      : HexShape(IntMat2{{BigInt(std::to_string(a)), BigInt(std::to_string(b))},
                         {BigInt(std::to_string(c)), BigInt(std::to_string(d))}}) {}
  const IntMat2& matrix() const { return m_; }
  friend bool operator==(const HexShape&, const HexShape&) = default;

 private:
  IntMat2 m_;
};

struct D6Element {
  IntMat2 matrix;
  int index = 0;  // k < 6: R^k; k >= 6: R^{k-6} F
};

// R = [[0,-1],[1,1]] (order six), F = [[1,0],[-1,-1]] (reflection).
const std::vector<D6Element>& d6_elements();
const IntMat2& d6_rotation();
const IntMat2& d6_reflection();

struct QIsometryWitness {
  IntMat2 B;      // det = +-1
  D6Element C;
  BigInt k1, k2;  // k2/k1 in lowest terms; k2*A1 = k1*B*A2*C
  Rational factor() const { return make_rational(k2, k1); }
};

BigInt area(const HexShape& a);

// Ratio k2/k1 = sqrt(area(a2)/area(a1)) when it is rational.
std::optional<Rational> conformal_factor(const HexShape& a1, const HexShape& a2);

// All witnesses, ordered by the index of C. Empty when the area ratio is not
// a rational square.
std::vector<QIsometryWitness> find_q_isometries(const HexShape& a1, const HexShape& a2);

bool witness_holds(const HexShape& a1, const HexShape& a2, const QIsometryWitness& w);

// Row Hermite normal form under left GL2(Z): [[a,b],[0,d]], a,d > 0,
// 0 <= b < d.
IntMat2 hermite_normal_form(const IntMat2& m);

// Lexicographically least HNF over the twelve products A*C. Equal canonical
// forms <=> a lattice isometry with factor 1 exists.
HexShape canonical_form(const HexShape& a);

}  // namespace projglue::hexlattice
