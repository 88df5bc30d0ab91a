#include "projglue/hexlattice.hpp"

#include <algorithm>

#include "projglue/errors.hpp"

namespace projglue::hexlattice {

HexShape::HexShape(IntMat2 m) : m_(std::move(m)) {
  if (m_.determinant() == 0) throw Error(ErrorKind::kInvalidShape, "hex shape matrix is singular");
}

const IntMat2& d6_rotation() {
  static const IntMat2 r{{0, -1}, {1, 1}};
  return r;
}

const IntMat2& d6_reflection() {
  static const IntMat2 f{{1, 0}, {-1, -1}};
  return f;
}

const std::vector<D6Element>& d6_elements() {
  static const std::vector<D6Element> elems = [] {
    std::vector<D6Element> out;
    IntMat2 p = IntMat2::identity();
    for (int k = 0; k < 6; ++k) {
      out.push_back({p, k});
      p = p * d6_rotation();
    }
    for (int k = 0; k < 6; ++k) out.push_back({out[k].matrix * d6_reflection(), 6 + k});
    return out;
  }();
  return elems;
}

BigInt area(const HexShape& a) { return abs(a.matrix().determinant()); }

std::optional<Rational> conformal_factor(const HexShape& a1, const HexShape& a2) {
  return rational_sqrt(make_rational(area(a2), area(a1)));
}

namespace {

using RatMat2 = ExactMatrix<Rational, 2>;

RatMat2 to_rational(const IntMat2& m) {
  RatMat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = Rational(m(i, j));
  return r;
}

}  // namespace

std::vector<QIsometryWitness> find_q_isometries(const HexShape& a1, const HexShape& a2) {
  std::vector<QIsometryWitness> out;
  auto q = conformal_factor(a1, a2);
  if (!q) return out;
  // k2/k1 = q, so B = q * A1 * (A2 C)^{-1}.
  RatMat2 lhs = to_rational(a1.matrix());
  for (const auto& c : d6_elements()) {
    RatMat2 b = (*q) * lhs * to_rational(a2.matrix() * c.matrix).inverse();
    IntMat2 bi;
    bool integral = true;
    for (int i = 0; i < 2 && integral; ++i)
      for (int j = 0; j < 2; ++j) {
        if (b(i, j).get_den() != 1) {
          integral = false;
          break;
        }
        bi(i, j) = b(i, j).get_num();
      }
    if (!integral) continue;
    BigInt d = bi.determinant();
    if (d != 1 && d != -1) continue;
    out.push_back({bi, c, q->get_den(), q->get_num()});
  }
  return out;
}

bool witness_holds(const HexShape& a1, const HexShape& a2, const QIsometryWitness& w) {
  BigInt d = w.B.determinant();
  if (d != 1 && d != -1) return false;
  return w.k2 * a1.matrix() == w.k1 * (w.B * a2.matrix() * w.C.matrix);
}

IntMat2 hermite_normal_form(const IntMat2& m) {
  // Column 0 via the extended gcd, then reduce the top-right entry.
  BigInt p = m(0, 0), r = m(1, 0);
  BigInt g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), r.get_mpz_t());
  if (g == 0) throw Error(ErrorKind::kInvalidShape, "singular matrix has no HNF");
  // U = [[s, t], [-r/g, p/g]] is unimodular and sends column 0 to (g, 0).
  IntMat2 u{{0, 0}, {0, 0}};
  u(0, 0) = s;
  u(0, 1) = t;
  u(1, 0) = -r / g;
  u(1, 1) = p / g;
  IntMat2 h = u * m;
  if (h(0, 0) < 0) {
    h(0, 0) = -h(0, 0);
    h(0, 1) = -h(0, 1);
  }
  if (h(1, 1) < 0) {
    h(1, 0) = -h(1, 0);
    h(1, 1) = -h(1, 1);
  }
  BigInt d = h(1, 1);
  if (d == 0) throw Error(ErrorKind::kInvalidShape, "singular matrix has no HNF");
  BigInt b = h(0, 1);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
  h(0, 1) = b - q * d;
  return h;
}

HexShape canonical_form(const HexShape& a) {
  std::optional<IntMat2> best;
  for (const auto& c : d6_elements()) {
    IntMat2 h = hermite_normal_form(a.matrix() * c.matrix);
    if (!best || h < *best) best = h;
  }
  return HexShape(*best);
}

}  // namespace projglue::hexlattice
