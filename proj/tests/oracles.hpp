#pragma once

// Independent reference implementations used only by tests. None of these
// share code with the library beyond plain Eigen types.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "projglue/cohomology.hpp"
#include "projglue/hexlattice.hpp"
#include "projglue/triangle.hpp"

namespace oracle {

// Singular values above 1e-8 * max(sigma_max, floor); the floor keeps
// roundoff-level matrices at rank zero.
inline int svd_rank(const Eigen::MatrixXd& m, double floor) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double cut = 1e-8 * std::max(s(0), floor);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut;
  return r;
}

// vec(g X g^-1) = (g^-T kron g) vec(X), column-major vec, acting on all of gl4.
inline Eigen::MatrixXd kron_adjoint(const Eigen::Matrix4d& g) {
  const Eigen::Matrix4d gi = g.inverse();
  Eigen::MatrixXd out(16, 16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out.block(4 * a, 4 * b, 4, 4) = gi(b, a) * g;
  return out;
}

struct Dims {
  int h0, z1, b1, h1;
};

// Cohomology of a presentation with coefficients in sl4, assembled over gl4
// with explicit trace constraints.
inline Dims brute_force_dims(const std::vector<Eigen::Matrix4d>& gens,
                             const std::vector<std::vector<std::pair<int, int>>>& relators) {
  const int k = static_cast<int>(gens.size());
  std::vector<Eigen::MatrixXd> ad(k), ad_inv(k);
  for (int i = 0; i < k; ++i) {
    ad[i] = kron_adjoint(gens[i]);
    ad_inv[i] = kron_adjoint(gens[i].inverse());
  }
  Eigen::RowVectorXd trace = Eigen::RowVectorXd::Zero(16);
  for (int d = 0; d < 4; ++d) trace(5 * d) = 1.0;

  // Z1: cocycle condition on every relator plus tr u(g) = 0.
  Eigen::MatrixXd z(16 * relators.size() + k, 16 * k);
  z.setZero();
  double z_floor = 1.0;  // largest term summed in; cancellation noise scales with it
  for (std::size_t r = 0; r < relators.size(); ++r) {
    Eigen::MatrixXd prefix = Eigen::MatrixXd::Identity(16, 16);
    for (auto [g, e] : relators[r]) {
      if (e > 0) {
        z.block(16 * r, 16 * g, 16, 16) += prefix;
        z_floor = std::max(z_floor, prefix.norm());
        prefix = prefix * ad[g];
      } else {
        prefix = prefix * ad_inv[g];
        z.block(16 * r, 16 * g, 16, 16) -= prefix;
        z_floor = std::max(z_floor, prefix.norm());
      }
    }
  }
  for (int g = 0; g < k; ++g) z.block(16 * relators.size() + g, 16 * g, 1, 16) = trace;

  // B1 and H0 from the stacked (Ad_g - 1) over gl4; the identity matrix is
  // always invariant and is not traceless.
  Eigen::MatrixXd b(16 * k, 16);
  for (int g = 0; g < k; ++g) b.block(16 * g, 0, 16, 16) = ad[g] - Eigen::MatrixXd::Identity(16, 16);

  Dims d{};
  double floor = 1.0;
  for (const auto& a : ad) floor = std::max(floor, a.norm());
  const int rb = svd_rank(b, floor);
  d.h0 = 16 - rb - 1;
  d.b1 = rb;
  d.z1 = 16 * k - svd_rank(z, z_floor);
  d.h1 = d.z1 - d.b1;
  return d;
}

// Tiles by explicit enumeration of every word up to depth, deduplicated by
// comparing against all previously kept matrices.
inline std::size_t pairwise_tile_count(int depth) {
  using projglue::triangle::LaurentMat3;
  const auto& r = projglue::triangle::reflection_matrices();
  std::vector<LaurentMat3> kept{LaurentMat3::identity()};
  std::vector<LaurentMat3> frontier = kept;
  for (int d = 1; d <= depth; ++d) {
    std::vector<LaurentMat3> next;
    for (const auto& m : frontier)
      for (int i = 0; i < 3; ++i) {
        LaurentMat3 cand = m * r[i];
        bool seen = false;
        for (const auto& k : kept)
          if (k == cand) {
            seen = true;
            break;
          }
        if (!seen) {
          kept.push_back(cand);
          next.push_back(cand);
        }
      }
    frontier = std::move(next);
  }
  return kept.size();
}

// Q-isometry witnesses by scanning every integer B whose entries fit the a
// priori bound |B| <= q |A1| |(A2 C)^-1| (entrywise sums). Returns -1 when that
// bound exceeds max_bound and the scan would be too large.
inline int brute_force_witness_count(const projglue::hexlattice::HexShape& a1,
                                     const projglue::hexlattice::HexShape& a2, long max_bound) {
  using projglue::BigInt;
  using projglue::hexlattice::IntMat2;
  const IntMat2& A1 = a1.matrix();
  const IntMat2& A2 = a2.matrix();
  auto entry_sum = [](const IntMat2& m) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += std::abs(m(i, j).get_d());
    return s;
  };
  const double det1 = std::abs(A1.determinant().get_d()), det2 = std::abs(A2.determinant().get_d());
  const double q = std::sqrt(det1 / det2);
  long bound = 0;
  for (const auto& c : projglue::hexlattice::d6_elements()) {
    const IntMat2 a2c = A2 * c.matrix;
    // (A2 C)^-1 = adj / det, and adj has the same entries up to sign and order.
    const double b = q * entry_sum(A1) * entry_sum(a2c) / det2;
    bound = std::max(bound, static_cast<long>(std::ceil(b)));
  }
  if (bound > max_bound) return -1;

  int count = 0;
  for (const auto& c : projglue::hexlattice::d6_elements()) {
    const IntMat2 a2c = A2 * c.matrix;
    for (long p = -bound; p <= bound; ++p)
      for (long q2 = -bound; q2 <= bound; ++q2)
        for (long r = -bound; r <= bound; ++r)
          for (long s = -bound; s <= bound; ++s) {
            if (std::abs(p * s - q2 * r) != 1) continue;
            const IntMat2 B{{BigInt(p), BigInt(q2)}, {BigInt(r), BigInt(s)}};
            const IntMat2 rhs = B * a2c;
            // k2 A1 = k1 B A2 C with k1, k2 > 0: a common positive ratio.
            projglue::Rational ratio;
            bool have = false, ok = true;
            for (int i = 0; i < 2 && ok; ++i)
              for (int j = 0; j < 2 && ok; ++j) {
                if (A1(i, j) == 0 || rhs(i, j) == 0) {
                  ok = A1(i, j) == 0 && rhs(i, j) == 0;
                  continue;
                }
                projglue::Rational x(rhs(i, j), A1(i, j));
                x.canonicalize();
                if (!have) {
                  ratio = x;
                  have = true;
                } else {
                  ok = ratio == x;
                }
              }
            if (ok && have && ratio > 0) ++count;
          }
  }
  return count;
}

}  // namespace oracle

namespace fixture {

struct RandomInstance {
  projglue::cohomology::Representation rep;
  std::vector<std::vector<std::pair<int, int>>> relators;  // (generator, exponent)
};

// Up to three generators and two relators. Relators have zero exponent sum in
// every generator; generators appearing in relators share one eigenbasis, so
// every relator evaluates to the identity. Generators absent from relators are
// independent diagonalizable matrices. Eigenvalues are drawn from a small set
// so that repeated eigenvalues (bigger centralisers) occur often.
inline RandomInstance random_instance(std::mt19937& rng) {
  std::uniform_int_distribution<int> ngen(1, 3), nrel(0, 2), pairs(1, 3);
  std::normal_distribution<double> nd;
  const std::vector<double> spectrum{0.5, 1.0, 2.0, 3.0, -1.0};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(spectrum.size()) - 1);
  auto random_basis = [&] {
    Eigen::Matrix4d p = Eigen::Matrix4d::Identity();
    for (int i = 0; i < 16; ++i) p.data()[i] += 0.4 * nd(rng);
    return p;
  };
  auto random_diag = [&] {
    Eigen::Vector4d d;
    for (int i = 0; i < 4; ++i) d(i) = spectrum[pick(rng)];
    return d;
  };

  RandomInstance out;
  const int k = ngen(rng);
  auto& pres = out.rep.presentation;
  for (int g = 0; g < k; ++g) pres.generators.push_back("x" + std::to_string(g));
  const int r = nrel(rng);
  std::vector<bool> in_relator(k, false);
  std::uniform_int_distribution<int> gen(0, k - 1);
  for (int i = 0; i < r; ++i) {
    std::vector<std::pair<int, int>> word;
    const int np = pairs(rng);
    for (int j = 0; j < np; ++j) {
      const int g = gen(rng);
      word.push_back({g, 1});
      word.push_back({g, -1});
      in_relator[g] = true;
    }
    std::shuffle(word.begin(), word.end(), rng);
    out.relators.push_back(word);
    projglue::cohomology::Word w;
    for (auto [g, e] : word) w.push_back({g, e});
    pres.relators.push_back(w);
  }
  const Eigen::Matrix4d shared = random_basis();
  for (int g = 0; g < k; ++g) {
    const Eigen::Matrix4d p = in_relator[g] ? shared : random_basis();
    out.rep.matrices.push_back(p * random_diag().asDiagonal() * p.inverse());
  }
  return out;
}

}  // namespace fixture
