#include "projglue/cohomology.hpp"

#include <cmath>

#include <Eigen/LU>

#include "projglue/errors.hpp"

namespace projglue::cohomology {

using AdMatrix = Eigen::Matrix<double, kDim, kDim>;

int Presentation::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

void Presentation::validate_word(const Word& w) const {
  for (const auto& l : w) {
    if (l.generator < 0 || l.generator >= static_cast<int>(generators.size())) {
      throw Error(ErrorKind::kInvalidInput, "word references an unknown generator");
    }
    if (l.exponent != 1 && l.exponent != -1) {
      throw Error(ErrorKind::kInvalidInput, "word exponents must be +1 or -1");
    }
  }
}

void Presentation::validate() const {
  for (const auto& r : relators) validate_word(r);
}

Presentation torus_presentation() {
  return {{"g1", "g2"}, {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}}};
}

bool is_torus_presentation(const Presentation& p) {
  if (p.generators.size() != 2 || p.relators.size() != 1) return false;
  const Word& r = p.relators[0];
  if (r.size() != 4) return false;
  // Some cyclic rotation must read x y x^-1 y^-1 with {x, y} = {0, 1}.
  for (int shift = 0; shift < 4; ++shift) {
    const Letter& a = r[shift];
    const Letter& b = r[(shift + 1) % 4];
    const Letter& c = r[(shift + 2) % 4];
    const Letter& d = r[(shift + 3) % 4];
    if (a.generator != b.generator && c.generator == a.generator && d.generator == b.generator &&
        c.exponent == -a.exponent && d.exponent == -b.exponent) {
      return true;
    }
  }
  return false;
}

Mat4 Representation::evaluate(const Word& w) const {
  presentation.validate_word(w);
  Mat4 p = Mat4::Identity();
  for (const auto& l : w) {
    const Mat4& g = matrices.at(static_cast<std::size_t>(l.generator));
    p = l.exponent > 0 ? Mat4(p * g) : Mat4(p * g.inverse());
  }
  return p;
}

Mat4 algebra_basis(int k) {
  Mat4 m = Mat4::Zero();
  if (k < 0 || k >= kDim) throw Error(ErrorKind::kInvalidInput, "sl4 basis index out of range");
  if (k < 12) {
    int idx = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        if (idx++ == k) {
          m(i, j) = 1.0;
          return m;
        }
      }
  }
  int d = k - 12;
  m(d, d) = 1.0;
  m(d + 1, d + 1) = -1.0;
  return m;
}

Mat4 from_algebra(const AlgebraVector& v) {
  Mat4 m = Mat4::Zero();
  for (int k = 0; k < kDim; ++k) m += v(k) * algebra_basis(k);
  return m;
}

AlgebraVector to_algebra(const Mat4& m) {
  AlgebraVector v;
  int idx = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) v(idx++) = m(i, j);
  // Traceless diagonal d = sum h_k (E_kk - E_{k+1,k+1}) gives partial sums.
  const double shift = m.trace() / 4.0;
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) {
    acc += m(k, k) - shift;
    v(12 + k) = acc;
  }
  return v;
}

AdMatrix adjoint_matrix(const Mat4& g) {
  Mat4 gi = g.inverse();
  AdMatrix ad;
  for (int k = 0; k < kDim; ++k) ad.col(k) = to_algebra(g * algebra_basis(k) * gi);
  return ad;
}

AlgebraVector cocycle_value(const Representation& rep, std::span<const AlgebraVector> u,
                            const Word& w) {
  rep.presentation.validate_word(w);
  if (u.size() != rep.presentation.generators.size()) {
    throw Error(ErrorKind::kInvalidInput, "need one algebra value per generator");
  }
  AlgebraVector acc = AlgebraVector::Zero();
  Mat4 prefix = Mat4::Identity();
  for (const auto& l : w) {
    const Mat4& g = rep.matrices[static_cast<std::size_t>(l.generator)];
    const AlgebraVector& ug = u[static_cast<std::size_t>(l.generator)];
    if (l.exponent > 0) {
      acc += adjoint_matrix(prefix) * ug;
      prefix = prefix * g;
    } else {
      Mat4 gi = g.inverse();
      acc -= adjoint_matrix(prefix * gi) * ug;
      prefix = prefix * gi;
    }
  }
  return acc;
}

CocycleSystem cocycle_system(const Representation& rep) {
  const auto& pres = rep.presentation;
  pres.validate();
  const int ng = static_cast<int>(pres.generators.size());
  const int nr = static_cast<int>(pres.relators.size());
  std::vector<AdMatrix> ad(static_cast<std::size_t>(ng)), ad_inv(static_cast<std::size_t>(ng));
  for (int g = 0; g < ng; ++g) {
    ad[g] = adjoint_matrix(rep.matrices[g]);
    ad_inv[g] = adjoint_matrix(rep.matrices[g].inverse());
  }
  CocycleSystem sys;
  sys.fox_matrix = MatX::Zero(kDim * nr, kDim * ng);
  for (int r = 0; r < nr; ++r) {
    AdMatrix prefix = AdMatrix::Identity();
    for (const auto& l : pres.relators[r]) {
      auto block = sys.fox_matrix.block(kDim * r, kDim * l.generator, kDim, kDim);
      if (l.exponent > 0) {
        block += prefix;
        sys.scale = std::max(sys.scale, prefix.norm());
        prefix = prefix * ad[l.generator];
      } else {
        prefix = prefix * ad_inv[l.generator];
        block -= prefix;
        sys.scale = std::max(sys.scale, prefix.norm());
      }
    }
  }
  for (int g = 0; g < ng; ++g)
    for (int k = 0; k < kDim; ++k) sys.columns.emplace_back(g, k);
  return sys;
}

MatX invariants_system(const Representation& rep) {
  const int ng = static_cast<int>(rep.matrices.size());
  MatX m(kDim * ng, kDim);
  for (int g = 0; g < ng; ++g)
    m.block(kDim * g, 0, kDim, kDim) = adjoint_matrix(rep.matrices[g]) - AdMatrix::Identity();
  return m;
}

void check_relators(const Representation& rep) {
  const auto& pres = rep.presentation;
  pres.validate();
  if (rep.matrices.size() != pres.generators.size()) {
    throw Error(ErrorKind::kInvalidInput, "need one matrix per generator");
  }
  for (const auto& m : rep.matrices) {
    if (!m.allFinite()) throw Error(ErrorKind::kInvalidInput, "non-finite generator matrix");
    if (std::abs(m.determinant()) < 1e-12) {
      throw Error(ErrorKind::kNotARepresentation, "generator matrix is singular");
    }
  }
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    Mat4 v = rep.evaluate(pres.relators[r]);
    double res = (v - Mat4::Identity()).norm();
    if (res > 1e-6) {
      bool minus = (v + Mat4::Identity()).norm() <= 1e-6;
      throw Error(ErrorKind::kNotARepresentation,
                  "relator " + std::to_string(r) + (minus ? " evaluates to -I" : " is not satisfied") +
                      " (residual " + std::to_string(res) + ")");
    }
  }
}

CohomologyDims dims(const Representation& rep, double tol) {
  check_relators(rep);
  const int ng = static_cast<int>(rep.matrices.size());
  CohomologyDims d;
  double ad_scale = 1.0;
  for (const auto& m : rep.matrices) ad_scale = std::max(ad_scale, adjoint_matrix(m).norm());
  RankInfo inv = rank_info(invariants_system(rep), tol, ad_scale);
  d.h0 = kDim - (ng == 0 ? 0 : inv.rank);
  d.h0_gap = inv.gap;
  const CocycleSystem sys = cocycle_system(rep);
  RankInfo fox = rank_info(sys.fox_matrix, tol, sys.scale);
  d.z1 = kDim * ng - fox.rank;
  d.z1_gap = fox.gap;
  d.b1 = kDim - d.h0;
  d.h1 = d.z1 - d.b1;
  if (is_torus_presentation(rep.presentation)) d.h2_by_duality = d.h0;
  return d;
}

Mat4 unipotent_translation(double u, double v) {
  Mat4 m = Mat4::Identity();
  m(0, 1) = u;
  m(0, 2) = v;
  m(0, 3) = (u * u + v * v) / 2.0;
  m(1, 3) = u;
  m(2, 3) = v;
  return m;
}

Representation cusp_rep(double u, double v) {
  return {torus_presentation(), {unipotent_translation(1.0, 0.0), unipotent_translation(u, v)}};
}

RestrictionReport restriction_rank(const Representation& rep,
                                   const std::vector<std::vector<Word>>& peripherals, double tol) {
  check_relators(rep);
  for (const auto& p : peripherals) {
    if (p.empty()) throw Error(ErrorKind::kInvalidPeripheral, "empty peripheral subgroup");
    std::vector<Mat4> imgs;
    for (const auto& w : p) imgs.push_back(rep.evaluate(w));
    for (std::size_t i = 0; i < imgs.size(); ++i)
      for (std::size_t j = i + 1; j < imgs.size(); ++j) {
        double scale = std::max(1.0, imgs[i].norm() * imgs[j].norm());
        if (commutator_norm(imgs[i], imgs[j]) > 1e-8 * scale) {
          throw Error(ErrorKind::kInvalidPeripheral, "peripheral words do not commute");
        }
      }
  }

  CohomologyDims d = dims(rep, tol);
  const int ng = static_cast<int>(rep.matrices.size());
  const CocycleSystem sys = cocycle_system(rep);
  MatX z1 = null_space(sys.fox_matrix, tol, sys.scale);

  int total_words = 0;
  for (const auto& p : peripherals) total_words += static_cast<int>(p.size());
  const int rows = kDim * total_words;

  // Restricted cocycle values on every peripheral word.
  MatX restricted(rows, z1.cols());
  for (Eigen::Index c = 0; c < z1.cols(); ++c) {
    std::vector<AlgebraVector> u(static_cast<std::size_t>(ng));
    for (int g = 0; g < ng; ++g) u[g] = z1.col(c).segment<kDim>(kDim * g);
    int row = 0;
    for (const auto& p : peripherals)
      for (const auto& w : p) {
        restricted.block(row, c, kDim, 1) = cocycle_value(rep, u, w);
        row += kDim;
      }
  }

  // Peripheral coboundaries, block diagonal across subgroups.
  MatX cob = MatX::Zero(rows, kDim * static_cast<Eigen::Index>(peripherals.size()));
  int row = 0;
  for (std::size_t i = 0; i < peripherals.size(); ++i)
    for (const auto& w : peripherals[i]) {
      cob.block(row, kDim * static_cast<Eigen::Index>(i), kDim, kDim) =
          AdMatrix::Identity() - adjoint_matrix(rep.evaluate(w));
      row += kDim;
    }

  MatX both(rows, restricted.cols() + cob.cols());
  both << restricted, cob;
  RestrictionReport out;
  out.h1 = d.h1;
  double ref = 1.0;
  for (const auto& p : peripherals)
    for (const auto& w : p) ref = std::max(ref, adjoint_matrix(rep.evaluate(w)).norm());
  out.rank = rank_tol(both, tol, ref) - rank_tol(cob, tol, ref);
  out.kernel_dim = out.h1 - out.rank;
  out.rigid_rel_boundary = out.kernel_dim == 0;
  return out;
}

}  // namespace projglue::cohomology
