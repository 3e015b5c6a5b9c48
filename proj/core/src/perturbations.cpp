#include "spocs/perturbations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spocs/errors.hpp"

namespace spocs {

namespace {

constexpr double kTieTol = 1e-12;

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be nonnegative and finite, got " +
                                std::to_string(v));
  }
}

bool lex_greater_real(const CMatrix& basis, Index a, Index b) {
  for (Index i = 0; i < basis.rows(); ++i) {
    const double ra = basis(i, a).real();
    const double rb = basis(i, b).real();
    if (ra != rb) return ra > rb;
  }
  return false;
}

void require_components(const MatrixTuple& x, std::span<const SpectralDecomposition> svds) {
  if (svds.size() != x.size()) {
    throw DimensionMismatch("perturbation: one decomposition per component required");
  }
}

HermitianMatrix rank_one(const SpectralDecomposition& s, double value, Index i) {
  const CVector u = s.left.col(i);
  const CVector v = s.right.col(i);
  return HermitianMatrix::symmetrize(value * (u * v.adjoint()));
}

}  // namespace

std::vector<SpectralDecomposition> svd_components(const MatrixTuple& x) {
  std::vector<SpectralDecomposition> out;
  out.reserve(x.size());
  for (const auto& c : x) out.push_back(svd_hermitian(c));
  return out;
}

Index leading_triple(const SpectralDecomposition& svd) {
  if (svd.dim() == 0) return 0;
  const double top = svd.values(0);
  Index best = 0;
  for (Index i = 1; i < svd.dim(); ++i) {
    if (svd.values(i) < top * (1.0 - kTieTol)) break;
    if (lex_greater_real(svd.left, i, best)) best = i;
  }
  return best;
}

double sigma_max(std::span<const SpectralDecomposition> svds) {
  double s = 0.0;
  for (const auto& d : svds) {
    if (d.dim() > 0) s = std::max(s, d.values(0));
  }
  return s;
}

double sigma_max(const MatrixTuple& x) { return sigma_max(svd_components(x)); }

double nuclear_norm_sum(const MatrixTuple& x) {
  double s = 0.0;
  for (const auto& d : svd_components(x)) s += d.values.sum();
  return s;
}

double rank_distance(std::span<const SpectralDecomposition> svds) {
  double s = 0.0;
  for (const auto& d : svds) {
    if (d.dim() > 1) s += d.values.tail(d.dim() - 1).squaredNorm();
  }
  return std::sqrt(s);
}

double rank_distance(const MatrixTuple& x) { return rank_distance(svd_components(x)); }

HermitianMatrix shrink(const HermitianMatrix& a, double tau) {
  require_nonnegative(tau, "shrink: tau");
  const auto s = svd_hermitian(a);
  const RVector shrunk = (s.values.array() - tau).cwiseMax(0.0).matrix();
  Index r = 0;
  while (r < shrunk.size() && shrunk(r) > 0.0) ++r;
  if (r == 0) return HermitianMatrix(a.dim());
  const CMatrix scaled = s.left.leftCols(r) * shrunk.head(r).cast<Complex>().asDiagonal();
  return HermitianMatrix::symmetrize(scaled * s.right.leftCols(r).adjoint());
}

MatrixTuple t_power(const MatrixTuple& x, double alpha) {
  require_nonnegative(alpha, "t_power: alpha");
  if (alpha == 0.0) return x;
  const double tau = alpha * sigma_max(x);
  MatrixTuple out = x;
  for (std::size_t m = 0; m < x.size(); ++m) out[m] = shrink(x[m], tau);
  return out;
}

MatrixTuple project_rank_one(const MatrixTuple& x) {
  const auto svds = svd_components(x);
  MatrixTuple out = x;
  for (std::size_t m = 0; m < x.size(); ++m) {
    const auto& s = svds[m];
    if (s.dim() == 0) continue;
    const Index i = leading_triple(s);
    out[m] = rank_one(s, s.values(i), i);
  }
  return out;
}

MatrixTuple perturbation(const MatrixTuple& x, double alpha,
                         std::span<const SpectralDecomposition> svds) {
  require_nonnegative(alpha, "perturbation: alpha");
  require_components(x, svds);
  const double tau = alpha * sigma_max(svds);
  MatrixTuple y = x;
  for (std::size_t m = 0; m < x.size(); ++m) {
    const auto& s = svds[m];
    y[m] *= -1.0;
    if (s.dim() == 0) continue;
    const Index i = leading_triple(s);
    const double kept = std::max(0.0, s.values(i) - tau);
    if (kept > 0.0) y[m] += rank_one(s, kept, i);
  }
  return y;
}

MatrixTuple perturbation(const MatrixTuple& x, double alpha) {
  return perturbation(x, alpha, svd_components(x));
}

}  // namespace spocs
