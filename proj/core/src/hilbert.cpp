#include "spocs/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "spocs/errors.hpp"

namespace spocs {

namespace {

void require_same_shape(const MatrixTuple& x, const MatrixTuple& y, const char* what) {
  if (!x.same_shape(y)) {
    throw DimensionMismatch(std::string(what) + ": tuples of shape (" + std::to_string(x.size()) +
                            ", " + std::to_string(x.dim()) + ") and (" + std::to_string(y.size()) +
                            ", " + std::to_string(y.dim()) + ")");
  }
}

void require_same_dim(const HermitianMatrix& x, const HermitianMatrix& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("Hermitian matrices of dimension " + std::to_string(x.dim()) +
                            " and " + std::to_string(y.dim()));
  }
}

// Rotates v so that its largest-magnitude entry (first one on exact ties) is real positive.
void normalize_phase(Eigen::Ref<CVector> v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

}  // namespace

// --- HermitianMatrix --------------------------------------------------------

HermitianMatrix::HermitianMatrix(Index n) : a_(CMatrix::Zero(n, n)) {
  if (n < 0) throw std::invalid_argument("HermitianMatrix: negative dimension");
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  HermitianMatrix h(n);
  h.a_.diagonal().setOnes();
  return h;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  HermitianMatrix h(static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) h.a_(Index(i), Index(i)) = d[i];
  return h;
}

HermitianMatrix HermitianMatrix::outer(const CVector& w) {
  HermitianMatrix h(w.size());
  h.add_outer(1.0, w);
  return h;
}

HermitianMatrix HermitianMatrix::from(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("HermitianMatrix: matrix is not square");
  const double scale = a.norm();
  const double skew = (a - a.adjoint()).norm();
  if (!std::isfinite(scale) || skew > kHermitianTol * scale) {
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian (||A - A^H|| = " +
                                std::to_string(skew) + ")");
  }
  return symmetrize(a);
}

HermitianMatrix HermitianMatrix::symmetrize(const CMatrix& a) {
  HermitianMatrix h;
  const Index n = a.rows();
  h.a_.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    h.a_(j, j) = Complex(a(j, j).real(), 0.0);
    for (Index i = j + 1; i < n; ++i) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h.a_(i, j) = v;
      h.a_(j, i) = std::conj(v);
    }
  }
  return h;
}

double HermitianMatrix::trace() const { return a_.diagonal().real().sum(); }

double HermitianMatrix::quadratic_form(const CVector& h) const {
  return h.dot(a_ * h).real();
}

HermitianMatrix& HermitianMatrix::add_scaled(double s, const HermitianMatrix& other) {
  require_same_dim(*this, other);
  a_ += s * other.a_;
  return *this;
}

HermitianMatrix& HermitianMatrix::add_outer(double s, const CVector& h) {
  if (h.size() != dim()) throw DimensionMismatch("add_outer: vector length differs from dimension");
  const Index n = dim();
  for (Index j = 0; j < n; ++j) {
    const Complex hj = std::conj(h(j));
    a_(j, j) += Complex(s * std::norm(h(j)), 0.0);
    for (Index i = j + 1; i < n; ++i) {
      const Complex v = s * (h(i) * hj);
      a_(i, j) += v;
      a_(j, i) += std::conj(v);
    }
  }
  return *this;
}

HermitianMatrix& HermitianMatrix::add_to_diagonal(Index i, double s) {
  a_(i, i) += Complex(s, 0.0);
  return *this;
}

HermitianMatrix& HermitianMatrix::shift(double s) {
  a_.diagonal().array() += Complex(s, 0.0);
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  a_ *= s;
  return *this;
}

// --- MatrixTuple ------------------------------------------------------------

MatrixTuple::MatrixTuple(std::size_t m, Index n) : c_(m, HermitianMatrix(n)) {}

MatrixTuple::MatrixTuple(std::vector<HermitianMatrix> components) : c_(std::move(components)) {
  for (const auto& c : c_) {
    if (c.dim() != c_.front().dim()) throw DimensionMismatch("MatrixTuple: components differ in dimension");
  }
}

MatrixTuple MatrixTuple::identity(std::size_t m, Index n) {
  return MatrixTuple(std::vector<HermitianMatrix>(m, HermitianMatrix::identity(n)));
}

MatrixTuple& MatrixTuple::operator+=(const MatrixTuple& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += other.c_[m];
  return *this;
}

MatrixTuple& MatrixTuple::operator-=(const MatrixTuple& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= other.c_[m];
  return *this;
}

MatrixTuple& MatrixTuple::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

// --- inner products ---------------------------------------------------------

double inner(const HermitianMatrix& x, const HermitianMatrix& y) {
  require_same_dim(x, y);
  // Re tr(X^H Y) = sum_ij Re(conj(x_ij) y_ij)
  return x.matrix().cwiseProduct(y.matrix().conjugate()).sum().real();
}

double inner(const MatrixTuple& x, const MatrixTuple& y) {
  require_same_shape(x, y, "inner");
  double s = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m) s += inner(x[m], y[m]);
  return s;
}

double norm(const MatrixTuple& x) {
  double s = 0.0;
  for (const auto& c : x) s += c.matrix().squaredNorm();
  return std::sqrt(s);
}

double distance(const MatrixTuple& x, const MatrixTuple& y) {
  require_same_shape(x, y, "distance");
  double s = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m) s += (x[m].matrix() - y[m].matrix()).squaredNorm();
  return std::sqrt(s);
}

MatrixTuple axpy(double a, const MatrixTuple& x, const MatrixTuple& y) {
  require_same_shape(x, y, "axpy");
  MatrixTuple out = y;
  for (std::size_t m = 0; m < x.size(); ++m) out[m].add_scaled(a, x[m]);
  return out;
}

// --- spectral decompositions ------------------------------------------------

CMatrix SpectralDecomposition::reconstruct() const {
  return left * values.cast<Complex>().asDiagonal() * right.adjoint();
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& a) {
  const Index n = a.dim();
  SpectralDecomposition out;
  out.kind = SpectrumKind::eigen;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  // Eigen returns ascending order.
  out.values = solver.eigenvalues().reverse();
  out.left = solver.eigenvectors().rowwise().reverse();
  for (Index i = 0; i < n; ++i) normalize_phase(out.left.col(i));
  out.right = out.left;
  return out;
}

SpectralDecomposition singular_from_eigen(const SpectralDecomposition& eig) {
  const Index n = eig.dim();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return std::abs(eig.values(i)) > std::abs(eig.values(j));
  });

  SpectralDecomposition out;
  out.kind = SpectrumKind::singular;
  out.values.resize(n);
  out.left.resize(n, n);
  out.right.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    const double lambda = eig.values(src);
    out.values(k) = std::abs(lambda);
    out.left.col(k) = eig.left.col(src);
    out.right.col(k) = lambda < 0.0 ? CVector(-eig.left.col(src)) : CVector(eig.left.col(src));
  }
  return out;
}

SpectralDecomposition svd_hermitian(const HermitianMatrix& a) {
  return singular_from_eigen(eig_hermitian(a));
}

}  // namespace spocs
