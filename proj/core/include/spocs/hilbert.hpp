#pragma once

// The real Hilbert space H^M of M-tuples of N x N Hermitian matrices, with
// inner product <<X, Y>> = sum_m Re tr(X_m^H Y_m) and the induced Frobenius norm.
// Scalars are restricted to the reals.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace spocs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance used when accepting a general complex matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-10;
/// Relative reconstruction accuracy expected from spectral decompositions.
inline constexpr double kSpectralTol = 1e-8;

/// An N x N complex Hermitian matrix.
///
/// The stored matrix is exactly Hermitian: every constructor and mutator keeps
/// a(i, j) == conj(a(j, i)) bit for bit, with real diagonal.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Zero matrix of dimension n.
  explicit HermitianMatrix(Index n);

  static HermitianMatrix zero(Index n) { return HermitianMatrix(n); }
  static HermitianMatrix identity(Index n);
  static HermitianMatrix diagonal(std::span<const double> d);
  /// w w^H
  static HermitianMatrix outer(const CVector& w);

  /// Accepts `a` if ||a - a^H|| <= kHermitianTol * ||a|| and stores (a + a^H) / 2.
  /// Throws std::invalid_argument otherwise.
  static HermitianMatrix from(const CMatrix& a);

  /// Stores (a + a^H) / 2 without checking. For results of products such as
  /// V diag(l) V^H that are Hermitian up to rounding.
  static HermitianMatrix symmetrize(const CMatrix& a);

  Index dim() const { return a_.rows(); }
  const CMatrix& matrix() const { return a_; }
  Complex operator()(Index i, Index j) const { return a_(i, j); }

  double trace() const;
  double frobenius_norm() const { return a_.norm(); }
  /// h^H A h, which is real for Hermitian A.
  double quadratic_form(const CVector& h) const;

  /// this += s * other
  HermitianMatrix& add_scaled(double s, const HermitianMatrix& other);
  /// this += s * h h^H
  HermitianMatrix& add_outer(double s, const CVector& h);
  /// this(i, i) += s
  HermitianMatrix& add_to_diagonal(Index i, double s);
  /// this += s * I
  HermitianMatrix& shift(double s);
  HermitianMatrix& operator*=(double s);
  HermitianMatrix& operator+=(const HermitianMatrix& other) { return add_scaled(1.0, other); }
  HermitianMatrix& operator-=(const HermitianMatrix& other) { return add_scaled(-1.0, other); }

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

 private:
  CMatrix a_;
};

/// An element of H^M: M Hermitian matrices of a common dimension N.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  /// The zero tuple with `m` components of dimension `n`.
  MatrixTuple(std::size_t m, Index n);
  /// Throws DimensionMismatch if the components differ in dimension.
  explicit MatrixTuple(std::vector<HermitianMatrix> components);

  static MatrixTuple zero(std::size_t m, Index n) { return MatrixTuple(m, n); }
  /// J = (I_N, ..., I_N)
  static MatrixTuple identity(std::size_t m, Index n);

  std::size_t size() const { return c_.size(); }
  Index dim() const { return c_.empty() ? 0 : c_.front().dim(); }
  bool same_shape(const MatrixTuple& other) const {
    return size() == other.size() && dim() == other.dim();
  }

  const HermitianMatrix& operator[](std::size_t m) const { return c_[m]; }
  HermitianMatrix& operator[](std::size_t m) { return c_[m]; }
  std::span<const HermitianMatrix> components() const { return c_; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }

  MatrixTuple& operator+=(const MatrixTuple& other);
  MatrixTuple& operator-=(const MatrixTuple& other);
  MatrixTuple& operator*=(double s);

  friend MatrixTuple operator+(MatrixTuple a, const MatrixTuple& b) { return a += b; }
  friend MatrixTuple operator-(MatrixTuple a, const MatrixTuple& b) { return a -= b; }
  friend MatrixTuple operator*(double s, MatrixTuple a) { return a *= s; }

 private:
  std::vector<HermitianMatrix> c_;
};

enum class SpectrumKind { eigen, singular };

/// A = left * diag(values) * right^H with `values` sorted in descending order.
/// For kind == eigen, left == right and the values are the eigenvalues; for
/// kind == singular the values are nonnegative.
struct SpectralDecomposition {
  RVector values;
  CMatrix left;
  CMatrix right;
  SpectrumKind kind = SpectrumKind::eigen;

  Index dim() const { return values.size(); }
  CMatrix reconstruct() const;
};

/// <X_m, Y_m> = Re tr(X_m^H Y_m) on a single component.
double inner(const HermitianMatrix& x, const HermitianMatrix& y);
/// <<X, Y>> = sum_m Re tr(X_m^H Y_m). Throws DimensionMismatch on shape mismatch.
double inner(const MatrixTuple& x, const MatrixTuple& y);
double norm(const MatrixTuple& x);
/// ||X - Y|| without materializing the difference.
double distance(const MatrixTuple& x, const MatrixTuple& y);
/// a * X + Y
MatrixTuple axpy(double a, const MatrixTuple& x, const MatrixTuple& y);

/// Eigendecomposition with eigenvalues sorted descending. Each eigenvector is
/// phase-normalized so that its largest-magnitude entry is real and positive.
SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

/// Singular value decomposition derived from the eigendecomposition:
/// sigma_i = |lambda_i| re-sorted descending, right column = sign(lambda) * left
/// column with sign(0) = +1.
SpectralDecomposition svd_hermitian(const HermitianMatrix& a);
/// Converts an eigendecomposition into the corresponding singular decomposition.
SpectralDecomposition singular_from_eigen(const SpectralDecomposition& eig);

}  // namespace spocs
