#include "spocs/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spocs/errors.hpp"
#include "spocs/perturbations.hpp"

namespace spocs {

namespace {

// P_{H+}(A) = V diag([lambda]_+) V^H from an eigendecomposition of A.
HermitianMatrix psd_part(const SpectralDecomposition& eig) {
  const Index n = eig.dim();
  Index r = 0;
  while (r < n && eig.values(r) > 0.0) ++r;
  if (r == 0) return HermitianMatrix(n);
  const auto v = eig.left.leftCols(r);
  const CMatrix scaled = v * eig.values.head(r).cast<Complex>().asDiagonal();
  return HermitianMatrix::symmetrize(scaled * v.adjoint());
}

SpectralDecomposition clamped_singular(SpectralDecomposition eig) {
  eig.values = eig.values.cwiseMax(0.0);
  eig.kind = SpectrumKind::singular;
  return eig;
}

}  // namespace

// --- Relaxation -------------------------------------------------------------

Relaxation Relaxation::uniform(std::size_t users, double sinr, double power, double psd) {
  Relaxation r;
  r.mus.assign(users, sinr);
  r.mus.push_back(power);
  r.mus.push_back(psd);
  return r;
}

void Relaxation::validate(std::size_t users) const {
  if (mus.size() != users + 2) {
    throw std::invalid_argument("relaxation: expected K + 2 = " + std::to_string(users + 2) +
                                " parameters, got " + std::to_string(mus.size()));
  }
  for (double mu : mus) {
    if (!(mu > 0.0 && mu < 2.0)) {
      throw std::invalid_argument("relaxation: parameter " + std::to_string(mu) +
                                  " outside (0, 2)");
    }
  }
}

// --- halfspaces -------------------------------------------------------------

double SinrHalfspace::evaluate(const MatrixTuple& x) const {
  double s = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m) s += coefficient(m) * x[m].quadratic_form(channel);
  return s;
}

MatrixTuple SinrHalfspace::normal(std::size_t groups) const {
  MatrixTuple z(groups, channel.size());
  for (std::size_t m = 0; m < groups; ++m) z[m].add_outer(coefficient(m), channel);
  return z;
}

double PowerHalfspaces::evaluate(const MatrixTuple& x, Index i) const {
  double s = 0.0;
  for (const auto& c : x) s += c(i, i).real();
  return s;
}

MatrixTuple PowerHalfspaces::normal(Index i) const {
  MatrixTuple d(groups, antennas());
  for (std::size_t m = 0; m < groups; ++m) d[m].add_to_diagonal(i, 1.0);
  return d;
}

// --- residual report --------------------------------------------------------

double ResidualReport::max_sinr() const {
  return sinr.empty() ? 0.0 : *std::max_element(sinr.begin(), sinr.end());
}

double ResidualReport::max_power() const {
  return power.empty() ? 0.0 : *std::max_element(power.begin(), power.end());
}

double ResidualReport::max_violation() const {
  return std::max({max_sinr(), max_power(), psd});
}

// --- free projections -------------------------------------------------------

MatrixTuple relax(const MatrixTuple& projected, const MatrixTuple& x, double mu) {
  if (!(mu > 0.0 && mu < 2.0)) {
    throw std::invalid_argument("relax: relaxation parameter " + std::to_string(mu) +
                                " outside (0, 2)");
  }
  return axpy(mu, projected - x, x);
}

MatrixTuple project_psd(const MatrixTuple& x) {
  MatrixTuple out = x;
  for (std::size_t m = 0; m < x.size(); ++m) out[m] = psd_part(eig_hermitian(x[m]));
  return out;
}

double psd_violation(const MatrixTuple& x) {
  double s = 0.0;
  for (const auto& c : x) {
    const auto eig = eig_hermitian(c);
    s += (-eig.values).cwiseMax(0.0).sum();
  }
  return s;
}

// --- ConstraintSet ----------------------------------------------------------

ConstraintSet::ConstraintSet(ProblemInstance instance) : instance_(std::move(instance)) {
  instance_.validate();
  const double m = static_cast<double>(instance_.groups);
  sinr_.reserve(instance_.users);
  for (std::size_t k = 0; k < instance_.users; ++k) {
    SinrHalfspace h;
    h.user = k;
    h.group = instance_.group_of[k];
    h.gamma = instance_.sinr_target[k];
    h.offset = instance_.noise_power[k];
    h.channel = instance_.channels[k];
    const double q = h.channel.squaredNorm();  // ||Q_k||_F = ||h_k||^2
    h.normal_norm_sq = (1.0 / (h.gamma * h.gamma) + (m - 1.0)) * q * q;
    if (!(h.normal_norm_sq > 0.0) || !std::isfinite(h.normal_norm_sq)) {
      throw DegenerateChannel("constraints: SINR halfspace of user " + std::to_string(k + 1) +
                              " has a degenerate normal");
    }
    sinr_.push_back(std::move(h));
  }
  power_.caps = instance_.antenna_power;
  power_.groups = instance_.groups;
  has_bounded_caps_ = std::any_of(power_.caps.begin(), power_.caps.end(),
                                  [](const PowerCap& p) { return p.bounded(); });
}

void ConstraintSet::require_shape(const MatrixTuple& x) const {
  if (x.size() != groups() || x.dim() != antennas()) {
    throw DimensionMismatch("constraints: tuple shape does not match instance (M = " +
                            std::to_string(groups()) + ", N = " + std::to_string(antennas()) +
                            ")");
  }
}

double ConstraintSet::objective(const MatrixTuple& x) const {
  require_shape(x);
  double s = 0.0;
  for (const auto& c : x) s += c.trace();
  return s;
}

void ConstraintSet::relax_sinr_inplace(MatrixTuple& x, std::size_t k, double mu) const {
  const SinrHalfspace& h = sinr_[k];
  const double value = h.evaluate(x);
  if (value >= h.offset) return;
  const double step = mu * (h.offset - value) / h.normal_norm_sq;
  for (std::size_t m = 0; m < x.size(); ++m) x[m].add_outer(step * h.coefficient(m), h.channel);
}

void ConstraintSet::relax_power_inplace(MatrixTuple& x, double mu) const {
  if (!has_bounded_caps_) return;
  const double dn = power_.normal_norm_sq();
  for (Index i = 0; i < antennas(); ++i) {
    const PowerCap& cap = power_.caps[static_cast<std::size_t>(i)];
    if (!cap.bounded()) continue;
    const double value = power_.evaluate(x, i);
    if (value <= cap.value()) continue;
    // The D^i are mutually orthogonal, so every violated halfspace is corrected
    // from the same input point.
    const double step = mu * (cap.value() - value) / dn;
    for (std::size_t m = 0; m < x.size(); ++m) x[m].add_to_diagonal(i, step);
  }
}

MatrixTuple ConstraintSet::project_sinr(const MatrixTuple& x, std::size_t k) const {
  require_shape(x);
  if (k >= users()) throw std::out_of_range("project_sinr: user index out of range");
  MatrixTuple out = x;
  relax_sinr_inplace(out, k, 1.0);
  return out;
}

MatrixTuple ConstraintSet::project_power(const MatrixTuple& x) const {
  require_shape(x);
  MatrixTuple out = x;
  relax_power_inplace(out, 1.0);
  return out;
}

void ConstraintSet::apply_t_star(MatrixTuple& x, const Relaxation& mu,
                                 std::vector<SpectralDecomposition>* spectra) const {
  require_shape(x);
  for (std::size_t k = 0; k < users(); ++k) relax_sinr_inplace(x, k, mu.sinr(k));
  relax_power_inplace(x, mu.power());

  const bool exact = mu.psd() == 1.0;
  if (spectra != nullptr) {
    spectra->clear();
    if (exact) spectra->reserve(x.size());
  }
  for (std::size_t m = 0; m < x.size(); ++m) {
    auto eig = eig_hermitian(x[m]);
    HermitianMatrix p = psd_part(eig);
    if (exact) {
      x[m] = std::move(p);
      if (spectra != nullptr) spectra->push_back(clamped_singular(std::move(eig)));
    } else {
      p -= x[m];
      x[m].add_scaled(mu.psd(), p);
    }
  }
}

MatrixTuple ConstraintSet::t_star(const MatrixTuple& x, const Relaxation& mu) const {
  mu.validate(users());
  MatrixTuple out = x;
  apply_t_star(out, mu);
  return out;
}

ResidualReport ConstraintSet::residuals(const MatrixTuple& x) const {
  require_shape(x);
  ResidualReport r;
  r.sinr.resize(users());
  for (std::size_t k = 0; k < users(); ++k) {
    r.sinr[k] = std::max(0.0, sinr_[k].offset - sinr_[k].evaluate(x));
  }
  r.power.resize(static_cast<std::size_t>(antennas()));
  for (Index i = 0; i < antennas(); ++i) {
    const PowerCap& cap = power_.caps[static_cast<std::size_t>(i)];
    r.power[static_cast<std::size_t>(i)] =
        cap.bounded() ? std::max(0.0, power_.evaluate(x, i) - cap.value()) : 0.0;
  }
  std::vector<SpectralDecomposition> svds;
  svds.reserve(x.size());
  for (const auto& c : x) {
    auto eig = eig_hermitian(c);
    r.psd += (-eig.values).cwiseMax(0.0).sum();
    svds.push_back(singular_from_eigen(eig));
  }
  r.rank_distance = rank_distance(svds);
  return r;
}

}  // namespace spocs
