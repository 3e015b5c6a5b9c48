#pragma once

// Randomized property suites shared by the unit tests (small sample counts)
// and the acceptance runner (full counts).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace spocs::testing {

struct PropertyReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;   // precondition of a strict claim not met
  std::size_t failures = 0;
  double worst = 0.0;        // largest observed violation, meaning depends on the suite
  std::string first_failure;

  bool ok() const { return failures == 0 && checked > 0; }
  void fail(const std::string& what);
};

/// ||Y_alpha(X)|| <= (1 + 1e-12) ||X|| for random Hermitian tuples with
/// N <= 8, M <= 4 and every alpha in `alphas`.
PropertyReport check_perturbation_bound(std::uint64_t seed, std::size_t tuples,
                                        const std::vector<double>& alphas);

/// The four descent properties of X + lambda Y_alpha(X):
///   (1) distance to the PSD cone does not grow, PSD inputs stay PSD;
///   (2) the nuclear-norm sum strictly decreases when positive;
///   (3) the trace of PSD inputs strictly decreases when positive;
///   (4) the distance to the rank-one set strictly decreases when positive.
/// Strict claims must hold with a relative margin of 1e-10.
PropertyReport check_descent_properties(std::uint64_t seed, std::size_t psd_tuples,
                                        std::size_t general_tuples,
                                        const std::vector<double>& lambdas,
                                        const std::vector<double>& alphas);

/// Shrinkage against the ellipsoid minimizer on `per_size` random 2x2 and 3x3
/// Hermitian matrices for each tau. `worst` is the largest Frobenius error.
PropertyReport check_shrink_against_minimizer(std::uint64_t seed, std::size_t per_size,
                                              const std::vector<double>& taus, double tol);

/// Idempotence (1e-10) of the SINR, power and PSD projections, and no closer
/// point among `candidates` random members of the set, on `instances` small
/// instances.
PropertyReport check_projection_optimality(std::uint64_t seed, std::size_t instances,
                                           std::size_t candidates);

}  // namespace spocs::testing
