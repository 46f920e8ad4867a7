#pragma once

#include <string>
#include <vector>

#include "spinlie/heisenberg_model.hpp"
#include "spinlie/operator_core.hpp"

namespace spinlie {

inline constexpr int kDefaultIterationCap = 20;

class ClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosureOptions {
  double tol = kSpanTolerance;
  int iteration_cap = kDefaultIterationCap;
};

struct ClosureReport {
  std::vector<std::string> generators;
  std::size_t dimension = 0;
  std::size_t full_dimension = 0;  // n^2 - 1
  bool controllable = false;
  int iterations = 0;
  std::vector<std::size_t> per_iteration_dims;
  double tolerance_used = 0.0;

  // Parameter cross-check, filled by controllability_verdict.
  bool parameter_condition = false;  // gamma1 != gamma2 and J12 != 0
  std::vector<std::string> warnings;
};

struct Closure {
  OperatorSpan algebra;
  ClosureReport report;
};

/// Real Lie algebra generated by skew-Hermitian traceless generators.
/// Generators are normalized first; each sweep brackets every element
/// accepted in the previous sweep against the whole span.
Closure lie_closure(const std::vector<ComplexMatrix>& generators, const ClosureOptions& opts = {},
                    std::vector<std::string> labels = {});

/// Smallest subspace containing `seed` and closed under ad of every basis
/// element of `algebra`. Several seeds give the sum of their orbits.
OperatorSpan ad_orbit(const OperatorSpan& algebra, const std::vector<ComplexMatrix>& seeds,
                      const ClosureOptions& opts = {});
OperatorSpan ad_orbit(const OperatorSpan& algebra, const ComplexMatrix& seed, const ClosureOptions& opts = {});

/// Orthogonal complement of a span inside su(n).
OperatorSpan complement_in_su(const OperatorSpan& span, double tol = kSpanTolerance);

/// Closure of {A, B_x, B_y, B_z} for the model parameters.
ClosureReport controllability_verdict(double gamma1, double gamma2, double J12, const ClosureOptions& opts = {});
ClosureReport controllability_verdict(const SpinPairModel& model, const ClosureOptions& opts = {});

struct ObservabilityReport {
  std::size_t algebra_dim = 0;
  std::size_t space_dim = 0;
  bool observable = false;
  OperatorSpan vperp_basis{kPairDim};  // skew-Hermitian complement of V in su(9)
  std::vector<std::string> warnings;
};

/// V = sum of ad-orbits of i S_v^TOT (v = x, y, z) under the dynamical algebra.
ObservabilityReport observability_verdict(double gamma1, double gamma2, double J12, const ClosureOptions& opts = {});
ObservabilityReport observability_verdict(const SpinPairModel& model, const ClosureOptions& opts = {});

/// The statement that the J12 = 0 algebra is su(2)-like (dimension 3)
/// regardless of gamma; returns a warning when the computed dimension differs.
std::vector<std::string> uncoupled_dimension_notes(double gamma1, double gamma2, double J12, std::size_t dimension);

}  // namespace spinlie
