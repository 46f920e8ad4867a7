#include "spinlie/lie_engine.hpp"

#include <cmath>
#include <sstream>

namespace spinlie {
namespace {

constexpr double kParameterEqualityTol = 1e-12;

void check_generator(const ComplexMatrix& g, std::size_t n) {
  if (g.rows() != static_cast<Eigen::Index>(n) || g.cols() != static_cast<Eigen::Index>(n))
    throw DimensionError("lie_closure: generators must share one ambient dimension");
  if (!is_skew_hermitian(g)) throw StructureError("lie_closure: generator is not skew-Hermitian");
  if (!is_traceless(g)) throw StructureError("lie_closure: generator is not traceless");
}

std::vector<ComplexMatrix> sweep_until_fixpoint(OperatorSpan& span, std::vector<ComplexMatrix> frontier,
                                                const std::vector<ComplexMatrix>* fixed_partners,
                                                const ClosureOptions& opts, std::vector<std::size_t>& dims,
                                                int& iterations) {
  dims.push_back(span.dimension());
  while (true) {
    if (iterations >= opts.iteration_cap) {
      throw ClosureError("closure did not reach a fixpoint within the iteration cap of " +
                         std::to_string(opts.iteration_cap) + " sweeps");
    }
    ++iterations;
    std::vector<ComplexMatrix> next;
    // Partners: the span as it stood when the sweep started, or a fixed set.
    const std::vector<ComplexMatrix> partners = fixed_partners ? *fixed_partners : span.basis();
    for (const auto& f : frontier) {
      for (const auto& g : partners) {
        if (span.insert(commutator(g, f), opts.tol)) next.push_back(span.basis().back());
      }
    }
    dims.push_back(span.dimension());
    if (next.empty()) break;
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace

Closure lie_closure(const std::vector<ComplexMatrix>& generators, const ClosureOptions& opts,
                    std::vector<std::string> labels) {
  if (generators.empty()) throw std::invalid_argument("lie_closure: no generators");
  const auto n = static_cast<std::size_t>(generators.front().rows());
  for (const auto& g : generators) check_generator(g, n);

  Closure out{OperatorSpan(n), {}};
  std::vector<ComplexMatrix> frontier;
  for (const auto& g : generators) {
    const double norm = g.norm();
    if (norm == 0.0) continue;
    if (out.algebra.insert(g / norm, opts.tol)) frontier.push_back(out.algebra.basis().back());
  }

  ClosureReport& r = out.report;
  r.generators = labels.empty() ? std::vector<std::string>(generators.size(), "G") : std::move(labels);
  r.tolerance_used = opts.tol;
  r.full_dimension = n * n - 1;
  if (!frontier.empty()) {
    sweep_until_fixpoint(out.algebra, frontier, nullptr, opts, r.per_iteration_dims, r.iterations);
  } else {
    r.per_iteration_dims = {0, 0};
  }
  r.dimension = out.algebra.dimension();
  r.controllable = r.dimension == r.full_dimension;
  return out;
}

OperatorSpan ad_orbit(const OperatorSpan& algebra, const std::vector<ComplexMatrix>& seeds,
                      const ClosureOptions& opts) {
  OperatorSpan orbit(algebra.ambient_dim());
  std::vector<ComplexMatrix> frontier;
  for (const auto& s : seeds) {
    check_generator(s, algebra.ambient_dim());
    const double norm = s.norm();
    if (norm == 0.0) continue;
    if (orbit.insert(s / norm, opts.tol)) frontier.push_back(orbit.basis().back());
  }
  if (frontier.empty()) return orbit;
  std::vector<std::size_t> dims;
  int iterations = 0;
  sweep_until_fixpoint(orbit, frontier, &algebra.basis(), opts, dims, iterations);
  return orbit;
}

OperatorSpan ad_orbit(const OperatorSpan& algebra, const ComplexMatrix& seed, const ClosureOptions& opts) {
  return ad_orbit(algebra, std::vector<ComplexMatrix>{seed}, opts);
}

OperatorSpan complement_in_su(const OperatorSpan& span, double tol) {
  const std::size_t n = span.ambient_dim();
  const auto dim = static_cast<Eigen::Index>(n);
  OperatorSpan combined = span;
  OperatorSpan complement(n);
  auto offer = [&](const ComplexMatrix& x) {
    if (combined.insert(x, tol)) complement.insert(combined.basis().back(), tol);
  };
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = j + 1; k < dim; ++k) {
      ComplexMatrix re = ComplexMatrix::Zero(dim, dim);
      re(j, k) = 1.0;
      re(k, j) = -1.0;
      offer(re);
      ComplexMatrix im = ComplexMatrix::Zero(dim, dim);
      im(j, k) = kI;
      im(k, j) = kI;
      offer(im);
    }
  }
  for (Eigen::Index k = 0; k + 1 < dim; ++k) {
    ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
    d(k, k) = kI;
    d(dim - 1, dim - 1) = -kI;
    offer(d);
  }
  return complement;
}

std::vector<std::string> uncoupled_dimension_notes(double gamma1, double gamma2, double J12, std::size_t dimension) {
  std::vector<std::string> notes;
  if (std::abs(J12) > kParameterEqualityTol) return notes;
  if (dimension != 3) {
    std::ostringstream os;
    os << "J12 = 0 with gamma1 = " << gamma1 << ", gamma2 = " << gamma2 << ": computed closure dimension "
       << dimension << " differs from the expectation that the uncoupled algebra is isomorphic to su(2) (dimension 3)"
       << " even for different gammas";
    notes.push_back(os.str());
  }
  return notes;
}

ClosureReport controllability_verdict(double gamma1, double gamma2, double J12, const ClosureOptions& opts) {
  std::vector<ComplexMatrix> gens = {build_drift(J12)};
  for (auto& b : build_controls(gamma1, gamma2)) gens.push_back(std::move(b));
  Closure c = lie_closure(gens, opts, {"A", "B_x", "B_y", "B_z"});
  ClosureReport r = std::move(c.report);

  r.parameter_condition =
      std::abs(gamma1 - gamma2) > kParameterEqualityTol && std::abs(J12) > kParameterEqualityTol;
  if (r.parameter_condition != r.controllable) {
    std::ostringstream os;
    os << "parameter condition (gamma1 != gamma2 and J12 != 0) is "
       << (r.parameter_condition ? "met" : "not met") << " but the closure dimension is " << r.dimension
       << "; inputs may be near-degenerate relative to tolerance " << r.tolerance_used;
    r.warnings.push_back(os.str());
  }
  for (auto& note : uncoupled_dimension_notes(gamma1, gamma2, J12, r.dimension)) r.warnings.push_back(std::move(note));
  return r;
}

ClosureReport controllability_verdict(const SpinPairModel& model, const ClosureOptions& opts) {
  return controllability_verdict(model.gamma1, model.gamma2, model.J12, opts);
}

ObservabilityReport observability_verdict(double gamma1, double gamma2, double J12, const ClosureOptions& opts) {
  std::vector<ComplexMatrix> gens = {build_drift(J12)};
  for (auto& b : build_controls(gamma1, gamma2)) gens.push_back(std::move(b));
  const Closure closure = lie_closure(gens, opts, {"A", "B_x", "B_y", "B_z"});

  std::vector<ComplexMatrix> seeds;
  for (const auto& s : total_spin_observables()) seeds.push_back(kI * s);
  const OperatorSpan v = ad_orbit(closure.algebra, seeds, opts);

  ObservabilityReport r;
  r.algebra_dim = closure.algebra.dimension();
  r.space_dim = v.dimension();
  r.observable = r.space_dim == kPairDim * kPairDim - 1;
  r.vperp_basis = complement_in_su(v, opts.tol);
  r.warnings = closure.report.warnings;
  return r;
}

ObservabilityReport observability_verdict(const SpinPairModel& model, const ClosureOptions& opts) {
  return observability_verdict(model.gamma1, model.gamma2, model.J12, opts);
}

}  // namespace spinlie
