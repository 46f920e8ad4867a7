#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinlie/cartan_parity.hpp"
#include "spinlie/heisenberg_model.hpp"

namespace spinlie {

inline constexpr int kDefaultSamplesPerSegment = 16;
inline constexpr double kEquivalenceTol = 1e-8;

struct ControlSegment {
  double dt = 0.0;
  ControlTriple u{};
};

/// Piecewise-constant controls (u_x, u_y, u_z).
struct ControlSchedule {
  double t_start = 0.0;
  std::vector<ControlSegment> segments;

  double duration() const;
  /// Throws std::invalid_argument on non-positive or non-finite durations.
  void validate() const;
};

ControlSchedule schedule_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const ControlSchedule& s);

/// Schedule with `segments` segments of random duration in [dt_min, dt_max]
/// and controls uniform in [-amplitude, amplitude].
ControlSchedule random_schedule(std::uint64_t seed, int segments = 6, double amplitude = 1.0,
                                double dt_min = 0.3, double dt_max = 1.2);

struct MagnetizationTrace {
  std::vector<double> times;
  std::vector<double> mx, my, mz;

  std::size_t size() const { return times.size(); }
  const std::vector<double>& component(int v) const { return v == 0 ? mx : (v == 1 ? my : mz); }
};

/// CSV with header `t,mx,my,mz` and 17 significant digits.
void write_trace_csv(std::ostream& os, const MagnetizationTrace& trace);
MagnetizationTrace read_trace_csv(std::istream& is);

/// Exact propagation within one constant-control segment:
/// rho(tau) = exp(G tau) rho exp(-G tau).
class SegmentPropagator {
 public:
  explicit SegmentPropagator(const ComplexMatrix& generator);
  ComplexMatrix unitary(double tau) const;
  ComplexMatrix evolve(const ComplexMatrix& rho, double tau) const;

 private:
  ComplexMatrix vectors_;
  Eigen::VectorXd energies_;
};

struct Propagation {
  MagnetizationTrace trace;
  ComplexMatrix rho_final;
};

/// Samples at k * dt / samples_per_segment, k = 1..samples_per_segment, in
/// each segment. Works on any Hermitian rho (it need not be a valid state).
Propagation propagate(const ModelParameters& params, const ComplexMatrix& rho0, const ControlSchedule& schedule,
                      int samples_per_segment = kDefaultSamplesPerSegment);

struct StatePropagation {
  MagnetizationTrace trace;
  DensityMatrix rho_final;
};
StatePropagation propagate(const SpinPairModel& model, const ControlSchedule& schedule,
                           int samples_per_segment = kDefaultSamplesPerSegment);

/// Algebraic partner: J12 negated and the I-component of rho0 flipped.
struct PartnerConstruction {
  ModelParameters params;
  ComplexMatrix rho0;
  bool physical = false;
  double min_eigenvalue = 0.0;
};

PartnerConstruction partner_construction(const ModelParameters& params, const ComplexMatrix& rho0,
                                         const ParityDecomposition& decomp = pair_decomposition());

class UnphysicalPartnerError : public std::runtime_error {
 public:
  UnphysicalPartnerError(const std::string& msg, double min_eigenvalue)
      : std::runtime_error(msg), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Throws UnphysicalPartnerError when the flipped state has an eigenvalue
/// below -1e-10.
SpinPairModel equivalent_partner(const SpinPairModel& model,
                                 const ParityDecomposition& decomp = pair_decomposition());

/// rho mixed toward 1/9 at weight start_weight * 2^-k, smallest k >= 0 for
/// which the partner state is positive semidefinite.
DensityMatrix partner_safe_state(const DensityMatrix& rho, const ModelParameters& params,
                                 double start_weight = 0.5, const ParityDecomposition& decomp = pair_decomposition());

struct EquivalenceReport {
  std::vector<double> per_schedule;
  double max_deviation = 0.0;
  bool pass = false;
};

EquivalenceReport verify_equivalence(const ModelParameters& pa, const ComplexMatrix& rho_a,
                                     const ModelParameters& pb, const ComplexMatrix& rho_b,
                                     const std::vector<ControlSchedule>& schedules,
                                     int samples_per_segment = kDefaultSamplesPerSegment);
EquivalenceReport verify_equivalence(const SpinPairModel& a, const SpinPairModel& b,
                                     const std::vector<ControlSchedule>& schedules,
                                     int samples_per_segment = kDefaultSamplesPerSegment);

struct SplitDynamicsReport {
  double fd_step = 0.0;
  std::size_t points = 0;
  // Forward-difference residuals against rho1' = [B, rho1] + [A, rho2]
  // and rho2' = [A, rho1] + [B, rho2].
  double residual_rho1 = 0.0;
  double residual_rho2 = 0.0;
  // Partner trajectory: max |rho1 - rho1'| and |rho2 + rho2'|.
  double partner_rho1_gap = 0.0;
  double partner_rho2_gap = 0.0;
  double max_residual() const { return std::max(residual_rho1, residual_rho2); }
};

/// Evaluation points are seg_start + k dt / points_per_segment,
/// k = 0..points_per_segment-1; fd_step must not exceed dt / points_per_segment.
SplitDynamicsReport verify_split_dynamics(const ModelParameters& params, const ComplexMatrix& rho0,
                                          const ControlSchedule& schedule, double fd_step,
                                          int points_per_segment = kDefaultSamplesPerSegment,
                                          const ParityDecomposition& decomp = pair_decomposition());

struct AdjointIdentityReport {
  Complex finite_difference;
  Complex bracket_trace;  // Tr([F, A] rho)
  double deviation = 0.0;
  bool pass = false;
};

/// Central difference of t -> Tr(F e^{At} rho e^{-At}) at t = 0 against
/// Tr([F, A] rho).
AdjointIdentityReport verify_adjoint_identity(const ComplexMatrix& drift, const ComplexMatrix& f,
                                              const ComplexMatrix& rho, double step = 1e-5);

}  // namespace spinlie
