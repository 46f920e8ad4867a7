#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinlie/dynamics.hpp"

namespace spinlie {

class IdentificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input-output record: one trace per schedule, sampled on the schedule's
/// uniform per-segment grid.
struct ExperimentRecord {
  std::vector<ControlSchedule> schedules;
  std::vector<MagnetizationTrace> traces;

  /// Throws std::invalid_argument on count mismatch or off-grid samples.
  void validate() const;
  std::size_t sample_count() const;  // scalar observations (3 per time point)
};

/// Noise is additive Gaussian per component; sigma 0 gives exact data.
ExperimentRecord simulate_experiment(const ModelParameters& params, const ComplexMatrix& rho0,
                                     const std::vector<ControlSchedule>& schedules,
                                     int samples_per_segment = kDefaultSamplesPerSegment, double noise_sigma = 0.0,
                                     std::uint64_t noise_seed = 0);

/// Directory layout: schedule_<k>.json and trace_<k>.csv for k = 0, 1, ...
void save_experiment(const ExperimentRecord& record, const std::filesystem::path& dir);
ExperimentRecord load_experiment(const std::filesystem::path& dir);

struct VandermondeResult {
  double det = 0.0;
  bool indistinguishable = false;
};

/// det of the 4x4 matrix with rows (1, x, x^2, x^3), x in {g1, g2, g1p, g2p},
/// evaluated as the product of pairwise differences. Indistinguishable when
/// |det| <= 1e-10 * prod_{i<j} (|x_i| + |x_j|).
VandermondeResult vandermonde_distinguishability(double g1, double g2, double g1p, double g2p);

struct MomentEstimate {
  double gamma1 = 0.0;  // gamma1 <= gamma2
  double gamma2 = 0.0;
  double condition = 0.0;  // condition number of the (s, p) system
};

/// Early-time estimate of the gamma pair. Needs at least three schedules whose
/// first-segment controls point in distinct directions; throws
/// IdentificationError when the moment system is degenerate or ill-conditioned.
MomentEstimate moment_gamma_estimate(const ExperimentRecord& data);

/// Orthonormal Hermitian traceless basis of 9x9 matrices (generalized
/// Gell-Mann, Re Tr(E_j E_k) = delta_jk).
const std::vector<ComplexMatrix>& traceless_hermitian_basis();

/// Misfit at fixed parameters with rho0 solved by linear least squares.
struct FitEvaluation {
  double residual = 0.0;  // root-mean-square misfit over all scalar samples
  ComplexMatrix rho0;     // Hermitian, unit trace; not necessarily positive
  std::size_t design_rank = 0;
};

FitEvaluation evaluate_fit(const ExperimentRecord& data, const ModelParameters& params);

struct IdentifyConfig {
  int starts = 8;  // per sign of J; the moment estimate, when available, is one of them
  std::uint64_t seed = 0;
  int max_iterations = 400;
  double gamma_range_min = 0.1;
  double gamma_range_max = 4.0;
  double j_range_min = 0.05;
  double j_range_max = 3.0;
  unsigned threads = 0;  // 0: SPINLIE_THREADS or hardware concurrency
};

struct IdentificationCandidate {
  double J_signed = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  ComplexMatrix rho0_hat;
  double min_eigenvalue = 0.0;
  bool physical = false;  // rho0_hat positive semidefinite within 1e-10
  double residual = 0.0;
  std::size_t start_index = 0;
  int iterations = 0;
};

struct IdentificationResult {
  double gamma1_hat = 0.0;
  double gamma2_hat = 0.0;
  double absJ_hat = 0.0;
  // candidates[0] has J > 0, candidates[1] has J < 0.
  std::array<IdentificationCandidate, 2> candidates;
  bool permutation_note = true;
  std::size_t design_rank = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> diagnostics;
};

IdentificationResult identify(const ExperimentRecord& data, const IdentifyConfig& config = {});

nlohmann::json to_json(const IdentificationResult& result);

/// Worker cap from SPINLIE_THREADS, else hardware concurrency (at least 1).
unsigned worker_threads(unsigned requested = 0);

}  // namespace spinlie
