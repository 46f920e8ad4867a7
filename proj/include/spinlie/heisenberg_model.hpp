#pragma once

#include <array>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "spinlie/operator_core.hpp"

namespace spinlie {

inline constexpr std::size_t kPairDim = 9;

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hermitian, unit-trace, positive semidefinite 9x9 state that is not the
/// maximally mixed state.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::VectorXd eigenvalues() const;

  /// Checks the state invariants; on failure the reason is written to `why`.
  static bool is_valid(const ComplexMatrix& mat, std::string* why = nullptr);

 private:
  ComplexMatrix mat_;
};

struct ModelParameters {
  double gamma1 = 1.0;
  double gamma2 = 2.0;
  double J12 = 0.5;
};

struct SpinPairModel {
  double gamma1 = 1.0;
  double gamma2 = 2.0;
  double J12 = 0.5;
  DensityMatrix rho0;

  ModelParameters parameters() const { return {gamma1, gamma2, J12}; }
};

using ControlTriple = std::array<double, 3>;
using Magnetization = std::array<double, 3>;

/// A = -i J12 sum_j sbar_j (x) sbar_j.
ComplexMatrix build_drift(double J12);
ComplexMatrix build_drift(const SpinPairModel& model);

/// B_v = gamma1 sbar_v (x) 1 + gamma2 1 (x) sbar_v for v = x, y, z.
std::array<ComplexMatrix, 3> build_controls(double gamma1, double gamma2);
std::array<ComplexMatrix, 3> build_controls(const SpinPairModel& model);

/// H = i (A + sum_v u_v B_v).
ComplexMatrix hamiltonian_at(const ModelParameters& params, const ControlTriple& u);
inline ComplexMatrix hamiltonian_at(const SpinPairModel& model, const ControlTriple& u) {
  return hamiltonian_at(model.parameters(), u);
}
/// Skew-Hermitian generator A + sum_v u_v B_v, so that rho' = [G, rho].
ComplexMatrix generator_at(const ModelParameters& params, const ControlTriple& u);

/// Hermitian total-spin observables J_v (x) 1 + 1 (x) J_v with J_v = -i sbar_v.
const std::array<ComplexMatrix, 3>& total_spin_observables();
/// Single-site observables J_v (x) 1 and 1 (x) J_v.
std::array<ComplexMatrix, 3> site_observables(int site);

Magnetization magnetization(const ComplexMatrix& rho);
inline Magnetization magnetization(const DensityMatrix& rho) { return magnetization(rho.matrix()); }

/// G G^dagger / Tr(G G^dagger) for G with standard complex Gaussian entries.
DensityMatrix random_density_matrix(std::uint64_t seed);

/// (1 - weight) * 1/9 + weight * rho.
DensityMatrix mix_with_identity(const DensityMatrix& rho, double weight);

/// Swaps the two tensor factors: SWAP X SWAP.
ComplexMatrix swap_sites(const ComplexMatrix& x);

/// Model JSON: {"gamma1", "gamma2", "J12", "rho0": matrix | preset}. Presets:
/// {"preset": "random", "seed", "weight" = 1} (mixed with 1/9 at 1 - weight),
/// {"preset": "thermal", "beta" = 1}.
SpinPairModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const SpinPairModel& model);

}  // namespace spinlie
