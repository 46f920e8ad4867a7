#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlie/operator_core.hpp"

namespace spinlie {

/// Splitting of su(3^n) by the parity of the number of su(2)-type (sigma)
/// factors in tensor words over {sigma_x, sigma_y, sigma_z} and
/// {R, Q, T, V, U, 1}. For two spins the even class is i*I (sigma (x) sigma
/// and S (x) S words) and the odd class is i*I_perp (mixed words).
struct ParityDecomposition {
  int n_spins = 0;
  OperatorSpan even_space{1};
  OperatorSpan odd_space{1};
  std::vector<std::string> even_labels;
  std::vector<std::string> odd_labels;

  std::size_t ambient_dim() const { return even_space.ambient_dim(); }
};

/// Supported range 1 <= n_spins <= 3.
ParityDecomposition build_parity_decomposition(int n_spins);
/// Cached two-spin decomposition.
const ParityDecomposition& pair_decomposition();

struct ParityProjection {
  ComplexMatrix even;
  ComplexMatrix odd;
  Complex identity_coeff;  // coefficient along 1 / sqrt(dim)
};

ParityProjection project(const ParityDecomposition& decomp, const ComplexMatrix& x);

enum class SweepMode { kExhaustive, kSampled };

struct RelationCheck {
  std::string name;       // e.g. "[o,o] in o"
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double max_forbidden_norm = 0.0;
};

struct LabelingReport {
  std::string labeling;  // which parity plays the role of I_o
  std::vector<RelationCheck> commutator_relations;
  std::vector<RelationCheck> anticommutator_relations;
  bool commutators_hold() const;
  bool anticommutators_hold() const;
};

struct CartanReport {
  int n_spins = 0;
  std::size_t even_dim = 0;
  std::size_t odd_dim = 0;
  SweepMode mode = SweepMode::kExhaustive;
  double tol = 1e-10;
  // labelings[0]: I_o = odd sigma count; labelings[1]: I_o = even sigma count.
  std::vector<LabelingReport> labelings;
  std::size_t identity_samples = 0;
  double identity_max_residual = 0.0;
};

struct CartanOptions {
  SweepMode mode = SweepMode::kExhaustive;
  std::size_t samples_per_relation = 2000;
  std::size_t identity_samples = 100;
  std::uint64_t seed = 0;
  double tol = 1e-10;
};

CartanReport verify_cartan_relations(const ParityDecomposition& decomp, const CartanOptions& opts = {});

/// Residual of [A (x) B, C (x) D] - 1/2({A,C} (x) [B,D] + [A,C] (x) {B,D}).
double tensor_bracket_identity_residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                        const ComplexMatrix& d);

}  // namespace spinlie
