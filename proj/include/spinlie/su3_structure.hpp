#pragma once

#include <array>
#include <string>
#include <vector>

#include "spinlie/operator_core.hpp"

namespace spinlie {

/// Named 3x3 constants: the su(2) triple sigma_{x,y,z}, its complement
/// R, Q, T, V, U in u(3), and the spin-1 matrices sbar_{x,y,z}.
struct Su3Basis {
  ComplexMatrix sigma_x, sigma_y, sigma_z;
  ComplexMatrix R, Q, T, V, U;
  ComplexMatrix sbar_x, sbar_y, sbar_z;
  ComplexMatrix one;

  std::array<ComplexMatrix, 3> sigma() const { return {sigma_x, sigma_y, sigma_z}; }
  std::array<ComplexMatrix, 3> sbar() const { return {sbar_x, sbar_y, sbar_z}; }
  /// R, Q, T, V, U in that order.
  std::array<ComplexMatrix, 5> complement() const { return {R, Q, T, V, U}; }
};

const Su3Basis& su3_basis();
Su3Basis build_su3_basis();

/// Labels of the expansion basis used in reports: sigma_x ... U, i1.
const std::array<std::string, 9>& expansion_labels();
/// The nine matrices {sigma_x, sigma_y, sigma_z, R, Q, T, V, U, i*1}.
std::array<ComplexMatrix, 9> expansion_basis();
/// Coefficients of X in the (orthogonal, not normalized) expansion basis.
std::array<Complex, 9> expand(const ComplexMatrix& x);

struct TableEntry {
  std::string lhs;
  std::string rhs;
  std::string expected;  // printed combination, e.g. "-2 sigma_z"
  double residual = 0.0;
  bool pass = true;
  std::array<Complex, 9> recomputed{};  // coefficients of the computed value
  double expansion_residual = 0.0;      // |computed - sum recomputed_k e_k|
  // Diagnostic: residual of the same cell with V and U both negated.
  double flipped_uv_residual = 0.0;
};

struct TableReport {
  std::string table_id;
  std::vector<TableEntry> entries;
  double max_residual = 0.0;
  bool pass(double tol = 1e-12) const { return max_residual <= tol; }
};

/// Sum over j of (-i sbar_j)^2; equals 2 * 1 for the spin-1 representation.
ComplexMatrix casimir_spin1();

/// Recomputes every printed commutator / anticommutator table cell.
std::vector<TableReport> verify_structure_tables(double tol = 1e-12);

struct SubspaceRelation {
  std::string name;
  std::size_t computed_dim = 0;
  std::size_t claimed_dim = 0;
  double max_residual = 0.0;  // mutual containment residual
  bool holds = false;
};

struct SubspaceReport {
  std::vector<SubspaceRelation> relations;
  bool all_hold() const;
};

SubspaceReport verify_subspace_relations(double tol = 1e-10);

}  // namespace spinlie
