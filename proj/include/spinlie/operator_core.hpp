#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinlie {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Default relative tolerance for linear-dependence decisions in OperatorSpan.
inline constexpr double kSpanTolerance = 1e-9;
/// Default absolute tolerance for the Hermitian / skew-Hermitian predicates.
inline constexpr double kStructureTolerance = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ComplexMatrix identity(std::size_t n);

bool is_finite(const ComplexMatrix& x);
bool is_hermitian(const ComplexMatrix& x, double tol = kStructureTolerance);
bool is_skew_hermitian(const ComplexMatrix& x, double tol = kStructureTolerance);
bool is_traceless(const ComplexMatrix& x, double tol = kStructureTolerance);

/// Hilbert-Schmidt inner product Re Tr(X^dagger Y).
double hs_inner(const ComplexMatrix& x, const ComplexMatrix& y);
double hs_norm(const ComplexMatrix& x);

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y);

/// Kronecker product, (X (x) Y)[i*m + k, j*m + l] = X[i,j] * Y[k,l] with m = dim(Y).
ComplexMatrix tensor(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors);

/// exp(X) for skew-Hermitian X, via the eigendecomposition of the Hermitian iX.
ComplexMatrix expm_skew(const ComplexMatrix& x);

/// Real vector space of skew-Hermitian n x n matrices, kept as a
/// Hilbert-Schmidt orthonormal basis. Rank decisions use two-pass
/// Gram-Schmidt residuals.
class OperatorSpan {
 public:
  explicit OperatorSpan(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  const ComplexMatrix& operator[](std::size_t i) const { return basis_[i]; }

  /// Adds the component of X orthogonal to the span when its norm exceeds
  /// tol * max(1, |X|). Returns whether the span grew.
  bool insert(const ComplexMatrix& x, double tol = kSpanTolerance);

  /// Real coordinates <E_a, X> of the skew-Hermitian part of X.
  Eigen::VectorXd real_coordinates(const ComplexMatrix& x) const;
  /// Complex coordinates Tr(E_a^dagger X); valid for any X since the
  /// skew-Hermitian basis is also orthonormal under the complex form.
  Eigen::VectorXcd coordinates(const ComplexMatrix& x) const;

  /// Orthogonal projection onto the complex span of the basis.
  ComplexMatrix project(const ComplexMatrix& x) const;
  /// Frobenius norm of X minus its projection.
  double residual_norm(const ComplexMatrix& x) const;
  bool contains(const ComplexMatrix& x, double tol = 1e-10) const;

  /// Maximum deviation of the Gram matrix from the identity.
  double orthonormality_error() const;

 private:
  void check_ambient(const ComplexMatrix& x) const;
  Eigen::VectorXd orthogonal_residual(Eigen::VectorXd v) const;

  std::size_t n_;
  std::vector<ComplexMatrix> basis_;
  // Column a holds basis_[a] flattened to 2 n^2 reals (re, im interleaved).
  Eigen::MatrixXd columns_;
};

/// View of a matrix as a real vector of length 2 n^2, isometric for hs_inner.
Eigen::Map<const Eigen::VectorXd> as_real_vector(const ComplexMatrix& x);
ComplexMatrix from_real_vector(const Eigen::VectorXd& v, std::size_t n);

}  // namespace spinlie
