#include "spinlie/operator_core.hpp"

#include <algorithm>
#include <cmath>

namespace spinlie {
namespace {

void require_same_dim(const ComplexMatrix& x, const ComplexMatrix& y, const char* op) {
  if (x.rows() != x.cols() || y.rows() != y.cols()) {
    throw DimensionError(std::string(op) + ": operands must be square");
  }
  if (x.rows() != y.rows()) {
    throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(x.rows()) +
                         " vs " + std::to_string(y.rows()));
  }
}

double scale_of(const ComplexMatrix& x) { return std::max(1.0, x.norm()); }

}  // namespace

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

bool is_finite(const ComplexMatrix& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (!std::isfinite(x(i, j).real()) || !std::isfinite(x(i, j).imag())) return false;
    }
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).norm() <= tol * scale_of(x);
}

bool is_skew_hermitian(const ComplexMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x + x.adjoint()).norm() <= tol * scale_of(x);
}

bool is_traceless(const ComplexMatrix& x, double tol) {
  return std::abs(x.trace()) <= tol * scale_of(x);
}

double hs_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "hs_inner");
  return as_real_vector(x).dot(as_real_vector(y));
}

double hs_norm(const ComplexMatrix& x) { return x.norm(); }

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "commutator");
  ComplexMatrix xy = x * y;
  xy.noalias() -= y * x;
  return xy;
}

ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "anticommutator");
  ComplexMatrix xy = x * y;
  xy.noalias() += y * x;
  return xy;
}

ComplexMatrix tensor(const ComplexMatrix& x, const ComplexMatrix& y) {
  const Eigen::Index m = y.rows();
  const Eigen::Index p = y.cols();
  ComplexMatrix out(x.rows() * m, x.cols() * p);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * m, j * p, m, p) = x(i, j) * y;
    }
  }
  return out;
}

ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw DimensionError("tensor: empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

ComplexMatrix expm_skew(const ComplexMatrix& x) {
  if (!is_skew_hermitian(x)) throw StructureError("expm_skew: argument is not skew-Hermitian");
  // X = -iH with H = iX Hermitian, so exp(X) = V exp(-i diag(lambda)) V^dagger.
  ComplexMatrix h = kI * x;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const ComplexMatrix& v = eig.eigenvectors();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phases(k) = std::polar(1.0, -lambda(k));
  return v * phases.asDiagonal() * v.adjoint();
}

Eigen::Map<const Eigen::VectorXd> as_real_vector(const ComplexMatrix& x) {
  return {reinterpret_cast<const double*>(x.data()), 2 * x.size()};
}

ComplexMatrix from_real_vector(const Eigen::VectorXd& v, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  if (v.size() != 2 * dim * dim) throw DimensionError("from_real_vector: length mismatch");
  ComplexMatrix out(dim, dim);
  Eigen::Map<Eigen::VectorXd>(reinterpret_cast<double*>(out.data()), v.size()) = v;
  return out;
}

OperatorSpan::OperatorSpan(std::size_t ambient_dim) : n_(ambient_dim) {
  if (n_ == 0) throw DimensionError("OperatorSpan: ambient dimension must be positive");
  const auto len = static_cast<Eigen::Index>(2 * n_ * n_);
  columns_.resize(len, static_cast<Eigen::Index>(n_ * n_));
}

void OperatorSpan::check_ambient(const ComplexMatrix& x) const {
  if (x.rows() != static_cast<Eigen::Index>(n_) || x.cols() != static_cast<Eigen::Index>(n_)) {
    throw DimensionError("OperatorSpan: matrix of size " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + " in ambient dimension " +
                         std::to_string(n_));
  }
}

Eigen::VectorXd OperatorSpan::orthogonal_residual(Eigen::VectorXd v) const {
  const auto q = columns_.leftCols(static_cast<Eigen::Index>(basis_.size()));
  if (q.cols() == 0) return v;
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd c = q.transpose() * v;
    v.noalias() -= q * c;
  }
  return v;
}

bool OperatorSpan::insert(const ComplexMatrix& x, double tol) {
  check_ambient(x);
  if (!is_finite(x)) throw StructureError("OperatorSpan::insert: non-finite entries");
  if (!is_skew_hermitian(x)) throw StructureError("OperatorSpan::insert: matrix is not skew-Hermitian");
  if (basis_.size() == n_ * n_) return false;

  const double scale = std::max(1.0, x.norm());
  Eigen::VectorXd r = orthogonal_residual(as_real_vector(x));
  const double rn = r.norm();
  if (rn <= tol * scale) return false;
  r /= rn;
  columns_.col(static_cast<Eigen::Index>(basis_.size())) = r;
  basis_.push_back(from_real_vector(r, n_));
  return true;
}

Eigen::VectorXd OperatorSpan::real_coordinates(const ComplexMatrix& x) const {
  check_ambient(x);
  return columns_.leftCols(static_cast<Eigen::Index>(basis_.size())).transpose() *
         as_real_vector(x);
}

Eigen::VectorXcd OperatorSpan::coordinates(const ComplexMatrix& x) const {
  check_ambient(x);
  const auto q = columns_.leftCols(static_cast<Eigen::Index>(basis_.size()));
  const ComplexMatrix rotated = -kI * x;
  const Eigen::VectorXd re = q.transpose() * as_real_vector(x);
  const Eigen::VectorXd im = q.transpose() * as_real_vector(rotated);
  Eigen::VectorXcd out(re.size());
  for (Eigen::Index a = 0; a < re.size(); ++a) out(a) = Complex(re(a), im(a));
  return out;
}

ComplexMatrix OperatorSpan::project(const ComplexMatrix& x) const {
  const Eigen::VectorXcd c = coordinates(x);
  const auto q = columns_.leftCols(static_cast<Eigen::Index>(basis_.size()));
  const Eigen::VectorXd re = q * c.real();
  const Eigen::VectorXd im = q * c.imag();
  return from_real_vector(re, n_) + kI * from_real_vector(im, n_);
}

double OperatorSpan::residual_norm(const ComplexMatrix& x) const { return (x - project(x)).norm(); }

bool OperatorSpan::contains(const ComplexMatrix& x, double tol) const {
  return residual_norm(x) <= tol * std::max(1.0, x.norm());
}

double OperatorSpan::orthonormality_error() const {
  if (basis_.empty()) return 0.0;
  const auto q = columns_.leftCols(static_cast<Eigen::Index>(basis_.size()));
  const Eigen::MatrixXd gram = q.transpose() * q;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace spinlie
