#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spinlie/json_io.hpp"
#include "spinlie/operator_core.hpp"
#include "spinlie/su3_structure.hpp"
#include "test_util.hpp"

namespace spinlie {
namespace {

using testing::random_complex;
using testing::random_hermitian;
using testing::random_skew;

// Truncated Taylor series with scaling and squaring; independent of the
// eigendecomposition path.
ComplexMatrix taylor_expm(const ComplexMatrix& x) {
  int squarings = 0;
  double norm = x.norm();
  while (norm > 0.25) norm *= 0.5, ++squarings;
  const ComplexMatrix y = x / std::pow(2.0, squarings);
  ComplexMatrix term = identity(static_cast<std::size_t>(x.rows()));
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

TEST(Commutator, PrintedExamples) {
  const auto& b = su3_basis();
  // Read as [row, column] the cell gives [Q, R] = -2 sigma_z; [R, Q] is its negative.
  EXPECT_LE((commutator(b.Q, b.R) + 2.0 * b.sigma_z).norm(), 1e-12);
  EXPECT_LE((commutator(b.R, b.Q) - 2.0 * b.sigma_z).norm(), 1e-12);
  EXPECT_LE(commutator(b.sigma_z, b.T).norm(), 1e-12);
  std::mt19937_64 rng(1);
  const ComplexMatrix x = random_complex(5, rng);
  EXPECT_EQ(commutator(x, x).norm(), 0.0);
}

TEST(Commutator, DimensionMismatchThrows) {
  EXPECT_THROW(commutator(identity(2), identity(3)), DimensionError);
  EXPECT_THROW(anticommutator(identity(3), identity(9)), DimensionError);
}

TEST(Anticommutator, PrintedExamples) {
  const auto& b = su3_basis();
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected.diagonal() << Complex(0, 2), 0.0, Complex(0, 2);
  const ComplexMatrix rr = -kI * anticommutator(b.R, b.R);
  EXPECT_LE((rr - expected).norm(), 1e-12);
  EXPECT_LE((rr - (4.0 / 3.0 * kI * b.one + 2.0 / 3.0 * b.T)).norm(), 1e-12);
  EXPECT_LE((-kI * anticommutator(b.sigma_y, b.sigma_x) - 2.0 * b.Q).norm(), 1e-12);
  EXPECT_EQ(anticommutator(b.R, ComplexMatrix::Zero(3, 3)).norm(), 0.0);
}

TEST(Tensor, BlockConventionAndMixedProduct) {
  EXPECT_EQ((tensor(identity(3), identity(3)) - identity(9)).norm(), 0.0);
  std::mt19937_64 rng(2);
  const ComplexMatrix x = random_complex(3, rng), y = random_complex(3, rng);
  const ComplexMatrix w = random_complex(3, rng), z = random_complex(3, rng);
  const ComplexMatrix k = tensor(x, y);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) EXPECT_EQ(k(i * 3 + a, j * 3 + c), x(i, j) * y(a, c));
  EXPECT_LE((tensor(x, y) * tensor(w, z) - tensor(x * w, y * z)).norm(), 1e-12);
  EXPECT_LE((tensor({x, y, w}) - tensor(tensor(x, y), w)).norm(), 1e-12);
}

TEST(Tensor, SpinSumCollapsesToCommutator) {
  const auto sbar = su3_basis().sbar();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix m = random_complex(3, rng), n = random_complex(3, rng);
    ComplexMatrix sum = ComplexMatrix::Zero(9, 9);
    for (const auto& s : sbar) sum += commutator(tensor(m, -kI * s), tensor(n, -kI * s));
    EXPECT_LE((sum - 2.0 * tensor(commutator(m, n), identity(3))).norm(), 1e-12);
  }
}

TEST(ExpmSkew, Examples) {
  EXPECT_LE((expm_skew(ComplexMatrix::Zero(4, 4)) - identity(4)).norm(), 1e-15);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << -kI * std::numbers::pi, 0.0, kI * std::numbers::pi;
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected.diagonal() << -1.0, 1.0, -1.0;
  EXPECT_LE((expm_skew(d) - expected).norm(), 1e-12);
}

TEST(ExpmSkew, UnitaryInverseAndAgreesWithTaylor) {
  std::mt19937_64 rng(4);
  for (std::size_t n : {3u, 9u, 27u}) {
    const ComplexMatrix x = random_skew(n, rng);
    const ComplexMatrix u = expm_skew(x);
    EXPECT_LE((u * expm_skew(-x) - identity(n)).norm(), 1e-10);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(u).singularValues();
    EXPECT_LE((sv.array() - 1.0).abs().maxCoeff(), 1e-10);
    EXPECT_LE((u - taylor_expm(x)).norm(), 1e-9 * std::max(1.0, x.norm()));
  }
}

TEST(ExpmSkew, RejectsNonSkew) {
  EXPECT_THROW(expm_skew(identity(3)), StructureError);
}

TEST(Predicates, StructureChecks) {
  std::mt19937_64 rng(5);
  const ComplexMatrix h = random_hermitian(4, rng);
  EXPECT_TRUE(is_hermitian(h));
  EXPECT_FALSE(is_skew_hermitian(h));
  EXPECT_TRUE(is_skew_hermitian(kI * h));
  EXPECT_TRUE(is_traceless(su3_basis().T));
  EXPECT_FALSE(is_traceless(identity(3)));
  ComplexMatrix bad = identity(2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(is_finite(bad));
}

TEST(HilbertSchmidt, InnerProductProperties) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix x = random_complex(4, rng), y = random_complex(4, rng), z = random_complex(4, rng);
    EXPECT_NEAR(hs_inner(x, y), hs_inner(y, x), 1e-12);
    EXPECT_NEAR(hs_inner(2.0 * x - 3.0 * z, y), 2.0 * hs_inner(x, y) - 3.0 * hs_inner(z, y), 1e-10);
    EXPECT_GT(hs_inner(x, x), 0.0);
    EXPECT_NEAR(hs_inner(x, y), (x.adjoint() * y).trace().real(), 1e-10);
  }
}

TEST(Brackets, PreserveStructure) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_TRUE(is_skew_hermitian(commutator(random_skew(5, rng), random_skew(5, rng)), 1e-12));
    EXPECT_TRUE(is_hermitian(anticommutator(random_hermitian(5, rng), random_hermitian(5, rng)), 1e-12));
  }
}

TEST(OperatorSpan, InsertExamples) {
  const auto& b = su3_basis();
  OperatorSpan span(3);
  EXPECT_TRUE(span.insert(b.sigma_x));
  EXPECT_EQ(span.dimension(), 1u);
  EXPECT_FALSE(span.insert(2.0 * span[0]));
  EXPECT_EQ(span.dimension(), 1u);

  OperatorSpan eight(3);
  for (const auto& m : {b.sigma_x, b.sigma_y, b.sigma_z, b.R, b.Q, b.T, b.V, b.U}) {
    const ComplexMatrix h = kI * m;  // Hermitian
    eight.insert(ComplexMatrix(-kI * h / h.norm()));
  }
  EXPECT_EQ(eight.dimension(), 8u);
  EXPECT_EQ(testing::real_rank({b.sigma_x, b.sigma_y, b.sigma_z, b.R, b.Q, b.T, b.V, b.U}), 8u);
  EXPECT_LE(eight.orthonormality_error(), 1e-10);
}

TEST(OperatorSpan, RejectsNonSkewAndWrongDimension) {
  OperatorSpan span(3);
  EXPECT_THROW(span.insert(identity(3)), StructureError);
  EXPECT_THROW(span.insert(ComplexMatrix::Zero(2, 2)), DimensionError);
}

TEST(OperatorSpan, IdempotentOnCombinations) {
  std::mt19937_64 rng(8);
  OperatorSpan span(4);
  for (int k = 0; k < 6; ++k) span.insert(testing::random_skew_traceless(4, rng));
  const std::size_t dim = span.dimension();
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix combo = ComplexMatrix::Zero(4, 4);
    std::normal_distribution<double> normal;
    for (const auto& e : span.basis()) combo += normal(rng) * e;
    EXPECT_FALSE(span.insert(combo));
  }
  EXPECT_EQ(span.dimension(), dim);
}

TEST(OperatorSpan, OrthonormalAndBoundedByTraceless) {
  std::mt19937_64 rng(9);
  OperatorSpan span(3);
  for (int k = 0; k < 40; ++k) span.insert(testing::random_skew_traceless(3, rng));
  EXPECT_EQ(span.dimension(), 8u);
  EXPECT_LE(span.orthonormality_error(), 1e-10);
}

TEST(OperatorSpan, ProjectionAndCoordinates) {
  std::mt19937_64 rng(10);
  OperatorSpan span(3);
  for (int k = 0; k < 3; ++k) span.insert(testing::random_skew_traceless(3, rng));
  const ComplexMatrix x = random_complex(3, rng);
  const ComplexMatrix p = span.project(x);
  EXPECT_LE((span.project(p) - p).norm(), 1e-12);
  const auto c = span.coordinates(x);
  ComplexMatrix rebuilt = ComplexMatrix::Zero(3, 3);
  for (std::size_t a = 0; a < span.dimension(); ++a) rebuilt += c(static_cast<Eigen::Index>(a)) * span[a];
  EXPECT_LE((rebuilt - p).norm(), 1e-12);
  EXPECT_TRUE(span.contains(span[1]));
  EXPECT_NEAR(span.residual_norm(x), (x - p).norm(), 1e-12);
}

TEST(JsonIo, RoundTripAndValidation) {
  std::mt19937_64 rng(11);
  const ComplexMatrix x = random_complex(3, rng);
  EXPECT_EQ((matrix_from_json(matrix_to_json(x)) - x).norm(), 0.0);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse("[[[1,0],[0,0]]]")), std::invalid_argument);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse("[[[1,0,3]]]")), std::invalid_argument);
}

}  // namespace
}  // namespace spinlie
