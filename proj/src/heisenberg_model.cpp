#include "spinlie/heisenberg_model.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "spinlie/json_io.hpp"
#include "spinlie/su3_structure.hpp"

namespace spinlie {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kScalarTol = 1e-8;

}  // namespace

bool DensityMatrix::is_valid(const ComplexMatrix& mat, std::string* why) {
  auto fail = [why](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (mat.rows() != static_cast<Eigen::Index>(kPairDim) || mat.cols() != static_cast<Eigen::Index>(kPairDim))
    return fail("density matrix must be 9x9");
  if (!is_finite(mat)) return fail("density matrix has non-finite entries");
  if ((mat - mat.adjoint()).norm() > kStateTol) return fail("density matrix is not Hermitian");
  if (std::abs(mat.trace() - Complex(1.0, 0.0)) > kStateTol) return fail("density matrix trace is not 1");
  const ComplexMatrix herm = 0.5 * (mat + mat.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(herm, Eigen::EigenvaluesOnly)
                             .eigenvalues()
                             .minCoeff();
  if (min_eig < -kStateTol) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    return fail(os.str());
  }
  const ComplexMatrix traceless = mat - identity(kPairDim) / static_cast<double>(kPairDim);
  if (traceless.norm() <= kScalarTol) return fail("density matrix is scalar (maximally mixed)");
  return true;
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  std::string why;
  if (!is_valid(mat_, &why)) throw StateError(why);
  mat_ = 0.5 * (mat_ + mat_.adjoint()).eval();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(mat_, Eigen::EigenvaluesOnly).eigenvalues();
}

ComplexMatrix build_drift(double J12) {
  const auto& b = su3_basis();
  ComplexMatrix sum = ComplexMatrix::Zero(kPairDim, kPairDim);
  for (const auto& s : b.sbar()) sum += tensor(s, s);
  return -kI * J12 * sum;
}

ComplexMatrix build_drift(const SpinPairModel& model) { return build_drift(model.J12); }

std::array<ComplexMatrix, 3> build_controls(double gamma1, double gamma2) {
  const auto& b = su3_basis();
  const auto sbar = b.sbar();
  std::array<ComplexMatrix, 3> out;
  for (std::size_t v = 0; v < 3; ++v)
    out[v] = gamma1 * tensor(sbar[v], b.one) + gamma2 * tensor(b.one, sbar[v]);
  return out;
}

std::array<ComplexMatrix, 3> build_controls(const SpinPairModel& model) {
  return build_controls(model.gamma1, model.gamma2);
}

ComplexMatrix generator_at(const ModelParameters& params, const ControlTriple& u) {
  ComplexMatrix gen = build_drift(params.J12);
  const auto controls = build_controls(params.gamma1, params.gamma2);
  for (std::size_t v = 0; v < 3; ++v) {
    if (!std::isfinite(u[v])) throw std::invalid_argument("generator_at: non-finite control value");
    gen += u[v] * controls[v];
  }
  return gen;
}

ComplexMatrix hamiltonian_at(const ModelParameters& params, const ControlTriple& u) {
  return kI * generator_at(params, u);
}

std::array<ComplexMatrix, 3> site_observables(int site) {
  if (site != 0 && site != 1) throw std::invalid_argument("site_observables: site must be 0 or 1");
  const auto& b = su3_basis();
  const auto sbar = b.sbar();
  std::array<ComplexMatrix, 3> out;
  for (std::size_t v = 0; v < 3; ++v) {
    const ComplexMatrix j = -kI * sbar[v];
    out[v] = site == 0 ? tensor(j, b.one) : tensor(b.one, j);
  }
  return out;
}

const std::array<ComplexMatrix, 3>& total_spin_observables() {
  static const std::array<ComplexMatrix, 3> obs = [] {
    const auto a = site_observables(0);
    const auto b = site_observables(1);
    return std::array<ComplexMatrix, 3>{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  }();
  return obs;
}

Magnetization magnetization(const ComplexMatrix& rho) {
  const auto& obs = total_spin_observables();
  Magnetization m{};
  // Tr(S rho) = sum_ij S_ij rho_ji.
  for (std::size_t v = 0; v < 3; ++v) m[v] = obs[v].cwiseProduct(rho.transpose()).sum().real();
  return m;
}

DensityMatrix random_density_matrix(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(kPairDim, kPairDim);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = Complex(normal(rng), normal(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix mix_with_identity(const DensityMatrix& rho, double weight) {
  return DensityMatrix((1.0 - weight) * identity(kPairDim) / static_cast<double>(kPairDim) +
                       weight * rho.matrix());
}

ComplexMatrix swap_sites(const ComplexMatrix& x) {
  if (x.rows() != static_cast<Eigen::Index>(kPairDim)) throw DimensionError("swap_sites: expected 9x9");
  ComplexMatrix out(kPairDim, kPairDim);
  auto sw = [](Eigen::Index k) { return (k % 3) * 3 + k / 3; };
  for (Eigen::Index i = 0; i < 9; ++i)
    for (Eigen::Index j = 0; j < 9; ++j) out(sw(i), sw(j)) = x(i, j);
  return out;
}

namespace {

DensityMatrix thermal_state(double gamma1, double gamma2, double J12, double beta) {
  // Gibbs state of the exchange plus a unit field along z.
  ComplexMatrix h = kI * (build_drift(J12) + build_controls(gamma1, gamma2)[2]);
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  Eigen::VectorXd w = (-beta * eig.eigenvalues().array()).exp();
  w /= w.sum();
  const ComplexMatrix& v = eig.eigenvectors();
  return DensityMatrix(v * w.cast<Complex>().asDiagonal() * v.adjoint());
}

}  // namespace

SpinPairModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model JSON: expected an object");
  for (const char* key : {"gamma1", "gamma2", "J12", "rho0"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("model JSON: missing key '") + key + "'");
  const double g1 = j.at("gamma1").get<double>();
  const double g2 = j.at("gamma2").get<double>();
  const double J = j.at("J12").get<double>();
  if (!std::isfinite(g1) || !std::isfinite(g2) || !std::isfinite(J))
    throw std::invalid_argument("model JSON: parameters must be finite");

  const auto& r = j.at("rho0");
  if (r.is_object()) {
    const std::string preset = r.at("preset").get<std::string>();
    if (preset == "random") {
      const auto rho = random_density_matrix(r.value("seed", std::uint64_t{0}));
      const double weight = r.value("weight", 1.0);
      if (!(weight > 0.0 && weight <= 1.0)) throw std::invalid_argument("model JSON: weight must lie in (0, 1]");
      return {g1, g2, J, weight == 1.0 ? rho : mix_with_identity(rho, weight)};
    }
    if (preset == "thermal") {
      return {g1, g2, J, thermal_state(g1, g2, J, r.value("beta", 1.0))};
    }
    throw std::invalid_argument("model JSON: unknown rho0 preset '" + preset + "'");
  }
  return {g1, g2, J, DensityMatrix(matrix_from_json(r))};
}

nlohmann::json model_to_json(const SpinPairModel& model) {
  return {{"gamma1", model.gamma1},
          {"gamma2", model.gamma2},
          {"J12", model.J12},
          {"rho0", matrix_to_json(model.rho0.matrix())}};
}

}  // namespace spinlie
