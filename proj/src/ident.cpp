#include "spinlie/ident.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "spinlie/json_io.hpp"
#include "spinlie/su3_structure.hpp"

namespace spinlie {

namespace {

constexpr double kGridTol = 1e-9;

int samples_per_segment(const ControlSchedule& s, const MagnetizationTrace& t) {
  const std::size_t segs = s.segments.size();
  if (segs == 0 || t.size() == 0 || t.size() % segs != 0) return 0;
  return static_cast<int>(t.size() / segs);
}

}  // namespace

void ExperimentRecord::validate() const {
  if (schedules.empty()) throw std::invalid_argument("experiment: no schedules");
  if (schedules.size() != traces.size())
    throw std::invalid_argument("experiment: " + std::to_string(schedules.size()) + " schedules but " +
                                std::to_string(traces.size()) + " traces");
  for (std::size_t i = 0; i < schedules.size(); ++i) {
    const auto& s = schedules[i];
    const auto& t = traces[i];
    s.validate();
    if (t.mx.size() != t.size() || t.my.size() != t.size() || t.mz.size() != t.size())
      throw std::invalid_argument("experiment: trace " + std::to_string(i) + " has ragged columns");
    const int n = samples_per_segment(s, t);
    if (n < 1)
      throw std::invalid_argument("experiment: trace " + std::to_string(i) +
                                  " length is not a multiple of the segment count");
    double t0 = s.t_start;
    std::size_t row = 0;
    for (const auto& seg : s.segments) {
      for (int k = 1; k <= n; ++k, ++row) {
        const double expected = t0 + seg.dt * k / n;
        if (std::abs(t.times[row] - expected) > kGridTol * std::max(1.0, std::abs(expected)))
          throw std::invalid_argument("experiment: trace " + std::to_string(i) + " row " + std::to_string(row) +
                                      " is off the schedule grid");
        for (int v = 0; v < 3; ++v)
          if (!std::isfinite(t.component(v)[row]))
            throw std::invalid_argument("experiment: trace " + std::to_string(i) + " has non-finite values");
      }
      t0 += seg.dt;
    }
  }
}

std::size_t ExperimentRecord::sample_count() const {
  std::size_t n = 0;
  for (const auto& t : traces) n += 3 * t.size();
  return n;
}

ExperimentRecord simulate_experiment(const ModelParameters& params, const ComplexMatrix& rho0,
                                     const std::vector<ControlSchedule>& schedules, int samples_per_segment,
                                     double noise_sigma, std::uint64_t noise_seed) {
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("simulate_experiment: noise sigma must be >= 0");
  ExperimentRecord rec;
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);
  for (const auto& s : schedules) {
    auto trace = propagate(params, rho0, s, samples_per_segment).trace;
    if (noise_sigma > 0.0) {
      for (auto* col : {&trace.mx, &trace.my, &trace.mz})
        for (double& x : *col) x += noise(rng);
    }
    rec.schedules.push_back(s);
    rec.traces.push_back(std::move(trace));
  }
  return rec;
}

void save_experiment(const ExperimentRecord& record, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < record.schedules.size(); ++k) {
    const auto stem = std::to_string(k);
    std::ofstream js(dir / ("schedule_" + stem + ".json"));
    js << schedule_to_json(record.schedules[k]).dump(2) << '\n';
    std::ofstream csv(dir / ("trace_" + stem + ".csv"));
    write_trace_csv(csv, record.traces[k]);
    if (!js || !csv) throw std::runtime_error("save_experiment: cannot write to " + dir.string());
  }
}

ExperimentRecord load_experiment(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("experiment directory not found: " + dir.string());
  ExperimentRecord rec;
  for (std::size_t k = 0;; ++k) {
    const auto sched = dir / ("schedule_" + std::to_string(k) + ".json");
    const auto trace = dir / ("trace_" + std::to_string(k) + ".csv");
    if (!std::filesystem::exists(sched)) break;
    if (!std::filesystem::exists(trace)) throw std::invalid_argument("missing " + trace.string());
    std::ifstream js(sched);
    rec.schedules.push_back(schedule_from_json(nlohmann::json::parse(js)));
    std::ifstream csv(trace);
    rec.traces.push_back(read_trace_csv(csv));
  }
  if (rec.schedules.empty()) throw std::invalid_argument("no schedule_0.json in " + dir.string());
  rec.validate();
  return rec;
}

VandermondeResult vandermonde_distinguishability(double g1, double g2, double g1p, double g2p) {
  const std::array<double, 4> x{g1, g2, g1p, g2p};
  VandermondeResult r;
  r.det = 1.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      r.det *= x[j] - x[i];
      scale *= std::abs(x[i]) + std::abs(x[j]);
    }
  }
  r.indistinguishable = std::abs(r.det) <= 1e-10 * scale;
  return r;
}

const std::vector<ComplexMatrix>& traceless_hermitian_basis() {
  static const std::vector<ComplexMatrix> basis = [] {
    const Eigen::Index n = kPairDim;
    const double r2 = std::sqrt(0.5);
    std::vector<ComplexMatrix> out;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = j + 1; k < n; ++k) {
        ComplexMatrix s = ComplexMatrix::Zero(n, n);
        s(j, k) = s(k, j) = r2;
        ComplexMatrix a = ComplexMatrix::Zero(n, n);
        a(j, k) = Complex(0.0, -r2);
        a(k, j) = Complex(0.0, r2);
        out.push_back(std::move(s));
        out.push_back(std::move(a));
      }
    }
    for (Eigen::Index l = 1; l < n; ++l) {
      ComplexMatrix d = ComplexMatrix::Zero(n, n);
      const double norm = std::sqrt(static_cast<double>(l * (l + 1)));
      for (Eigen::Index m = 0; m < l; ++m) d(m, m) = 1.0 / norm;
      d(l, l) = -static_cast<double>(l) / norm;
      out.push_back(std::move(d));
    }
    return out;
  }();
  return basis;
}

namespace {

constexpr Eigen::Index kStateParams = kPairDim * kPairDim - 1;

// Re Tr(E_k w) for Hermitian w, in traceless_hermitian_basis() order.
template <typename Row>
void basis_coordinates(const ComplexMatrix& w, Row&& row) {
  const Eigen::Index n = kPairDim;
  const double s2 = std::sqrt(2.0);
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      row(c++) = s2 * w(j, k).real();
      row(c++) = -s2 * w(j, k).imag();
    }
  }
  double partial = 0.0;
  for (Eigen::Index l = 1; l < n; ++l) {
    partial += w(l - 1, l - 1).real();
    row(c++) = (partial - static_cast<double>(l) * w(l, l).real()) / std::sqrt(static_cast<double>(l * (l + 1)));
  }
}

struct Design {
  Eigen::MatrixXd matrix;  // rows: samples x components; columns: state coordinates
  Eigen::VectorXd data;
};

// Output is linear in rho0: M_v(t) = Tr(U^dag S_v U rho0), and the identity
// part of rho0 contributes Tr(S_v) / 9 = 0.
Design build_design(const ExperimentRecord& rec, const ModelParameters& params) {
  const auto& obs = total_spin_observables();
  Design d;
  d.matrix.resize(static_cast<Eigen::Index>(rec.sample_count()), kStateParams);
  d.data.resize(d.matrix.rows());
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < rec.schedules.size(); ++i) {
    const auto& sched = rec.schedules[i];
    const auto& trace = rec.traces[i];
    const int n = samples_per_segment(sched, trace);
    ComplexMatrix u_prev = identity(kPairDim);
    std::size_t sample = 0;
    for (const auto& seg : sched.segments) {
      const SegmentPropagator prop(generator_at(params, seg.u));
      for (int k = 1; k <= n; ++k, ++sample) {
        const ComplexMatrix u = prop.unitary(seg.dt * k / n) * u_prev;
        for (int v = 0; v < 3; ++v, ++row) {
          const ComplexMatrix w = u.adjoint() * obs[static_cast<std::size_t>(v)] * u;
          basis_coordinates(w, [&](Eigen::Index c) -> double& { return d.matrix(row, c); });
          d.data(row) = trace.component(v)[sample];
        }
      }
      u_prev = prop.unitary(seg.dt) * u_prev;
    }
  }
  return d;
}

struct LinearSolve {
  Eigen::VectorXd coeffs;
  Eigen::VectorXd residual;
  std::size_t rank = 0;
};

LinearSolve solve_state(const Design& d) {
  // The threshold must be set before compute(): the Z factor is built for
  // the rank in effect at that time.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(d.matrix.rows(), d.matrix.cols());
  cod.setThreshold(1e-10);
  cod.compute(d.matrix);
  LinearSolve s;
  s.coeffs = cod.solve(d.data);
  s.residual = d.data - d.matrix * s.coeffs;
  s.rank = static_cast<std::size_t>(cod.rank());
  return s;
}

ComplexMatrix state_from_coeffs(const Eigen::VectorXd& c) {
  const auto& basis = traceless_hermitian_basis();
  ComplexMatrix rho = identity(kPairDim) / static_cast<double>(kPairDim);
  for (Eigen::Index k = 0; k < c.size(); ++k) rho += c(k) * basis[static_cast<std::size_t>(k)];
  return rho;
}

double rms(const Eigen::VectorXd& r) { return r.size() ? std::sqrt(r.squaredNorm() / r.size()) : 0.0; }

}  // namespace

FitEvaluation evaluate_fit(const ExperimentRecord& data, const ModelParameters& params) {
  data.validate();
  const auto d = build_design(data, params);
  const auto s = solve_state(d);
  return {rms(s.residual), state_from_coeffs(s.coeffs), s.rank};
}

namespace {

// [J_w, sbar_v] = sum_x C[w][v][x] J_x with J = -i sbar.
std::array<std::array<std::array<double, 3>, 3>, 3> spin_structure() {
  const auto sbar = su3_basis().sbar();
  std::array<std::array<std::array<double, 3>, 3>, 3> c{};
  for (std::size_t w = 0; w < 3; ++w)
    for (std::size_t v = 0; v < 3; ++v) {
      const ComplexMatrix br = commutator(-kI * sbar[w], sbar[v]);
      for (std::size_t x = 0; x < 3; ++x) {
        const ComplexMatrix jx = -kI * sbar[x];
        c[w][v][x] = ((jx * br).trace() / (jx * jx).trace()).real();
      }
    }
  return c;
}

Eigen::Matrix3d control_coupling(const ControlTriple& u) {
  static const auto c = spin_structure();
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  for (std::size_t w = 0; w < 3; ++w)
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t v = 0; v < 3; ++v) k(w, x) += u[v] * c[w][v][x];
  return k;
}

struct EarlyDerivatives {
  Eigen::Vector3d value, first, second;
};

// Least-squares polynomial through the first-segment samples, evaluated at
// the segment start.
EarlyDerivatives early_derivatives(const ControlSchedule& s, const MagnetizationTrace& t) {
  const int n = samples_per_segment(s, t);
  const double dt = s.segments.front().dt;
  const int degree = std::min(n - 1, 10);
  if (degree < 3) throw IdentificationError("moment estimate: need at least 4 samples in the first segment");
  // Scaled abscissa x = 2 tau / dt - 1 keeps the Vandermonde system tame.
  Eigen::MatrixXd a(n, degree + 1);
  for (int k = 0; k < n; ++k) {
    const double x = 2.0 * (k + 1) / n - 1.0;
    double p = 1.0;
    for (int d = 0; d <= degree; ++d, p *= x) a(k, d) = p;
  }
  const auto qr = a.colPivHouseholderQr();
  EarlyDerivatives out;
  for (int v = 0; v < 3; ++v) {
    Eigen::VectorXd y(n);
    for (int k = 0; k < n; ++k) y(k) = t.component(v)[static_cast<std::size_t>(k)];
    const Eigen::VectorXd c = qr.solve(y);
    // At x = -1: value, d/dx, d2/dx2; chain rule dx/dtau = 2 / dt.
    double f0 = 0.0, f1 = 0.0, f2 = 0.0;
    for (int d = 0; d <= degree; ++d) {
      const double sign = (d % 2 == 0) ? 1.0 : -1.0;
      f0 += c(d) * sign;
      if (d >= 1) f1 += c(d) * d * -sign;
      if (d >= 2) f2 += c(d) * d * (d - 1) * sign;
    }
    out.value(v) = f0;
    out.first(v) = f1 * 2.0 / dt;
    out.second(v) = f2 * 4.0 / (dt * dt);
  }
  return out;
}

constexpr double kMomentConditionLimit = 1e8;

}  // namespace

// With p = g1 m1 + g2 m2, q = g1^2 m1 + g2^2 m2 and M0 = m1 + m2 (m_i the
// single-site spin expectations at t_start):
//   M'  = K(u) p
//   M'' = K(u)^2 q + K(u) g,  g independent of u
//   q - (g1 + g2) p + g1 g2 M0 = 0.
MomentEstimate moment_gamma_estimate(const ExperimentRecord& data) {
  data.validate();
  const std::size_t ns = data.schedules.size();
  if (ns < 3) throw IdentificationError("moment estimate: needs at least 3 schedules with distinct first-segment controls");

  Eigen::MatrixXd a1(3 * ns, 3), a2(3 * ns, 6);
  Eigen::VectorXd b1(3 * ns), b2(3 * ns);
  Eigen::Vector3d m0 = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < ns; ++i) {
    const auto der = early_derivatives(data.schedules[i], data.traces[i]);
    const Eigen::Matrix3d k = control_coupling(data.schedules[i].segments.front().u);
    const auto r = static_cast<Eigen::Index>(3 * i);
    a1.block<3, 3>(r, 0) = k;
    a2.block<3, 3>(r, 0) = k * k;
    a2.block<3, 3>(r, 3) = k;
    b1.segment<3>(r) = der.first;
    b2.segment<3>(r) = der.second;
    m0 += der.value / static_cast<double>(ns);
  }

  auto checked_solve = [](const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const char* what) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(cond < kMomentConditionLimit))
      throw IdentificationError(std::string("moment estimate: ") + what +
                                " system is degenerate; use schedules whose first-segment controls span three directions");
    return std::make_pair(Eigen::VectorXd(svd.solve(b)), cond);
  };
  const auto [p, cond1] = checked_solve(a1, b1, "first-order");
  const auto [qg, cond2] = checked_solve(a2, b2, "second-order");
  const Eigen::Vector3d q = qg.head<3>();

  Eigen::Matrix<double, 3, 2> m;
  m.col(0) = -p;
  m.col(1) = m0;
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cond = sv(1) > 0.0 ? sv(0) / sv(1) : INFINITY;
  if (!(cond < 1e6))
    throw IdentificationError(
        "moment estimate: moment system is degenerate (gamma1 = gamma2 or vanishing initial magnetization); "
        "gammas are not separable from early-time data");
  const Eigen::Vector2d sp = svd.solve(Eigen::Vector3d(-q));
  const double s = sp(0), prod = sp(1);
  double disc = s * s - 4.0 * prod;
  if (disc < -0.05 * s * s)
    throw IdentificationError("moment estimate: complex gamma roots; data too noisy or schedules too coarse");
  disc = std::max(disc, 0.0);
  MomentEstimate est;
  est.gamma1 = 0.5 * (s - std::sqrt(disc));
  est.gamma2 = 0.5 * (s + std::sqrt(disc));
  est.condition = std::max({cond, cond1, cond2});
  return est;
}

unsigned worker_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPINLIE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Variable projection: parameters (gamma1, gamma2, log|J|) with J's sign
// fixed; the state is eliminated by linear least squares.
struct ProjectedResidual : Eigen::DenseFunctor<double> {
  const ExperimentRecord* data;
  double sign;

  ProjectedResidual(const ExperimentRecord* d, double s)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(d->sample_count())), data(d), sign(s) {}

  static ModelParameters unpack(const Eigen::VectorXd& x, double sign) {
    return {x(0), x(1), sign * std::exp(x(2))};
  }

  int operator()(const InputType& x, ValueType& fvec) const {
    if (!x.allFinite() || std::abs(x(2)) > 30.0) {
      fvec.setConstant(values(), 1e3);
      return 0;
    }
    fvec = solve_state(build_design(*data, unpack(x, sign))).residual;
    return 0;
  }
};

struct StartOutcome {
  std::size_t start_index = 0;
  Eigen::VectorXd x;
  double residual = INFINITY;
  int iterations = 0;
  bool converged = false;
  std::string status;
};

const char* status_name(Eigen::LevenbergMarquardtSpace::Status s) {
  using namespace Eigen::LevenbergMarquardtSpace;
  switch (s) {
    case RelativeReductionTooSmall: return "relative reduction below ftol";
    case RelativeErrorTooSmall: return "relative step below xtol";
    case RelativeErrorAndReductionTooSmall: return "step and reduction below tolerance";
    case CosinusTooSmall: return "gradient orthogonal to residual";
    case TooManyFunctionEvaluation: return "evaluation budget exhausted";
    case FtolTooSmall: return "ftol too small for further progress";
    case XtolTooSmall: return "xtol too small for further progress";
    case GtolTooSmall: return "gtol too small for further progress";
    case UserAsked: return "stopped";
    case NotStarted: return "not started";
    case Running: return "running";
    case ImproperInputParameters: return "improper input parameters";
  }
  return "unknown";
}

StartOutcome run_start(const ExperimentRecord& data, double sign, const Eigen::Vector3d& x0, std::size_t index,
                       int max_iterations) {
  ProjectedResidual f(&data, sign);
  Eigen::NumericalDiff<ProjectedResidual, Eigen::Central> nd(f);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ProjectedResidual, Eigen::Central>> lm(nd);
  lm.setMaxfev(max_iterations);
  lm.setFtol(1e-15);
  lm.setXtol(1e-14);
  Eigen::VectorXd x = x0;
  const auto status = lm.minimize(x);

  StartOutcome out;
  out.start_index = index;
  out.x = x;
  out.iterations = static_cast<int>(lm.iterations());
  out.status = status_name(status);
  using namespace Eigen::LevenbergMarquardtSpace;
  out.converged = x.allFinite() && status != TooManyFunctionEvaluation && status != ImproperInputParameters;
  if (x.allFinite()) {
    Eigen::VectorXd r(f.values());
    f(x, r);
    out.residual = rms(r);
  }
  return out;
}

IdentificationCandidate make_candidate(const ExperimentRecord& data, const StartOutcome& best, double sign,
                                       std::size_t* rank) {
  ModelParameters p = ProjectedResidual::unpack(best.x, sign);
  const auto fit = evaluate_fit(data, p);
  IdentificationCandidate c;
  c.J_signed = p.J12;
  c.gamma1 = p.gamma1;
  c.gamma2 = p.gamma2;
  c.rho0_hat = fit.rho0;
  // Output is invariant under exchanging the sites together with the gammas.
  if (c.gamma1 > c.gamma2) {
    std::swap(c.gamma1, c.gamma2);
    c.rho0_hat = swap_sites(c.rho0_hat);
  }
  c.rho0_hat = 0.5 * (c.rho0_hat + c.rho0_hat.adjoint()).eval();
  c.min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(c.rho0_hat, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  c.physical = c.min_eigenvalue >= -1e-10;
  c.residual = fit.residual;
  c.start_index = best.start_index;
  c.iterations = best.iterations;
  *rank = fit.design_rank;
  return c;
}

bool all_controls_zero(const ExperimentRecord& data) {
  for (const auto& s : data.schedules)
    for (const auto& seg : s.segments)
      for (double u : seg.u)
        if (u != 0.0) return false;
  return true;
}

}  // namespace

IdentificationResult identify(const ExperimentRecord& data, const IdentifyConfig& config) {
  data.validate();
  if (config.starts < 1) throw std::invalid_argument("identify: starts must be >= 1");
  if (!(config.gamma_range_min < config.gamma_range_max) || !(0.0 < config.j_range_min) ||
      !(config.j_range_min < config.j_range_max))
    throw std::invalid_argument("identify: invalid search ranges");

  IdentificationResult result;
  if (all_controls_zero(data))
    result.warnings.push_back(
        "all controls are zero: magnetization is constant in time, so J and rho0 are underdetermined");

  // Starting points shared by both signs: the moment estimate (with |J| chosen
  // by a coarse scan) first, then seeded random draws.
  std::vector<Eigen::Vector3d> starts;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> gamma_draw(config.gamma_range_min, config.gamma_range_max);
  std::uniform_real_distribution<double> logj_draw(std::log(config.j_range_min), std::log(config.j_range_max));
  try {
    const auto est = moment_gamma_estimate(data);
    double best_j = std::sqrt(config.j_range_min * config.j_range_max);
    double best_r = INFINITY;
    for (int k = 0; k < 12; ++k) {
      const double j = config.j_range_min * std::pow(config.j_range_max / config.j_range_min, k / 11.0);
      const double r = evaluate_fit(data, {est.gamma1, est.gamma2, j}).residual;
      if (r < best_r) best_r = r, best_j = j;
    }
    starts.emplace_back(est.gamma1, est.gamma2, std::log(best_j));
    std::ostringstream os;
    os << "moment estimate gamma = (" << est.gamma1 << ", " << est.gamma2 << ")";
    result.diagnostics.push_back(os.str());
  } catch (const IdentificationError& e) {
    result.diagnostics.push_back(std::string("moment estimate unavailable: ") + e.what());
  }
  while (starts.size() < static_cast<std::size_t>(config.starts)) {
    const double g1 = gamma_draw(rng);
    const double g2 = gamma_draw(rng);
    starts.emplace_back(std::min(g1, g2), std::max(g1, g2), logj_draw(rng));
  }

  struct Task {
    double sign;
    std::size_t start;
  };
  std::vector<Task> tasks;
  for (double sign : {1.0, -1.0})
    for (std::size_t i = 0; i < starts.size(); ++i) tasks.push_back({sign, i});
  std::vector<StartOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        outcomes[t] = run_start(data, tasks[t].sign, starts[tasks[t].start], tasks[t].start, config.max_iterations);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::min<unsigned>(worker_threads(config.threads), static_cast<unsigned>(tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  std::size_t rank = 0;
  for (int s = 0; s < 2; ++s) {
    const double sign = s == 0 ? 1.0 : -1.0;
    const StartOutcome* best = nullptr;
    std::ostringstream diag;
    diag << (s == 0 ? "J > 0" : "J < 0") << " starts:";
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (tasks[t].sign != sign) continue;
      const auto& o = outcomes[t];
      diag << " [" << o.start_index << ": " << o.status << ", rms " << o.residual << "]";
      if (!o.converged) continue;
      // Ordered by residual, ties by start index (tasks are in start order).
      if (!best || o.residual < best->residual) best = &o;
    }
    result.diagnostics.push_back(diag.str());
    if (!best) {
      std::ostringstream os;
      os << "identify: no optimizer start converged for " << (s == 0 ? "J > 0" : "J < 0") << "; " << diag.str();
      throw IdentificationError(os.str());
    }
    result.candidates[static_cast<std::size_t>(s)] = make_candidate(data, *best, sign, &rank);
  }

  const auto& lead = result.candidates[0].residual <= result.candidates[1].residual ? result.candidates[0]
                                                                                      : result.candidates[1];
  result.gamma1_hat = lead.gamma1;
  result.gamma2_hat = lead.gamma2;
  result.absJ_hat = std::abs(lead.J_signed);
  result.design_rank = rank;
  if (rank < static_cast<std::size_t>(kStateParams)) {
    result.warnings.push_back("design rank " + std::to_string(rank) + " < " + std::to_string(kStateParams) +
                              ": rho0 is underdetermined by these schedules");
  }
  const double gscale = std::max({std::abs(result.gamma1_hat), std::abs(result.gamma2_hat), 1e-300});
  if (std::abs(result.gamma2_hat - result.gamma1_hat) <= 1e-3 * gscale || result.absJ_hat <= 1e-3) {
    result.warnings.push_back(
        "estimated parameters are in a non-controllable regime (gamma1 = gamma2 or J = 0); identifiability is not "
        "guaranteed");
  }
  for (const auto& c : result.candidates) {
    if (!c.physical) {
      std::ostringstream os;
      os << "candidate with J = " << c.J_signed << " has an unphysical rho0 (min eigenvalue " << c.min_eigenvalue
         << ")";
      result.warnings.push_back(os.str());
    }
  }
  return result;
}

nlohmann::json to_json(const IdentificationResult& r) {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"J_signed", c.J_signed},
                     {"gamma1", c.gamma1},
                     {"gamma2", c.gamma2},
                     {"residual", c.residual},
                     {"physical", c.physical},
                     {"min_eigenvalue", c.min_eigenvalue},
                     {"start_index", c.start_index},
                     {"iterations", c.iterations},
                     {"rho0_hat", matrix_to_json(c.rho0_hat)}});
  }
  return {{"gamma1_hat", r.gamma1_hat},
          {"gamma2_hat", r.gamma2_hat},
          {"absJ_hat", r.absJ_hat},
          {"candidates", cands},
          {"permutation_note", r.permutation_note},
          {"design_rank", r.design_rank},
          {"warnings", r.warnings},
          {"diagnostics", r.diagnostics}};
}

}  // namespace spinlie
