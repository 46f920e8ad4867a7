#include "spinlie/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace spinlie {

double ControlSchedule::duration() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.dt;
  return total;
}

void ControlSchedule::validate() const {
  if (!std::isfinite(t_start)) throw std::invalid_argument("schedule: t_start must be finite");
  if (segments.empty()) throw std::invalid_argument("schedule: no segments");
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto& s = segments[k];
    if (!std::isfinite(s.dt) || s.dt <= 0.0)
      throw std::invalid_argument("schedule: segment " + std::to_string(k) + " has non-positive duration");
    for (double u : s.u)
      if (!std::isfinite(u)) throw std::invalid_argument("schedule: segment " + std::to_string(k) + " has non-finite control");
  }
}

ControlSchedule schedule_from_json(const nlohmann::json& j) {
  ControlSchedule s;
  s.t_start = j.value("t_start", 0.0);
  if (!j.contains("segments") || !j.at("segments").is_array())
    throw std::invalid_argument("schedule JSON: missing 'segments' array");
  for (const auto& seg : j.at("segments")) {
    const auto& u = seg.at("u");
    if (!u.is_array() || u.size() != 3) throw std::invalid_argument("schedule JSON: 'u' must have three entries");
    s.segments.push_back({seg.at("dt").get<double>(), {u[0].get<double>(), u[1].get<double>(), u[2].get<double>()}});
  }
  s.validate();
  return s;
}

nlohmann::json schedule_to_json(const ControlSchedule& s) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& seg : s.segments) segs.push_back({{"dt", seg.dt}, {"u", {seg.u[0], seg.u[1], seg.u[2]}}});
  return {{"t_start", s.t_start}, {"segments", segs}};
}

ControlSchedule random_schedule(std::uint64_t seed, int segments, double amplitude, double dt_min, double dt_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dt(dt_min, dt_max);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  ControlSchedule s;
  for (int k = 0; k < segments; ++k) {
    ControlSegment seg;
    seg.dt = dt(rng);
    for (double& c : seg.u) c = u(rng);
    s.segments.push_back(seg);
  }
  return s;
}

void write_trace_csv(std::ostream& os, const MagnetizationTrace& trace) {
  const auto old_precision = os.precision();
  os << "t,mx,my,mz\n" << std::setprecision(17);
  for (std::size_t k = 0; k < trace.size(); ++k)
    os << trace.times[k] << ',' << trace.mx[k] << ',' << trace.my[k] << ',' << trace.mz[k] << '\n';
  os.precision(old_precision);
}

MagnetizationTrace read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,mx,my,mz", 0) != 0)
    throw std::invalid_argument("trace CSV: expected header 't,mx,my,mz'");
  MagnetizationTrace trace;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::array<double, 4> v{};
    char comma = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      if (c > 0 && (!(ls >> comma) || comma != ','))
        throw std::invalid_argument("trace CSV: malformed row " + std::to_string(row));
      if (!(ls >> v[c])) throw std::invalid_argument("trace CSV: malformed row " + std::to_string(row));
    }
    trace.times.push_back(v[0]);
    trace.mx.push_back(v[1]);
    trace.my.push_back(v[2]);
    trace.mz.push_back(v[3]);
  }
  return trace;
}

SegmentPropagator::SegmentPropagator(const ComplexMatrix& generator) {
  if (!is_skew_hermitian(generator)) throw StructureError("SegmentPropagator: generator is not skew-Hermitian");
  ComplexMatrix h = kI * generator;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  vectors_ = eig.eigenvectors();
  energies_ = eig.eigenvalues();
}

ComplexMatrix SegmentPropagator::unitary(double tau) const {
  // exp(G tau) = exp(-i H tau) with H = iG.
  Eigen::VectorXcd phases(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) phases(k) = std::polar(1.0, -energies_(k) * tau);
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

ComplexMatrix SegmentPropagator::evolve(const ComplexMatrix& rho, double tau) const {
  const ComplexMatrix u = unitary(tau);
  return u * rho * u.adjoint();
}

namespace {

template <typename Visitor>
ComplexMatrix walk_samples(const ModelParameters& params, const ComplexMatrix& rho0, const ControlSchedule& schedule,
                           int samples_per_segment, Visitor&& visit) {
  schedule.validate();
  if (samples_per_segment < 1) throw std::invalid_argument("propagate: samples_per_segment must be >= 1");
  ComplexMatrix rho = rho0;
  double t0 = schedule.t_start;
  for (const auto& seg : schedule.segments) {
    const SegmentPropagator prop(generator_at(params, seg.u));
    for (int k = 1; k <= samples_per_segment; ++k) {
      const double tau = seg.dt * k / samples_per_segment;
      visit(t0 + tau, prop.evolve(rho, tau));
    }
    rho = prop.evolve(rho, seg.dt);
    t0 += seg.dt;
  }
  return rho;
}

}  // namespace

Propagation propagate(const ModelParameters& params, const ComplexMatrix& rho0, const ControlSchedule& schedule,
                      int samples_per_segment) {
  Propagation out;
  auto& tr = out.trace;
  out.rho_final = walk_samples(params, rho0, schedule, samples_per_segment, [&](double t, const ComplexMatrix& rho) {
    const auto m = magnetization(rho);
    tr.times.push_back(t);
    tr.mx.push_back(m[0]);
    tr.my.push_back(m[1]);
    tr.mz.push_back(m[2]);
  });
  return out;
}

StatePropagation propagate(const SpinPairModel& model, const ControlSchedule& schedule, int samples_per_segment) {
  auto p = propagate(model.parameters(), model.rho0.matrix(), schedule, samples_per_segment);
  return {std::move(p.trace), DensityMatrix(0.5 * (p.rho_final + p.rho_final.adjoint()))};
}

PartnerConstruction partner_construction(const ModelParameters& params, const ComplexMatrix& rho0,
                                         const ParityDecomposition& decomp) {
  const double n = static_cast<double>(rho0.rows());
  const ComplexMatrix id = identity(static_cast<std::size_t>(rho0.rows()));
  const ComplexMatrix traceless = rho0 - rho0.trace() / n * id;
  const auto parts = project(decomp, traceless);

  PartnerConstruction out;
  out.params = {params.gamma1, params.gamma2, -params.J12};
  // odd class = I_perp (kept), even class = I (flipped).
  out.rho0 = rho0.trace() / n * id + parts.odd - parts.even;
  out.rho0 = 0.5 * (out.rho0 + out.rho0.adjoint()).eval();
  out.min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(out.rho0, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  out.physical = out.min_eigenvalue >= -1e-10;
  return out;
}

SpinPairModel equivalent_partner(const SpinPairModel& model, const ParityDecomposition& decomp) {
  const auto p = partner_construction(model.parameters(), model.rho0.matrix(), decomp);
  if (!p.physical) {
    std::ostringstream os;
    os << "flipped initial state is not positive semidefinite (min eigenvalue " << p.min_eigenvalue
       << "); the partner exists algebraically but not as a physical state for this rho0";
    throw UnphysicalPartnerError(os.str(), p.min_eigenvalue);
  }
  return {p.params.gamma1, p.params.gamma2, p.params.J12, DensityMatrix(p.rho0)};
}

DensityMatrix partner_safe_state(const DensityMatrix& rho, const ModelParameters& params, double start_weight,
                                 const ParityDecomposition& decomp) {
  if (!(start_weight > 0.0 && start_weight <= 1.0))
    throw std::invalid_argument("partner_safe_state: start_weight must lie in (0, 1]");
  // The flipped traceless part scales with the weight, so halving terminates.
  for (double w = start_weight; w > 1e-6; w *= 0.5) {
    DensityMatrix mixed = mix_with_identity(rho, w);
    if (partner_construction(params, mixed.matrix(), decomp).physical) return mixed;
  }
  throw std::logic_error("partner_safe_state: no admissible weight");
}

EquivalenceReport verify_equivalence(const ModelParameters& pa, const ComplexMatrix& rho_a,
                                     const ModelParameters& pb, const ComplexMatrix& rho_b,
                                     const std::vector<ControlSchedule>& schedules, int samples_per_segment) {
  if (schedules.empty()) throw std::invalid_argument("verify_equivalence: no schedules");
  EquivalenceReport r;
  for (const auto& s : schedules) {
    const auto ta = propagate(pa, rho_a, s, samples_per_segment).trace;
    const auto tb = propagate(pb, rho_b, s, samples_per_segment).trace;
    double worst = 0.0;
    for (int v = 0; v < 3; ++v) {
      const auto& ca = ta.component(v);
      const auto& cb = tb.component(v);
      for (std::size_t k = 0; k < ca.size(); ++k) worst = std::max(worst, std::abs(ca[k] - cb[k]));
    }
    r.per_schedule.push_back(worst);
    r.max_deviation = std::max(r.max_deviation, worst);
  }
  r.pass = r.max_deviation <= kEquivalenceTol;
  return r;
}

EquivalenceReport verify_equivalence(const SpinPairModel& a, const SpinPairModel& b,
                                     const std::vector<ControlSchedule>& schedules, int samples_per_segment) {
  return verify_equivalence(a.parameters(), a.rho0.matrix(), b.parameters(), b.rho0.matrix(), schedules,
                            samples_per_segment);
}

SplitDynamicsReport verify_split_dynamics(const ModelParameters& params, const ComplexMatrix& rho0,
                                          const ControlSchedule& schedule, double fd_step, int points_per_segment,
                                          const ParityDecomposition& decomp) {
  schedule.validate();
  if (decomp.n_spins != 2) throw std::invalid_argument("verify_split_dynamics: needs the two-spin decomposition");
  if (points_per_segment < 1) throw std::invalid_argument("verify_split_dynamics: points_per_segment must be >= 1");

  const auto partner = partner_construction(params, rho0, decomp);
  const ComplexMatrix drift = build_drift(params.J12);
  const auto controls = build_controls(params.gamma1, params.gamma2);

  SplitDynamicsReport r;
  r.fd_step = fd_step;
  ComplexMatrix rho = rho0;
  ComplexMatrix rho_p = partner.rho0;
  for (const auto& seg : schedule.segments) {
    const double spacing = seg.dt / points_per_segment;
    if (fd_step <= 0.0 || fd_step > spacing * (1.0 + 1e-12))
      throw std::invalid_argument("verify_split_dynamics: fd_step must lie in (0, dt / points_per_segment]");
    ComplexMatrix b = ComplexMatrix::Zero(kPairDim, kPairDim);
    for (std::size_t v = 0; v < 3; ++v) b += seg.u[v] * controls[v];
    const SegmentPropagator prop(drift + b);
    const SegmentPropagator prop_p(-drift + b);

    for (int k = 0; k < points_per_segment; ++k) {
      const double tau = spacing * k;
      const auto now = project(decomp, prop.evolve(rho, tau));
      const auto later = project(decomp, prop.evolve(rho, tau + fd_step));
      const ComplexMatrix d1 = (later.odd - now.odd) / fd_step;
      const ComplexMatrix d2 = (later.even - now.even) / fd_step;
      const ComplexMatrix rhs1 = commutator(b, now.odd) + commutator(drift, now.even);
      const ComplexMatrix rhs2 = commutator(drift, now.odd) + commutator(b, now.even);
      r.residual_rho1 = std::max(r.residual_rho1, (d1 - rhs1).norm());
      r.residual_rho2 = std::max(r.residual_rho2, (d2 - rhs2).norm());

      const auto now_p = project(decomp, prop_p.evolve(rho_p, tau));
      r.partner_rho1_gap = std::max(r.partner_rho1_gap, (now.odd - now_p.odd).norm());
      r.partner_rho2_gap = std::max(r.partner_rho2_gap, (now.even + now_p.even).norm());
      ++r.points;
    }
    rho = prop.evolve(rho, seg.dt);
    rho_p = prop_p.evolve(rho_p, seg.dt);
  }
  return r;
}

AdjointIdentityReport verify_adjoint_identity(const ComplexMatrix& drift, const ComplexMatrix& f,
                                              const ComplexMatrix& rho, double step) {
  if (f.rows() != rho.rows() || drift.rows() != rho.rows())
    throw DimensionError("verify_adjoint_identity: dimension mismatch");
  const SegmentPropagator prop(drift);
  auto g = [&](double t) { return (f * prop.evolve(rho, t)).trace(); };
  AdjointIdentityReport r;
  r.finite_difference = (g(step) - g(-step)) / (2.0 * step);
  r.bracket_trace = (commutator(f, drift) * rho).trace();
  r.deviation = std::abs(r.finite_difference - r.bracket_trace);
  r.pass = r.deviation <= 1e-6;
  return r;
}

}  // namespace spinlie
