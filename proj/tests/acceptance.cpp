// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spinlie/cartan_parity.hpp"
#include "spinlie/dynamics.hpp"
#include "spinlie/ident.hpp"
#include "spinlie/lie_engine.hpp"
#include "spinlie/su3_structure.hpp"

namespace {

using namespace spinlie;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<ControlSchedule> seeded_schedules(std::uint64_t base, int count) {
  std::vector<ControlSchedule> out;
  for (int k = 0; k < count; ++k) out.push_back(random_schedule(base + static_cast<std::uint64_t>(k)));
  return out;
}

// Largest eigenvalue drift of rho under propagation, accumulated across criteria.
double g_spectrum_drift = 0.0;

void track_spectrum(const ModelParameters& p, const ComplexMatrix& rho, const ControlSchedule& s) {
  const ComplexMatrix fin = propagate(p, rho, s).rho_final;
  using Solver = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;
  const Eigen::VectorXd before = Solver(rho, Eigen::EigenvaluesOnly).eigenvalues();
  const Eigen::VectorXd after = Solver(0.5 * (fin + fin.adjoint()), Eigen::EigenvaluesOnly).eigenvalues();
  g_spectrum_drift = std::max(g_spectrum_drift, (before - after).cwiseAbs().maxCoeff());
}

void structure_tables(Outcome& o) {
  const auto t0 = Clock::now();
  const auto reports = verify_structure_tables(1e-12);
  const double elapsed = seconds_since(t0);

  std::ifstream in(std::string(SPINLIE_ORACLE_DIR) + "/su3_mismatches.json");
  const auto oracle = nlohmann::json::parse(in);
  std::set<std::vector<std::string>> expected;
  for (const auto& m : oracle.at("mismatches")) expected.insert(m.get<std::vector<std::string>>());

  std::size_t cells = 0;
  double matched_max = 0.0, expansion_max = 0.0, flipped_max = 0.0;
  std::set<std::vector<std::string>> mismatched;
  for (const auto& r : reports) {
    for (const auto& e : r.entries) {
      ++cells;
      expansion_max = std::max(expansion_max, e.expansion_residual);
      if (e.pass) {
        matched_max = std::max(matched_max, e.residual);
      } else {
        mismatched.insert({r.table_id, e.lhs, e.rhs});
        flipped_max = std::max(flipped_max, e.flipped_uv_residual);
      }
    }
  }
  const auto& b = su3_basis();
  const double hj = std::max({(commutator(b.sigma_x, b.sigma_y) - 2.0 * b.sigma_z).norm(),
                              (commutator(b.sigma_y, b.sigma_z) - b.sigma_x).norm(),
                              (commutator(b.sigma_z, b.sigma_x) - b.sigma_y).norm()});
  const double casimir = (casimir_spin1() - 2.0 * identity(3)).norm();

  o.detail << cells << " cells, " << mismatched.size() << " mismatched (reported with recomputed coefficients, "
           << "all consistent with V and U negated, residual " << flipped_max << "); matched max residual "
           << matched_max << "; expansion residual " << expansion_max << "; sigma relations " << hj
           << "; Casimir residual " << casimir << "; " << elapsed << " s";
  o.require(cells == 67, "cell count");
  o.require(matched_max <= 1e-12 && expansion_max <= 1e-12, "recomputed residual");
  o.require(mismatched == expected, "mismatch set differs from the frozen oracle");
  o.require(flipped_max <= 1e-12, "mismatch not explained by the V, U sign convention");
  o.require(hj <= 1e-12, "sigma relations");
  o.require(casimir == 0.0, "Casimir not exactly 2");
  o.require(elapsed < 1.0, "runtime");
}

void controllability_dimensions(Outcome& o) {
  struct Case {
    double g1, g2, j;
    std::size_t dim;
    bool expect_warning;
  };
  const Case cases[] = {{1, 2, 0.5, 80, false}, {1, 3, 1, 80, false}, {2, 1, -0.7, 80, false},
                        {1, 1, 1, 4, false},    {1, 1, 0, 3, false},  {1, 2, 0, 6, true}};
  double slowest = 0.0;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const auto r = controllability_verdict(c.g1, c.g2, c.j);
    const double elapsed = seconds_since(t0);
    slowest = std::max(slowest, elapsed);
    o.detail << " (" << c.g1 << "," << c.g2 << "," << c.j << ")=" << r.dimension;
    std::ostringstream what;
    what << "dimension for (" << c.g1 << ", " << c.g2 << ", " << c.j << ")";
    o.require(r.dimension == c.dim, what.str());
    if (c.j == 0.0) {
      const bool flagged = !uncoupled_dimension_notes(c.g1, c.g2, c.j, r.dimension).empty();
      o.require(flagged == c.expect_warning, "J = 0 discrepancy flag");
    }
    o.require(elapsed < 30.0, "runtime");
  }
  o.detail << "; J = 0 with distinct gammas flagged against the su(2) claim; slowest case " << slowest << " s";
}

void observability(Outcome& o) {
  for (const auto& p : {ModelParameters{1, 2, 0.5}, ModelParameters{1, 3, 1}, ModelParameters{2, 1, -0.7}}) {
    const auto r = observability_verdict(p.gamma1, p.gamma2, p.J12);
    o.require(r.space_dim == 80 && r.observable, "controllable case not observable");
  }
  const ModelParameters degenerate{1, 1, 1};
  const auto r = observability_verdict(degenerate.gamma1, degenerate.gamma2, degenerate.J12);
  o.detail << "controllable cases dim 80; gamma1 = gamma2 dim " << r.space_dim << " with complement "
           << r.vperp_basis.dimension();
  o.require(r.space_dim < 80 && r.vperp_basis.dimension() == 80 - r.space_dim, "degenerate dimension");
  if (r.vperp_basis.dimension() == 0) return;

  const ComplexMatrix rho = mix_with_identity(random_density_matrix(3), 0.5).matrix();
  const ComplexMatrix x = -kI * r.vperp_basis[0];  // Hermitian, traceless
  const double lmin = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(rho).eigenvalues().minCoeff();
  const double xop = Eigen::JacobiSVD<ComplexMatrix>(x).singularValues()(0);
  const double eps = 0.5 * lmin / xop;
  const ComplexMatrix rho_b = rho + eps * x;
  const auto eq = verify_equivalence(degenerate, rho, degenerate, rho_b, seeded_schedules(500, 5));
  for (const auto& s : seeded_schedules(500, 5)) track_spectrum(degenerate, rho_b, s);
  o.detail << "; witness |rho_b - rho| = " << (rho_b - rho).norm() << ", trace deviation " << eq.max_deviation;
  o.require(DensityMatrix::is_valid(rho_b), "witness state not physical");
  o.require((rho_b - rho).norm() > 1e-3, "witness states too close");
  o.require(eq.max_deviation <= 1e-8, "witness traces differ");
}

void cartan(Outcome& o) {
  const auto t0 = Clock::now();
  const auto& d2 = pair_decomposition();
  o.require(d2.even_space.dimension() == 44 && d2.odd_space.dimension() == 36, "dimensions");
  CartanOptions exhaustive;
  exhaustive.mode = SweepMode::kExhaustive;
  exhaustive.tol = 1e-10;
  exhaustive.identity_samples = 100;
  const auto r2 = verify_cartan_relations(d2, exhaustive);

  CartanOptions sampled;
  sampled.mode = SweepMode::kSampled;
  sampled.samples_per_relation = 2000;
  sampled.identity_samples = 100;
  sampled.tol = 1e-10;
  const auto r3 = verify_cartan_relations(build_parity_decomposition(3), sampled);
  const double elapsed = seconds_since(t0);

  auto violations = [](const LabelingReport& l) {
    std::size_t v = 0;
    for (const auto& r : l.commutator_relations) v += r.violations;
    for (const auto& r : l.anticommutator_relations) v += r.violations;
    return v;
  };
  const double identity = std::max(r2.identity_max_residual, r3.identity_max_residual);
  o.detail << "dims 44 + 36; n=2 exhaustive violations " << violations(r2.labelings[0]) << "; n=3 sampled (2000 per "
           << "relation) violations " << violations(r3.labelings[0]) << "; swapped labeling violations "
           << violations(r2.labelings[1]) << "; tensor identity max residual " << identity << " on "
           << r3.identity_samples << " quadruples; " << elapsed << " s";
  o.require(violations(r2.labelings[0]) == 0, "n=2 violations");
  o.require(violations(r3.labelings[0]) == 0, "n=3 violations");
  o.require(r3.identity_samples == 100 && identity <= 1e-12, "tensor identity");
  o.require(elapsed < 60.0, "runtime");
}

void equivalence(Outcome& o) {
  double worst = 0.0;
  int distinguishable = 0;
  double smallest_control = INFINITY;
  for (std::uint64_t i = 0; i < 20; ++i) {
    std::mt19937_64 rng(1000 + i);
    std::uniform_real_distribution<double> gamma(0.5, 3.0), coupling(0.2, 2.0);
    double g1 = gamma(rng), g2 = gamma(rng);
    while (std::abs(g1 - g2) < 0.1) g2 = gamma(rng);
    const double j = (rng() % 2 == 0 ? 1.0 : -1.0) * coupling(rng);
    const ModelParameters p{g1, g2, j};
    o.require(controllability_verdict(g1, g2, j).controllable, "model not controllable");

    const DensityMatrix rho = partner_safe_state(random_density_matrix(i), p);
    const SpinPairModel model{g1, g2, j, rho};
    const SpinPairModel partner = equivalent_partner(model);
    const auto schedules = seeded_schedules(100 * i, 10);
    const auto eq = verify_equivalence(model, partner, schedules);
    worst = std::max(worst, eq.max_deviation);

    const auto ctl = verify_equivalence(p, rho.matrix(), {g1, g2, -j}, rho.matrix(), schedules);
    smallest_control = std::min(smallest_control, ctl.max_deviation);
    if (ctl.max_deviation > 1e-3) ++distinguishable;
    track_spectrum(p, rho.matrix(), schedules.front());
  }
  o.detail << "max partner deviation " << worst << " over 20 models x 10 schedules; unflipped control exceeds 1e-3 in "
           << distinguishable << "/20 (smallest " << smallest_control << ")";
  o.require(worst <= 1e-8, "partner deviation");
  o.require(distinguishable >= 19, "unflipped control");
}

void identification(Outcome& o) {
  const auto t0 = Clock::now();
  const ModelParameters truth{1.0, 2.0, 0.5};
  const ComplexMatrix rho = random_density_matrix(7).matrix();
  const auto data = simulate_experiment(truth, rho, seeded_schedules(0, 5));
  const auto r = identify(data);
  const double elapsed = seconds_since(t0);

  const auto& plus = r.candidates[0];
  const auto& minus = r.candidates[1];
  const auto flipped = partner_construction({plus.gamma1, plus.gamma2, plus.J_signed}, plus.rho0_hat);
  const double flip_gap = (flipped.rho0 - minus.rho0_hat).norm();
  const double truth_gap = (plus.rho0_hat - rho).norm();
  o.detail << "gamma (" << r.gamma1_hat << ", " << r.gamma2_hat << "), |J| " << r.absJ_hat << "; candidates J = "
           << plus.J_signed << " (rms " << plus.residual << "), J = " << minus.J_signed << " (rms " << minus.residual
           << "); flip gap " << flip_gap << ", truth gap " << truth_gap << "; " << elapsed << " s";
  for (const auto& c : r.candidates) {
    o.require(std::abs(c.gamma1 - 1.0) <= 1e-3 && std::abs(c.gamma2 - 2.0) <= 2e-3, "gamma estimate");
    o.require(std::abs(std::abs(c.J_signed) - 0.5) <= 1e-3, "|J| estimate");
    o.require(c.residual <= 1e-8, "candidate residual");
  }
  o.require(plus.J_signed > 0 && minus.J_signed < 0, "candidate signs");
  o.require(flip_gap <= 1e-6, "candidates not related by the flip");
  o.require(truth_gap <= 1e-6, "state estimate");
  o.require(elapsed < 300.0, "runtime");
}

void vandermonde(Outcome& o) {
  const auto base = vandermonde_distinguishability(1, 2, 3, 4);
  o.require(std::abs(base.det - 12.0) <= 1e-12 && !base.indistinguishable, "det(1,2,3,4)");

  // "Zero iff two arguments coincide" is checked on det itself, exactly.
  // The tolerance flag is also required on every planted coincidence; on
  // distinct tuples it may fire for tight clusters, which is reported.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  std::size_t distinct_zero = 0, near_flagged = 0, missed = 0, planted = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::array<double, 4> x = {u(rng), u(rng), u(rng), u(rng)};
    const auto d = vandermonde_distinguishability(x[0], x[1], x[2], x[3]);
    if (d.det == 0.0) ++distinct_zero;
    if (d.indistinguishable) ++near_flagged;
    // Plant a coincidence between one pair of slots.
    const std::size_t i = rng() % 4;
    std::size_t k = rng() % 3;
    if (k >= i) ++k;
    x[k] = x[i];
    const auto r = vandermonde_distinguishability(x[0], x[1], x[2], x[3]);
    ++planted;
    if (!r.indistinguishable || r.det != 0.0) ++missed;
  }
  o.detail << "det(1,2,3,4) = " << base.det << "; 10000 distinct tuples with det = 0: " << distinct_zero << " ("
           << near_flagged << " tight clusters flagged by the scaled tolerance); " << planted
           << " planted coincidences with det != 0 or unflagged: " << missed;
  o.require(distinct_zero == 0, "distinct tuple with zero determinant");
  o.require(missed == 0, "coincidence missed");
}

void dynamics_identities(Outcome& o) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> coupling(-2.0, 2.0);
  double worst_adjoint = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix g(9, 9);
    for (Eigen::Index c = 0; c < 9; ++c)
      for (Eigen::Index r = 0; r < 9; ++r) g(r, c) = Complex(normal(rng), normal(rng));
    ComplexMatrix f = 0.5 * (g - g.adjoint());
    f -= f.trace() / 9.0 * identity(9);
    const ComplexMatrix rho = random_density_matrix(5000 + static_cast<std::uint64_t>(trial)).matrix();
    const auto r = verify_adjoint_identity(build_drift(coupling(rng)), f, rho);
    worst_adjoint = std::max(worst_adjoint, r.deviation);
  }

  double worst_ratio_error = 0.0, worst_gap = 0.0;
  for (std::uint64_t i = 0; i < 3; ++i) {
    const ModelParameters p{1.0 + 0.5 * static_cast<double>(i), 2.5, 0.5 - 0.3 * static_cast<double>(i)};
    const ComplexMatrix rho = random_density_matrix(40 + i).matrix();
    const ControlSchedule s = random_schedule(60 + i, 3);
    const auto coarse = verify_split_dynamics(p, rho, s, 1e-4, 8);
    const auto fine = verify_split_dynamics(p, rho, s, 5e-5, 8);
    worst_ratio_error = std::max(worst_ratio_error, std::abs(coarse.max_residual() / fine.max_residual() - 2.0) / 2.0);
    worst_gap = std::max({worst_gap, coarse.partner_rho1_gap, coarse.partner_rho2_gap});
    track_spectrum(p, rho, s);
  }
  o.detail << "adjoint identity max deviation " << worst_adjoint << " over 50 pairs; split residual halving error "
           << 100.0 * worst_ratio_error << "%; partner split gap " << worst_gap << "; spectrum drift across suites "
           << g_spectrum_drift;
  o.require(worst_adjoint <= 1e-6, "adjoint identity");
  o.require(worst_ratio_error <= 0.2, "split residual halving");
  o.require(worst_gap <= 1e-8, "partner split gap");
  o.require(g_spectrum_drift <= 1e-10, "spectrum");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"structure tables", structure_tables},
      {"controllability dimensions", controllability_dimensions},
      {"observability", observability},
      {"parity splitting", cartan},
      {"equivalent partners", equivalence},
      {"identification", identification},
      {"Vandermonde test", vandermonde},
      {"dynamics identities", dynamics_identities},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index << " (" << name << "): " << o.detail.str()
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
