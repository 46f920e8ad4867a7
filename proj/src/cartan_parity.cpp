#include "spinlie/cartan_parity.hpp"

#include <cmath>
#include <random>

#include "spinlie/su3_structure.hpp"

namespace spinlie {
namespace {

struct SiteElement {
  std::string label;
  ComplexMatrix hermitian;
  bool sigma_type;
};

std::vector<SiteElement> site_basis() {
  const auto& b = su3_basis();
  return {{"sigma_x", kI * b.sigma_x, true}, {"sigma_y", kI * b.sigma_y, true}, {"sigma_z", kI * b.sigma_z, true},
          {"R", kI * b.R, false},            {"Q", kI * b.Q, false},            {"T", kI * b.T, false},
          {"V", kI * b.V, false},            {"U", kI * b.U, false},            {"1", b.one, false}};
}

}  // namespace

ParityDecomposition build_parity_decomposition(int n_spins) {
  if (n_spins < 1 || n_spins > 3)
    throw std::invalid_argument("build_parity_decomposition: n_spins must be in [1, 3], got " +
                                std::to_string(n_spins));
  const auto site = site_basis();
  std::size_t dim = 1;
  for (int k = 0; k < n_spins; ++k) dim *= 3;

  ParityDecomposition d;
  d.n_spins = n_spins;
  d.even_space = OperatorSpan(dim);
  d.odd_space = OperatorSpan(dim);

  std::vector<std::size_t> word(static_cast<std::size_t>(n_spins), 0);
  const std::size_t words = static_cast<std::size_t>(std::pow(site.size(), n_spins));
  for (std::size_t w = 0; w < words; ++w) {
    std::size_t rem = w;
    for (int k = n_spins - 1; k >= 0; --k) {
      word[static_cast<std::size_t>(k)] = rem % site.size();
      rem /= site.size();
    }
    int sigma_count = 0;
    bool all_identity = true;
    std::string label;
    std::vector<ComplexMatrix> factors;
    for (std::size_t idx : word) {
      sigma_count += site[idx].sigma_type ? 1 : 0;
      all_identity = all_identity && idx == site.size() - 1;
      if (!label.empty()) label += "(x)";
      label += site[idx].label;
      factors.push_back(site[idx].hermitian);
    }
    if (all_identity) continue;
    const ComplexMatrix skew = kI * tensor(factors);
    const bool even = sigma_count % 2 == 0;
    OperatorSpan& target = even ? d.even_space : d.odd_space;
    if (target.insert(skew)) (even ? d.even_labels : d.odd_labels).push_back(std::move(label));
  }
  return d;
}

const ParityDecomposition& pair_decomposition() {
  static const ParityDecomposition d = build_parity_decomposition(2);
  return d;
}

ParityProjection project(const ParityDecomposition& decomp, const ComplexMatrix& x) {
  const std::size_t n = decomp.ambient_dim();
  if (x.rows() != static_cast<Eigen::Index>(n) || x.cols() != static_cast<Eigen::Index>(n))
    throw DimensionError("project: matrix dimension does not match the decomposition");
  return {decomp.even_space.project(x), decomp.odd_space.project(x), x.trace() / std::sqrt(static_cast<double>(n))};
}

bool LabelingReport::commutators_hold() const {
  for (const auto& r : commutator_relations)
    if (r.violations != 0) return false;
  return true;
}

bool LabelingReport::anticommutators_hold() const {
  for (const auto& r : anticommutator_relations)
    if (r.violations != 0) return false;
  return true;
}

double tensor_bracket_identity_residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                        const ComplexMatrix& d) {
  const ComplexMatrix lhs = commutator(tensor(a, b), tensor(c, d));
  const ComplexMatrix rhs =
      0.5 * (tensor(anticommutator(a, c), commutator(b, d)) + tensor(commutator(a, c), anticommutator(b, d)));
  return (lhs - rhs).norm();
}

namespace {

enum class Op { kCommutator, kAnticommutator };

struct Relation {
  const char* name;
  Op op;
  bool left_is_o;
  bool right_is_o;
  bool result_is_o;  // allowed class
};

// Relations stated for I_o / I_e.
constexpr Relation kRelations[] = {
    {"[o,o] in o", Op::kCommutator, true, true, true},
    {"[o,e] in e", Op::kCommutator, true, false, false},
    {"[e,e] in o", Op::kCommutator, false, false, true},
    {"{o,o} in e", Op::kAnticommutator, true, true, false},
    {"{o,e} in o", Op::kAnticommutator, true, false, true},
    {"{e,e} in e", Op::kAnticommutator, false, false, false},
};

RelationCheck check_relation(const Relation& rel, const OperatorSpan& o, const OperatorSpan& e,
                             const CartanOptions& opts, std::mt19937_64& rng) {
  const OperatorSpan& left = rel.left_is_o ? o : e;
  const OperatorSpan& right = rel.right_is_o ? o : e;
  const OperatorSpan& forbidden = rel.result_is_o ? e : o;

  RelationCheck out;
  out.name = rel.name;
  auto test = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
    const ComplexMatrix z = rel.op == Op::kCommutator ? commutator(x, y) : anticommutator(x, y);
    const double leak = forbidden.coordinates(z).norm();
    ++out.pairs;
    out.max_forbidden_norm = std::max(out.max_forbidden_norm, leak);
    if (leak > opts.tol) ++out.violations;
  };

  const bool same_class = &left == &right;
  if (opts.mode == SweepMode::kExhaustive) {
    for (std::size_t i = 0; i < left.dimension(); ++i) {
      // Brackets are (anti)symmetric, so unordered pairs suffice within one class.
      for (std::size_t j = same_class ? i : 0; j < right.dimension(); ++j) test(left[i], right[j]);
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick_l(0, left.dimension() - 1);
    std::uniform_int_distribution<std::size_t> pick_r(0, right.dimension() - 1);
    for (std::size_t s = 0; s < opts.samples_per_relation; ++s) {
      const std::size_t i = pick_l(rng);
      const std::size_t j = pick_r(rng);
      test(left[i], right[j]);
    }
  }
  return out;
}

LabelingReport check_labeling(std::string name, const OperatorSpan& o, const OperatorSpan& e,
                              const CartanOptions& opts) {
  LabelingReport rep;
  rep.labeling = std::move(name);
  std::mt19937_64 rng(opts.seed);
  for (const auto& rel : kRelations) {
    auto check = check_relation(rel, o, e, opts, rng);
    (rel.op == Op::kCommutator ? rep.commutator_relations : rep.anticommutator_relations).push_back(std::move(check));
  }
  return rep;
}

ComplexMatrix random_block(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(3, 3);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

}  // namespace

CartanReport verify_cartan_relations(const ParityDecomposition& decomp, const CartanOptions& opts) {
  CartanReport r;
  r.n_spins = decomp.n_spins;
  r.even_dim = decomp.even_space.dimension();
  r.odd_dim = decomp.odd_space.dimension();
  r.mode = opts.mode;
  r.tol = opts.tol;
  r.labelings.push_back(check_labeling("I_o = odd sigma count", decomp.odd_space, decomp.even_space, opts));
  r.labelings.push_back(check_labeling("I_o = even sigma count", decomp.even_space, decomp.odd_space, opts));

  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  r.identity_samples = opts.identity_samples;
  for (std::size_t s = 0; s < opts.identity_samples; ++s) {
    const ComplexMatrix a = random_block(rng);
    const ComplexMatrix b = random_block(rng);
    const ComplexMatrix c = random_block(rng);
    const ComplexMatrix d = random_block(rng);
    r.identity_max_residual = std::max(r.identity_max_residual, tensor_bracket_identity_residual(a, b, c, d));
  }
  return r;
}

}  // namespace spinlie
