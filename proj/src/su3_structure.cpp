#include "spinlie/su3_structure.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace spinlie {
namespace {

ComplexMatrix m3(std::initializer_list<Complex> entries) {
  ComplexMatrix m(3, 3);
  auto it = entries.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

enum class Bracket { kCommutator, kMinusIAnticommutator };

struct Term {
  const char* label;
  double coeff;
};

struct Cell {
  const char* lhs;
  const char* rhs;
  std::vector<Term> expected;
};

struct TableSpec {
  const char* id;
  Bracket bracket;
  std::vector<Cell> cells;
};

// Printed tables, read as op(row, column).
const std::vector<TableSpec>& printed_tables() {
  static const std::vector<TableSpec> tables = {
      {"commutator-SS",
       Bracket::kCommutator,
       {{"sigma_x", "sigma_y", {{"sigma_z", 2}}},
        {"sigma_y", "sigma_z", {{"sigma_x", 1}}},
        {"sigma_z", "sigma_x", {{"sigma_y", 1}}},
        {"sigma_x", "sigma_x", {}},
        {"sigma_y", "sigma_y", {}},
        {"sigma_z", "sigma_z", {}}}},
      {"commutator-Sperp-Sperp",
       Bracket::kCommutator,
       {{"Q", "R", {{"sigma_z", -2}}},
        {"T", "R", {}},
        {"T", "Q", {}},
        {"V", "R", {{"sigma_x", 1}}},
        {"V", "Q", {{"sigma_y", 1}}},
        {"V", "T", {{"sigma_x", 3}}},
        {"U", "R", {{"sigma_y", 1}}},
        {"U", "Q", {{"sigma_x", -1}}},
        {"U", "T", {{"sigma_y", -3}}},
        {"U", "V", {{"sigma_z", 2}}}}},
      {"commutator-Sperp-S",
       Bracket::kCommutator,
       {{"sigma_x", "R", {{"V", -1}}},
        {"sigma_x", "Q", {{"U", 1}}},
        {"sigma_x", "T", {{"V", -3}}},
        {"sigma_x", "V", {{"T", 2}, {"R", 2}}},
        {"sigma_x", "U", {{"Q", -2}}},
        {"sigma_y", "R", {{"U", -1}}},
        {"sigma_y", "Q", {{"V", -1}}},
        {"sigma_y", "T", {{"U", 3}}},
        {"sigma_y", "V", {{"Q", 2}}},
        {"sigma_y", "U", {{"T", -2}, {"R", 2}}},
        {"sigma_z", "R", {{"Q", 2}}},
        {"sigma_z", "Q", {{"R", -2}}},
        {"sigma_z", "T", {}},
        {"sigma_z", "V", {{"U", -1}}},
        {"sigma_z", "U", {{"V", 1}}}}},
      {"anticommutator-Sperp-Sperp",
       Bracket::kMinusIAnticommutator,
       {{"R", "R", {{"i1", 4.0 / 3.0}, {"T", 2.0 / 3.0}}},
        {"Q", "R", {}},
        {"Q", "Q", {{"i1", 4.0 / 3.0}, {"T", 2.0 / 3.0}}},
        {"T", "R", {{"R", 2}}},
        {"T", "Q", {{"Q", 2}}},
        {"T", "T", {{"i1", 4}, {"T", -2}}},
        {"V", "R", {{"V", 1}}},
        {"V", "Q", {{"U", -1}}},
        {"V", "T", {{"V", -1}}},
        {"V", "V", {{"i1", 8.0 / 3.0}, {"T", -2.0 / 3.0}, {"R", 2}}},
        {"U", "R", {{"U", -1}}},
        {"U", "Q", {{"V", -1}}},
        {"U", "T", {{"U", -1}}},
        {"U", "V", {{"Q", -2}}},
        {"U", "U", {{"i1", 8.0 / 3.0}, {"T", -2.0 / 3.0}, {"R", -2}}}}},
      {"anticommutator-S-Sperp",
       Bracket::kMinusIAnticommutator,
       {{"sigma_x", "R", {{"sigma_x", 1}}},
        {"sigma_x", "Q", {{"sigma_y", 1}}},
        {"sigma_x", "T", {{"sigma_x", -1}}},
        {"sigma_x", "V", {}},
        {"sigma_x", "U", {{"sigma_z", 2}}},
        {"sigma_y", "R", {{"sigma_y", -1}}},
        {"sigma_y", "Q", {{"sigma_x", 1}}},
        {"sigma_y", "T", {{"sigma_y", -1}}},
        {"sigma_y", "V", {{"sigma_z", 2}}},
        {"sigma_y", "U", {}},
        {"sigma_z", "R", {}},
        {"sigma_z", "Q", {}},
        {"sigma_z", "T", {{"sigma_z", 2}}},
        {"sigma_z", "V", {{"sigma_y", 1}}},
        {"sigma_z", "U", {{"sigma_x", 1}}}}},
      {"anticommutator-SS",
       Bracket::kMinusIAnticommutator,
       {{"sigma_x", "sigma_x", {{"i1", 8.0 / 3.0}, {"T", -2.0 / 3.0}, {"R", 2}}},
        {"sigma_y", "sigma_x", {{"Q", 2}}},
        {"sigma_y", "sigma_y", {{"i1", 8.0 / 3.0}, {"T", -2.0 / 3.0}, {"R", -2}}},
        {"sigma_z", "sigma_x", {{"U", 1}}},
        {"sigma_z", "sigma_y", {{"V", 1}}},
        {"sigma_z", "sigma_z", {{"i1", 4.0 / 3.0}, {"T", 2.0 / 3.0}}}}},
  };
  return tables;
}

using NamedBasis = std::map<std::string, ComplexMatrix>;

NamedBasis named(const Su3Basis& b, double uv_sign) {
  return {{"sigma_x", b.sigma_x}, {"sigma_y", b.sigma_y}, {"sigma_z", b.sigma_z},
          {"R", b.R},             {"Q", b.Q},             {"T", b.T},
          {"V", uv_sign * b.V},   {"U", uv_sign * b.U},   {"i1", kI * b.one}};
}

ComplexMatrix apply(Bracket kind, const ComplexMatrix& x, const ComplexMatrix& y) {
  return kind == Bracket::kCommutator ? commutator(x, y) : ComplexMatrix(-kI * anticommutator(x, y));
}

ComplexMatrix combine(const NamedBasis& basis, const std::vector<Term>& terms) {
  ComplexMatrix out = ComplexMatrix::Zero(3, 3);
  for (const auto& t : terms) out += t.coeff * basis.at(t.label);
  return out;
}

std::string describe(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << (t.coeff < 0 ? " - " : " + ");
    else if (t.coeff < 0) os << "-";
    first = false;
    const double a = std::abs(t.coeff);
    if (a != 1.0) os << a << " ";
    os << t.label;
  }
  return os.str();
}

}  // namespace

Su3Basis build_su3_basis() {
  const double r2 = std::sqrt(2.0);
  const Complex i = kI;
  Su3Basis b;
  b.sigma_x = m3({0, i, 0, i, 0, i, 0, i, 0});
  b.sigma_y = m3({0, 1, 0, -1, 0, 1, 0, -1, 0});
  b.sigma_z = m3({-i, 0, 0, 0, 0, 0, 0, 0, i});
  b.R = m3({0, 0, i, 0, 0, 0, i, 0, 0});
  b.Q = m3({0, 0, 1, 0, 0, 0, -1, 0, 0});
  b.T = m3({i, 0, 0, 0, -2.0 * i, 0, 0, 0, i});
  b.V = m3({0, 1, 0, -1, 0, -1, 0, 1, 0});
  b.U = m3({0, i, 0, i, 0, -i, 0, -i, 0});
  b.sbar_x = 0.5 * i * m3({0, r2, 0, r2, 0, r2, 0, r2, 0});
  b.sbar_y = 0.5 * i * m3({0, -r2 * i, 0, r2 * i, 0, -r2 * i, 0, r2 * i, 0});
  b.sbar_z = -i * m3({1, 0, 0, 0, 0, 0, 0, 0, -1});
  b.one = identity(3);
  return b;
}

const Su3Basis& su3_basis() {
  static const Su3Basis basis = build_su3_basis();
  return basis;
}

const std::array<std::string, 9>& expansion_labels() {
  static const std::array<std::string, 9> labels = {"sigma_x", "sigma_y", "sigma_z", "R", "Q",
                                                    "T",       "V",       "U",       "i1"};
  return labels;
}

std::array<ComplexMatrix, 9> expansion_basis() {
  const auto& b = su3_basis();
  return {b.sigma_x, b.sigma_y, b.sigma_z, b.R, b.Q, b.T, b.V, b.U, ComplexMatrix(kI * b.one)};
}

std::array<Complex, 9> expand(const ComplexMatrix& x) {
  if (x.rows() != 3 || x.cols() != 3) throw DimensionError("expand: expected a 3x3 matrix");
  const auto basis = expansion_basis();
  std::array<Complex, 9> c{};
  for (std::size_t k = 0; k < 9; ++k) {
    const ComplexMatrix& e = basis[k];
    c[k] = (e.adjoint() * x).trace() / (e.adjoint() * e).trace().real();
  }
  return c;
}

std::vector<TableReport> verify_structure_tables(double tol) {
  const auto& b = su3_basis();
  const NamedBasis printed = named(b, 1.0);
  const NamedBasis flipped = named(b, -1.0);
  const auto basis = expansion_basis();

  std::vector<TableReport> reports;
  for (const auto& table : printed_tables()) {
    TableReport report;
    report.table_id = table.id;
    for (const auto& cell : table.cells) {
      TableEntry e;
      e.lhs = cell.lhs;
      e.rhs = cell.rhs;
      e.expected = describe(cell.expected);
      const ComplexMatrix value = apply(table.bracket, printed.at(cell.lhs), printed.at(cell.rhs));
      e.residual = (value - combine(printed, cell.expected)).norm();
      e.pass = e.residual <= tol;
      e.recomputed = expand(value);
      ComplexMatrix rebuilt = ComplexMatrix::Zero(3, 3);
      for (std::size_t k = 0; k < 9; ++k) rebuilt += e.recomputed[k] * basis[k];
      e.expansion_residual = (value - rebuilt).norm();
      const ComplexMatrix alt = apply(table.bracket, flipped.at(cell.lhs), flipped.at(cell.rhs));
      e.flipped_uv_residual = (alt - combine(flipped, cell.expected)).norm();
      report.max_residual = std::max(report.max_residual, e.residual);
      report.entries.push_back(std::move(e));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

bool SubspaceReport::all_hold() const {
  for (const auto& r : relations)
    if (!r.holds) return false;
  return !relations.empty();
}

namespace {

OperatorSpan span_of(const std::vector<ComplexMatrix>& ms) {
  OperatorSpan s(3);
  for (const auto& m : ms) s.insert(m);
  return s;
}

double containment_residual(const OperatorSpan& a, const OperatorSpan& b) {
  double worst = 0.0;
  for (const auto& x : a.basis()) worst = std::max(worst, b.residual_norm(x));
  for (const auto& x : b.basis()) worst = std::max(worst, a.residual_norm(x));
  return worst;
}

SubspaceRelation compare(std::string name, const OperatorSpan& computed, const OperatorSpan& claimed,
                         double tol) {
  SubspaceRelation r;
  r.name = std::move(name);
  r.computed_dim = computed.dimension();
  r.claimed_dim = claimed.dimension();
  r.max_residual = containment_residual(computed, claimed);
  r.holds = r.computed_dim == r.claimed_dim && r.max_residual <= tol;
  return r;
}

}  // namespace

SubspaceReport verify_subspace_relations(double tol) {
  const auto& b = su3_basis();
  const std::vector<ComplexMatrix> s = {b.sigma_x, b.sigma_y, b.sigma_z};
  const std::vector<ComplexMatrix> l = {b.R, b.Q, b.T, b.V, b.U};
  std::vector<ComplexMatrix> sperp = l;
  sperp.push_back(kI * b.one);

  const OperatorSpan span_s = span_of(s);
  const OperatorSpan span_l = span_of(l);
  const OperatorSpan span_sperp = span_of(sperp);

  auto pairwise = [](const std::vector<ComplexMatrix>& xs, const std::vector<ComplexMatrix>& ys,
                     bool anti) {
    std::vector<ComplexMatrix> out;
    for (const auto& x : xs)
      for (const auto& y : ys) out.push_back(anti ? ComplexMatrix(kI * anticommutator(x, y)) : commutator(x, y));
    return span_of(out);
  };

  SubspaceReport report;
  report.relations.push_back(compare("[S,S] = S", pairwise(s, s, false), span_s, tol));
  report.relations.push_back(compare("[Sperp,S] = Sperp/span{i1}", pairwise(sperp, s, false), span_l, tol));
  report.relations.push_back(compare("[Sperp,Sperp] = S", pairwise(sperp, sperp, false), span_s, tol));
  report.relations.push_back(compare("i{S,S} = Sperp", pairwise(s, s, true), span_sperp, tol));
  report.relations.push_back(compare("i{Sperp,S} = S", pairwise(sperp, s, true), span_s, tol));
  report.relations.push_back(compare("i{Sperp,Sperp} = Sperp", pairwise(sperp, sperp, true), span_sperp, tol));

  const std::array<const char*, 5> names = {"R", "Q", "T", "V", "U"};
  for (std::size_t k = 0; k < l.size(); ++k) {
    // Orbit of L under repeated ad_S, to a fixpoint.
    OperatorSpan orbit(3);
    std::vector<ComplexMatrix> frontier;
    if (orbit.insert(l[k])) frontier.push_back(orbit.basis().back());
    while (!frontier.empty()) {
      std::vector<ComplexMatrix> next;
      for (const auto& f : frontier)
        for (const auto& g : s)
          if (orbit.insert(commutator(g, f))) next.push_back(orbit.basis().back());
      frontier = std::move(next);
    }
    report.relations.push_back(
        compare(std::string("ad_S orbit of ") + names[k] + " = Sperp/span{i1}", orbit, span_l, tol));
  }
  return report;
}

}  // namespace spinlie

namespace spinlie {

ComplexMatrix casimir_spin1() {
  // sbar_j = c_j N_j with N_j Gaussian-integer valued and c_j^2 in {1/2, 1}.
  // Squaring N_j and scaling by c_j^2 keeps every entry exact.
  const auto& b = su3_basis();
  const std::array<double, 3> c2 = {0.5, 0.5, 1.0};
  ComplexMatrix out = ComplexMatrix::Zero(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const double c = std::sqrt(c2[k]);
    ComplexMatrix n = b.sbar()[k] / c;
    n = n.unaryExpr([](const Complex& z) { return Complex(std::round(z.real()), std::round(z.imag())); });
    if ((c * n - b.sbar()[k]).norm() > 1e-12) throw std::logic_error("casimir_spin1: unexpected sbar entries");
    const ComplexMatrix j = -kI * n;
    out += c2[k] * (j * j);
  }
  return out;
}

}  // namespace spinlie
