#include "spinlie/json_io.hpp"

#include <cmath>
#include <string>

namespace spinlie {

nlohmann::json matrix_to_json(const ComplexMatrix& x) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < x.cols(); ++j) row.push_back({x(i, j).real(), x(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON: expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i) + " does not have " +
                                  std::to_string(n) + " entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw std::invalid_argument("matrix JSON: entry (" + std::to_string(i) + "," +
                                    std::to_string(k) + ") must be [re, im]");
      }
      out(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!is_finite(out)) throw std::invalid_argument("matrix JSON: non-finite entry");
  return out;
}

}  // namespace spinlie
