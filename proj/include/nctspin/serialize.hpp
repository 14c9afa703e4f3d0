#pragma once

#include "nctspin/torus.hpp"

#include <json.hpp>

namespace nctspin {

/// Row-major matrix payload; the parser checks skew-symmetry to 1e-12 and then
/// symmetrizes exactly from the lower triangle so round trips are bit-stable.
inline nlohmann::ordered_json theta_to_json(const ThetaMatrix& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int k = 0; k < t.dim(); ++k) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int l = 0; l < t.dim(); ++l) row.push_back(t(k, l));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ThetaMatrix theta_from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("theta: expected a nonempty array of rows");
  const int n = static_cast<int>(rows.size());
  ThetaMatrix t(n);
  for (int k = 0; k < n; ++k) {
    if (!rows[k].is_array() || static_cast<int>(rows[k].size()) != n)
      throw std::invalid_argument("theta: matrix must be square");
    for (int l = 0; l < n; ++l)
      if (!rows[k][l].is_number()) throw std::invalid_argument("theta: entries must be numbers");
  }
  for (int k = 0; k < n; ++k) {
    if (std::abs(rows[k][k].get<double>()) > 1e-12)
      throw std::invalid_argument("theta: diagonal must vanish");
    for (int l = 0; l < k; ++l) {
      const double v = rows[k][l].get<double>();
      if (std::abs(v + rows[l][k].get<double>()) > 1e-12)
        throw std::invalid_argument("theta: matrix must be skew-symmetric");
      t.set(k, l, v);
    }
  }
  return t;
}

/// Element payload: {"theta": rows, "terms": [{"m": [...], "re": x, "im": y}]}
/// with terms emitted in lexicographic exponent order, which the term map
/// already maintains.
inline nlohmann::ordered_json element_to_json(const TorusElement& a) {
  nlohmann::ordered_json j;
  j["theta"] = theta_to_json(a.theta());
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : a.terms()) {
    nlohmann::ordered_json t;
    t["m"] = m;
    t["re"] = c.real();
    t["im"] = c.imag();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline TorusElement element_from_json(const nlohmann::json& j) {
  if (!j.contains("theta") || !j.contains("terms"))
    throw std::invalid_argument("element: expected fields theta and terms");
  TorusElement a(theta_from_json(j["theta"]));
  for (const auto& t : j["terms"]) {
    if (!t.contains("m") || !t.contains("re") || !t.contains("im"))
      throw std::invalid_argument("element: each term needs m, re, im");
    a.insert(t["m"].get<Monomial>(), Complex(t["re"].get<double>(), t["im"].get<double>()));
  }
  return a;
}

}  // namespace nctspin
