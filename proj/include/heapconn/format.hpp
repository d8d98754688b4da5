#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heapconn/connection.hpp"
#include "heapconn/endo.hpp"

namespace heapconn {

/// Nonzero components of a connection as ("Gamma[e1,e2->e1]", canonical string)
/// pairs, in fixed index order.
inline std::vector<std::pair<std::string, std::string>> component_lines(const Connection& c) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto& B = *c.bundle;
  for (std::size_t a = 0; a < B.rank(); ++a)
    for (std::size_t b = 0; b < B.rank(); ++b)
      for (std::size_t k = 0; k < B.rank(); ++k) {
        if (c.G(a, b, k).is_zero()) continue;
        out.emplace_back("Gamma[" + B.basis_names[a] + "," + B.basis_names[b] + "->" +
                             B.basis_names[k] + "]",
                         c.G(a, b, k).str());
      }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> component_lines(const Tensor12& t,
                                                                        const std::string& name) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto& B = *t.bundle;
  for (std::size_t a = 0; a < B.rank(); ++a)
    for (std::size_t b = 0; b < B.rank(); ++b)
      for (std::size_t k = 0; k < B.rank(); ++k) {
        if (t.at(a, b, k).is_zero()) continue;
        out.emplace_back(name + "[" + B.basis_names[a] + "," + B.basis_names[b] + "->" +
                             B.basis_names[k] + "]",
                         t.at(a, b, k).str());
      }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> component_lines(const TensorR& t) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto& B = *t.bundle;
  for (std::size_t a = 0; a < B.rank(); ++a)
    for (std::size_t b = 0; b < B.rank(); ++b)
      for (std::size_t k = 0; k < B.rank(); ++k)
        for (std::size_t d = 0; d < B.rank(); ++d) {
          if (t.at(a, b, k, d).is_zero()) continue;
          out.emplace_back("R[" + B.basis_names[a] + "," + B.basis_names[b] + "," +
                               B.basis_names[k] + "->" + B.basis_names[d] + "]",
                           t.at(a, b, k, d).str());
        }
  return out;
}

inline std::string join_lines(const std::vector<std::pair<std::string, std::string>>& lines) {
  if (lines.empty()) return "0";
  std::string out;
  for (const auto& [k, v] : lines) {
    if (!out.empty()) out += "; ";
    out += k + " = " + v;
  }
  return out;
}

inline std::string str(const Connection& c) { return join_lines(component_lines(c)); }
inline std::string str(const Tensor12& t, const std::string& name = "T") {
  return join_lines(component_lines(t, name));
}
inline std::string str(const TensorR& t) { return join_lines(component_lines(t)); }

inline std::string str(const ConnEndo& e) {
  const auto& B = *e.bundle;
  std::string out;
  for (std::size_t a = 0; a < B.rank(); ++a)
    for (std::size_t b = 0; b < B.rank(); ++b) {
      if (e.phi_at(a, b).is_zero()) continue;
      if (!out.empty()) out += "; ";
      out += "phi[" + B.basis_names[a] + "->" + B.basis_names[b] + "] = " + e.phi_at(a, b).str();
    }
  std::string om = str(e.omega, "omega");
  if (om != "0") {
    if (!out.empty()) out += "; ";
    out += om;
  }
  return out.empty() ? "0" : out;
}

}  // namespace heapconn
