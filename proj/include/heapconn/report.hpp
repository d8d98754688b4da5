#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heapconn/laws.hpp"

namespace heapconn {

/// FNV-1a digest of the model source, echoed in every report.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
  return out;
}

/// Deterministic command report; identical inputs and seed produce
/// byte-identical machine output.
struct Report {
  std::string command;
  std::uint64_t model_digest = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;                           // echoed operands
  std::vector<std::string> notes;                            // derivation notes
  std::vector<std::pair<std::string, std::string>> results;  // ordered key/value
  std::vector<LawReport> laws;

  bool all_passed() const { return heapconn::all_passed(laws); }

  void add_laws(const std::vector<LawReport>& more) {
    laws.insert(laws.end(), more.begin(), more.end());
  }
};

inline std::string emit_machine(const Report& r) {
  std::string out;
  out += "command: " + r.command + "\n";
  out += "model-digest: " + hex64(r.model_digest) + "\n";
  out += "seed: " + std::to_string(r.seed) + "\n";
  for (const auto& i : r.inputs) out += "input: " + i + "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  for (const auto& [k, v] : r.results) out += k + ": " + v + "\n";
  for (const auto& law : r.laws) {
    out += "law " + law.law_name + ": " +
           (law.skipped ? "skip" : (law.passed ? "pass" : "fail")) + "\n";
    if (!law.witness.empty()) {
      std::string w;
      for (const auto& piece : law.witness) {
        if (!w.empty()) w += " | ";
        w += piece;
      }
      out += "witness " + law.law_name + ": " + w + "\n";
    }
  }
  out += std::string("status: ") + (r.all_passed() ? "pass" : "fail") + "\n";
  return out;
}

inline std::string emit_human(const Report& r) {
  std::string out;
  out += "== " + r.command + " ==\n";
  out += "model digest " + hex64(r.model_digest) + ", seed " + std::to_string(r.seed) + "\n";
  for (const auto& i : r.inputs) out += "input " + i + "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  if (!r.results.empty()) {
    out += "\nresults:\n";
    for (const auto& [k, v] : r.results) out += "  " + k + " = " + v + "\n";
  }
  if (!r.laws.empty()) {
    out += "\nlaw checks:\n";
    for (const auto& law : r.laws) {
      out += "  [" + std::string(law.skipped ? "SKIP" : (law.passed ? "PASS" : "FAIL")) + "] " +
             law.law_name + "\n";
      for (const auto& piece : law.witness) out += "      witness: " + piece + "\n";
    }
  }
  out += std::string("\noverall: ") + (r.all_passed() ? "pass" : "FAIL") + "\n";
  return out;
}

inline std::string emit_report(const Report& r, bool machine) {
  return machine ? emit_machine(r) : emit_human(r);
}

}  // namespace heapconn
