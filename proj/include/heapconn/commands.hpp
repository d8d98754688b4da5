#pragma once

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "heapconn/dsl.hpp"
#include "heapconn/report.hpp"
#include "heapconn/verify.hpp"

namespace heapconn {

/// Options shared by all commands.
struct CommandOptions {
  std::vector<std::string> connections;
  std::string metric;
  std::string endo;
  std::string section;
  std::uint64_t seed = 42;
  int iterations = 20;
};

/// Exit statuses: 0 all checks pass, 1 law failure, 2 input error.
enum ExitCode : int { kExitPass = 0, kExitLawFailure = 1, kExitInputError = 2 };

struct CommandResult {
  Report report;
  int exit_code = kExitPass;
};

namespace cmd_detail {

inline const Connection& pick_connection(const ModelFile& model, const CommandOptions& opt,
                                         std::size_t i = 0) {
  if (opt.connections.size() > i) return model.connection(opt.connections[i]);
  if (i == 0 && model.connections.size() == 1) return model.connections.begin()->second;
  throw std::invalid_argument("command needs --connection NAME");
}

inline const Metric& pick_metric(const ModelFile& model, const CommandOptions& opt) {
  if (!opt.metric.empty()) return model.metric(opt.metric);
  if (model.metrics.size() == 1) return model.metrics.begin()->second;
  throw std::invalid_argument("command needs --metric NAME");
}

inline std::string conn_label(const CommandOptions& opt, std::size_t i,
                              const std::string& fallback) {
  return opt.connections.size() > i ? opt.connections[i] : fallback;
}

/// Reference torsion-free connection Gamma = C/2, used by torsion-equiv when
/// the caller does not supply one.
inline Connection half_structure_connection(const Algebroid& A) {
  require_bracket(A);
  Connection out(A.bundle);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < out.gamma.size(); ++i)
    out.gamma[i] = half * (*A.structure)[i];
  return out;
}

inline void add_tensor_results(Report& rep, const Tensor12& t, const std::string& name) {
  auto lines = component_lines(t, name);
  if (lines.empty()) {
    rep.results.emplace_back(name, "0");
  } else {
    for (auto& kv : lines) rep.results.push_back(std::move(kv));
  }
}

inline void add_connection_results(Report& rep, const Connection& c) {
  auto lines = component_lines(c);
  if (lines.empty()) {
    rep.results.emplace_back("Gamma", "0");
  } else {
    for (auto& kv : lines) rep.results.push_back(std::move(kv));
  }
}

inline void add_curvature_results(Report& rep, const TensorR& t) {
  auto lines = component_lines(t);
  if (lines.empty()) {
    rep.results.emplace_back("R", "0");
  } else {
    for (auto& kv : lines) rep.results.push_back(std::move(kv));
  }
}

/// Generic-sample showcase for the laws module.  Expected verdicts are part
/// of the check: a sample that must fail a law passes this command only by
/// failing that law with a witness.
inline std::vector<LawReport> generic_law_samples() {
  std::vector<LawReport> out;

  // integers with a - b + c: an affine-space heap
  {
    LawSample<long> s;
    s.elements = {-1, 0, 1, 2};
    s.ternary = [](const long& a, const long& b, const long& c) { return a - b + c; };
    s.eq = [](const long& a, const long& b) { return a == b; };
    s.str = [](const long& a) { return std::to_string(a); };
    for (auto& rep : check_heap(s)) {
      rep.law_name = "integer-heap " + rep.law_name;
      out.push_back(std::move(rep));
    }
    // ring-to-truss: multiplication distributes over a - b + c
    for (auto& rep : check_truss<long>(s, [](const long& a, const long& b) { return a * b; })) {
      rep.law_name = "integer-truss " + rep.law_name;
      out.push_back(std::move(rep));
    }
    // binary max fails distributivity; expected witness
    auto max_reports =
        check_truss<long>(s, [](const long& a, const long& b) { return a > b ? a : b; });
    LawReport expect{"integer-max distributivity fails as expected"};
    bool dist_failed = false;
    for (const auto& rep : max_reports)
      if ((rep.law_name == "left-distributivity" || rep.law_name == "right-distributivity") &&
          !rep.passed && !rep.witness.empty())
        dist_failed = true;
    if (!dist_failed) {
      expect.passed = false;
      expect.witness = {"max distributed over a-b+c on {-1,0,1,2}"};
    }
    out.push_back(expect);
  }

  // symmetric group on 3 letters with a b^-1 c: heap laws minus abelian
  {
    using Perm = std::array<int, 3>;
    std::vector<Perm> elems;
    Perm p{0, 1, 2};
    std::sort(p.begin(), p.end());
    do { elems.push_back(p); } while (std::next_permutation(p.begin(), p.end()));
    auto compose = [](const Perm& f, const Perm& g) {
      return Perm{f[g[0]], f[g[1]], f[g[2]]};
    };
    auto inverse = [](const Perm& f) {
      Perm inv{};
      for (int i = 0; i < 3; ++i) inv[f[i]] = i;
      return inv;
    };
    LawSample<Perm> s;
    s.elements = elems;
    s.ternary = [compose, inverse](const Perm& a, const Perm& b, const Perm& c) {
      return compose(a, compose(inverse(b), c));
    };
    s.eq = [](const Perm& a, const Perm& b) { return a == b; };
    s.str = [](const Perm& a) {
      return "(" + std::to_string(a[0]) + std::to_string(a[1]) + std::to_string(a[2]) + ")";
    };
    LawReport para = check_para_associativity(s);
    para.law_name = "s3-heap " + para.law_name;
    out.push_back(para);
    LawReport biunit = check_bi_unitality(s);
    biunit.law_name = "s3-heap " + biunit.law_name;
    out.push_back(biunit);
    LawReport abelian = check_abelian(s);
    LawReport expect{"s3-heap abelian-symmetry fails as expected"};
    if (abelian.passed || abelian.witness.empty()) {
      expect.passed = false;
      expect.witness = {"S3 heap reported abelian"};
    } else {
      expect.witness = {};
      // surface the counterexample for the record
      std::string w;
      for (const auto& piece : abelian.witness) w += (w.empty() ? "" : " | ") + piece;
      expect.law_name += " (witness " + w + ")";
    }
    out.push_back(expect);
  }

  // cyclic group Z4 with a b^-1 c
  {
    LawSample<int> s;
    s.elements = {0, 1, 2, 3};
    s.ternary = [](const int& a, const int& b, const int& c) { return ((a - b + c) % 4 + 4) % 4; };
    s.eq = [](const int& a, const int& b) { return a == b; };
    s.str = [](const int& a) { return std::to_string(a); };
    for (auto& rep : check_heap(s)) {
      rep.law_name = "z4-heap " + rep.law_name;
      out.push_back(std::move(rep));
    }
  }

  return out;
}

}  // namespace cmd_detail

/// Full proposition suite for one model.  When exactly three connections are
/// named, the explicit triple is additionally run through the torsion,
/// curvature and flat non-closure checks.
inline std::vector<LawReport> verify_all(const ModelFile& model, const CommandOptions& opt,
                                         Rng& rng, std::vector<std::string>* notes = nullptr) {
  std::vector<LawReport> out;
  const Algebroid& A = model.algebroid;
  const int iters = opt.iterations;

  for (auto& rep : check_algebroid_axioms(A)) {
    rep.law_name = "algebroid " + rep.law_name;
    out.push_back(std::move(rep));
  }

  auto append = [&out](std::vector<LawReport> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };

  append(verify_heap_laws(A.bundle, rng, iters));
  append(verify_group_laws(A.bundle, rng, iters));
  append(verify_nabla_axioms(A, rng, iters));

  if (A.has_bracket()) {
    append(verify_torsion_hom_suite(A, rng, iters));
    append(verify_tensoriality(A, rng, iters));
    append(verify_tf_subheap(A, rng, iters));
    append(verify_torsion_equivalence(A, rng, iters));
    append(verify_autoparallel_suite(A, rng, iters));
    if (notes) notes->push_back(kCurvatureSignNote);
    append(verify_curvature_suite(A, rng, iters));
  }

  for (const auto& [name, metric] : model.metrics) {
    auto lc = verify_levi_civita(A, metric, rng);
    for (auto& rep : lc) rep.law_name = "metric " + name + " " + rep.law_name;
    append(std::move(lc));
    auto sub = verify_metric_subheap(A, metric, rng, iters);
    for (auto& rep : sub) rep.law_name = "metric " + name + " " + rep.law_name;
    append(std::move(sub));
  }

  append(verify_truss_laws(A, rng, iters));

  if (opt.connections.size() == 3 && A.has_bracket()) {
    const Connection& c1 = model.connection(opt.connections[0]);
    const Connection& c2 = model.connection(opt.connections[1]);
    const Connection& c3 = model.connection(opt.connections[2]);
    auto hom = verify_torsion_heap_hom(A, c1, c2, c3);
    for (auto& rep : hom) rep.law_name = "explicit-triple " + rep.law_name;
    append(std::move(hom));
    auto curv = verify_curvature_formula(A, c1, c2, c3);
    for (auto& rep : curv) rep.law_name = "explicit-triple " + rep.law_name;
    append(std::move(curv));
    append(verify_flat_nonclosure(A, c1, c2, c3));
  }

  for (const auto& [uname, u] : model.sections) {
    if (!u.is_homogeneous()) continue;
    for (const auto& [cname, c] : model.connections) {
      if (!auto_parallel_check(A, c, u)) continue;
      LawReport rep = verify_autoparallel_closure(A, u, c, c, c);
      rep.law_name = "auto-parallel closure (" + uname + ", " + cname + ")";
      out.push_back(std::move(rep));
    }
  }

  return out;
}

/// Dispatch a CLI command against a parsed model.  Throws
/// std::invalid_argument (and ParseError from the caller's parse step) for
/// input problems; law failures are reported through the exit code.
inline CommandResult run_command(const std::string& cmd, const ModelFile& model,
                                 std::string_view model_source, const CommandOptions& opt) {
  CommandResult res;
  Report& rep = res.report;
  rep.command = cmd;
  rep.model_digest = fnv1a(model_source);
  rep.seed = opt.seed;
  Rng rng(opt.seed);
  const Algebroid& A = model.algebroid;

  if (cmd == "check-algebroid") {
    rep.add_laws(check_algebroid_axioms(A));
    res.exit_code = rep.all_passed() ? kExitPass : kExitLawFailure;
  } else if (cmd == "torsion") {
    const Connection& c = cmd_detail::pick_connection(model, opt);
    rep.inputs.push_back("connection " + cmd_detail::conn_label(opt, 0, "(only)"));
    cmd_detail::add_tensor_results(rep, torsion(A, c), "T");
  } else if (cmd == "curvature") {
    const Connection& c = cmd_detail::pick_connection(model, opt);
    rep.inputs.push_back("connection " + cmd_detail::conn_label(opt, 0, "(only)"));
    cmd_detail::add_curvature_results(rep, curvature(A, c));
  } else if (cmd == "heap") {
    if (opt.connections.size() != 3)
      throw std::invalid_argument("heap needs three --connection arguments");
    const Connection& c1 = model.connection(opt.connections[0]);
    const Connection& c2 = model.connection(opt.connections[1]);
    const Connection& c3 = model.connection(opt.connections[2]);
    for (const auto& n : opt.connections) rep.inputs.push_back("connection " + n);
    cmd_detail::add_connection_results(rep, heap(c1, c2, c3));
  } else if (cmd == "group") {
    if (opt.connections.size() != 3)
      throw std::invalid_argument("group needs --connection C0 --connection C1 --connection C2");
    const Connection& c0 = model.connection(opt.connections[0]);
    const Connection& c1 = model.connection(opt.connections[1]);
    const Connection& c2 = model.connection(opt.connections[2]);
    for (const auto& n : opt.connections) rep.inputs.push_back("connection " + n);
    rep.results.emplace_back("product", str(group_product(c0, c1, c2)));
    rep.results.emplace_back("inverse-of-" + opt.connections[1], str(group_inverse(c0, c1)));
  } else if (cmd == "levi-civita") {
    const Metric& m = cmd_detail::pick_metric(model, opt);
    Connection lc = levi_civita(A, m);
    cmd_detail::add_connection_results(rep, lc);
    rep.add_laws(verify_levi_civita(A, m, rng));
    res.exit_code = rep.all_passed() ? kExitPass : kExitLawFailure;
  } else if (cmd == "torsion-equiv") {
    if (opt.connections.size() != 2)
      throw std::invalid_argument("torsion-equiv needs two --connection arguments");
    const Connection& c1 = model.connection(opt.connections[0]);
    const Connection& c2 = model.connection(opt.connections[1]);
    for (const auto& n : opt.connections) rep.inputs.push_back("connection " + n);
    bool equal = torsion_equivalent(A, c1, c2);
    rep.results.emplace_back("equivalent", equal ? "true" : "false");
    Connection tf = cmd_detail::half_structure_connection(A);
    LawReport companion{"subheap characterization"};
    if (is_torsion_free(A, heap(c1, c2, tf)) != equal) {
      companion.passed = false;
      companion.witness = {str(c1), str(c2)};
    }
    rep.laws.push_back(companion);
    res.exit_code = rep.all_passed() ? kExitPass : kExitLawFailure;
  } else if (cmd == "autoparallel") {
    const Connection& c = cmd_detail::pick_connection(model, opt);
    if (opt.section.empty()) throw std::invalid_argument("autoparallel needs --section NAME");
    const Section& u = model.section(opt.section);
    rep.inputs.push_back("connection " + cmd_detail::conn_label(opt, 0, "(only)"));
    rep.inputs.push_back("section " + opt.section);
    rep.results.emplace_back("auto-parallel", auto_parallel_check(A, c, u) ? "true" : "false");
  } else if (cmd == "endo-apply") {
    if (opt.endo.empty()) throw std::invalid_argument("endo-apply needs --endo NAME");
    const ConnEndo& e = model.endo(opt.endo);
    const Connection& c = cmd_detail::pick_connection(model, opt);
    rep.inputs.push_back("endo " + opt.endo);
    rep.inputs.push_back("connection " + cmd_detail::conn_label(opt, 0, "(only)"));
    cmd_detail::add_connection_results(rep, endo_apply(A, e, c));
  } else if (cmd == "verify") {
    rep.add_laws(verify_all(model, opt, rng, &rep.notes));
    res.exit_code = rep.all_passed() ? kExitPass : kExitLawFailure;
  } else if (cmd == "laws") {
    rep.add_laws(cmd_detail::generic_law_samples());
    res.exit_code = rep.all_passed() ? kExitPass : kExitLawFailure;
  } else {
    throw std::invalid_argument("unknown command: " + cmd);
  }
  return res;
}

}  // namespace heapconn
