// Acceptance gate: one line per criterion, exit 0 only if all pass.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "heapconn/commands.hpp"

using namespace heapconn;

namespace {

int failures = 0;

void criterion(int n, const std::string& what, bool ok) {
  std::printf("criterion %2d: %s - %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ModelFile load_model(const std::string& name) {
  return parse_model(slurp(std::string(HEAPCONN_MODELS_DIR) + "/" + name));
}

const std::vector<std::string> kModels = {"tangent2d.hc", "odd2.hc", "liealg.hc",
                                          "zerorank2.hc"};

struct ToolRun {
  int exit_code;
  std::string out;
  std::string err;
};

ToolRun run_tool(const std::string& args) {
  static int counter = 0;
  std::string out_path = "acc_out_" + std::to_string(counter) + ".txt";
  std::string err_path = "acc_err_" + std::to_string(counter) + ".txt";
  ++counter;
  std::string cmd = std::string(HEAPCONN_TOOL_PATH) + " " + args + " > " + out_path + " 2> " +
                    err_path;
  int status = std::system(cmd.c_str());
  ToolRun r;
  r.exit_code = (status >= 0) ? ((status >> 8) & 0xff) : -1;
  {
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
  }
  {
    std::ifstream in(err_path);
    std::stringstream buf;
    buf << in.rdbuf();
    r.err = buf.str();
  }
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

int main() {
  // 1. heap axioms on >= 20 seeded random connections per bundled model
  {
    bool ok = true;
    for (const auto& name : kModels) {
      ModelFile m = load_model(name);
      Rng rng(1001);
      ok = ok && all_passed(verify_heap_laws(m.bundle, rng, 20));
      ok = ok && all_passed(verify_group_laws(m.bundle, rng, 20));
    }
    criterion(1, "heap axioms exact on 20 random connections x 4 models", ok);
  }

  // 2. torsion heap homomorphism + cyclic corollary on >= 20 random triples
  {
    bool ok = true;
    for (const auto& name : kModels) {
      ModelFile m = load_model(name);
      if (!m.algebroid.has_bracket()) continue;
      Rng rng(1002);
      ok = ok && all_passed(verify_torsion_hom_suite(m.algebroid, rng, 20));
    }
    criterion(2, "torsion homomorphism and cyclic identity on 20 triples per model", ok);
  }

  // 3. subheap closures: torsion-free, metric (unimodular g), auto-parallel
  {
    ModelFile t2 = load_model("tangent2d.hc");
    Rng rng(1003);
    bool ok = all_passed(verify_tf_subheap(t2.algebroid, rng, 20));
    ok = ok && all_passed(verify_metric_subheap(t2.algebroid, t2.metric("gU"), rng, 20));
    for (const auto& name : kModels) {
      ModelFile m = load_model(name);
      if (!m.algebroid.has_bracket()) continue;
      Rng rng2(1013);
      ok = ok && all_passed(verify_autoparallel_suite(m.algebroid, rng2, 20));
    }
    criterion(3, "torsion-free, metric and auto-parallel subheap closures", ok);
  }

  // 4. torsion equivalence via the torsion-free subheap relation
  {
    bool ok = true;
    for (const auto& name : kModels) {
      ModelFile m = load_model(name);
      if (!m.algebroid.has_bracket()) continue;
      Rng rng(1004);
      ok = ok && all_passed(verify_torsion_equivalence(m.algebroid, rng, 20));
    }
    criterion(4, "torsion equivalence iff heap with torsion-free pivot is torsion-free", ok);
  }

  // 5. curvature of triple products with the derived (-1)^{i+j} cross signs
  {
    bool ok = true;
    for (const auto& name : kModels) {
      ModelFile m = load_model(name);
      if (!m.algebroid.has_bracket()) continue;
      Rng rng(1005);
      ok = ok && all_passed(verify_curvature_suite(m.algebroid, rng, 20));
      // degenerate triple: R = 3R - 2R
      Connection c = rng.connection(m.bundle);
      ok = ok && all_passed(verify_curvature_formula(m.algebroid, c, c, c));
    }
    criterion(5, "curvature proposition exact on 20 triples; degenerate R = 3R - 2R", ok);
  }

  // 6. flat non-closure witness on the zero-anchored rank-2 bundle
  {
    ModelFile m = load_model("zerorank2.hc");
    bool ok = all_passed(verify_flat_nonclosure(m.algebroid, m.connection("CX"),
                                                m.connection("C0"), m.connection("CY")));
    TensorR R = curvature(m.algebroid,
                          heap(m.connection("CX"), m.connection("C0"), m.connection("CY")));
    ok = ok && (R.at(0, 1, 0, 0) == SuperScalar::one(m.ring));
    criterion(6, "flat inputs, non-flat heap: R(e1,e2) = [X,Y] != 0", ok);
  }

  // 7. endomorphism truss laws, evaluation law, shift sub-truss
  {
    bool ok = true;
    for (const auto& name : kModels) {
      ModelFile m = load_model(name);
      Rng rng(1007);
      ok = ok && all_passed(verify_truss_laws(m.algebroid, rng, 20));
    }
    criterion(7, "End(C(A)) truss laws, evaluation law and shift sub-truss", ok);
  }

  // 8. Levi-Civita connections
  {
    ModelFile t2 = load_model("tangent2d.hc");
    Connection flat_lc = levi_civita(t2.algebroid, t2.metric("gflat"));
    bool ok = (flat_lc == Connection(t2.bundle));
    Rng rng(1008);
    ok = ok && all_passed(verify_levi_civita(t2.algebroid, t2.metric("gU"), rng));
    criterion(8, "Levi-Civita: identity metric gives 0; unimodular metric exact", ok);
  }

  // 9. graded suite on R^{0|2}
  {
    ModelFile m = load_model("odd2.hc");
    Rng rng(1009);
    bool ok = all_passed(check_algebroid_axioms(m.algebroid));
    ok = ok && all_passed(verify_nabla_axioms(m.algebroid, rng, 20));
    ok = ok && all_passed(verify_heap_laws(m.bundle, rng, 20));
    ok = ok && all_passed(verify_tensoriality(m.algebroid, rng, 20));
    ok = ok && all_passed(verify_torsion_hom_suite(m.algebroid, rng, 20));
    criterion(9, "graded axioms, torsion antisymmetry and heap laws on R^{0|2}", ok);
  }

  // 10. generic laws module on hand-picked samples
  {
    bool ok = all_passed(cmd_detail::generic_law_samples());
    criterion(10, "S3 heap fails abelian with witness; integer truss exhaustive", ok);
  }

  // 11. frontend: parse, round-trip, verify exit codes, byte stability
  {
    bool ok = true;
    for (const auto& name : kModels) {
      ModelFile first = load_model(name);
      ModelFile second = parse_model(emit_model(first));
      ok = ok && (first == second);
      ToolRun r = run_tool("verify " + std::string(HEAPCONN_MODELS_DIR) + "/" + name +
                           " --format machine");
      ok = ok && r.exit_code == 0;
    }
    ToolRun bad = run_tool("verify " + std::string(HEAPCONN_MODELS_DIR) + "/bad_parity.hc");
    ok = ok && bad.exit_code == 2 && bad.err.find("10:3") != std::string::npos;
    const std::string stable_args = "torsion " + std::string(HEAPCONN_MODELS_DIR) +
                                    "/tangent2d.hc --connection CA --seed 5 --format machine";
    ToolRun s1 = run_tool(stable_args);
    ToolRun s2 = run_tool(stable_args);
    ok = ok && s1.exit_code == 0 && s1.out == s2.out && !s1.out.empty();
    criterion(11, "models parse and round-trip; exit codes 0/2; byte-stable reports", ok);
  }

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", failures);
  return 1;
}
