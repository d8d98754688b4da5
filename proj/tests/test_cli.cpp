#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_tool(const std::string& args) {
  static int counter = 0;
  std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
  std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
  ++counter;
  std::string cmd = std::string(HEAPCONN_TOOL_PATH) + " " + args + " > " + out_path + " 2> " +
                    err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (status >= 0) ? ((status >> 8) & 0xff) : -1;
  r.out = slurp_file(out_path);
  r.err = slurp_file(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string model(const std::string& name) {
  return std::string(HEAPCONN_MODELS_DIR) + "/" + name;
}

std::string golden(const std::string& name) {
  return slurp_file(std::string(HEAPCONN_GOLDEN_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("verify exits 0 on every shipped model") {
  for (const char* name : {"tangent2d.hc", "odd2.hc", "liealg.hc", "zerorank2.hc"}) {
    INFO(name);
    RunResult r = run_tool("verify " + model(name) + " --format machine");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("status: pass") != std::string::npos);
    CHECK(r.out.find(": fail") == std::string::npos);
  }
}

TEST_CASE("parity-violating model exits 2 with a located diagnostic") {
  RunResult r = run_tool("verify " + model("bad_parity.hc"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("10:3") != std::string::npos);
  CHECK(r.err.find("must be even") != std::string::npos);
}

TEST_CASE("missing file and unknown names exit 2") {
  CHECK(run_tool("verify no_such_model.hc").exit_code == 2);
  CHECK(run_tool("torsion " + model("tangent2d.hc") + " --connection nope").exit_code == 2);
  CHECK(run_tool("frobnicate " + model("tangent2d.hc")).exit_code == 2);
  CHECK(run_tool("heap " + model("tangent2d.hc") + " --connection CA").exit_code == 2);
}

TEST_CASE("machine reports are byte-stable across runs") {
  const std::string args =
      "verify " + model("zerorank2.hc") +
      " --connection CX --connection C0 --connection CY --seed 7 --format machine";
  RunResult a = run_tool(args);
  RunResult b = run_tool(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("machine outputs match the golden transcripts") {
  struct Case {
    const char* golden_name;
    std::string args;
  };
  const Case cases[] = {
      {"torsion_CA.txt",
       "torsion " + model("tangent2d.hc") + " --connection CA --format machine"},
      {"levi_civita_gU.txt",
       "levi-civita " + model("tangent2d.hc") + " --metric gU --format machine"},
      {"heap_zerorank2.txt",
       "heap " + model("zerorank2.hc") +
           " --connection CX --connection C0 --connection CY --format machine"},
      {"laws.txt", "laws " + model("liealg.hc") + " --format machine"},
  };
  for (const auto& c : cases) {
    INFO(c.golden_name);
    RunResult r = run_tool(c.args);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden(c.golden_name));
  }
}

TEST_CASE("human format prints an overall verdict") {
  RunResult r = run_tool("check-algebroid " + model("liealg.hc"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("overall: pass") != std::string::npos);
}
