#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heapconn/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"heapconn: exact symbolic checker for heaps of linear connections"};
  app.require_subcommand(0);

  std::string command;
  std::string model_path;
  heapconn::CommandOptions opt;
  std::string format = "human";

  app.add_option("command", command, "one of: check-algebroid torsion curvature heap group "
                                     "levi-civita torsion-equiv autoparallel endo-apply "
                                     "verify laws")
      ->required();
  app.add_option("model-file", model_path, "model description file")->required();
  app.add_option("--connection", opt.connections, "named connection (repeatable)");
  app.add_option("--metric", opt.metric, "named metric");
  app.add_option("--endo", opt.endo, "named endomorphism");
  app.add_option("--section", opt.section, "named section");
  app.add_option("--seed", opt.seed, "random seed for sampled checks");
  app.add_option("--iterations", opt.iterations, "samples per sampled law");
  app.add_option("--format", format, "human or machine")
      ->check(CLI::IsMember({"human", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : heapconn::kExitInputError;
  }

  std::ifstream in(model_path);
  if (!in) {
    std::cerr << "error: cannot open model file: " << model_path << "\n";
    return heapconn::kExitInputError;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string source = buf.str();

  try {
    heapconn::ModelFile model = heapconn::parse_model(source);
    heapconn::CommandResult res = heapconn::run_command(command, model, source, opt);
    std::cout << heapconn::emit_report(res.report, format == "machine");
    return res.exit_code;
  } catch (const heapconn::ParseError& e) {
    std::cerr << "error: " << model_path << ":" << e.what() << "\n";
    return heapconn::kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return heapconn::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return heapconn::kExitInputError;
  }
}
