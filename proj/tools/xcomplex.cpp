#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "xcomplex/workbench.hpp"

namespace {

constexpr int kVerificationFailed = 1;
constexpr int kBadInput = 2;
constexpr int kUsage = 64;

std::string task_list() {
  std::string s;
  for (const auto& t : xcomplex::kTasks) s += (s.empty() ? "" : " | ") + t;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossed complexes and local-coefficient cohomology workbench"};
  app.usage("xcomplex <task> --input <file> [--out <file>] [--degree n] [--seed k] [--max-dim d]\n  tasks: " +
            task_list());
  std::string task, input, out;
  std::optional<int> degree, max_dim;
  std::optional<std::uint64_t> seed;
  app.add_option("task", task, "Task to run")->check(CLI::IsMember(xcomplex::kTasks));
  app.add_option("--input", input, "Input JSON document")->check(CLI::ExistingFile);
  app.add_option("--out", out, "Write the JSON report here");
  app.add_option("--degree", degree, "Cohomological or complex degree");
  app.add_option("--seed", seed, "Seed, echoed in the report");
  app.add_option("--max-dim", max_dim, "Dimension bound (nerve, bar, hom)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (task.empty() || input.empty()) {
    std::cerr << app.help();
    return kUsage;
  }

  std::ifstream file(input);
  std::stringstream buf;
  buf << file.rdbuf();
  try {
    xcomplex::WorkbenchInput in = xcomplex::parse_input(buf.str());
    if (in.task && *in.task != task) throw xcomplex::InputError("the document is for task '" + *in.task + "'");
    xcomplex::RunOptions opts{degree, max_dim, seed};
    xcomplex::Report report = xcomplex::run_task(task, in, opts);
    std::cout << report.text();
    if (!out.empty()) {
      xcomplex::Json j = report.json();
      if (seed) j["seed"] = *seed;
      std::ofstream os(out);
      if (!os) throw xcomplex::InputError("cannot write " + out);
      os << j.dump(2) << "\n";
    }
    return report.verified ? 0 : kVerificationFailed;
  } catch (const xcomplex::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const xcomplex::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kBadInput;
}
