#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pbwgate/report.hpp"

using namespace pbwgate;

int main(int argc, char **argv) {
  CLI::App app{"pbwgate: PBW obstruction checks for Lie algebra pairs h ⊂ g"};
  std::string command, input, example, json_out, module;
  std::size_t max_degree = 0;

  app.add_option("command", command, "list | validate | alpha | extend | split | oracle | twisted | koszul | all")
      ->required();
  auto *in = app.add_option("--input", input, "problem file");
  auto *ex = app.add_option("--example", example, "catalog entry");
  in->excludes(ex);
  auto *k = app.add_option("--max-degree", max_degree, "filtration degree K (default 4)");
  auto *mod = app.add_option("--module", module, "module for twisted: trivial, n, adjoint or a declared name");
  app.add_option("--json", json_out, "write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (command == "list") {
    for (const auto &name : catalog_list())
      std::cout << name << "\n";
    return 0;
  }

  try {
    if (in->count() == 0 && ex->count() == 0)
      throw InputError("one of --input or --example is required");
    ProblemFile problem = in->count() ? parse_problem_file(input) : catalog_get(example);
    RunOptions opts;
    if (k->count())
      opts.max_degree = max_degree;
    if (mod->count())
      opts.module = module;
    Report report = run_command(command, problem, opts);
    std::cout << report.summary();
    if (!json_out.empty()) {
      std::ofstream os(json_out);
      if (!os)
        throw InputError("cannot write " + json_out);
      os << report.to_json().dump(2) << "\n";
    }
    return report.consistent() ? 0 : 1;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
