#include "symelim/hybrid.hpp"
#include "symelim/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace symelim;

namespace {

int vcgen(const std::string& path, const std::string& output, bool run, const RunOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return kExitParse;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<Vc> vcs;
  try {
    AutomatonFile af = parse_automaton(ss.str());
    if (af.plha) {
      vcs = plha_vcs(*af.plha);
    } else {
      const Family& f = *af.family;
      for (const auto& u : f.updates)
        for (const auto& [a, b] : overlapping_cases(f, u))
          std::cerr << "warning: update '" << u.name << "': guards of cases " << a + 1 << " and " << b + 1
                    << " are not exclusive\n";
      vcs = family_vcs(f);
    }
  } catch (const ParseError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << path << ": " << format_diagnostic(d) << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kExitTaskError;
  }

  std::string text = print_task_file(vcs, "verification conditions generated from " + path);
  if (run) return run_text(text, {}, options, std::cout, std::cerr);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return kExitTaskError;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter constraint synthesis for parametric linear hybrid automata"};
  app.require_subcommand(1);

  RunOptions options;
  std::string task_file, automaton_file, output, smtlib_dir;

  auto* run = app.add_subcommand("run", "Run every task of a task file and print a report");
  run->add_option("task-file", task_file, "YAML task file")->required();
  run->add_flag("--golden", options.golden, "Fixed timestamp and masked runtimes");
  run->add_option("--jobs", options.jobs, "Tasks run concurrently")->check(CLI::PositiveNumber);
  run->add_flag("--dump-reduction", options.dump_reduction, "Include the reduced problems in the report");
  run->add_option("--export-smtlib", smtlib_dir, "Write one SMT-LIB script per task into this directory");

  bool run_generated = false;
  auto* gen = app.add_subcommand("vcgen", "Generate verification-condition tasks from an automaton description");
  gen->add_option("automaton", automaton_file, "Automaton or family description")->required();
  gen->add_option("-o,--output", output, "Write the task file here instead of standard output");
  gen->add_flag("--run", run_generated, "Run the generated tasks and print the report");
  gen->add_flag("--golden", options.golden, "Fixed timestamp and masked runtimes (with --run)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }
  if (!smtlib_dir.empty()) options.smtlib_dir = smtlib_dir;

  if (*run) return run_file(task_file, options, std::cout, std::cerr);
  return vcgen(automaton_file, output, run_generated, options);
}
