#include "symelim/runner.hpp"

#include "symelim/printer.hpp"
#include "symelim/smtlib.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace symelim {

namespace {

std::string seconds(double s) {
  std::ostringstream os;
  os << std::setprecision(4) << s;
  return os.str();
}

std::string milliseconds(double s) { return seconds(s * 1000); }

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  localtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%d %H:%M:%S");
  return os.str();
}

void write_atomically(const std::filesystem::path& target, const std::string& content) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    f << content;
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

Valuation witness_of(const SatResult& r, const ReducedProblem& rp) {
  Valuation w;
  for (const auto& [t, v] : r.extended) {
    if (t.is_constant() && rp.definitions.definition_of(t)) continue;
    w.emplace(t, v);
  }
  return w;
}

void indent_block(std::ostringstream& os, const std::string& text, const std::string& pad) {
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) os << pad << line << "\n";
}

}  // namespace

TaskResult run_task(const Task& task, const RunOptions& options) {
  TaskResult r;
  r.task = task.name;
  auto start = std::chrono::steady_clock::now();
  try {
    if (options.dump_reduction || options.smtlib_dir) {
      ReducedProblem rp = reduce_task(task);
      if (options.dump_reduction) r.reduction = rp.dump();
      if (options.smtlib_dir) write_atomically(*options.smtlib_dir / (task.name + ".smt2"), export_smtlib(rp));
    }
    if (task.mode == TaskMode::CheckSat) {
      ReducedProblem rp = reduce_task(task);
      SatResult s = check_sat(rp);
      r.outcome = s.verdict == SatVerdict::Sat ? Outcome::Sat : Outcome::Unsat;
      if (s.verdict == SatVerdict::Sat) r.witness = witness_of(s, rp);
      r.stats = s.stats;
      r.sat = std::move(s);
    } else {
      ConstraintResult c = generate_constraint(task);
      r.outcome = Outcome::Constraint;
      r.stats = c.stats;
      r.constraint = std::move(c);
    }
  } catch (const std::exception& e) {
    r.outcome = Outcome::Error;
    r.error = e.what();
  }
  r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<TaskResult> run_tasks(const std::vector<Task>& tasks, const RunOptions& options) {
  std::vector<TaskResult> results(tasks.size());
  unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(tasks.size())));
  if (jobs <= 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) results[k] = run_task(tasks[k], options);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < tasks.size();) results[k] = run_task(tasks[k], options);
    });
  for (auto& t : pool) t.join();
  return results;
}

std::string format_report(const std::vector<TaskResult>& results, const RunOptions& options) {
  auto runtime = [&](double s) { return options.golden ? std::string("'masked'") : seconds(s); };
  auto ms = [&](double s) { return options.golden ? std::string("'masked'") : milliseconds(s); };
  double sum = 0;
  for (const auto& r : results) sum += r.runtime;

  std::ostringstream os;
  os << "Metadata:\n";
  os << "    Date: '" << (options.golden ? std::string("GOLDEN") : timestamp()) << "'\n";
  os << "    Number of Tasks: " << results.size() << "\n";
  os << "    Runtime Sum (s): " << runtime(sum) << "\n";
  for (const auto& r : results) {
    os << r.task << ":\n";
    switch (r.outcome) {
      case Outcome::Constraint: os << "    Result: " << to_string(r.constraint->formula) << "\n"; break;
      case Outcome::Unsat: os << "    Result: unsat\n"; break;
      case Outcome::Sat:
        os << "    Result: sat\n";
        os << "    Model:\n";
        for (const auto& [t, v] : r.witness) os << "        " << to_string(t) << ": '" << v.get_str() << "'\n";
        break;
      case Outcome::Error: os << "    Error: '" << r.error << "'\n"; break;
    }
    os << "    Runtime (s): " << runtime(r.runtime) << "\n";
    if (r.outcome == Outcome::Error) continue;
    os << "    Statistics:\n";
    for (const auto& st : r.stats.steps) {
      bool simp = st.name == "simplification";
      os << "        (step) " << st.name << (simp ? " (internal simplifier)" : "") << ":\n";
      os << "            time (ms): " << ms(st.seconds) << "\n";
      if (st.name == "reduction") {
        os << "            instances: '" << r.stats.instances << "'\n";
        os << "            definitions: '" << r.stats.definitions << "'\n";
        os << "            congruence_axioms: '" << r.stats.congruence << "'\n";
      } else if (st.name == "classification") {
        os << "            eliminated_constants: '" << r.stats.eliminated << "'\n";
      } else if (simp) {
        os << "            num_atoms_formula_before_assumptions: '" << r.stats.atoms_before << "'\n";
        os << "            num_atoms_formula_after_assumptions: '" << r.stats.atoms_after << "'\n";
      }
    }
    if (!r.reduction.empty()) {
      os << "    Reduction: |\n";
      indent_block(os, r.reduction, "        ");
    }
  }
  return os.str();
}

int run_text(const std::string& text, const std::filesystem::path& base_dir, const RunOptions& options,
             std::ostream& out, std::ostream& err) {
  std::vector<Task> tasks;
  try {
    tasks = parse_tasks(text, base_dir);
  } catch (const ParseError& e) {
    for (const auto& d : e.diagnostics()) err << format_diagnostic(d) << "\n";
    return kExitParse;
  }
  if (options.smtlib_dir) std::filesystem::create_directories(*options.smtlib_dir);
  std::vector<TaskResult> results = run_tasks(tasks, options);
  out << format_report(results, options) << std::flush;
  int code = kExitOk;
  for (const auto& r : results) {
    if (r.outcome != Outcome::Error) continue;
    err << r.task << ": " << r.error << "\n";
    code = kExitTaskError;
  }
  return code;
}

int run_file(const std::filesystem::path& file, const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "cannot read " << file.string() << "\n";
    return kExitParse;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return run_text(ss.str(), file.parent_path(), options, out, err);
}

}  // namespace symelim
