#include "alphad/cli.hpp"

#include "alphad/error.hpp"
#include "alphad/parser.hpp"
#include "alphad/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace alphad {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string command;
  std::string path;
  bool json = false;
  std::string principle = "fairness";
  std::optional<double> threshold_c;
  std::string fallback = "none";
  int grid = kDefaultGridPoints;
  std::string at;
  double tol = kAhpTol;
  std::string grid_csv;
  std::string t;
};

struct Outcome {
  int code = kExitOk;
  std::optional<Report> report;
  std::string diagnostic;
  std::string extra_output;  // raw text (gen-cyclic)
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidProblem:
      return kExitParse;
    case ErrorKind::Internal:
      return kExitInternal;
    default:
      return kExitSolve;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string beta_note(const AlphaSolution& a) {
  return "consistency c = " + format_double(a.consistency.value) + ", inconsistency beta = " +
         format_double(a.inconsistency.value);
}

Problem apply_principle(const Problem& p, const Options& o, Report& report) {
  const bool has_rules = !p.binding().rules.empty();
  if (o.principle == "expert") {
    if (!has_rules) throw UsageError("--principle expert needs bind: lines in the problem file");
    return p;
  }
  if (has_rules) report.warnings.push_back("bind: lines ignored under the fairness principle (use --principle expert)");
  return p.with_fairness();
}

Fallback fallback_of(const std::string& s) {
  if (s == "uniform") return Fallback::Uniform;
  if (s == "ignorance") return Fallback::Ignorance;
  return Fallback::None;
}

void run_regimes(const Problem& p, const Options& o, Report& report) {
  RegimeBlock block;
  block.solution = solve_triangular(p);
  const auto ineqs = inequalities_of(p);
  block.report = regime_analysis(block.solution, ineqs);
  if (!o.at.empty()) {
    const auto eq = o.at.find('=');
    if (eq == std::string::npos) throw UsageError("--at expects NAME=VALUE");
    const std::string name = o.at.substr(0, eq);
    const std::string free = p.criteria().name(block.solution.free_var);
    if (name != free) throw UsageError("--at names " + name + " but the free criterion is " + free);
    const auto value = parse_rational(o.at.substr(eq + 1));
    if (!value || *value <= 0) throw UsageError("--at needs a positive value");
    block.at = to_double(*value);
    block.at_vector = normalized_at(block.solution, *block.at);
  }
  report.regimes = std::move(block);
}

void run_solve(const Problem& original, const Options& o, Report& report) {
  if (original.has_nonlinear() || original.has_inequalities()) {
    report.warnings.push_back("monomial or inequality preferences: reporting ordering regimes");
    run_regimes(original, o, report);
    return;
  }
  const Problem p = apply_principle(original, o, report);
  ConsistencyPolicy policy;
  if (o.threshold_c) {
    policy.threshold_c = *o.threshold_c;
    policy.action = PolicyAction::Reject;
  }
  PriorityResult pr = priority(p, policy);
  report.classification = pr.classification;
  report.alpha = pr.alpha;
  report.priority = pr.vector;
  report.discounts = discount_report(p, pr.vector);

  const bool strong = pr.classification.label == Label::StrongInconsistent;
  if (strong) report.warnings.push_back("strong inconsistency; " + beta_note(pr.alpha));
  if (pr.alpha.discharged) {
    report.warnings.push_back("consistency below threshold " + format_double(policy.threshold_c) +
                              ": result discharged");
  }
  const Fallback fb = fallback_of(o.fallback);
  if (fb == Fallback::None) return;
  if (!strong && !pr.alpha.discharged) {
    report.warnings.push_back("fallback not applied: the problem is neither strongly inconsistent nor discharged");
    return;
  }
  if (fb == Fallback::Uniform) {
    report.priority = apply_fallback(fb, p.size());
    report.source = PrioritySource::UniformFallback;
    report.discounts = discount_report(p, *report.priority);
    report.warnings.push_back("uniform fallback applied; " + beta_note(pr.alpha));
  } else {
    report.priority.reset();
    report.source = PrioritySource::Ignorance;
    report.discounts.clear();
    report.warnings.push_back("total ignorance fallback applied; " + beta_note(pr.alpha));
  }
}

AhpBlock run_ahp_block(const Problem& p, const Options& o) {
  AhpBlock block;
  const AhpMatrix m = build_ahp_matrix(p);
  block.result = ahp_priority(m, o.tol);
  block.discounts = discount_report(p, PriorityVector::from(block.result->vector));
  return block;
}

void write_grid_csv(const Problem& p, const Options& o) {
  std::ofstream out(o.grid_csv, std::ios::binary);
  if (!out) throw UsageError("cannot write " + o.grid_csv);
  for (const auto& name : p.criteria().names()) out << name << ",";
  out << "e\n";
  scan_error_grid(p, o.grid, [&](std::span<const double> x, double e) {
    for (double v : x) out << format_double(v) << ",";
    out << format_double(e) << "\n";
  });
}

Outcome process(const Options& o, const std::string& path) {
  Outcome outcome;
  try {
    Report report;
    report.command = o.command;
    if (o.command == "gen-cyclic") {
      const auto t = parse_rational(o.t);
      if (!t) throw UsageError("--t needs a number, got '" + o.t + "'");
      const Problem p = make_cyclic_example(*t);
      report.problem = p;
      if (!o.json) outcome.extra_output = format_problem(p);
      outcome.report = std::move(report);
      return outcome;
    }

    const Problem problem = parse_problem(read_file(path));
    report.problem = problem;

    if (o.command == "solve") {
      run_solve(problem, o, report);
    } else if (o.command == "classify") {
      report.classification = classify(problem);
    } else if (o.command == "ahp") {
      report.ahp = run_ahp_block(problem, o);
    } else if (o.command == "compare") {
      run_solve(problem, o, report);
      try {
        report.ahp = run_ahp_block(problem, o);
      } catch (const Error& e) {
        AhpBlock block;
        block.error = e.what();
        report.ahp = std::move(block);
      }
    } else if (o.command == "error-min") {
      ErrorMinBlock block;
      block.result = minimize_error(problem, o.grid);
      if (!problem.has_nonlinear()) {
        try {
          const auto pr = priority(problem.with_fairness());
          block.alpha_d_value = eval_error(problem, pr.vector.values());
        } catch (const Error&) {
          // No alpha-discounting vector to compare against.
        }
      }
      if (!o.grid_csv.empty()) write_grid_csv(problem, o);
      report.error_min = std::move(block);
    } else if (o.command == "regimes") {
      run_regimes(problem, o, report);
    }
    outcome.report = std::move(report);
  } catch (const ParseError& e) {
    outcome.code = kExitParse;
    outcome.diagnostic = path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                         ": parse error: " + e.cause();
  } catch (const Error& e) {
    outcome.code = exit_code_for(e.kind());
    outcome.diagnostic = (path.empty() ? std::string() : path + ": ") + "error: " + e.what();
  } catch (const UsageError& e) {
    outcome.code = kExitUsage;
    outcome.diagnostic = std::string("usage error: ") + e.what();
  } catch (const std::exception& e) {
    outcome.code = kExitInternal;
    outcome.diagnostic = std::string("internal error: ") + e.what();
  }
  return outcome;
}

std::vector<std::string> batch_files(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".admp") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int emit(const Options& o, const Outcome& r, std::ostream& out, std::ostream& err) {
  if (!r.diagnostic.empty()) err << r.diagnostic << "\n";
  if (!r.report) return r.code;
  if (o.json) {
    out << dump_canonical(to_json(*r.report));
  } else if (!r.extra_output.empty()) {
    out << r.extra_output;
  } else {
    out << render_text(*r.report);
  }
  return r.code;
}

int run_batch(const Options& o, std::ostream& out, std::ostream& err) {
  const auto files = batch_files(o.path);
  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, process, o, f));
  std::vector<Outcome> results;
  for (auto& j : jobs) results.push_back(j.get());

  int code = kExitOk;
  if (o.json) {
    nlohmann::json batch = nlohmann::json::array();
    for (std::size_t k = 0; k < files.size(); ++k) {
      nlohmann::json item = nlohmann::json::object();
      item["file"] = fs::path(files[k]).filename().string();
      item["exit_code"] = results[k].code;
      item["report"] = results[k].report ? to_json(*results[k].report) : nlohmann::json(nullptr);
      item["error"] = results[k].diagnostic.empty() ? nlohmann::json(nullptr) : nlohmann::json(results[k].diagnostic);
      batch.push_back(item);
      code = std::max(code, results[k].code);
    }
    nlohmann::json doc = nlohmann::json::object();
    doc["batch"] = batch;
    out << dump_canonical(doc);
    for (const auto& r : results) {
      if (!r.diagnostic.empty()) err << r.diagnostic << "\n";
    }
    return code;
  }
  for (std::size_t k = 0; k < files.size(); ++k) {
    out << "== " << fs::path(files[k]).filename().string() << " ==\n";
    code = std::max(code, emit(o, results[k], out, err));
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"alpha-discounting multi-criteria decision engine", "alphad"};
  app.require_subcommand(1);

  auto add_file = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", o.path, what)->required();
    sub->add_flag("--json", o.json, "Emit one canonical JSON document");
  };
  auto add_solve_flags = [&](CLI::App* sub) {
    sub->add_option("--principle", o.principle, "fairness (default) or expert")
        ->check(CLI::IsMember({"fairness", "expert"}));
    sub->add_option("--threshold-c", o.threshold_c, "Discharge results whose consistency is below this value")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--fallback", o.fallback, "Response to strong inconsistency: none, uniform, ignorance")
        ->check(CLI::IsMember({"none", "uniform", "ignorance"}));
  };

  auto* solve = app.add_subcommand("solve", "Priority vector by alpha-discounting (FILE or DIR)");
  add_file(solve, "Problem file or directory of .admp files");
  add_solve_flags(solve);
  auto* classify_cmd = app.add_subcommand("classify", "Consistency classification");
  add_file(classify_cmd, "Problem file");
  auto* ahp = app.add_subcommand("ahp", "AHP eigenvector baseline");
  add_file(ahp, "Problem file");
  ahp->add_option("--tol", o.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
  auto* compare = app.add_subcommand("compare", "Alpha-discounting next to AHP");
  add_file(compare, "Problem file");
  add_solve_flags(compare);
  compare->add_option("--tol", o.tol, "AHP convergence tolerance")->check(CLI::PositiveNumber);
  auto* errmin = app.add_subcommand("error-min", "Minimize the sum of absolute residuals on the simplex");
  add_file(errmin, "Problem file");
  errmin->add_option("--grid", o.grid, "Grid subdivisions")->check(CLI::Range(2, 100000));
  errmin->add_option("--grid-csv", o.grid_csv, "Write the evaluated grid as CSV");
  auto* regimes = app.add_subcommand("regimes", "Ordering regimes of a monomial system");
  add_file(regimes, "Problem file");
  regimes->add_option("--at", o.at, "Normalized vector at NAME=VALUE");
  solve->add_option("--at", o.at, "Normalized vector at NAME=VALUE (monomial problems)");
  auto* gen = app.add_subcommand("gen-cyclic", "Print the three-criteria cyclic problem for ratio t");
  gen->add_option("--t", o.t, "Ratio t > 0")->required();
  gen->add_flag("--json", o.json, "Emit one canonical JSON document");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) o.command = sub->get_name();

  try {
    if (o.command == "solve" && !o.path.empty() && fs::is_directory(o.path)) return run_batch(o, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return emit(o, process(o, o.path), out, err);
}

}  // namespace alphad
