#include "cuspk/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

namespace {

using cuspk::suites::Row;

constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_rows(const std::vector<Row>& rows, const std::string& out) {
  if (out.empty()) {
    for (const auto& r : rows) std::cout << cuspk::suites::to_json(r).dump() << '\n';
    return;
  }
  std::ofstream jsonl(out + ".jsonl"), csv(out + ".csv");
  if (!jsonl || !csv) throw std::runtime_error("cannot open output files with prefix " + out);
  csv << cuspk::suites::csv_header() << '\n';
  for (const auto& r : rows) {
    jsonl << cuspk::suites::to_json(r).dump() << '\n';
    csv << cuspk::suites::csv_line(r) << '\n';
  }
}

void print_summary(const std::vector<Row>& rows) {
  std::map<std::string, int> counts;
  for (const auto& r : rows) ++counts[r.result];
  std::cerr << rows.size() << " rows:";
  for (const auto& [k, n] : counts) std::cerr << ' ' << k << '=' << n;
  std::cerr << '\n';
  for (const auto& r : rows) {
    const bool hard_fail = r.result == cuspk::suites::kFail;
    const bool evidence = r.result == cuspk::suites::kMismatch || r.result == "FAILS_CANDIDATE" || r.result == "UNDECIDED";
    if (hard_fail || evidence)
      std::cerr << (hard_fail ? "VIOLATION " : "NOTE ") << cuspk::suites::to_json(r).dump() << '\n';
  }
}

unsigned resolve_jobs(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("CUSPK_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw UsageError("CUSPK_JOBS must be a positive integer");
  }
  return 1;
}

std::vector<Row> read_rows(const std::vector<std::string>& files) {
  std::vector<Row> rows;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw UsageError(f + ": cannot open");
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
      if (line.empty()) continue;
      try {
        rows.push_back(cuspk::suites::from_json(nlohmann::json::parse(line)));
      } catch (const std::exception& e) {
        throw UsageError(f + ":" + std::to_string(n) + ": " + e.what());
      }
    }
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspk: exact verification sweeps for semigroup, Witt vector, homology and polytope checks"};
  app.require_subcommand(1);

  std::string suite, out;
  std::optional<cuspk::Int> a, b, m_max, r_max, q_max;
  std::vector<cuspk::Int> primes;
  long precision = 128;
  std::size_t budget = cuspk::kDefaultCellBudget;
  int jobs = 0;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "semigroup | witt | kgroups | prop51 | conjB | conjC | all")
      ->required()
      ->check(CLI::IsMember({"semigroup", "witt", "kgroups", "prop51", "conjB", "conjC", "all"}));
  verify->add_option("--a", a, "restrict to the pair (a, b)");
  verify->add_option("--b", b, "restrict to the pair (a, b)");
  verify->add_option("--m-max", m_max, "largest weight m")->check(CLI::PositiveNumber);
  verify->add_option("--p", primes, "primes for the Witt and K-group suites")->delimiter(',');
  verify->add_option("--r-max", r_max, "largest truncation level r")->check(CLI::NonNegativeNumber);
  verify->add_option("--q-max", q_max, "largest K-group degree q")->check(CLI::NonNegativeNumber);
  verify->add_option("--precision", precision, "starting precision in bits for polytope checks")
      ->check(CLI::Range(16L, 1024L));
  verify->add_option("--budget", budget, "cell budget for simplicial and bar complexes")->check(CLI::PositiveNumber);
  verify->add_option("--out", out, "write <out>.jsonl and <out>.csv instead of JSON lines on stdout");
  verify->add_option("--jobs", jobs, "worker threads (overrides CUSPK_JOBS)")->check(CLI::PositiveNumber);

  std::vector<std::string> inputs;
  auto* report = app.add_subcommand("report", "merge report files");
  report->add_option("files", inputs, "JSON-lines reports")->required()->check(CLI::ExistingFile);
  report->add_option("--out", out, "write <out>.jsonl and <out>.csv instead of JSON lines on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      cuspk::suites::SuiteConfig cfg;
      if (a.has_value() != b.has_value()) throw UsageError("--a and --b must be given together");
      if (a) {
        try {
          cfg.pairs = {cuspk::Params(*a, *b)};
        } catch (const cuspk::PreconditionViolation& e) {
          throw UsageError(e.what());
        }
      }
      for (auto p : primes)
        if (!cuspk::is_prime(p)) throw UsageError("--p: " + std::to_string(p) + " is not prime");
      if (!primes.empty()) cfg.primes = primes;
      cfg.m_max = m_max;
      cfg.r_max = r_max;
      cfg.q_max = q_max;
      cfg.precision = precision;
      cfg.budget = budget;
      cfg.jobs = resolve_jobs(jobs);
      const auto rows = cuspk::suites::run_suite(suite, cfg);
      write_rows(rows, out);
      print_summary(rows);
      return cuspk::suites::exit_code(rows);
    }
    const auto merged = cuspk::suites::merge_rows(read_rows(inputs));
    write_rows(merged.rows, out);
    for (const auto& [x, y] : merged.conflicts)
      std::cerr << "CONFLICT\n  " << cuspk::suites::to_json(x).dump() << "\n  " << cuspk::suites::to_json(y).dump()
                << '\n';
    std::cerr << merged.rows.size() << " rows, " << merged.conflicts.size() << " conflicts\n";
    return merged.conflicts.empty() ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
