// Acceptance harness: one pass/fail line per criterion.
//
// Criteria 1-8 run the in-process check suite at full sample sizes with
// seed 1; criterion 9 shells out to the CLI and compares the quick-mode
// reproduction against the full run, verdict by verdict.  Exit code 0 means
// every criterion passed.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "reproduce.hpp"

namespace {

using subfrac::tools::CheckResult;

void print_line(int criterion, bool pass, const std::string& name, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << name << " ("
            << detail << ")\n";
}

std::string row_summary(const CheckResult& c) {
  std::size_t ok = 0;
  for (const auto& r : c.rows) ok += r.pass ? 1 : 0;
  std::ostringstream os;
  os << ok << "/" << c.rows.size() << " rows, " << c.wall_ms << " ms";
  for (const auto& r : c.rows) {
    if (!r.pass) os << "; FAILED " << r.name << " = " << r.value << " vs " << r.threshold;
  }
  return os.str();
}

// Map check name -> pass flag from a summary.json written by reproduce-all.
std::map<std::string, bool> verdicts_from_summary(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("cannot open " + file.string());
  nlohmann::json j;
  is >> j;
  std::map<std::string, bool> out;
  for (const auto& check : j.at("results").at("checks"))
    out[check.at("name").get<std::string>()] = check.at("pass").get<bool>();
  out["__all_pass"] = j.at("results").at("all_pass").get<bool>();
  return out;
}

bool run_cli(const std::string& args) {
  const std::string cmd = std::string(SUBFRAC_CLI_PATH) + " " + args + " > /dev/null";
  return std::system(cmd.c_str()) == 0;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  subfrac::tools::SuiteParams sp;
  sp.quick = false;
  sp.seed = 1;

  int criterion = 0;
  bool all_pass = true;

  const auto checks = subfrac::tools::run_acceptance_suite(sp);
  for (const auto& c : checks) {
    ++criterion;
    print_line(criterion, c.pass, c.name, row_summary(c));
    all_pass = all_pass && c.pass;
  }

  // Criterion 9: the packaged reproduction in quick mode finishes inside its
  // budget and reaches the same verdicts as the full run.
  ++criterion;
  const auto root = std::filesystem::temp_directory_path() /
                    ("subfrac_acceptance_" + std::to_string(::getpid()));
  const auto quick_dir = root / "quick";
  const auto full_dir = root / "full";
  bool pass9 = false;
  std::string detail;
  try {
    std::filesystem::create_directories(root);
    const auto t0 = Clock::now();
    const bool quick_ok =
        run_cli("reproduce-all --quick --seed 1 --out " + quick_dir.string());
    const double quick_s =
        std::chrono::duration<double>(Clock::now() - t0).count();
    const bool full_ok = run_cli("reproduce-all --seed 1 --out " + full_dir.string());

    if (!quick_ok || !full_ok) {
      detail = "CLI exit codes: quick " + std::to_string(quick_ok) + ", full " +
               std::to_string(full_ok);
    } else {
      const auto quick_v = verdicts_from_summary(quick_dir / "summary.json");
      const auto full_v = verdicts_from_summary(full_dir / "summary.json");
      const bool same = quick_v == full_v && quick_v.size() > 1;
      const bool in_budget = quick_s < 60.0;
      pass9 = same && in_budget;
      std::ostringstream os;
      os << "quick " << quick_s << " s vs 60 s budget, " << quick_v.size() - 1
         << " verdicts " << (same ? "identical" : "DIFFER");
      detail = os.str();
    }
  } catch (const std::exception& e) {
    detail = std::string("error: ") + e.what();
  }
  print_line(criterion, pass9, "reproduce-all-quick", detail);
  all_pass = all_pass && pass9;
  if (pass9) {
    std::error_code ec;
    std::filesystem::remove_all(root, ec);
  } else {
    std::cout << "  artifacts kept at " << root << "\n";
  }

  std::cout << (all_pass ? "ACCEPTANCE: all criteria passed"
                         : "ACCEPTANCE: at least one criterion failed")
            << std::endl;
  return all_pass ? 0 : 1;
}
