/*
 * Copyright (C) 2026 The jimple-bmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line driver: jimple-bmc <file>.jimple... [options]

#include <algorithm>
#include <filesystem>
#include <future>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "jimplebmc/gotoir/printer.hpp"
#include "jimplebmc/opmodels/catalog.hpp"
#include "jimplebmc/verifier/verifier.hpp"

namespace fs = std::filesystem;
using namespace jimplebmc;

namespace {

struct SuiteItem {
  std::string name;
  fs::path path;
};

std::vector<SuiteItem> suite_items(const fs::path& dir) {
  std::vector<SuiteItem> items;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() || (e.is_regular_file() && e.path().extension() == ".jimple"))
      items.push_back({e.path().filename().string(), e.path()});
  }
  std::sort(items.begin(), items.end(), [](auto& a, auto& b) { return a.name < b.name; });
  return items;
}

std::string summary(const verifier::Verdict& v) {
  std::string s = verifier::verdict_kind_name(v.kind);
  if (v.kind == verifier::VerdictKind::Failed && v.counterexample)
    s += " (" + (v.unwinding_failure ? std::string("unwinding") : verifier::property_label(*v.counterexample)) +
         ", line " + std::to_string(v.counterexample->violated.pos.line) + ")";
  if (v.kind == verifier::VerdictKind::Unknown) s += " (" + v.reason + ")";
  return s;
}

int run_suite(const fs::path& dir, const verifier::RunConfig& base, bool json) {
  std::vector<SuiteItem> items = suite_items(dir);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<std::pair<int, std::string>>> running;
  std::vector<std::pair<int, std::string>> results(items.size());
  std::size_t next = 0, done = 0;
  std::vector<std::pair<std::size_t, std::future<std::pair<int, std::string>>>> active;
  while (done < items.size()) {
    while (active.size() < workers && next < items.size()) {
      std::size_t i = next++;
      verifier::RunConfig cfg = base;
      cfg.inputs = {items[i].path};
      active.emplace_back(i, std::async(std::launch::async, [cfg, json]() -> std::pair<int, std::string> {
        try {
          verifier::Verdict v = verifier::verify(cfg);
          return {verifier::exit_code(v), json ? verifier::report_json(v) : summary(v)};
        } catch (const std::exception& e) {
          return {2, std::string("error: ") + e.what()};
        }
      }));
    }
    active.front().second.wait();
    results[active.front().first] = active.front().second.get();
    active.erase(active.begin());
    ++done;
  }
  int code = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::cout << items[i].name << ": " << results[i].second << "\n";
    code = std::max(code, results[i].first);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded model checker for Jimple programs"};
  std::vector<std::string> inputs;
  bool kinduction = false, incremental = false, overflow = false, unwinding = false;
  bool no_bounds = false, no_div = false, no_pointer = false, no_assert = false;
  bool json = false, goto_only = false, list_models = false;
  unsigned unwind = 10;
  std::optional<unsigned> k_max;
  std::optional<std::string> function, solver_path, smt_formula, suite;
  double timeout = 60;

  app.add_option("files", inputs, "Jimple files or directories")->check(CLI::ExistingPath);
  auto* kind = app.add_flag("--k-induction", kinduction, "Use k-induction as the proof rule");
  app.add_flag("--incremental-bmc", incremental, "Increase the bound until a verdict is reached")
      ->excludes(kind);
  app.add_flag("--overflow-check", overflow, "Check signed arithmetic overflow");
  app.add_flag("--unwinding-assertions", unwinding, "Report paths that exceed the unwind bound");
  app.add_flag("--no-bounds-check", no_bounds, "Do not check array bounds");
  app.add_flag("--no-div-by-zero-check", no_div, "Do not check division by zero");
  app.add_flag("--no-pointer-check", no_pointer, "Do not check null dereferences");
  app.add_flag("--no-assertions", no_assert, "Ignore user assertions");
  app.add_option("--unwind", unwind, "Loop and recursion bound k (default 10)")->check(CLI::PositiveNumber);
  app.add_option("--k-max", k_max, "Largest k for --incremental-bmc and --k-induction (default 10)")
      ->check(CLI::PositiveNumber);
  app.add_option("--function", function, "Entry function (default main)");
  app.add_option("--smt-solver", solver_path, "SMT solver executable (z3 or cvc5)");
  app.add_option("--timeout", timeout, "Per-query solver timeout in seconds (default 60)")
      ->check(CLI::PositiveNumber);
  app.add_option("--smt-formula", smt_formula, "Write the SMT-LIB2 property query to this file");
  app.add_flag("--json-output", json, "Print the verdict as JSON");
  app.add_flag("--goto-functions-only", goto_only, "Print the GOTO program and stop");
  app.add_flag("--list-models", list_models, "List operational models and stop");
  app.add_option("--suite", suite, "Verify every program in a directory, in parallel")
      ->check(CLI::ExistingDirectory);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the exit code of other configuration errors.
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_models) {
      for (const std::string& line : opmodels::describe_catalog()) std::cout << line << "\n";
      return 0;
    }
    verifier::RunConfig config;
    for (const std::string& i : inputs) config.inputs.emplace_back(i);
    config.entry = function;
    config.strategy = kinduction    ? verifier::Strategy::KInduction
                      : incremental ? verifier::Strategy::Incremental
                                    : verifier::Strategy::Bmc;
    config.unwind = config.strategy == verifier::Strategy::Bmc ? unwind : k_max.value_or(10);
    config.unwinding_assertions = unwinding;
    config.solver_path = solver_path;
    config.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
    if (smt_formula) config.smt_formula = fs::path(*smt_formula);
    using gotoir::PropertyClass;
    if (overflow) config.checks.insert(PropertyClass::Overflow);
    if (no_bounds) config.checks.erase(PropertyClass::Bounds);
    if (no_div) config.checks.erase(PropertyClass::DivByZero);
    if (no_pointer) config.checks.erase(PropertyClass::NullDeref);
    if (no_assert) config.checks.erase(PropertyClass::UserAssert);

    if (suite) return run_suite(*suite, config, json);
    if (config.inputs.empty()) {
      std::cerr << "jimple-bmc: no input files (see --help)\n";
      return 2;
    }
    if (goto_only) {
      std::cout << gotoir::pretty_print(verifier::load_program(config.inputs));
      return 0;
    }
    verifier::Verdict v = verifier::verify(config);
    std::cout << (json ? verifier::report_json(v) + "\n" : verifier::report_text(v));
    return verifier::exit_code(v);
  } catch (const std::exception& e) {
    std::cerr << "jimple-bmc: " << e.what() << "\n";
    return 2;
  }
}
