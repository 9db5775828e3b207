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

#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jimplebmc/gotoir/program.hpp"
#include "jimplebmc/solver/smtlib.hpp"
#include "jimplebmc/symex/instrument.hpp"
#include "jimplebmc/symex/replay.hpp"
#include "jimplebmc/symex/vc.hpp"

namespace jimplebmc::verifier {

enum class Strategy { Bmc, Incremental, KInduction };

const char* strategy_name(Strategy s);

/// Everything a run needs besides the program.
struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::optional<std::string> entry;  // defaults to `main`
  symex::CheckSet checks = symex::default_checks();
  Strategy strategy = Strategy::Bmc;
  unsigned unwind = 10;  // k for bmc, k-max for the iterative strategies
  bool unwinding_assertions = false;
  std::optional<std::string> solver_path;
  std::chrono::milliseconds timeout{60000};
  std::optional<std::filesystem::path> smt_formula;  // dump of the last property query
};

/// Options shared by the strategies once the solver has been located.
struct VerifyOptions {
  symex::CheckSet checks = symex::default_checks();
  bool unwinding_assertions = false;
  solver::SolverConfig solver;
  std::optional<std::filesystem::path> smt_formula;
};

enum class VerdictKind { Failed, Successful, SafeWithinBound, Unknown };

const char* verdict_kind_name(VerdictKind k);

struct ObligationStatus {
  gotoir::PropertyClass property;
  std::string comment;
  std::string function;
  SourcePos pos;
  std::string status;  // "violated", "not violated", "discharged"
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  Strategy strategy = Strategy::Bmc;
  std::string entry;
  unsigned bound = 0;  // k at which the verdict was reached
  std::optional<symex::Counterexample> counterexample;
  std::optional<symex::ReplayOutcome> replay;
  /// The failure is an unwinding assertion rather than a program property.
  bool unwinding_failure = false;
  std::string reason;  // for Unknown, and how Successful was established
  std::vector<ObligationStatus> obligations;
  std::vector<std::string> unknown_calls;
  unsigned solver_calls = 0;
  double seconds = 0;
};

/// Parses every `.jimple` file (directories are searched recursively), builds
/// the class table and lowers it to a validated GOTO program.
gotoir::GotoProgram load_program(const std::vector<std::filesystem::path>& inputs);

/// Resolves `--function`: a full key (`Cls::name_ret_params`), a mangled name,
/// or a plain method name that must be unambiguous. Empty selects `main`.
std::string resolve_entry(const gotoir::GotoProgram& program,
                          const std::optional<std::string>& selector);

Verdict run_bmc(const gotoir::GotoProgram& program, const std::string& entry, unsigned k,
                const VerifyOptions& options);
Verdict run_incremental(const gotoir::GotoProgram& program, const std::string& entry,
                        unsigned k_max, const VerifyOptions& options);
Verdict run_kinduction(const gotoir::GotoProgram& program, const std::string& entry,
                       unsigned k_max, const VerifyOptions& options);

/// Loads, resolves the entry, locates the solver and runs the configured
/// strategy.
Verdict verify(const RunConfig& config);

/// 0 success (including safe within bound), 1 failure found, 2 unknown.
int exit_code(const Verdict& v);

/// Human-readable verdict with trace.
std::string report_text(const Verdict& v);
/// Machine-readable verdict (`--json-output`).
std::string report_json(const Verdict& v);

/// Name used when printing the violated property; overflow claims whose
/// exact result is negative are reported as underflow.
std::string property_label(const symex::Counterexample& cex);

}  // namespace jimplebmc::verifier
