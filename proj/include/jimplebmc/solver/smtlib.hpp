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
#include <optional>
#include <string>
#include <string_view>

#include "jimplebmc/solver/formula.hpp"

namespace jimplebmc::solver {

/// SMT-LIB2 script: options, QF_ABV, declarations, one assert, check-sat and
/// a get-value over every declaration. Identical formulas give identical text.
std::string emit_smtlib2(const Formula& formula);

/// SMT-LIB symbol spelling, quoted with |...| when needed.
std::string smt_symbol(const std::string& name);

enum class SolveStatus { Sat, Unsat, Unknown };

const char* solve_status_name(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  Model model;         // total over the declarations when Sat
  std::string reason;  // for Unknown
};

struct SolverConfig {
  std::string path;  // executable
  std::chrono::milliseconds timeout{60000};
};

/// Picks the solver: explicit path, then $JIMPLE_BMC_SOLVER, then z3/cvc5 on
/// PATH. Throws ConfigError when none is usable.
SolverConfig find_solver(const std::optional<std::string>& explicit_path,
                         std::chrono::milliseconds timeout = std::chrono::milliseconds(60000));

/// Runs the solver process on the emitted script. Timeouts and crashes give
/// Unknown.
SolveResult solve(const Formula& formula, const SolverConfig& config);

/// Parses solver output (`sat` + get-value response) against the declarations.
SolveResult parse_solver_output(std::string_view output, const Formula& formula);

}  // namespace jimplebmc::solver
