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

#include <cstdint>
#include <stdexcept>

#include "jimplebmc/solver/formula.hpp"
#include "jimplebmc/solver/smtlib.hpp"

namespace jimplebmc::solver {

/// Raised when a formula is outside the enumerator's limits.
class OracleLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BruteForceResult {
  SolveStatus status = SolveStatus::Unsat;  // Sat or Unsat
  Model model;
  std::uint64_t valuations = 0;  // how many assignments were tried
};

/// Exhaustive enumeration over every declared symbol, in declaration order.
/// Bit-vectors must be at most `width_limit` bits and there may be at most
/// `symbol_limit` symbols; arrays need an index width of at most 3 (eight
/// cells). Returns the first satisfying valuation.
BruteForceResult brute_force(const Formula& formula, unsigned width_limit = 8,
                             unsigned symbol_limit = 4);

}  // namespace jimplebmc::solver
