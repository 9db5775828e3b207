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

#include <optional>
#include <string>

#include "jimplebmc/gotoir/program.hpp"
#include "jimplebmc/symex/ssa.hpp"
#include "jimplebmc/symex/vc.hpp"

namespace jimplebmc::symex {

struct ReplayOutcome {
  enum class Kind {
    Violated,       // an ASSERT (or THROW / unwinding claim) failed
    Completed,      // entry function returned
    BoundExhausted, // a loop or recursion hit the bound without an assertion
    Infeasible,     // an ASSUME failed: the inputs do not describe a real run
  } kind = Kind::Completed;
  gotoir::PropertyClass property = gotoir::PropertyClass::UserAssert;
  std::string function;
  std::size_t instruction = 0;
  SourcePos pos;
  std::string comment;
  std::size_t steps = 0;
};

const char* replay_outcome_name(ReplayOutcome::Kind k);

/// Concretely interprets the instrumented program on the given inputs with
/// the same bound semantics as unroll(). Throws SemanticError when the inputs
/// run out.
ReplayOutcome replay(const gotoir::GotoProgram& program, const std::string& entry,
                     const UnrollOptions& options, const Counterexample& inputs);

/// True when replay hits the same obligation (class, function, instruction).
bool replay_confirms(const ReplayOutcome& outcome, const Counterexample& cex);

}  // namespace jimplebmc::symex
