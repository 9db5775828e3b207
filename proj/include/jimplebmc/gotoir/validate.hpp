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

#include <cstddef>
#include <string>
#include <vector>

#include "jimplebmc/gotoir/program.hpp"

namespace jimplebmc::gotoir {

struct Diagnostic {
  std::string function;  // empty for program-level problems
  std::size_t index = 0;
  std::string message;

  std::string str() const;
};

/// Structural and type checks; the result is empty iff the program is valid.
std::vector<Diagnostic> validate(const GotoProgram& program);

/// Problems with operand types inside `e`; empty when consistent.
std::vector<std::string> check_expr(const Expr& e, const GotoProgram& program);

/// True when a value of type `from` may be stored into a location of type
/// `to`. Pointer types are mutually assignable (the Java verifier has already
/// checked reference compatibility).
bool assignable(const GotoType& to, const GotoType& from);

}  // namespace jimplebmc::gotoir
