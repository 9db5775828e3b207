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

#include <string>
#include <string_view>

#include "jimplebmc/gotoir/program.hpp"

namespace jimplebmc::gotoir {

/// Deterministic textual dump, one instruction per line.
std::string pretty_print(const GotoProgram& program);
std::string pretty_print(const GotoFunction& function);
std::string print_instruction(const GotoInstruction& instr, const std::string& function = {});
std::string print_expr(const Expr& e, const std::string& function = {});

/// Reads text produced by pretty_print back into a program. Throws ParseError.
GotoProgram read_program(std::string_view text);

}  // namespace jimplebmc::gotoir
