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

#include <filesystem>
#include <span>
#include <string_view>

#include "jimplebmc/jimple/ast.hpp"
#include "jimplebmc/jimple/lexer.hpp"

namespace jimplebmc::jimple {

/// Parses one class from a token stream produced by lex(). Rejects trailing
/// tokens, duplicate/undefined labels, undeclared locals, and constructs
/// outside the supported subset (switches, monitors, exception handlers).
JimpleClass parse_class(std::span<const Token> tokens);

/// lex + parse_class.
JimpleClass parse_class_text(std::string_view text);

/// Reads and parses a `.jimple` file. Error messages are prefixed with the
/// file path.
JimpleClass parse_class_file(const std::filesystem::path& path);

/// Re-checks the static invariants of an already-built class (used for
/// hand-constructed ASTs). Throws SemanticError.
void check_class(const JimpleClass& cls);

}  // namespace jimplebmc::jimple
