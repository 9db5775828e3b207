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

#include "jimplebmc/jimple/ast.hpp"

namespace jimplebmc::jimple {

/// Renders a class in Soot's textual layout. parse_class_text(print_class(c))
/// is structurally equal to c.
std::string print_class(const JimpleClass& cls);

std::string print_operand(const Operand& op);

}  // namespace jimplebmc::jimple
