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

#include <set>

#include "jimplebmc/gotoir/program.hpp"

namespace jimplebmc::symex {

using CheckSet = std::set<gotoir::PropertyClass>;

/// Division by zero, bounds, null dereference and user assertions. Overflow
/// is opt-in (`--overflow-check`).
CheckSet default_checks();

/// Inserts an ASSERT before every instruction whose evaluation could raise an
/// enabled property: signed +, -, * overflow; zero divisors; array bounds;
/// null bases of member, index, length and receiver positions. Checks on a
/// subexpression precede checks on its parents, and a null check precedes the
/// bounds check of the same access. Existing ASSERTs are kept.
gotoir::GotoProgram instrument(const gotoir::GotoProgram& program, const CheckSet& checks);

}  // namespace jimplebmc::symex
