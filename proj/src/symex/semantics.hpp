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

// Term-level meaning of GOTO expressions, shared by symbolic execution and
// concrete replay. Heap and symbol access go through an Env so that each
// engine keeps its own state representation.

#pragma once

#include <string>

#include "jimplebmc/gotoir/expr.hpp"
#include "jimplebmc/solver/term.hpp"

namespace jimplebmc::symex::detail {

using solver::Term;

inline constexpr std::uint64_t kNullId = 0;
inline constexpr std::uint64_t kStringId = 1;
inline constexpr std::uint64_t kFirstObjectId = 2;

/// Value sort: bool -> Bool, integers -> bv(w), references -> bv32.
solver::Sort value_sort(const gotoir::GotoType& type);
/// Sort inside heap arrays, where booleans are bv1.
unsigned storage_width(const gotoir::GotoType& type);
Term to_storage(const Term& value, const gotoir::GotoType& type);
Term from_storage(const Term& stored, const gotoir::GotoType& type);
Term zero_of(const gotoir::GotoType& type);

std::string field_array_name(const std::string& declaring_class, const std::string& field);
std::string element_array_name(const gotoir::GotoType& element);
inline const std::string kLengthArray = "heap::length";
/// Element arrays are indexed by concat(reference, index).
Term element_key(const Term& ref, const Term& index);

Term apply_cast(const Term& value, const gotoir::GotoType& from, const gotoir::GotoType& to);

class Env {
 public:
  virtual ~Env() = default;
  virtual Term read_symbol(const std::string& name, const gotoir::GotoType& type) = 0;
  virtual Term read_field(const Term& base, const std::string& declaring_class,
                          const std::string& field, const gotoir::GotoType& type) = 0;
  virtual Term read_element(const Term& array, const Term& index,
                            const gotoir::GotoType& element) = 0;
  virtual Term read_length(const Term& array) = 0;
  virtual Term nondet(const gotoir::GotoType& type) = 0;
  virtual Term allocate_object(const std::string& class_name) = 0;
  virtual Term allocate_array(const gotoir::GotoType& element, const Term& size) = 0;
};

Term eval_expr(const gotoir::Expr& e, Env& env);

}  // namespace jimplebmc::symex::detail
