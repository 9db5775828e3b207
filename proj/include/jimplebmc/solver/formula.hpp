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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jimplebmc/solver/term.hpp"

namespace jimplebmc::solver {

struct Declaration {
  std::string name;
  Sort sort;
};

/// A closed, well-sorted assertion plus the declarations of its symbols.
struct Formula {
  std::vector<Declaration> declarations;
  Term assertion;

  /// Declares exactly the free symbols of `assertion`, sorted by name.
  static Formula of(const Term& assertion);
  /// Like `of`, but also declares `extra` symbols so that the model covers them.
  static Formula of(const Term& assertion, const std::vector<Term>& extra);
};

/// Concrete value of any sort. Arrays are a default plus explicit entries.
struct Value {
  Sort sort = Sort::boolean();
  std::uint64_t bits = 0;
  std::map<std::uint64_t, std::uint64_t> entries;

  static Value of_bool(bool b) { return {Sort::boolean(), b ? 1u : 0u, {}}; }
  static Value of_bv(std::uint64_t v, unsigned w) { return {Sort::bitvec(w), v & mask(w), {}}; }
  static Value of_array(const Sort& s, std::uint64_t dflt) { return {s, dflt, {}}; }

  bool as_bool() const { return bits != 0; }
  std::int64_t as_signed() const { return to_signed(bits, sort.width()); }
  /// Element lookup for arrays.
  std::uint64_t at(std::uint64_t index) const;

  std::string str() const;
  friend bool operator==(const Value&, const Value&) = default;
};

struct Model {
  std::map<std::string, Value> values;

  const Value* find(const std::string& name) const;
  bool has(const std::string& name) const { return values.count(name) > 0; }
};

/// Evaluates `t` under `model`. Symbols missing from the model evaluate to
/// zero / false / the zero array.
Value evaluate(const Term& t, const Model& model);

}  // namespace jimplebmc::solver
