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
#include <vector>

#include "jimplebmc/solver/formula.hpp"
#include "jimplebmc/symex/ssa.hpp"

namespace jimplebmc::symex {

/// Which obligations participate in the disjunction of violations.
struct ObligationSelection {
  enum class Mode { All, Single, Classes } mode = Mode::All;
  std::size_t index = 0;                    // Single
  std::vector<gotoir::PropertyClass> classes;  // Classes

  static ObligationSelection all() { return {}; }
  static ObligationSelection single(std::size_t i) { return {Mode::Single, i, {}}; }
  static ObligationSelection only(std::vector<gotoir::PropertyClass> c) {
    return {Mode::Classes, 0, std::move(c)};
  }
  bool selects(const Obligation& o, std::size_t i) const;
};

/// C and (g1 and not P1 or ... or gn and not Pn). With no selected
/// obligation the result is `false`.
solver::Formula encode_vc(const SsaEquationSet& ssa,
                          const ObligationSelection& selection = ObligationSelection::all());

/// First selected obligation whose guard holds and claim fails in `model`.
std::optional<std::size_t> violated_obligation(const SsaEquationSet& ssa, const solver::Model& model,
                                               const ObligationSelection& selection =
                                                   ObligationSelection::all());

struct TraceStep {
  SourcePos pos;
  std::string function;
  std::string symbol;  // program-level lhs, e.g. `i0` or `r0->member`
  std::string value;
  bool input = false;
};

struct InputValue {
  std::string description;
  gotoir::GotoType type;
  solver::Value value;
  SourcePos pos;
};

struct Counterexample {
  std::vector<TraceStep> steps;
  Obligation violated;
  std::size_t obligation_index = 0;
  std::vector<InputValue> inputs;  // nondet values in consumption order
  solver::Model initial_heap;      // values of the free initial heap arrays
  /// Concrete operands of an overflow claim, used to tell underflow apart.
  std::optional<bool> underflow;
};

/// Reads the trace off a model of encode_vc(ssa). Throws std::logic_error if
/// the model violates no obligation (solver contract breach).
Counterexample build_trace(const solver::Model& model, const SsaEquationSet& ssa,
                           const ObligationSelection& selection = ObligationSelection::all());

}  // namespace jimplebmc::symex
