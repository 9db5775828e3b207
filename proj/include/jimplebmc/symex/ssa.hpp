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
#include <optional>
#include <string>
#include <vector>

#include "jimplebmc/error.hpp"
#include "jimplebmc/gotoir/program.hpp"
#include "jimplebmc/solver/term.hpp"

namespace jimplebmc::symex {

enum class EquationKind {
  Assign,  // program assignment (including the parameter prologue)
  Input,   // variable := fresh nondet input
  Heap,    // heap array update
  Phi,     // merge of two paths
  Havoc,   // k-induction step: fresh value at a loop head
};

const char* equation_kind_name(EquationKind k);

/// `lhs := rhs`, where lhs is a fresh SSA symbol defined nowhere else.
struct Equation {
  std::string lhs;       // SSA name, e.g. `Foo::increment_int_int::r0#1`
  std::string variable;  // program-level name before renaming
  solver::Term symbol;   // lhs as a term
  solver::Term rhs;
  solver::Term guard;  // path condition under which the assignment executes
  solver::Term shown;  // value shown in traces (the stored element for heap writes)
  EquationKind kind = EquationKind::Assign;
  std::string function;     // enclosing GOTO function key
  std::string source;       // printed GOTO lhs, e.g. `r0` or `r0->member`
  std::string rhs_source;   // printed GOTO rhs, e.g. `nondet(int32)`
  SourcePos pos;
};

/// Property to check: violated iff guard and not claim.
struct Obligation {
  solver::Term guard;
  solver::Term claim;
  gotoir::PropertyClass property = gotoir::PropertyClass::UserAssert;
  std::string comment;
  std::string claim_source;  // printed GOTO claim
  std::string function;
  std::size_t instruction = 0;  // index in the instrumented function
  SourcePos pos;
  /// Number of assumptions recorded before this obligation; only those
  /// constrain it.
  std::size_t assumptions_before = 0;
  /// Number of equations recorded before this obligation.
  std::size_t equations_before = 0;
};

/// One nondet value consumed along a path, in execution order.
struct Input {
  std::string symbol;  // solver symbol carrying the value
  gotoir::GotoType type;
  std::string description;  // e.g. `@parameter0` or `nondet(int32)`
  solver::Term guard;
  SourcePos pos;
};

struct SsaEquationSet {
  std::vector<Equation> equations;
  /// Path-guarded assumptions (ASSUME, input ranges, assume-after-assert).
  std::vector<solver::Term> assumptions;
  std::vector<Obligation> obligations;
  std::vector<Input> inputs;
  /// Initial heap arrays left unconstrained; their values are inputs too.
  std::vector<solver::Term> initial_heap;
  /// True when some path was cut at the bound (a loop or recursion needed
  /// more than k unwindings).
  bool bound_reached = false;
  /// Obligations that folded to true and were discharged without a solver.
  std::size_t discharged = 0;
};

struct UnrollOptions {
  unsigned unwind = 10;
  /// Emit an unwinding obligation where a path is cut; otherwise assume.
  bool unwinding_assertions = false;
  /// Build the k-induction step case instead of the base case.
  bool induction_step = false;
};

/// Symbolically executes `entry` (and the static initializers before it) with
/// loops and recursion bounded by `options.unwind`. Entry parameter globals
/// are nondet; the receiver is non-null and fresh, and other reference
/// parameters are null or fresh.
SsaEquationSet unroll(const gotoir::GotoProgram& program, const std::string& entry,
                      const UnrollOptions& options);

/// True when the step case can be built: the entry function has exactly one
/// loop and nothing it calls loops or recurses.
bool supports_induction_step(const gotoir::GotoProgram& program, const std::string& entry);

/// Checks the single-assignment and defined-before-use invariants; returns a
/// description of the first violation.
std::optional<std::string> check_ssa(const SsaEquationSet& ssa);

}  // namespace jimplebmc::symex
