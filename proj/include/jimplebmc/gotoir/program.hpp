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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jimplebmc/error.hpp"
#include "jimplebmc/gotoir/expr.hpp"
#include "jimplebmc/gotoir/type.hpp"

namespace jimplebmc::gotoir {

/// Property classes carried by ASSERT instructions. Underflow shares the
/// overflow claim and is told apart only when a counterexample is reported.
enum class PropertyClass {
  Overflow,
  DivByZero,
  Bounds,
  NullDeref,
  UserAssert,
  UncaughtException,
  Unwinding,
};

const char* property_class_name(PropertyClass c);
std::optional<PropertyClass> property_class_from_name(std::string_view name);

enum class InstrKind {
  Assign,
  Decl,
  Dead,
  FunctionCall,
  Label,
  Goto,
  If,
  Skip,
  Return,
  Throw,
  Assert,
  Assume,
  EndFunction,
};

const char* instr_kind_name(InstrKind kind);

/// One GOTO instruction. Which fields are meaningful depends on `kind`:
///   Assign        lhs = expr
///   Decl / Dead   name (+ type for Decl)
///   FunctionCall  [lhs =] name(args)
///   Label / Goto  name is the label
///   If            expr is the condition, name the target label
///   Return        optional expr
///   Throw         expr
///   Assert        expr is the claim; property + comment describe it
///   Assume        expr
struct GotoInstruction {
  InstrKind kind = InstrKind::Skip;
  std::optional<Expr> lhs;
  std::optional<Expr> expr;
  std::string name;
  GotoType type;
  std::vector<Expr> args;
  PropertyClass property = PropertyClass::UserAssert;
  std::string comment;
  /// Part of the parameter-reading prologue, which executes as one atomic step.
  bool atomic = false;
  SourceTag tag;

  static GotoInstruction assign(Expr lhs, Expr rhs, SourcePos pos = {});
  static GotoInstruction decl(std::string name, const GotoType& type, SourcePos pos = {});
  static GotoInstruction dead(std::string name, SourcePos pos = {});
  static GotoInstruction function_call(std::optional<Expr> lhs, std::string function,
                                       std::vector<Expr> args, SourcePos pos = {});
  static GotoInstruction label(std::string label, SourcePos pos = {});
  static GotoInstruction goto_(std::string label, SourcePos pos = {});
  static GotoInstruction if_(Expr condition, std::string label, SourcePos pos = {});
  static GotoInstruction skip(SourcePos pos = {});
  static GotoInstruction return_(std::optional<Expr> value, SourcePos pos = {});
  static GotoInstruction throw_(Expr value, SourcePos pos = {});
  static GotoInstruction assert_(Expr claim, PropertyClass property, std::string comment,
                                 SourcePos pos = {});
  static GotoInstruction assume(Expr condition, SourcePos pos = {});
  static GotoInstruction end_function();

  SourcePos pos() const { return tag.pos; }

  friend bool operator==(const GotoInstruction&, const GotoInstruction&) = default;
};

struct GotoFunction {
  /// Program-wide key `<class>::<mangled>`.
  std::string name;
  GotoType return_type = GotoType::void_type();
  /// Parameter globals in calling order; the receiver global comes first.
  std::vector<std::string> parameters;
  std::vector<GotoInstruction> body;

  /// Part after the last `::`, e.g. `increment_int_int`.
  std::string display_name() const;
  /// Part before the last `::`.
  std::string class_name() const;
  std::optional<std::size_t> label_index(const std::string& label) const;

  friend bool operator==(const GotoFunction&, const GotoFunction&) = default;
};

struct GotoGlobal {
  std::string name;
  GotoType type;
  /// Value stored before the entry function runs; absent means nondet for
  /// parameter globals of the entry function and irrelevant otherwise.
  std::optional<Expr> initial;

  friend bool operator==(const GotoGlobal&, const GotoGlobal&) = default;
};

struct GotoProgram {
  std::map<std::string, GotoFunction> functions;
  std::vector<GotoGlobal> globals;
  std::map<std::string, ClassRecord> records;
  /// Signatures of calls and fields that had no body and no operational model.
  std::vector<std::string> unknown_calls;
  /// Static initializers, run in this order before the entry function.
  std::vector<std::string> initializers;

  const GotoFunction* find_function(const std::string& name) const;
  const GotoGlobal* find_global(const std::string& name) const;
  const ClassRecord* find_record(const std::string& name) const;
  /// Adds a global unless one with the same name exists.
  void add_global(GotoGlobal global);

  friend bool operator==(const GotoProgram&, const GotoProgram&) = default;
};

/// Control-flow successors of instruction `index`, sorted ascending:
/// GOTO -> {target}, IF -> {target, index+1}, RETURN/THROW/END_FUNCTION -> {},
/// anything else -> {index+1}.
std::vector<std::size_t> successors(const GotoFunction& function, std::size_t index);

/// Name of the global backing parameter `@this`/`@parameterN` of `function`.
std::string parameter_global_name(const std::string& function, const std::string& at_name);

}  // namespace jimplebmc::gotoir
