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

#include <map>
#include <string>
#include <vector>

#include "jimplebmc/gotoir/program.hpp"
#include "jimplebmc/jimple/ast.hpp"
#include "jimplebmc/jimple/class_table.hpp"

namespace jimplebmc::lowering {

/// `<name>_<ret>_<p1>_..._<pN>`. Primitives use their keyword, references the
/// simple class name, arrays append `Arr` per dimension. Underscores inside
/// names are doubled so that the segments stay unambiguous.
std::string mangle_name(const std::string& method, const jimple::JimpleType& ret,
                        const std::vector<jimple::JimpleType>& params);

/// Program-wide function key `<class>::<mangled>`.
std::string function_key(const std::string& class_name, const std::string& mangled);
std::string function_key(const jimple::MethodSignature& sig);

/// Global backing a static field.
std::string static_field_global(const std::string& class_name, const std::string& field);

/// JVM widths; float and double raise UnsupportedError.
gotoir::GotoType lower_type(const jimple::JimpleType& type);

/// Lowering state for one program: the class table plus everything produced
/// so far.
class LoweringContext {
 public:
  explicit LoweringContext(const jimple::ClassTable& table) : table_(table) {}

  const jimple::ClassTable& table() const { return table_; }
  gotoir::GotoProgram& program() { return program_; }
  const gotoir::GotoProgram& program() const { return program_; }

  /// Layout of `class_name`, computing it (and its superclasses) on demand.
  /// Classes outside the table get an empty layout.
  const gotoir::ClassRecord& record(const std::string& class_name);

  /// Parameter globals of function `key`, receiver first.
  const std::vector<std::string>& parameters(const std::string& key) const;
  void register_parameters(const std::string& key, std::vector<std::string> globals);

  /// Functions synthesized from operational models, created on first call.
  bool has_function(const std::string& key) const;

  void note_unknown(const std::string& what);

 private:
  const jimple::ClassTable& table_;
  gotoir::GotoProgram program_;
  std::map<std::string, std::vector<std::string>> parameters_;
};

/// Record (inherited fields first) and static-field globals of `cls`.
struct LoweredClass {
  gotoir::ClassRecord record;
  std::vector<gotoir::GotoGlobal> globals;
};
LoweredClass lower_class(const jimple::JimpleClass& cls, LoweringContext& ctx);

/// Per-method state: local types and a counter for helper names.
struct MethodScope {
  const jimple::JimpleClass* cls = nullptr;
  const jimple::JimpleMethod* method = nullptr;
  std::string key;
  gotoir::GotoType return_type;
  std::map<std::string, gotoir::GotoType> locals;
  unsigned fresh = 0;

  std::string fresh_name() { return "__bmc_tmp" + std::to_string(fresh++); }
};

MethodScope make_scope(const jimple::JimpleClass& cls, const jimple::JimpleMethod& method);

/// Translation of one statement. Invokes also produce the writes
/// of the callee's parameter globals; intrinsic models expand inline.
std::vector<gotoir::GotoInstruction> lower_statement(const jimple::JimpleStmt& stmt,
                                                     MethodScope& scope, LoweringContext& ctx);

/// Right-hand side of an assignment. `new`/`newarray` become allocation
/// expressions; cmp-family operators become nested conditionals.
gotoir::Expr lower_expr(const jimple::Rvalue& rhs, const MethodScope& scope,
                        LoweringContext& ctx);

gotoir::GotoFunction lower_method(const jimple::JimpleClass& cls,
                                  const jimple::JimpleMethod& method, LoweringContext& ctx);

/// Whole-program lowering: every class and every method with a body.
gotoir::GotoProgram lower_program(const jimple::ClassTable& table);

/// Index of `field` in the layout of `class_name` (following inheritance),
/// or -1.
int field_offset(LoweringContext& ctx, const std::string& class_name, const std::string& field);

/// Name of the static initializer function of a class, if it has one.
std::string clinit_key(const std::string& class_name);

}  // namespace jimplebmc::lowering
