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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jimplebmc/gotoir/program.hpp"
#include "jimplebmc/jimple/ast.hpp"
#include "jimplebmc/jimple/class_table.hpp"

namespace jimplebmc::opmodels {

enum class ModelKind {
  Intrinsic,      // expands inline at the call site
  SyntheticBody,  // becomes an ordinary GOTO function
  Havoc,          // result is a fresh nondet value of the declared type
};

const char* model_kind_name(ModelKind kind);

/// What an inline expansion sees of the call it replaces.
struct CallSite {
  std::optional<gotoir::Expr> lhs;  // result place, if the value is used
  std::vector<gotoir::Expr> args;   // receiver first for instance calls
  SourcePos pos;
  /// Returns a fresh local name; the expansion must DECL it itself.
  std::function<std::string()> fresh_name;
};

using Expansion = std::function<std::vector<gotoir::GotoInstruction>(const CallSite&)>;

struct OperationalModel {
  std::string class_name;
  std::string method_name;
  std::vector<jimple::JimpleType> params;
  jimple::JimpleType return_type;
  bool is_static = true;
  ModelKind kind = ModelKind::Intrinsic;
  /// Intrinsic expansion, or the body of a synthetic function (then `args`
  /// holds the parameter globals and the result goes through RETURN).
  Expansion expand;

  jimple::MethodSignature signature() const {
    return {class_name, return_type, method_name, params};
  }
};

/// Model for a static field of a library class.
struct StaticFieldModel {
  std::string class_name;
  std::string field_name;
  /// Value the backing global holds before the program starts.
  gotoir::Expr initial;
};

/// The compiled-in catalog, in a fixed order.
const std::vector<OperationalModel>& catalog();
const std::vector<StaticFieldModel>& static_field_catalog();

const OperationalModel* find_model(const jimple::MethodSignature& sig);
const StaticFieldModel* find_static_field(std::string_view class_name,
                                          std::string_view field_name);

/// True for library classes the checker knows about; a program may extend
/// them without providing their Jimple.
bool is_modeled_external(std::string_view class_name);

struct UserFunction {
  jimple::ResolvedMethod method;
};
struct ModelCall {
  const OperationalModel* model;
};
struct UnknownCall {};

using CallResolution = std::variant<UserFunction, ModelCall, UnknownCall>;

/// User code first, then the catalog, then unknown.
CallResolution resolve_call(const jimple::MethodSignature& sig, const jimple::ClassTable& table);

/// Allocation of a `length`-element array into `target`, preceded by a
/// bounds check on the length; with an initializer, a counting loop stores it
/// into every element. Loop labels and the counter come from `fresh_name`.
std::vector<gotoir::GotoInstruction> array_init_model(
    const gotoir::GotoType& element, const gotoir::Expr& length, const gotoir::Expr& target,
    const std::optional<gotoir::Expr>& initializer,
    const std::function<std::string()>& fresh_name, SourcePos pos = {});

/// One line per model, `<signature>  kind`, for `--list-models`.
std::vector<std::string> describe_catalog();

}  // namespace jimplebmc::opmodels
