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

// Typed AST for one Jimple compilation unit (one class per file).
//
// Expressions follow the three-address shape: operands are immediates
// (locals or constants), so no expression nests an operator. Every node
// carries a SourceTag; tags never participate in equality.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jimplebmc/error.hpp"
#include "jimplebmc/jimple/types.hpp"

namespace jimplebmc::jimple {

struct LocalRef {
  std::string name;
  friend bool operator==(const LocalRef&, const LocalRef&) = default;
};
struct IntConstant {
  std::int64_t value = 0;
  bool is_long = false;
  friend bool operator==(const IntConstant&, const IntConstant&) = default;
};
struct FloatConstant {
  std::string text;
  friend bool operator==(const FloatConstant&, const FloatConstant&) = default;
};
struct NullConstant {
  friend bool operator==(const NullConstant&, const NullConstant&) = default;
};
struct StringConstant {
  std::string value;
  friend bool operator==(const StringConstant&, const StringConstant&) = default;
};

/// A three-address operand.
struct Operand {
  std::variant<LocalRef, IntConstant, FloatConstant, NullConstant, StringConstant> value;
  SourceTag tag;

  const LocalRef* local() const { return std::get_if<LocalRef>(&value); }
  friend bool operator==(const Operand&, const Operand&) = default;
};

/// `<C: T name>`
struct FieldSignature {
  std::string class_name;
  JimpleType type;
  std::string name;

  std::string str() const;
  friend bool operator==(const FieldSignature&, const FieldSignature&) = default;
};

/// `<C: R name(P1,P2)>`
struct MethodSignature {
  std::string class_name;
  JimpleType return_type;
  std::string name;
  std::vector<JimpleType> params;

  std::string str() const;
  friend bool operator==(const MethodSignature&, const MethodSignature&) = default;
};

enum class BinaryOp {
  Add, Sub, Mul, Div, Rem,
  And, Or, Xor, Shl, Shr, Ushr,
  Cmp, Cmpl, Cmpg,
  Eq, Ne, Lt, Le, Gt, Ge
};

const char* binary_op_text(BinaryOp op);
bool is_relational(BinaryOp op);

enum class InvokeKind { Virtual, Special, Static };

const char* invoke_kind_text(InvokeKind kind);

struct BinaryExpr {
  BinaryOp op = BinaryOp::Add;
  Operand lhs;
  Operand rhs;
  friend bool operator==(const BinaryExpr&, const BinaryExpr&) = default;
};
struct NegExpr {
  Operand operand;
  friend bool operator==(const NegExpr&, const NegExpr&) = default;
};
struct CastExpr {
  JimpleType type;
  Operand operand;
  friend bool operator==(const CastExpr&, const CastExpr&) = default;
};
struct NewExpr {
  std::string class_name;
  friend bool operator==(const NewExpr&, const NewExpr&) = default;
};
struct NewArrayExpr {
  JimpleType element;
  Operand size;
  friend bool operator==(const NewArrayExpr&, const NewArrayExpr&) = default;
};
struct LengthExpr {
  Operand array;
  friend bool operator==(const LengthExpr&, const LengthExpr&) = default;
};
struct InstanceFieldRef {
  std::string base;
  FieldSignature field;
  friend bool operator==(const InstanceFieldRef&, const InstanceFieldRef&) = default;
};
struct StaticFieldRef {
  FieldSignature field;
  friend bool operator==(const StaticFieldRef&, const StaticFieldRef&) = default;
};
struct ArrayRef {
  std::string base;
  Operand index;
  friend bool operator==(const ArrayRef&, const ArrayRef&) = default;
};
struct InvokeExpr {
  InvokeKind kind = InvokeKind::Static;
  std::optional<std::string> receiver;  // absent for staticinvoke
  MethodSignature method;
  std::vector<Operand> args;
  friend bool operator==(const InvokeExpr&, const InvokeExpr&) = default;
};

/// Right-hand side of an assignment.
struct Rvalue {
  std::variant<Operand, BinaryExpr, NegExpr, CastExpr, NewExpr, NewArrayExpr,
               LengthExpr, InstanceFieldRef, StaticFieldRef, ArrayRef>
      value;
  SourceTag tag;
  friend bool operator==(const Rvalue&, const Rvalue&) = default;
};

/// Assignable location.
struct Place {
  std::variant<LocalRef, InstanceFieldRef, StaticFieldRef, ArrayRef> value;
  SourceTag tag;
  friend bool operator==(const Place&, const Place&) = default;
};

struct DeclarationStmt {
  std::string name;
  JimpleType type;
  friend bool operator==(const DeclarationStmt&, const DeclarationStmt&) = default;
};
/// `r0 := @this: Foo;` / `i0 := @parameter0: int;`
struct IdentityStmt {
  std::string local;
  std::string source;  // "@this" or "@parameterN"
  JimpleType type;

  bool is_this() const { return source == "@this"; }
  /// N for `@parameterN`, -1 for `@this`.
  int parameter_index() const;
  friend bool operator==(const IdentityStmt&, const IdentityStmt&) = default;
};
struct AssignStmt {
  Place lhs;
  Rvalue rhs;
  friend bool operator==(const AssignStmt&, const AssignStmt&) = default;
};
struct LabelStmt {
  std::string label;
  friend bool operator==(const LabelStmt&, const LabelStmt&) = default;
};
struct GotoStmt {
  std::string target;
  friend bool operator==(const GotoStmt&, const GotoStmt&) = default;
};
struct IfStmt {
  BinaryExpr condition;
  std::string target;
  friend bool operator==(const IfStmt&, const IfStmt&) = default;
};
/// Invocation as a statement; `lhs` holds the result local for `v = invoke`.
struct InvokeStmt {
  std::optional<std::string> lhs;
  InvokeExpr call;
  friend bool operator==(const InvokeStmt&, const InvokeStmt&) = default;
};
struct ReturnStmt {
  std::optional<Operand> value;
  friend bool operator==(const ReturnStmt&, const ReturnStmt&) = default;
};
struct ThrowStmt {
  Operand value;
  friend bool operator==(const ThrowStmt&, const ThrowStmt&) = default;
};
struct BreakpointStmt {
  friend bool operator==(const BreakpointStmt&, const BreakpointStmt&) = default;
};
struct NopStmt {
  friend bool operator==(const NopStmt&, const NopStmt&) = default;
};

struct JimpleStmt {
  std::variant<DeclarationStmt, IdentityStmt, AssignStmt, LabelStmt, GotoStmt,
               IfStmt, InvokeStmt, ReturnStmt, ThrowStmt, BreakpointStmt, NopStmt>
      node;
  SourceTag tag;

  SourcePos pos() const { return tag.pos; }
  friend bool operator==(const JimpleStmt&, const JimpleStmt&) = default;
};

enum class MethodKind { Virtual, Static };

struct JimpleLocal {
  std::string name;
  JimpleType type;
  friend bool operator==(const JimpleLocal&, const JimpleLocal&) = default;
};

struct JimpleMethod {
  std::vector<std::string> modifiers;
  std::string name;
  JimpleType return_type;
  std::vector<JimpleType> params;
  MethodKind kind = MethodKind::Virtual;
  std::vector<std::string> throws;
  bool has_body = true;  // false for abstract/native declarations
  std::vector<JimpleLocal> locals;
  std::vector<JimpleStmt> body;  // declarations first, then identities, then code
  SourceTag tag;

  MethodSignature signature(const std::string& class_name) const {
    return {class_name, return_type, name, params};
  }
  friend bool operator==(const JimpleMethod&, const JimpleMethod&) = default;
};

struct JimpleField {
  std::vector<std::string> modifiers;
  std::string name;
  JimpleType type;
  bool is_static = false;
  SourceTag tag;
  friend bool operator==(const JimpleField&, const JimpleField&) = default;
};

struct JimpleClass {
  std::vector<std::string> modifiers;
  bool is_interface = false;
  std::string name;
  std::optional<std::string> superclass;
  std::vector<std::string> interfaces;
  std::vector<JimpleField> fields;
  std::vector<JimpleMethod> methods;
  SourceTag tag;

  const JimpleField* find_field(const std::string& field) const;
  const JimpleMethod* find_method(const std::string& method,
                                  const std::vector<JimpleType>& params) const;
  friend bool operator==(const JimpleClass&, const JimpleClass&) = default;
};

}  // namespace jimplebmc::jimple
