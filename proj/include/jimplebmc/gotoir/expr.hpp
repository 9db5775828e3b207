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
#include <string>
#include <vector>

#include "jimplebmc/gotoir/type.hpp"

namespace jimplebmc::gotoir {

enum class ExprKind {
  Constant,       // value, type
  Symbol,         // name, type
  Unary,          // unary_op, operands[0]
  Binary,         // binary_op, operands[0..1]
  IfThenElse,     // operands: cond, then, else
  Member,         // operands[0] . name (declared in `record`)
  Index,          // operands[0][operands[1]]
  NewObject,      // heap allocation of class `name`
  NewArray,       // heap allocation, element type = type.element(), size operands[0]
  Length,         // length of array operands[0]
  Cast,           // operands[0] converted to type
  Nondet,         // fresh unconstrained value of type
  Compare,        // cmp/cmpl/cmpg of operands[0..1], yields -1/0/+1
  Overflow,       // true iff operands[0] (overflow_op) operands[1] leaves the type range
  StringLiteral,  // name holds the text; non-null java.lang.String reference
};

enum class UnaryOp { Neg, Not };

enum class BinaryOp {
  Add, Sub, Mul, Div, Rem,
  Lt, Le, Gt, Ge, Eq, Ne,
  And, Or,
  Shl, Shr, Ushr, BitAnd, BitOr, BitXor
};

enum class CompareKind { Cmp, Cmpl, Cmpg };

enum class OverflowOp { Add, Sub, Mul };

const char* binary_op_text(BinaryOp op);
const char* unary_op_text(UnaryOp op);
const char* compare_kind_text(CompareKind kind);
const char* overflow_op_text(OverflowOp op);
bool is_relational(BinaryOp op);
bool is_logical(BinaryOp op);

/// GOTO expression tree with value semantics.
class Expr {
 public:
  Expr() = default;

  static Expr constant(std::int64_t value, const GotoType& type);
  static Expr boolean(bool value) { return constant(value ? 1 : 0, GotoType::boolean()); }
  static Expr int32(std::int64_t value) { return constant(value, GotoType::int32()); }
  /// The null reference; typed as a pointer to `record` (any record name).
  static Expr null(const GotoType& type = GotoType::reference("java.lang.Object"));
  static Expr symbol(std::string name, const GotoType& type);
  static Expr unary(UnaryOp op, Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr if_then_else(Expr cond, Expr then_value, Expr else_value);
  static Expr member(Expr base, std::string declaring_class, std::string field,
                     const GotoType& type);
  static Expr index(Expr array, Expr index);
  static Expr new_object(std::string class_name);
  static Expr new_array(const GotoType& element, Expr size);
  static Expr length(Expr array);
  static Expr cast(Expr operand, const GotoType& type);
  static Expr nondet(const GotoType& type);
  static Expr compare(CompareKind kind, Expr lhs, Expr rhs);
  static Expr overflow(OverflowOp op, Expr lhs, Expr rhs);
  static Expr string_literal(std::string text);

  ExprKind kind() const { return kind_; }
  const GotoType& type() const { return type_; }
  const std::string& name() const { return name_; }
  const std::string& record() const { return record_; }
  std::int64_t value() const { return value_; }
  UnaryOp unary_op() const { return static_cast<UnaryOp>(op_); }
  BinaryOp binary_op() const { return static_cast<BinaryOp>(op_); }
  CompareKind compare_kind() const { return static_cast<CompareKind>(op_); }
  OverflowOp overflow_op() const { return static_cast<OverflowOp>(op_); }
  const std::vector<Expr>& operands() const { return operands_; }
  const Expr& op(std::size_t i) const { return operands_.at(i); }

  bool is_constant() const { return kind_ == ExprKind::Constant; }
  bool is_true() const { return is_constant() && type_.is_bool() && value_ != 0; }
  bool is_false() const { return is_constant() && type_.is_bool() && value_ == 0; }
  bool is_null() const { return is_constant() && type_.is_pointer() && value_ == 0; }

  /// Dump spelling, e.g. `($i1 + i0)` or `overflow("+", i0, $i1)`.
  std::string str() const;

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  ExprKind kind_ = ExprKind::Constant;
  GotoType type_;
  std::string name_;
  std::string record_;
  std::int64_t value_ = 0;
  int op_ = 0;
  std::vector<Expr> operands_;
};

/// Wraps `value` into the range of an integer type of `width` bits
/// (sign-extending for signed types, zero-extending otherwise).
std::int64_t normalize_integer(std::int64_t value, unsigned width, bool is_signed);

/// Lowest/highest representable value of a signed type of `width` bits.
std::int64_t signed_min(unsigned width);
std::int64_t signed_max(unsigned width);

/// Applies `fn` to `e` and every subexpression, parents before children.
template <typename Fn>
void for_each_subexpr(const Expr& e, Fn&& fn) {
  fn(e);
  for (const Expr& o : e.operands()) for_each_subexpr(o, fn);
}

/// cmp/cmpl/cmpg as a nested conditional: a < b ? -1 : (a == b ? 0 : 1).
/// Integer operands only, so the NaN bias of cmpl/cmpg never applies.
Expr expand_compare(CompareKind kind, const Expr& lhs, const Expr& rhs);

}  // namespace jimplebmc::gotoir
