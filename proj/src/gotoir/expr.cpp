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

#include "jimplebmc/gotoir/expr.hpp"

#include <utility>

#include "jimplebmc/gotoir/printer.hpp"

namespace jimplebmc::gotoir {

const char* binary_op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Rem: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
    case BinaryOp::Ushr: return ">>>";
    case BinaryOp::BitAnd: return "&";
    case BinaryOp::BitOr: return "|";
    case BinaryOp::BitXor: return "^";
  }
  return "?";
}

const char* unary_op_text(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

const char* compare_kind_text(CompareKind kind) {
  switch (kind) {
    case CompareKind::Cmp: return "cmp";
    case CompareKind::Cmpl: return "cmpl";
    case CompareKind::Cmpg: return "cmpg";
  }
  return "?";
}

const char* overflow_op_text(OverflowOp op) {
  switch (op) {
    case OverflowOp::Add: return "+";
    case OverflowOp::Sub: return "-";
    case OverflowOp::Mul: return "*";
  }
  return "?";
}

bool is_relational(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      return true;
    default:
      return false;
  }
}

bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

std::int64_t normalize_integer(std::int64_t value, unsigned width, bool is_signed) {
  if (width >= 64 || width == 0) return value;
  auto bits = static_cast<std::uint64_t>(value) & ((std::uint64_t{1} << width) - 1);
  if (is_signed && (bits >> (width - 1)) & 1) bits |= ~((std::uint64_t{1} << width) - 1);
  return static_cast<std::int64_t>(bits);
}

std::int64_t signed_min(unsigned width) {
  return width >= 64 ? INT64_MIN : -(std::int64_t{1} << (width - 1));
}

std::int64_t signed_max(unsigned width) {
  return width >= 64 ? INT64_MAX : (std::int64_t{1} << (width - 1)) - 1;
}

Expr Expr::constant(std::int64_t value, const GotoType& type) {
  Expr e;
  e.kind_ = ExprKind::Constant;
  e.type_ = type;
  if (type.is_integer())
    e.value_ = normalize_integer(value, type.width(), type.is_signed());
  else if (type.is_bool())
    e.value_ = value != 0 ? 1 : 0;
  else
    e.value_ = value;
  return e;
}

Expr Expr::null(const GotoType& type) { return constant(0, type); }

Expr Expr::symbol(std::string name, const GotoType& type) {
  Expr e;
  e.kind_ = ExprKind::Symbol;
  e.type_ = type;
  e.name_ = std::move(name);
  return e;
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  Expr e;
  e.kind_ = ExprKind::Unary;
  e.op_ = static_cast<int>(op);
  e.type_ = op == UnaryOp::Not ? GotoType::boolean() : operand.type();
  e.operands_.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind_ = ExprKind::Binary;
  e.op_ = static_cast<int>(op);
  e.type_ = is_relational(op) || is_logical(op) ? GotoType::boolean() : lhs.type();
  e.operands_.push_back(std::move(lhs));
  e.operands_.push_back(std::move(rhs));
  return e;
}

Expr Expr::if_then_else(Expr cond, Expr then_value, Expr else_value) {
  Expr e;
  e.kind_ = ExprKind::IfThenElse;
  e.type_ = then_value.type();
  e.operands_ = {std::move(cond), std::move(then_value), std::move(else_value)};
  return e;
}

Expr Expr::member(Expr base, std::string declaring_class, std::string field,
                  const GotoType& type) {
  Expr e;
  e.kind_ = ExprKind::Member;
  e.type_ = type;
  e.name_ = std::move(field);
  e.record_ = std::move(declaring_class);
  e.operands_.push_back(std::move(base));
  return e;
}

Expr Expr::index(Expr array, Expr index) {
  Expr e;
  e.kind_ = ExprKind::Index;
  e.type_ = array.type().is_array() ? array.type().element() : GotoType::void_type();
  e.operands_ = {std::move(array), std::move(index)};
  return e;
}

Expr Expr::new_object(std::string class_name) {
  Expr e;
  e.kind_ = ExprKind::NewObject;
  e.type_ = GotoType::reference(class_name);
  e.name_ = std::move(class_name);
  return e;
}

Expr Expr::new_array(const GotoType& element, Expr size) {
  Expr e;
  e.kind_ = ExprKind::NewArray;
  e.type_ = GotoType::array(element);
  e.operands_.push_back(std::move(size));
  return e;
}

Expr Expr::length(Expr array) {
  Expr e;
  e.kind_ = ExprKind::Length;
  e.type_ = GotoType::int32();
  e.operands_.push_back(std::move(array));
  return e;
}

Expr Expr::cast(Expr operand, const GotoType& type) {
  Expr e;
  e.kind_ = ExprKind::Cast;
  e.type_ = type;
  e.operands_.push_back(std::move(operand));
  return e;
}

Expr Expr::nondet(const GotoType& type) {
  Expr e;
  e.kind_ = ExprKind::Nondet;
  e.type_ = type;
  return e;
}

Expr Expr::compare(CompareKind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind_ = ExprKind::Compare;
  e.op_ = static_cast<int>(kind);
  e.type_ = GotoType::int32();
  e.operands_ = {std::move(lhs), std::move(rhs)};
  return e;
}

Expr Expr::overflow(OverflowOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind_ = ExprKind::Overflow;
  e.op_ = static_cast<int>(op);
  e.type_ = GotoType::boolean();
  e.operands_ = {std::move(lhs), std::move(rhs)};
  return e;
}

Expr Expr::string_literal(std::string text) {
  Expr e;
  e.kind_ = ExprKind::StringLiteral;
  e.type_ = GotoType::reference("java.lang.String");
  e.name_ = std::move(text);
  return e;
}

std::string Expr::str() const { return print_expr(*this); }

Expr expand_compare(CompareKind, const Expr& lhs, const Expr& rhs) {
  return Expr::if_then_else(
      Expr::binary(BinaryOp::Lt, lhs, rhs), Expr::int32(-1),
      Expr::if_then_else(Expr::binary(BinaryOp::Eq, lhs, rhs), Expr::int32(0),
                         Expr::int32(1)));
}

}  // namespace jimplebmc::gotoir
