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

#include "semantics.hpp"

#include <stdexcept>

namespace jimplebmc::symex::detail {

using gotoir::BinaryOp;
using gotoir::Expr;
using gotoir::ExprKind;
using gotoir::GotoType;
using solver::Op;

solver::Sort value_sort(const GotoType& type) {
  if (type.is_bool()) return solver::Sort::boolean();
  if (type.is_integer()) return solver::Sort::bitvec(type.width());
  if (type.is_pointer()) return solver::Sort::bitvec(gotoir::kReferenceWidth);
  throw std::logic_error("no value sort for type " + type.str());
}

unsigned storage_width(const GotoType& type) {
  if (type.is_bool()) return 1;
  return value_sort(type).width();
}

Term to_storage(const Term& value, const GotoType& type) {
  return type.is_bool() ? solver::bool_to_bv1(value) : value;
}

Term from_storage(const Term& stored, const GotoType& type) {
  return type.is_bool() ? solver::bv1_to_bool(stored) : stored;
}

Term zero_of(const GotoType& type) {
  if (type.is_bool()) return solver::mk_false();
  return solver::mk_bv(0, value_sort(type).width());
}

std::string field_array_name(const std::string& declaring_class, const std::string& field) {
  return "heap::" + declaring_class + "::" + field;
}

std::string element_array_name(const GotoType& element) {
  return "heap::elements::" + element.str();
}

Term element_key(const Term& ref, const Term& index) {
  return solver::mk_concat(ref, solver::mk_resize(index, 32, true));
}

Term apply_cast(const Term& value, const GotoType& from, const GotoType& to) {
  if (from == to || (from.is_pointer() && to.is_pointer())) return value;
  if (to.is_bool()) {
    if (from.is_bool()) return value;
    return solver::mk_not(solver::mk_eq(value, solver::mk_bv(0, value->sort.width())));
  }
  if (to.is_integer()) {
    if (from.is_bool())
      return solver::mk_ite(value, solver::mk_bv(1, to.width()), solver::mk_bv(0, to.width()));
    if (from.is_integer()) return solver::mk_resize(value, to.width(), from.is_signed());
  }
  throw std::logic_error("unsupported cast from " + from.str() + " to " + to.str());
}

namespace {

Term binary(BinaryOp op, const Term& a, const Term& b, const GotoType& t) {
  bool s = t.is_signed();
  switch (op) {
    case BinaryOp::Add: return solver::mk_binary(Op::BvAdd, a, b);
    case BinaryOp::Sub: return solver::mk_binary(Op::BvSub, a, b);
    case BinaryOp::Mul: return solver::mk_binary(Op::BvMul, a, b);
    case BinaryOp::Div: return solver::mk_binary(s ? Op::BvSdiv : Op::BvUdiv, a, b);
    case BinaryOp::Rem: return solver::mk_binary(s ? Op::BvSrem : Op::BvUrem, a, b);
    case BinaryOp::Lt: return solver::mk_binary(s ? Op::BvSlt : Op::BvUlt, a, b);
    case BinaryOp::Le: return solver::mk_binary(s ? Op::BvSle : Op::BvUle, a, b);
    case BinaryOp::Gt: return solver::mk_binary(s ? Op::BvSlt : Op::BvUlt, b, a);
    case BinaryOp::Ge: return solver::mk_binary(s ? Op::BvSle : Op::BvUle, b, a);
    case BinaryOp::Eq: return solver::mk_eq(a, b);
    case BinaryOp::Ne: return solver::mk_not(solver::mk_eq(a, b));
    case BinaryOp::And: return solver::mk_and(a, b);
    case BinaryOp::Or: return solver::mk_or(a, b);
    case BinaryOp::Shl: return solver::mk_binary(Op::BvShl, a, b);
    case BinaryOp::Shr: return solver::mk_binary(s ? Op::BvAshr : Op::BvLshr, a, b);
    case BinaryOp::Ushr: return solver::mk_binary(Op::BvLshr, a, b);
    case BinaryOp::BitAnd:
      if (t.is_bool()) return solver::mk_and(a, b);
      return solver::mk_binary(Op::BvAnd, a, b);
    case BinaryOp::BitOr:
      if (t.is_bool()) return solver::mk_or(a, b);
      return solver::mk_binary(Op::BvOr, a, b);
    case BinaryOp::BitXor:
      if (t.is_bool()) return solver::mk_not(solver::mk_eq(a, b));
      return solver::mk_binary(Op::BvXor, a, b);
  }
  throw std::logic_error("unhandled binary operator");
}

}  // namespace

Term eval_expr(const Expr& e, Env& env) {
  const GotoType& t = e.type();
  switch (e.kind()) {
    case ExprKind::Constant:
      if (t.is_bool()) return solver::mk_bool(e.value() != 0);
      return solver::mk_bv(static_cast<std::uint64_t>(e.value()), value_sort(t).width());
    case ExprKind::Symbol: return env.read_symbol(e.name(), t);
    case ExprKind::Unary: {
      Term a = eval_expr(e.op(0), env);
      if (e.unary_op() == gotoir::UnaryOp::Not) return solver::mk_not(a);
      return solver::mk_unary(Op::BvNeg, a);
    }
    case ExprKind::Binary: {
      Term a = eval_expr(e.op(0), env);
      Term b = eval_expr(e.op(1), env);
      return binary(e.binary_op(), a, b, e.op(0).type());
    }
    case ExprKind::IfThenElse: {
      Term c = eval_expr(e.op(0), env);
      Term a = eval_expr(e.op(1), env);
      Term b = eval_expr(e.op(2), env);
      return solver::mk_ite(c, a, b);
    }
    case ExprKind::Member:
      return env.read_field(eval_expr(e.op(0), env), e.record(), e.name(), t);
    case ExprKind::Index:
      return env.read_element(eval_expr(e.op(0), env), eval_expr(e.op(1), env), t);
    case ExprKind::NewObject: return env.allocate_object(e.name());
    case ExprKind::NewArray: return env.allocate_array(t.element(), eval_expr(e.op(0), env));
    case ExprKind::Length: return env.read_length(eval_expr(e.op(0), env));
    case ExprKind::Cast: return apply_cast(eval_expr(e.op(0), env), e.op(0).type(), t);
    case ExprKind::Nondet: return env.nondet(t);
    case ExprKind::Compare:
      return eval_expr(gotoir::expand_compare(e.compare_kind(), e.op(0), e.op(1)), env);
    case ExprKind::Overflow: {
      Term a = eval_expr(e.op(0), env);
      Term b = eval_expr(e.op(1), env);
      Op op = e.overflow_op() == gotoir::OverflowOp::Add   ? Op::AddOverflow
              : e.overflow_op() == gotoir::OverflowOp::Sub ? Op::SubOverflow
                                                           : Op::MulOverflow;
      return solver::mk_binary(op, a, b);
    }
    case ExprKind::StringLiteral: return solver::mk_bv(kStringId, gotoir::kReferenceWidth);
  }
  throw std::logic_error("unhandled expression kind");
}

}  // namespace jimplebmc::symex::detail
