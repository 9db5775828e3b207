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

#include "jimplebmc/symex/instrument.hpp"

#include <optional>

namespace jimplebmc::symex {

using gotoir::BinaryOp;
using gotoir::Expr;
using gotoir::ExprKind;
using gotoir::GotoFunction;
using gotoir::GotoInstruction;
using gotoir::InstrKind;
using gotoir::PropertyClass;

CheckSet default_checks() {
  return {PropertyClass::DivByZero, PropertyClass::Bounds, PropertyClass::NullDeref,
          PropertyClass::UserAssert};
}

namespace {

bool has_effects(const Expr& e) {
  bool found = false;
  gotoir::for_each_subexpr(e, [&](const Expr& s) {
    found = found || s.kind() == ExprKind::Nondet || s.kind() == ExprKind::NewObject ||
            s.kind() == ExprKind::NewArray;
  });
  return found;
}

Expr not_null(const Expr& ref) { return Expr::binary(BinaryOp::Ne, ref, Expr::null(ref.type())); }

class Instrumenter {
 public:
  Instrumenter(const gotoir::GotoProgram& program, const CheckSet& checks)
      : program_(program), checks_(checks) {}

  std::vector<GotoInstruction> run(const GotoFunction& fn) {
    std::vector<GotoInstruction> out;
    for (const GotoInstruction& ins : fn.body) {
      pending_.clear();
      pos_ = ins.pos();
      switch (ins.kind) {
        case InstrKind::Assign:
          visit(*ins.expr, std::nullopt);
          visit_place(*ins.lhs);
          break;
        case InstrKind::If:
        case InstrKind::Assume:
          visit(*ins.expr, std::nullopt);
          break;
        case InstrKind::Assert:
          if (ins.property != PropertyClass::UserAssert || enabled(PropertyClass::UserAssert))
            visit(*ins.expr, std::nullopt);
          break;
        case InstrKind::Return:
        case InstrKind::Throw:
          if (ins.expr) visit(*ins.expr, std::nullopt);
          break;
        case InstrKind::FunctionCall: {
          for (const Expr& a : ins.args) visit(a, std::nullopt);
          const GotoFunction* callee = program_.find_function(ins.name);
          if (callee && !callee->parameters.empty() && !ins.args.empty() &&
              callee->parameters[0].ends_with("::@this") && ins.args[0].type().is_pointer())
            add(PropertyClass::NullDeref, not_null(ins.args[0]), std::nullopt,
                "null receiver in call to " + callee->display_name());
          if (ins.lhs) visit_place(*ins.lhs);
          break;
        }
        default:
          break;
      }
      for (GotoInstruction& a : pending_) out.push_back(std::move(a));
      if (ins.kind == InstrKind::Assert && ins.property == PropertyClass::UserAssert &&
          !enabled(PropertyClass::UserAssert))
        out.push_back(GotoInstruction::skip(ins.pos()));
      else
        out.push_back(ins);
    }
    return out;
  }

 private:
  bool enabled(PropertyClass c) const { return checks_.count(c) > 0; }

  void add(PropertyClass c, Expr claim, const std::optional<Expr>& context, std::string comment) {
    if (!enabled(c)) return;
    if (context) claim = Expr::binary(BinaryOp::Or, Expr::unary(gotoir::UnaryOp::Not, *context), claim);
    pending_.push_back(GotoInstruction::assert_(std::move(claim), c, std::move(comment), pos_));
  }

  // Checks for the components of an assignment target, without reading it.
  void visit_place(const Expr& place) {
    switch (place.kind()) {
      case ExprKind::Member:
        visit(place.op(0), std::nullopt);
        null_check(place.op(0), std::nullopt, "null dereference of " + place.op(0).str());
        break;
      case ExprKind::Index:
        visit(place.op(0), std::nullopt);
        visit(place.op(1), std::nullopt);
        access_checks(place, std::nullopt);
        break;
      default:
        break;
    }
  }

  void null_check(const Expr& ref, const std::optional<Expr>& ctx, std::string comment) {
    if (has_effects(ref)) return;
    add(PropertyClass::NullDeref, not_null(ref), ctx, std::move(comment));
  }

  void access_checks(const Expr& index_expr, const std::optional<Expr>& ctx) {
    const Expr& array = index_expr.op(0);
    const Expr& index = index_expr.op(1);
    if (has_effects(array) || has_effects(index)) return;
    null_check(array, ctx, "null dereference of " + array.str());
    Expr zero = Expr::constant(0, index.type());
    Expr len = Expr::length(array);
    Expr idx = index.type() == len.type() ? index : Expr::cast(index, len.type());
    Expr claim = Expr::binary(BinaryOp::And, Expr::binary(BinaryOp::Le, zero, index),
                              Expr::binary(BinaryOp::Lt, idx, len));
    add(PropertyClass::Bounds, std::move(claim), ctx, "array index out of bounds");
  }

  static std::optional<Expr> conj(const std::optional<Expr>& ctx, Expr c) {
    if (!ctx) return c;
    return Expr::binary(BinaryOp::And, *ctx, std::move(c));
  }

  void visit(const Expr& e, const std::optional<Expr>& ctx) {
    switch (e.kind()) {
      case ExprKind::IfThenElse:
        visit(e.op(0), ctx);
        visit(e.op(1), conj(ctx, e.op(0)));
        visit(e.op(2), conj(ctx, Expr::unary(gotoir::UnaryOp::Not, e.op(0))));
        return;
      case ExprKind::Binary:
        if (e.binary_op() == BinaryOp::And || e.binary_op() == BinaryOp::Or) {
          visit(e.op(0), ctx);
          Expr c = e.binary_op() == BinaryOp::And ? e.op(0) : Expr::unary(gotoir::UnaryOp::Not, e.op(0));
          visit(e.op(1), conj(ctx, c));
          return;
        }
        break;
      default:
        break;
    }
    for (const Expr& o : e.operands()) visit(o, ctx);
    switch (e.kind()) {
      case ExprKind::Member:
        null_check(e.op(0), ctx, "null dereference of " + e.op(0).str());
        break;
      case ExprKind::Length:
        null_check(e.op(0), ctx, "null dereference of " + e.op(0).str());
        break;
      case ExprKind::Index:
        access_checks(e, ctx);
        break;
      case ExprKind::Binary: {
        const Expr& a = e.op(0);
        const Expr& b = e.op(1);
        if (!a.type().is_integer() || has_effects(a) || has_effects(b)) break;
        BinaryOp op = e.binary_op();
        if ((op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul) && a.type().is_signed()) {
          gotoir::OverflowOp o = op == BinaryOp::Add   ? gotoir::OverflowOp::Add
                                 : op == BinaryOp::Sub ? gotoir::OverflowOp::Sub
                                                       : gotoir::OverflowOp::Mul;
          add(PropertyClass::Overflow, Expr::unary(gotoir::UnaryOp::Not, Expr::overflow(o, a, b)), ctx,
              std::string("arithmetic overflow on ") + gotoir::binary_op_text(op));
        } else if (op == BinaryOp::Div || op == BinaryOp::Rem) {
          add(PropertyClass::DivByZero,
              Expr::binary(BinaryOp::Ne, b, Expr::constant(0, b.type())), ctx,
              op == BinaryOp::Div ? "division by zero" : "remainder by zero");
        }
        break;
      }
      default:
        break;
    }
  }

  const gotoir::GotoProgram& program_;
  const CheckSet& checks_;
  std::vector<GotoInstruction> pending_;
  SourcePos pos_;
};

}  // namespace

gotoir::GotoProgram instrument(const gotoir::GotoProgram& program, const CheckSet& checks) {
  gotoir::GotoProgram out = program;
  Instrumenter inst(program, checks);
  for (auto& [name, fn] : out.functions) fn.body = inst.run(program.functions.at(name));
  return out;
}

}  // namespace jimplebmc::symex
