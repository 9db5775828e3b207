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

#include "jimplebmc/lowering/lowering.hpp"

#include <algorithm>
#include <utility>

#include "jimplebmc/error.hpp"
#include "jimplebmc/gotoir/validate.hpp"
#include "jimplebmc/opmodels/catalog.hpp"

namespace jimplebmc::lowering {

namespace {

using gotoir::BinaryOp;
using gotoir::Expr;
using gotoir::GotoInstruction;
using gotoir::GotoType;
using jimple::JimpleType;
using Instrs = std::vector<GotoInstruction>;

std::string escape_underscores(const std::string& s) {
  std::string out;
  for (char c : s) {
    out += c;
    if (c == '_') out += '_';
  }
  return out;
}

std::string type_segment(const JimpleType& t) {
  std::string base;
  if (t.base == JimpleType::Base::Reference) {
    base = escape_underscores(jimple::simple_class_name(t.class_name));
  } else {
    base = JimpleType::primitive(t.base).str();
  }
  for (unsigned i = 0; i < t.dims; ++i) base += "Arr";
  return base;
}

bool fits(std::int64_t v, const GotoType& t) {
  if (t.is_bool()) return v == 0 || v == 1;
  if (!t.is_integer()) return false;
  if (t.is_signed()) return v >= gotoir::signed_min(t.width()) && v <= gotoir::signed_max(t.width());
  return v >= 0 && (t.width() >= 63 || v < (std::int64_t{1} << t.width()));
}

bool is_numeric(const GotoType& t) { return t.is_integer() || t.is_bool(); }

// Binary numeric promotion: long stays long, everything else becomes int.
GotoType promote(const GotoType& a, const GotoType& b) {
  if ((a.is_integer() && a.width() == 64) || (b.is_integer() && b.width() == 64))
    return GotoType::int64();
  return GotoType::int32();
}

/// Converts `e` to `t`. Integer/boolean conversions become casts (folded on
/// constants); pointers are passed through unchanged.
Expr coerce(const Expr& e, const GotoType& t) {
  if (e.type() == t) return e;
  if (is_numeric(e.type()) && is_numeric(t)) {
    if (e.is_constant()) return Expr::constant(e.value(), t);
    return Expr::cast(e, t);
  }
  if (e.type().is_pointer() && t.is_pointer()) {
    if (e.is_null()) return Expr::null(t);
    return e;
  }
  throw SemanticError("cannot convert " + e.type().str() + " to " + t.str());
}

std::vector<std::pair<std::string, GotoType>> parameter_globals(
    const std::string& key, const std::string& cls, bool is_virtual,
    const std::vector<JimpleType>& params) {
  std::vector<std::pair<std::string, GotoType>> out;
  if (is_virtual)
    out.emplace_back(gotoir::parameter_global_name(key, "@this"), GotoType::reference(cls));
  for (std::size_t i = 0; i < params.size(); ++i)
    out.emplace_back(gotoir::parameter_global_name(key, "@parameter" + std::to_string(i)),
                     lower_type(params[i]));
  return out;
}

void declare_parameters(LoweringContext& ctx, const std::string& key,
                        const std::vector<std::pair<std::string, GotoType>>& globals) {
  std::vector<std::string> names;
  for (const auto& [name, type] : globals) {
    ctx.program().add_global({name, type, std::nullopt});
    names.push_back(name);
  }
  ctx.register_parameters(key, std::move(names));
}

Expr zero_value(const GotoType& t) {
  if (t.is_pointer()) return Expr::null(t);
  return Expr::constant(0, t);
}

class StatementLowering {
 public:
  StatementLowering(MethodScope& scope, LoweringContext& ctx, SourcePos pos)
      : scope_(scope), ctx_(ctx), pos_(pos) {}

  [[noreturn]] void fail(const std::string& msg) const { throw SemanticError(pos_, msg); }

  GotoType local_type(const std::string& name) const {
    auto it = scope_.locals.find(name);
    if (it == scope_.locals.end()) fail("undeclared local '" + name + "'");
    return it->second;
  }

  Expr local(const std::string& name) const { return Expr::symbol(name, local_type(name)); }

  /// Lowers an immediate; untyped literals take `expected` when given.
  Expr operand(const jimple::Operand& op, const std::optional<GotoType>& expected = {}) const {
    return std::visit(
        [&](const auto& v) -> Expr {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, jimple::LocalRef>) {
            Expr e = local(v.name);
            return expected ? coerce_checked(e, *expected) : e;
          } else if constexpr (std::is_same_v<T, jimple::IntConstant>) {
            GotoType t = expected && is_numeric(*expected)
                             ? *expected
                             : (v.is_long ? GotoType::int64() : GotoType::int32());
            if (!fits(v.value, t))
              fail("integer literal " + std::to_string(v.value) + " out of range for " + t.str());
            return Expr::constant(v.value, t);
          } else if constexpr (std::is_same_v<T, jimple::NullConstant>) {
            return expected && expected->is_pointer() ? Expr::null(*expected) : Expr::null();
          } else if constexpr (std::is_same_v<T, jimple::StringConstant>) {
            return Expr::string_literal(v.value);
          } else {
            throw UnsupportedError(pos_, "unsupported type: floating-point constant " + v.text);
          }
        },
        op.value);
  }

  Expr coerce_checked(const Expr& e, const GotoType& t) const {
    try {
      return coerce(e, t);
    } catch (const SemanticError& err) {
      fail(err.what());
    }
  }

  bool is_literal(const jimple::Operand& op) const { return !op.local(); }

  Expr field(const std::string& base, const jimple::FieldSignature& sig) {
    Expr b = local(base);
    std::string owner = sig.class_name;
    GotoType type = lower_field_type(sig);
    if (auto r = ctx_.table().lookup_field(sig.class_name, sig.name)) {
      if (r->field->is_static) fail("instance access to static field " + sig.str());
      owner = r->owner->name;
    } else {
      // Library object field: give the external record the field on demand.
      ctx_.note_unknown(sig.str());
      auto& rec = ctx_.program().records[sig.class_name];
      rec.name = sig.class_name;
      if (!rec.find(sig.name)) rec.fields.push_back({sig.name, type, sig.class_name});
    }
    ctx_.record(owner);
    return Expr::member(std::move(b), owner, sig.name, type);
  }

  GotoType lower_field_type(const jimple::FieldSignature& sig) const {
    try {
      return lower_type(sig.type);
    } catch (const UnsupportedError& e) {
      throw UnsupportedError(pos_, std::string(e.what()) + " (field " + sig.str() + ")");
    }
  }

  Expr static_field(const jimple::FieldSignature& sig) {
    GotoType type = lower_field_type(sig);
    if (auto r = ctx_.table().lookup_field(sig.class_name, sig.name)) {
      if (!r->field->is_static) fail("static access to instance field " + sig.str());
      return Expr::symbol(static_field_global(r->owner->name, sig.name), type);
    }
    std::string name = static_field_global(sig.class_name, sig.name);
    if (const auto* m = opmodels::find_static_field(sig.class_name, sig.name)) {
      Expr init = m->initial;
      if (init.kind() == gotoir::ExprKind::NewObject) ctx_.record(init.name());
      ctx_.program().add_global({name, type, coerce_checked(init, type)});
    } else {
      ctx_.note_unknown(sig.str());
      ctx_.program().add_global({name, type, std::nullopt});
    }
    return Expr::symbol(name, type);
  }

  Expr array_element(const std::string& base, const jimple::Operand& index) {
    Expr b = local(base);
    if (!b.type().is_array()) fail("indexing non-array local '" + base + "'");
    return Expr::index(std::move(b), operand(index, GotoType::int32()));
  }

  Expr place(const jimple::Place& p) {
    return std::visit(
        [&](const auto& v) -> Expr {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, jimple::LocalRef>) {
            return local(v.name);
          } else if constexpr (std::is_same_v<T, jimple::InstanceFieldRef>) {
            return field(v.base, v.field);
          } else if constexpr (std::is_same_v<T, jimple::StaticFieldRef>) {
            return static_field(v.field);
          } else {
            return array_element(v.base, v.index);
          }
        },
        p.value);
  }

  Expr binary(const jimple::BinaryExpr& b) {
    using JOp = jimple::BinaryOp;
    std::optional<GotoType> lt, rt;
    if (!is_literal(b.lhs)) lt = operand(b.lhs).type();
    if (!is_literal(b.rhs)) rt = operand(b.rhs).type();
    if (std::holds_alternative<jimple::NullConstant>(b.lhs.value) ||
        std::holds_alternative<jimple::NullConstant>(b.rhs.value) ||
        (lt && lt->is_pointer()) || (rt && rt->is_pointer())) {
      GotoType t = lt ? *lt : rt ? *rt : GotoType::reference("java.lang.Object");
      Expr l = operand(b.lhs, t);
      Expr r = operand(b.rhs, t);
      if (b.op == JOp::Eq) return Expr::binary(BinaryOp::Eq, l, r);
      if (b.op == JOp::Ne) return Expr::binary(BinaryOp::Ne, l, r);
      fail(std::string("operator ") + jimple::binary_op_text(b.op) + " on references");
    }

    bool lbool = lt && lt->is_bool();
    bool rbool = rt && rt->is_bool();
    bool boolean = (lbool || !lt) && (rbool || !rt) && (lt || rt);
    bool bitwise = b.op == JOp::And || b.op == JOp::Or || b.op == JOp::Xor;
    bool equality = b.op == JOp::Eq || b.op == JOp::Ne;
    if (boolean && (bitwise || equality)) {
      Expr l = operand(b.lhs, GotoType::boolean());
      Expr r = operand(b.rhs, GotoType::boolean());
      switch (b.op) {
        case JOp::And: return Expr::binary(BinaryOp::And, l, r);
        case JOp::Or: return Expr::binary(BinaryOp::Or, l, r);
        case JOp::Xor:
        case JOp::Ne: return Expr::binary(BinaryOp::Ne, l, r);
        default: return Expr::binary(BinaryOp::Eq, l, r);
      }
    }

    auto promoted = [&](std::optional<GotoType> a, std::optional<GotoType> c) {
      const GotoType i32 = GotoType::int32();
      return promote(a.value_or(i32), c.value_or(i32));
    };
    if (b.op == JOp::Shl || b.op == JOp::Shr || b.op == JOp::Ushr) {
      GotoType t = lt ? promote(*lt, *lt)
                      : (std::get_if<jimple::IntConstant>(&b.lhs.value)->is_long
                             ? GotoType::int64()
                             : GotoType::int32());
      Expr l = operand(b.lhs, t);
      Expr amount = coerce_checked(operand(b.rhs, GotoType::int32()), t);
      Expr mask = Expr::constant(t.width() - 1, t);
      amount = amount.is_constant() ? Expr::constant(amount.value() & (t.width() - 1), t)
                                    : Expr::binary(BinaryOp::BitAnd, amount, mask);
      BinaryOp op = b.op == JOp::Shl ? BinaryOp::Shl
                    : b.op == JOp::Shr ? BinaryOp::Shr
                                       : BinaryOp::Ushr;
      return Expr::binary(op, l, amount);
    }

    GotoType t = promoted(lt, rt);
    if (!lt && !rt) {
      bool is_long = std::get<jimple::IntConstant>(b.lhs.value).is_long ||
                     std::get<jimple::IntConstant>(b.rhs.value).is_long;
      t = is_long ? GotoType::int64() : GotoType::int32();
    }
    Expr l = operand(b.lhs, t);
    Expr r = operand(b.rhs, t);
    switch (b.op) {
      case JOp::Add: return Expr::binary(BinaryOp::Add, l, r);
      case JOp::Sub: return Expr::binary(BinaryOp::Sub, l, r);
      case JOp::Mul: return Expr::binary(BinaryOp::Mul, l, r);
      case JOp::Div: return Expr::binary(BinaryOp::Div, l, r);
      case JOp::Rem: return Expr::binary(BinaryOp::Rem, l, r);
      case JOp::And: return Expr::binary(BinaryOp::BitAnd, l, r);
      case JOp::Or: return Expr::binary(BinaryOp::BitOr, l, r);
      case JOp::Xor: return Expr::binary(BinaryOp::BitXor, l, r);
      case JOp::Cmp: return gotoir::expand_compare(gotoir::CompareKind::Cmp, l, r);
      case JOp::Cmpl: return gotoir::expand_compare(gotoir::CompareKind::Cmpl, l, r);
      case JOp::Cmpg: return gotoir::expand_compare(gotoir::CompareKind::Cmpg, l, r);
      case JOp::Eq: return Expr::binary(BinaryOp::Eq, l, r);
      case JOp::Ne: return Expr::binary(BinaryOp::Ne, l, r);
      case JOp::Lt: return Expr::binary(BinaryOp::Lt, l, r);
      case JOp::Le: return Expr::binary(BinaryOp::Le, l, r);
      case JOp::Gt: return Expr::binary(BinaryOp::Gt, l, r);
      case JOp::Ge: return Expr::binary(BinaryOp::Ge, l, r);
      default: break;
    }
    fail("unsupported operator");
  }

  Expr rvalue(const jimple::Rvalue& rv) {
    return std::visit(
        [&](const auto& v) -> Expr {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, jimple::Operand>) {
            return operand(v);
          } else if constexpr (std::is_same_v<T, jimple::BinaryExpr>) {
            return binary(v);
          } else if constexpr (std::is_same_v<T, jimple::NegExpr>) {
            Expr e = operand(v.operand);
            GotoType t = promote(e.type(), e.type());
            return Expr::unary(gotoir::UnaryOp::Neg, coerce_checked(e, t));
          } else if constexpr (std::is_same_v<T, jimple::CastExpr>) {
            GotoType t = lower_checked(v.type);
            Expr e = operand(v.operand, is_literal(v.operand) ? std::optional<GotoType>(t)
                                                              : std::nullopt);
            if (e.type() == t) return e;
            if (e.type().is_pointer() && t.is_pointer()) return Expr::cast(e, t);
            return coerce_checked(e, t);
          } else if constexpr (std::is_same_v<T, jimple::NewExpr>) {
            ctx_.record(v.class_name);
            return Expr::new_object(v.class_name);
          } else if constexpr (std::is_same_v<T, jimple::NewArrayExpr>) {
            return Expr::new_array(lower_checked(v.element), operand(v.size, GotoType::int32()));
          } else if constexpr (std::is_same_v<T, jimple::LengthExpr>) {
            Expr a = operand(v.array);
            if (!a.type().is_array()) fail("lengthof a non-array");
            return Expr::length(a);
          } else if constexpr (std::is_same_v<T, jimple::InstanceFieldRef>) {
            return field(v.base, v.field);
          } else if constexpr (std::is_same_v<T, jimple::StaticFieldRef>) {
            return static_field(v.field);
          } else {
            return array_element(v.base, v.index);
          }
        },
        rv.value);
  }

  GotoType lower_checked(const JimpleType& t) const {
    try {
      return lower_type(t);
    } catch (const UnsupportedError& e) {
      throw UnsupportedError(pos_, e.what());
    }
  }

  Instrs assign(const jimple::AssignStmt& s) {
    Expr lhs = place(s.lhs);
    if (const auto* na = std::get_if<jimple::NewArrayExpr>(&s.rhs.value)) {
      GotoType elem = lower_checked(na->element);
      return opmodels::array_init_model(elem, operand(na->size, GotoType::int32()), lhs,
                                        std::nullopt, [this] { return scope_.fresh_name(); },
                                        pos_);
    }
    Expr rhs;
    if (const auto* op = std::get_if<jimple::Operand>(&s.rhs.value))
      rhs = operand(*op, lhs.type());
    else
      rhs = coerce_checked(rvalue(s.rhs), lhs.type());
    return {GotoInstruction::assign(std::move(lhs), std::move(rhs), pos_)};
  }

  Instrs invoke(const jimple::InvokeStmt& s) {
    const jimple::InvokeExpr& call = s.call;
    const jimple::MethodSignature& sig = call.method;
    std::optional<Expr> lhs;
    if (s.lhs) lhs = local(*s.lhs);

    std::vector<Expr> args;
    if (call.receiver) args.push_back(local(*call.receiver));
    if (call.args.size() != sig.params.size())
      fail("call to " + sig.str() + " passes " + std::to_string(call.args.size()) + " arguments");
    for (std::size_t i = 0; i < call.args.size(); ++i)
      args.push_back(operand(call.args[i], lower_checked(sig.params[i])));

    auto resolution = opmodels::resolve_call(sig, ctx_.table());
    if (auto* user = std::get_if<opmodels::UserFunction>(&resolution)) {
      const jimple::JimpleMethod& m = *user->method.method;
      bool is_virtual = m.kind == jimple::MethodKind::Virtual;
      if (is_virtual != call.receiver.has_value())
        fail(std::string(jimple::invoke_kind_text(call.kind)) + " of " +
             (is_virtual ? "instance" : "static") + " method " + sig.str());
      std::string key = function_key(user->method.owner->name,
                                     mangle_name(m.name, m.return_type, m.params));
      auto globals = parameter_globals(key, user->method.owner->name, is_virtual, m.params);
      declare_parameters(ctx_, key, globals);
      return call_sequence(key, globals, std::move(args), lhs, lower_checked(m.return_type));
    }
    if (auto* model = std::get_if<opmodels::ModelCall>(&resolution)) {
      const opmodels::OperationalModel& m = *model->model;
      if (m.kind == opmodels::ModelKind::SyntheticBody) {
        std::string key = synthesize(m);
        auto globals = parameter_globals(key, m.class_name, !m.is_static, m.params);
        return call_sequence(key, globals, std::move(args), lhs, lower_checked(m.return_type));
      }
      opmodels::CallSite site{lhs, std::move(args), pos_, [this] { return scope_.fresh_name(); }};
      Instrs out = m.expand(site);
      if (out.empty()) out.push_back(GotoInstruction::skip(pos_));
      return out;
    }
    ctx_.note_unknown(sig.str());
    if (lhs) return {GotoInstruction::assign(*lhs, Expr::nondet(lhs->type()), pos_)};
    return {GotoInstruction::skip(pos_)};
  }

  Instrs call_sequence(const std::string& key,
                       const std::vector<std::pair<std::string, GotoType>>& globals,
                       std::vector<Expr> args, const std::optional<Expr>& lhs,
                       const GotoType& ret) {
    Instrs out;
    for (std::size_t i = 0; i < globals.size(); ++i)
      out.push_back(GotoInstruction::assign(Expr::symbol(globals[i].first, globals[i].second),
                                            coerce_checked(args[i], globals[i].second), pos_));
    if (lhs && !gotoir::assignable(lhs->type(), ret))
      fail("result of type " + ret.str() + " stored into " + lhs->type().str());
    out.push_back(GotoInstruction::function_call(lhs, key, std::move(args), pos_));
    return out;
  }

  std::string synthesize(const opmodels::OperationalModel& m) {
    std::string key = function_key(m.class_name, mangle_name(m.method_name, m.return_type, m.params));
    if (ctx_.has_function(key)) return key;
    auto globals = parameter_globals(key, m.class_name, !m.is_static, m.params);
    declare_parameters(ctx_, key, globals);
    ctx_.record(m.class_name);
    gotoir::GotoFunction fn;
    fn.name = key;
    fn.return_type = lower_checked(m.return_type);
    std::vector<Expr> params;
    for (const auto& [name, type] : globals) {
      fn.parameters.push_back(name);
      params.push_back(Expr::symbol(name, type));
    }
    unsigned counter = 0;
    opmodels::CallSite site{std::nullopt, params, {},
                            [&counter] { return "__om_tmp" + std::to_string(counter++); }};
    fn.body = m.expand(site);
    fn.body.push_back(GotoInstruction::end_function());
    ctx_.program().functions[key] = std::move(fn);
    return key;
  }

  Instrs statement(const jimple::JimpleStmt& stmt) {
    return std::visit(
        [&](const auto& s) -> Instrs {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, jimple::DeclarationStmt>) {
            return {GotoInstruction::decl(s.name, lower_checked(s.type), pos_)};
          } else if constexpr (std::is_same_v<T, jimple::IdentityStmt>) {
            return {identity(s)};
          } else if constexpr (std::is_same_v<T, jimple::AssignStmt>) {
            return assign(s);
          } else if constexpr (std::is_same_v<T, jimple::LabelStmt>) {
            return {GotoInstruction::label(s.label, pos_)};
          } else if constexpr (std::is_same_v<T, jimple::GotoStmt>) {
            return {GotoInstruction::goto_(s.target, pos_)};
          } else if constexpr (std::is_same_v<T, jimple::IfStmt>) {
            Expr c = binary(s.condition);
            if (!c.type().is_bool()) fail("if condition is not a comparison");
            return {GotoInstruction::if_(std::move(c), s.target, pos_)};
          } else if constexpr (std::is_same_v<T, jimple::InvokeStmt>) {
            return invoke(s);
          } else if constexpr (std::is_same_v<T, jimple::ReturnStmt>) {
            std::optional<Expr> v;
            if (s.value) v = operand(*s.value, scope_.return_type);
            return {GotoInstruction::return_(std::move(v), pos_)};
          } else if constexpr (std::is_same_v<T, jimple::ThrowStmt>) {
            Expr thrown = operand(s.value);
            // A thrown AssertionError is how kotlinc and javac spell `assert`.
            if (thrown.type().is_reference() &&
                thrown.type().record_name() == "java.lang.AssertionError")
              return {GotoInstruction::assert_(Expr::boolean(false), gotoir::PropertyClass::UserAssert,
                                               "assertion failed", pos_),
                      GotoInstruction::throw_(std::move(thrown), pos_)};
            return {GotoInstruction::throw_(std::move(thrown), pos_)};
          } else {
            return {GotoInstruction::skip(pos_)};
          }
        },
        stmt.node);
  }

  GotoInstruction identity(const jimple::IdentityStmt& s) {
    Expr target = local(s.local);
    GotoInstruction in;
    if (s.is_this()) {
      if (scope_.method->kind != jimple::MethodKind::Virtual) fail("@this in a static method");
      Expr g = Expr::symbol(gotoir::parameter_global_name(scope_.key, "@this"),
                            GotoType::reference(scope_.cls->name));
      in = GotoInstruction::assign(target, Expr::cast(g, target.type()), pos_);
    } else {
      int idx = s.parameter_index();
      if (idx < 0 || static_cast<std::size_t>(idx) >= scope_.method->params.size())
        fail("identity reads missing parameter " + s.source);
      GotoType pt = lower_checked(scope_.method->params[static_cast<std::size_t>(idx)]);
      Expr g = Expr::symbol(gotoir::parameter_global_name(scope_.key, s.source), pt);
      in = GotoInstruction::assign(target, coerce_checked(g, target.type()), pos_);
    }
    in.atomic = true;
    return in;
  }

 private:
  MethodScope& scope_;
  LoweringContext& ctx_;
  SourcePos pos_;
};

}  // namespace

std::string mangle_name(const std::string& method, const JimpleType& ret,
                        const std::vector<JimpleType>& params) {
  std::string out = escape_underscores(method) + "_" + type_segment(ret);
  for (const JimpleType& p : params) out += "_" + type_segment(p);
  return out;
}

std::string function_key(const std::string& class_name, const std::string& mangled) {
  return class_name + "::" + mangled;
}

std::string function_key(const jimple::MethodSignature& sig) {
  return function_key(sig.class_name, mangle_name(sig.name, sig.return_type, sig.params));
}

std::string static_field_global(const std::string& class_name, const std::string& field) {
  return class_name + "::" + field;
}

std::string clinit_key(const std::string& class_name) {
  return function_key(class_name, mangle_name("<clinit>", JimpleType::primitive(JimpleType::Base::Void), {}));
}

GotoType lower_type(const JimpleType& type) {
  if (type.dims > 0) {
    JimpleType elem = type.element();
    if (elem.is_void()) throw SemanticError("array of void");
    return GotoType::array(lower_type(elem));
  }
  switch (type.base) {
    case JimpleType::Base::Int: return GotoType::int32();
    case JimpleType::Base::Boolean: return GotoType::boolean();
    case JimpleType::Base::Byte: return GotoType::int8();
    case JimpleType::Base::Short: return GotoType::int16();
    case JimpleType::Base::Char: return GotoType::char16();
    case JimpleType::Base::Long: return GotoType::int64();
    case JimpleType::Base::Void: return GotoType::void_type();
    case JimpleType::Base::Reference: return GotoType::reference(type.class_name);
    case JimpleType::Base::Float:
    case JimpleType::Base::Double:
      throw UnsupportedError("unsupported type " + type.str() + " (no floating-point support)");
  }
  return GotoType::void_type();
}

const gotoir::ClassRecord& LoweringContext::record(const std::string& class_name) {
  if (const auto* r = program_.find_record(class_name)) return *r;
  gotoir::ClassRecord rec;
  rec.name = class_name;
  if (const jimple::JimpleClass* cls = table_.find(class_name)) {
    if (cls->superclass) {
      rec.superclass = *cls->superclass;
      rec.fields = record(*cls->superclass).fields;
    }
    for (const jimple::JimpleField& f : cls->fields) {
      if (f.is_static) continue;
      GotoType t;
      try {
        t = lower_type(f.type);
      } catch (const SemanticError& e) {
        throw SemanticError(f.tag.pos, std::string(e.what()) + " in field " + class_name + "." +
                                           f.name);
      }
      rec.fields.push_back({f.name, t, class_name});
    }
  }
  return program_.records[class_name] = std::move(rec);
}

const std::vector<std::string>& LoweringContext::parameters(const std::string& key) const {
  static const std::vector<std::string> none;
  auto it = parameters_.find(key);
  return it == parameters_.end() ? none : it->second;
}

void LoweringContext::register_parameters(const std::string& key,
                                          std::vector<std::string> globals) {
  parameters_[key] = std::move(globals);
}

bool LoweringContext::has_function(const std::string& key) const {
  return program_.functions.count(key) > 0;
}

void LoweringContext::note_unknown(const std::string& what) {
  auto& u = program_.unknown_calls;
  if (std::find(u.begin(), u.end(), what) == u.end()) u.push_back(what);
}

LoweredClass lower_class(const jimple::JimpleClass& cls, LoweringContext& ctx) {
  LoweredClass out;
  out.record = ctx.record(cls.name);
  for (const jimple::JimpleField& f : cls.fields) {
    if (!f.is_static) continue;
    GotoType t;
    try {
      t = lower_type(f.type);
    } catch (const SemanticError& e) {
      throw SemanticError(f.tag.pos,
                          std::string(e.what()) + " in field " + cls.name + "." + f.name);
    }
    gotoir::GotoGlobal g{static_field_global(cls.name, f.name), t, zero_value(t)};
    ctx.program().add_global(g);
    out.globals.push_back(std::move(g));
  }
  return out;
}

MethodScope make_scope(const jimple::JimpleClass& cls, const jimple::JimpleMethod& method) {
  MethodScope scope;
  scope.cls = &cls;
  scope.method = &method;
  scope.key = function_key(cls.name, mangle_name(method.name, method.return_type, method.params));
  try {
    scope.return_type = lower_type(method.return_type);
    for (const jimple::JimpleLocal& l : method.locals) scope.locals[l.name] = lower_type(l.type);
  } catch (const SemanticError& e) {
    throw SemanticError(method.tag.pos, std::string(e.what()) + " in method " +
                                            method.signature(cls.name).str());
  }
  return scope;
}

std::vector<GotoInstruction> lower_statement(const jimple::JimpleStmt& stmt, MethodScope& scope,
                                             LoweringContext& ctx) {
  return StatementLowering(scope, ctx, stmt.pos()).statement(stmt);
}

Expr lower_expr(const jimple::Rvalue& rhs, const MethodScope& scope, LoweringContext& ctx) {
  MethodScope copy = scope;
  return StatementLowering(copy, ctx, rhs.tag.pos).rvalue(rhs);
}

gotoir::GotoFunction lower_method(const jimple::JimpleClass& cls,
                                  const jimple::JimpleMethod& method, LoweringContext& ctx) {
  MethodScope scope = make_scope(cls, method);
  bool is_virtual = method.kind == jimple::MethodKind::Virtual;
  std::vector<std::pair<std::string, GotoType>> globals;
  try {
    globals = parameter_globals(scope.key, cls.name, is_virtual, method.params);
  } catch (const SemanticError& e) {
    throw SemanticError(method.tag.pos, std::string(e.what()) + " in method " +
                                            method.signature(cls.name).str());
  }
  declare_parameters(ctx, scope.key, globals);

  gotoir::GotoFunction fn;
  fn.name = scope.key;
  fn.return_type = scope.return_type;
  for (const auto& g : globals) fn.parameters.push_back(g.first);

  std::vector<std::string> declared;
  for (const jimple::JimpleStmt& stmt : method.body) {
    if (const auto* d = std::get_if<jimple::DeclarationStmt>(&stmt.node))
      declared.push_back(d->name);
    for (GotoInstruction& in : lower_statement(stmt, scope, ctx)) fn.body.push_back(std::move(in));
  }
  // Soot keeps declarations in the local list; make sure each one is DECLed.
  for (const jimple::JimpleLocal& l : method.locals) {
    if (std::find(declared.begin(), declared.end(), l.name) != declared.end()) continue;
    fn.body.insert(fn.body.begin(), GotoInstruction::decl(l.name, scope.locals[l.name], method.tag.pos));
    declared.push_back(l.name);
  }
  for (const std::string& name : declared) fn.body.push_back(GotoInstruction::dead(name));
  fn.body.push_back(GotoInstruction::end_function());
  return fn;
}

int field_offset(LoweringContext& ctx, const std::string& class_name, const std::string& field) {
  return ctx.record(class_name).offset_of(field);
}

gotoir::GotoProgram lower_program(const jimple::ClassTable& table) {
  LoweringContext ctx(table);
  for (const jimple::JimpleClass* cls : table.ordered()) lower_class(*cls, ctx);
  for (const jimple::JimpleClass* cls : table.ordered()) {
    for (const jimple::JimpleMethod& m : cls->methods) {
      if (!m.has_body) continue;
      gotoir::GotoFunction fn = lower_method(*cls, m, ctx);
      if (m.name == "<clinit>") ctx.program().initializers.push_back(fn.name);
      ctx.program().functions[fn.name] = std::move(fn);
    }
  }
  return std::move(ctx.program());
}

}  // namespace jimplebmc::lowering
