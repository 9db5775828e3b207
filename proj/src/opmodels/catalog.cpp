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

#include "jimplebmc/opmodels/catalog.hpp"

#include <set>

namespace jimplebmc::opmodels {

namespace {

using gotoir::BinaryOp;
using gotoir::Expr;
using gotoir::GotoInstruction;
using gotoir::GotoType;
using gotoir::PropertyClass;
using jimple::JimpleType;
using Instrs = std::vector<GotoInstruction>;
using Base = JimpleType::Base;

const char* const kSvVerifier = "org.sosy_lab.sv_benchmarks.Verifier";
const char* const kPlainVerifier = "Verifier";

JimpleType prim(Base b) { return JimpleType::primitive(b); }
JimpleType ref(const char* cls) { return JimpleType::reference(cls); }
const JimpleType kInt = prim(Base::Int);
const JimpleType kLong = prim(Base::Long);
const JimpleType kBool = prim(Base::Boolean);
const JimpleType kChar = prim(Base::Char);
const JimpleType kShort = prim(Base::Short);
const JimpleType kByte = prim(Base::Byte);
const JimpleType kVoid = prim(Base::Void);
const JimpleType kObject = ref("java.lang.Object");
const JimpleType kString = ref("java.lang.String");

Instrs nothing(const CallSite&) { return {}; }

Instrs nondet_result(const CallSite& c) {
  if (!c.lhs) return {};
  return {GotoInstruction::assign(*c.lhs, Expr::nondet(c.lhs->type()), c.pos)};
}

// nondet result r, then ASSUME(lo <= r && r < hi). Arguments at `lo_arg`
// and `hi_arg`; a negative `lo_arg` means a lower bound of zero.
Expansion bounded_nondet(int lo_arg, int hi_arg) {
  return [=](const CallSite& c) {
    const Expr& hi = c.args.at(static_cast<std::size_t>(hi_arg));
    Expr lo = lo_arg < 0 ? Expr::constant(0, hi.type()) : c.args.at(static_cast<std::size_t>(lo_arg));
    Instrs out;
    out.push_back(GotoInstruction::assert_(Expr::binary(BinaryOp::Lt, lo, hi),
                                           PropertyClass::UncaughtException,
                                           "random bound must be positive", c.pos));
    if (c.lhs) {
      out.push_back(GotoInstruction::assign(*c.lhs, Expr::nondet(c.lhs->type()), c.pos));
      out.push_back(GotoInstruction::assume(
          Expr::binary(BinaryOp::And, Expr::binary(BinaryOp::Le, lo, *c.lhs),
                       Expr::binary(BinaryOp::Lt, *c.lhs, hi)),
          c.pos));
    }
    return out;
  };
}

Instrs assume_arg(const CallSite& c) { return {GotoInstruction::assume(c.args.at(0), c.pos)}; }

Instrs assert_arg(const CallSite& c) {
  return {GotoInstruction::assert_(c.args.at(0), PropertyClass::UserAssert, "user assertion",
                                   c.pos)};
}

Instrs not_null_arg(const CallSite& c) {
  const Expr& a = c.args.at(0);
  return {GotoInstruction::assert_(Expr::binary(BinaryOp::Ne, a, Expr::null(a.type())),
                                   PropertyClass::NullDeref, "value must not be null", c.pos)};
}

Instrs result_of(const CallSite& c, const Expr& value) {
  if (!c.lhs) return {};
  return {GotoInstruction::assign(*c.lhs, value, c.pos)};
}

Instrs math_abs(const CallSite& c) {
  const Expr& a = c.args.at(0);
  Expr zero = Expr::constant(0, a.type());
  return result_of(c, Expr::if_then_else(Expr::binary(BinaryOp::Lt, a, zero),
                                         Expr::unary(gotoir::UnaryOp::Neg, a), a));
}

Expansion math_pick(BinaryOp op) {
  return [=](const CallSite& c) {
    const Expr& a = c.args.at(0);
    const Expr& b = c.args.at(1);
    return result_of(c, Expr::if_then_else(Expr::binary(op, a, b), a, b));
  };
}

Instrs are_equal(const CallSite& c) {
  return result_of(c, Expr::binary(BinaryOp::Eq, c.args.at(0), c.args.at(1)));
}

// Body of Arrays.fill(T[] a, T v): null check, then store v at every index.
Instrs arrays_fill(const CallSite& c) {
  const Expr& a = c.args.at(0);
  const Expr& v = c.args.at(1);
  Instrs out;
  out.push_back(GotoInstruction::assert_(Expr::binary(BinaryOp::Ne, a, Expr::null(a.type())),
                                         PropertyClass::NullDeref, "array must not be null",
                                         c.pos));
  for (auto& in : array_init_model(a.type().element(), Expr::length(a), a, v, c.fresh_name,
                                   c.pos)) {
    // Only the fill loop is wanted; the array already exists.
    if (in.kind == gotoir::InstrKind::Assert && in.property == PropertyClass::Bounds) continue;
    if (in.kind == gotoir::InstrKind::Assign && in.expr &&
        in.expr->kind() == gotoir::ExprKind::NewArray)
      continue;
    out.push_back(std::move(in));
  }
  return out;
}

std::vector<OperationalModel> build_catalog() {
  std::vector<OperationalModel> m;
  auto add = [&](const char* cls, const char* name, std::vector<JimpleType> params,
                 JimpleType ret, bool is_static, ModelKind kind, Expansion expand) {
    m.push_back({cls, name, std::move(params), std::move(ret), is_static, kind,
                 std::move(expand)});
  };
  const auto I = ModelKind::Intrinsic;
  const auto S = ModelKind::SyntheticBody;
  const auto H = ModelKind::Havoc;

  for (const char* v : {kSvVerifier, kPlainVerifier}) {
    add(v, "assume", {kBool}, kVoid, true, I, assume_arg);
    add(v, "assert", {kBool}, kVoid, true, I, assert_arg);
    add(v, "nondetInt", {}, kInt, true, I, nondet_result);
    add(v, "nondetLong", {}, kLong, true, I, nondet_result);
    add(v, "nondetShort", {}, kShort, true, I, nondet_result);
    add(v, "nondetByte", {}, kByte, true, I, nondet_result);
    add(v, "nondetChar", {}, kChar, true, I, nondet_result);
    add(v, "nondetBoolean", {}, kBool, true, I, nondet_result);
  }

  add("java.util.Random", "<init>", {}, kVoid, false, I, nothing);
  add("java.util.Random", "<init>", {kLong}, kVoid, false, I, nothing);
  add("java.util.Random", "nextInt", {}, kInt, false, I, nondet_result);
  add("java.util.Random", "nextInt", {kInt}, kInt, false, I, bounded_nondet(-1, 1));
  add("java.util.Random", "nextBoolean", {}, kBool, false, I, nondet_result);
  add("java.util.Random", "nextLong", {}, kLong, false, I, nondet_result);
  for (const char* k : {"kotlin.random.Random", "kotlin.random.Random$Default"}) {
    add(k, "nextInt", {}, kInt, false, I, nondet_result);
    add(k, "nextInt", {kInt}, kInt, false, I, bounded_nondet(-1, 1));
    add(k, "nextInt", {kInt, kInt}, kInt, false, I, bounded_nondet(1, 2));
    add(k, "nextBoolean", {}, kBool, false, I, nondet_result);
    add(k, "nextLong", {}, kLong, false, I, nondet_result);
  }

  for (const JimpleType& t : {kInt, kLong, kBool, kChar, kString, kObject}) {
    add("java.io.PrintStream", "println", {t}, kVoid, false, S, nothing);
    add("java.io.PrintStream", "print", {t}, kVoid, false, S, nothing);
  }
  add("java.io.PrintStream", "println", {}, kVoid, false, S, nothing);
  for (const JimpleType& t : {kInt, kLong, kBool, kObject}) {
    add("kotlin.io.ConsoleKt", "println", {t}, kVoid, true, S, nothing);
    add("kotlin.io.ConsoleKt", "print", {t}, kVoid, true, S, nothing);
  }
  add("kotlin.io.ConsoleKt", "println", {}, kVoid, true, S, nothing);

  add("java.lang.Object", "<init>", {}, kVoid, false, I, nothing);
  for (const char* ex :
       {"java.lang.Throwable", "java.lang.Exception", "java.lang.RuntimeException",
        "java.lang.Error", "java.lang.AssertionError", "java.lang.IllegalStateException",
        "java.lang.IllegalArgumentException", "java.lang.ArithmeticException",
        "java.lang.NullPointerException", "java.lang.ArrayIndexOutOfBoundsException",
        "java.lang.IndexOutOfBoundsException"}) {
    add(ex, "<init>", {}, kVoid, false, I, nothing);
    add(ex, "<init>", {kString}, kVoid, false, I, nothing);
  }
  add("java.lang.AssertionError", "<init>", {kObject}, kVoid, false, I, nothing);

  const char* intr = "kotlin.jvm.internal.Intrinsics";
  add(intr, "checkNotNull", {kObject}, kVoid, true, I, not_null_arg);
  for (const char* n : {"checkNotNull", "checkNotNullParameter", "checkNotNullExpressionValue",
                        "checkParameterIsNotNull", "checkExpressionValueIsNotNull"})
    add(intr, n, {kObject, kString}, kVoid, true, I, not_null_arg);
  add(intr, "areEqual", {kObject, kObject}, kBool, true, I, are_equal);

  add("java.lang.Math", "abs", {kInt}, kInt, true, I, math_abs);
  add("java.lang.Math", "abs", {kLong}, kLong, true, I, math_abs);
  add("java.lang.Math", "max", {kInt, kInt}, kInt, true, I, math_pick(BinaryOp::Ge));
  add("java.lang.Math", "max", {kLong, kLong}, kLong, true, I, math_pick(BinaryOp::Ge));
  add("java.lang.Math", "min", {kInt, kInt}, kInt, true, I, math_pick(BinaryOp::Le));
  add("java.lang.Math", "min", {kLong, kLong}, kLong, true, I, math_pick(BinaryOp::Le));

  add("java.lang.System", "currentTimeMillis", {}, kLong, true, H, nondet_result);
  add("java.lang.System", "nanoTime", {}, kLong, true, H, nondet_result);

  for (const JimpleType& t : {kInt, kLong, kBool})
    add("java.util.Arrays", "fill", {JimpleType::array_of(t), t}, kVoid, true, S, arrays_fill);
  return m;
}

std::vector<StaticFieldModel> build_static_fields() {
  return {
      {"java.lang.System", "out", Expr::new_object("java.io.PrintStream")},
      {"java.lang.System", "err", Expr::new_object("java.io.PrintStream")},
      {"kotlin.random.Random", "Default", Expr::new_object("kotlin.random.Random$Default")},
      {"kotlin._Assertions", "ENABLED", Expr::boolean(true)},
  };
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Intrinsic: return "intrinsic";
    case ModelKind::SyntheticBody: return "synthetic";
    case ModelKind::Havoc: return "havoc";
  }
  return "?";
}

const std::vector<OperationalModel>& catalog() {
  static const std::vector<OperationalModel> models = build_catalog();
  return models;
}

const std::vector<StaticFieldModel>& static_field_catalog() {
  static const std::vector<StaticFieldModel> fields = build_static_fields();
  return fields;
}

const OperationalModel* find_model(const jimple::MethodSignature& sig) {
  for (const OperationalModel& m : catalog())
    if (m.class_name == sig.class_name && m.method_name == sig.name && m.params == sig.params)
      return &m;
  return nullptr;
}

const StaticFieldModel* find_static_field(std::string_view class_name,
                                          std::string_view field_name) {
  for (const StaticFieldModel& f : static_field_catalog())
    if (f.class_name == class_name && f.field_name == field_name) return &f;
  return nullptr;
}

bool is_modeled_external(std::string_view class_name) {
  static const std::set<std::string, std::less<>> classes = [] {
    std::set<std::string, std::less<>> s{"java.lang.Object", "java.lang.String",
                                         "java.lang.Enum", "java.lang.Number"};
    for (const OperationalModel& m : catalog()) s.insert(m.class_name);
    for (const StaticFieldModel& f : static_field_catalog()) s.insert(f.class_name);
    return s;
  }();
  return classes.count(class_name) > 0;
}

CallResolution resolve_call(const jimple::MethodSignature& sig, const jimple::ClassTable& table) {
  if (auto r = table.lookup_method(sig.class_name, sig.name, sig.params); r && r->method->has_body)
    return UserFunction{*r};
  if (const OperationalModel* m = find_model(sig)) return ModelCall{m};
  // A user class inheriting a library method, e.g. a subclass of Random.
  for (const jimple::JimpleClass* c : table.chain(sig.class_name)) {
    if (c->superclass && table.is_external(*c->superclass)) {
      jimple::MethodSignature up = sig;
      up.class_name = *c->superclass;
      if (const OperationalModel* m = find_model(up)) return ModelCall{m};
    }
  }
  return UnknownCall{};
}

std::vector<gotoir::GotoInstruction> array_init_model(
    const gotoir::GotoType& element, const gotoir::Expr& length, const gotoir::Expr& target,
    const std::optional<gotoir::Expr>& initializer,
    const std::function<std::string()>& fresh_name, SourcePos pos) {
  Instrs out;
  Expr zero = Expr::constant(0, length.type());
  out.push_back(GotoInstruction::assert_(Expr::binary(BinaryOp::Ge, length, zero),
                                         PropertyClass::Bounds, "array size is negative", pos));
  out.push_back(GotoInstruction::assign(target, Expr::new_array(element, length), pos));
  if (!initializer) return out;

  std::string counter = fresh_name();
  std::string head = fresh_name();
  std::string exit = fresh_name();
  Expr i = Expr::symbol(counter, GotoType::int32());
  out.push_back(GotoInstruction::decl(counter, GotoType::int32(), pos));
  out.push_back(GotoInstruction::assign(i, Expr::int32(0), pos));
  out.push_back(GotoInstruction::label(head, pos));
  out.push_back(
      GotoInstruction::if_(Expr::binary(BinaryOp::Ge, i, Expr::length(target)), exit, pos));
  out.push_back(GotoInstruction::assign(Expr::index(target, i), *initializer, pos));
  out.push_back(
      GotoInstruction::assign(i, Expr::binary(BinaryOp::Add, i, Expr::int32(1)), pos));
  out.push_back(GotoInstruction::goto_(head, pos));
  out.push_back(GotoInstruction::label(exit, pos));
  out.push_back(GotoInstruction::dead(counter, pos));
  return out;
}

std::vector<std::string> describe_catalog() {
  std::vector<std::string> out;
  for (const OperationalModel& m : catalog())
    out.push_back(m.signature().str() + "  " + model_kind_name(m.kind));
  for (const StaticFieldModel& f : static_field_catalog())
    out.push_back("<" + f.class_name + ": " + f.field_name + ">  static-field");
  return out;
}

}  // namespace jimplebmc::opmodels
