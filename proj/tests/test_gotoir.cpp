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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>

#include "jimplebmc/gotoir/printer.hpp"
#include "jimplebmc/gotoir/validate.hpp"
#include "support.hpp"

using namespace jimplebmc;
using namespace jimplebmc::gotoir;
using Instr = GotoInstruction;

namespace {

GotoFunction make_function(std::vector<Instr> body) {
  GotoFunction f;
  f.name = "T::f_void";
  f.body = std::move(body);
  f.body.push_back(Instr::end_function());
  return f;
}

GotoProgram single(GotoFunction f) {
  GotoProgram p;
  p.functions[f.name] = std::move(f);
  return p;
}

bool mentions(const std::vector<Diagnostic>& ds, const std::string& text) {
  for (const auto& d : ds)
    if (d.message.find(text) != std::string::npos) return true;
  return false;
}

std::vector<std::filesystem::path> fixture_programs() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(testsupport::fixture("benchmarks")))
    if (e.is_directory() || e.path().extension() == ".jimple") out.push_back(e.path());
  out.push_back(testsupport::fixture("misc/Foo.jimple"));
  out.push_back(testsupport::fixture("kind"));
  std::sort(out.begin(), out.end());
  return out;
}

// Random well-typed integer expressions over x, y (int32) and b (bool).
struct ExprGen {
  std::mt19937 rng;
  explicit ExprGen(unsigned seed) : rng(seed) {}
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Expr integer(int depth) {
    if (depth == 0 || pick(3) == 0) {
      switch (pick(3)) {
        case 0: return Expr::symbol("x", GotoType::int32());
        case 1: return Expr::symbol("y", GotoType::int32());
        default: return Expr::int32(pick(200) - 100);
      }
    }
    static const BinaryOp arith[] = {BinaryOp::Add, BinaryOp::Sub,    BinaryOp::Mul,
                                     BinaryOp::Div, BinaryOp::Rem,    BinaryOp::Shl,
                                     BinaryOp::Shr, BinaryOp::Ushr,   BinaryOp::BitAnd,
                                     BinaryOp::BitOr, BinaryOp::BitXor};
    switch (pick(5)) {
      case 0: return Expr::unary(UnaryOp::Neg, integer(depth - 1));
      case 1: return Expr::if_then_else(boolean(depth - 1), integer(depth - 1), integer(depth - 1));
      case 2:
        return Expr::compare(static_cast<CompareKind>(pick(3)), integer(depth - 1),
                             integer(depth - 1));
      default: return Expr::binary(arith[pick(11)], integer(depth - 1), integer(depth - 1));
    }
  }

  Expr boolean(int depth) {
    if (depth == 0 || pick(4) == 0)
      return pick(2) ? Expr::symbol("b", GotoType::boolean()) : Expr::boolean(pick(2));
    static const BinaryOp rel[] = {BinaryOp::Lt, BinaryOp::Le, BinaryOp::Gt,
                                   BinaryOp::Ge, BinaryOp::Eq, BinaryOp::Ne};
    switch (pick(4)) {
      case 0: return Expr::unary(UnaryOp::Not, boolean(depth - 1));
      case 1:
        return Expr::binary(pick(2) ? BinaryOp::And : BinaryOp::Or, boolean(depth - 1),
                            boolean(depth - 1));
      case 2:
        return Expr::overflow(static_cast<OverflowOp>(pick(3)), integer(depth - 1),
                              integer(depth - 1));
      default: return Expr::binary(rel[pick(6)], integer(depth - 1), integer(depth - 1));
    }
  }
};

}  // namespace

TEST_CASE("validate: examples") {
  SUBCASE("int-typed IF condition") {
    auto p = single(make_function({Instr::if_(Expr::int32(1), "L"), Instr::label("L")}));
    CHECK(mentions(validate(p), "IF condition must be boolean"));
  }
  SUBCASE("missing label is named") {
    auto p = single(make_function({Instr::goto_("nowhere")}));
    CHECK(mentions(validate(p), "nowhere"));
  }
  SUBCASE("ASSERT and ASSUME need boolean claims") {
    auto p = single(make_function({Instr::assert_(Expr::int32(0), PropertyClass::UserAssert, "c"),
                                   Instr::assume(Expr::int32(1))}));
    CHECK(validate(p).size() >= 2);
  }
  SUBCASE("END_FUNCTION must be last and unique") {
    GotoFunction f = make_function({Instr::end_function(), Instr::skip()});
    CHECK_FALSE(validate(single(f)).empty());
    f.body = {Instr::skip()};
    CHECK_FALSE(validate(single(f)).empty());
  }
  SUBCASE("DEAD without DECL") {
    auto p = single(make_function({Instr::dead("x")}));
    CHECK_FALSE(validate(p).empty());
  }
  SUBCASE("DEAD after a DECL on only one path") {
    auto p = single(make_function({Instr::if_(Expr::symbol("c", GotoType::boolean()), "L"),
                                   Instr::decl("x", GotoType::int32()), Instr::label("L"),
                                   Instr::dead("x")}));
    p.add_global({"c", GotoType::boolean(), std::nullopt});
    CHECK_FALSE(validate(p).empty());
  }
  SUBCASE("call to a missing function") {
    auto p = single(make_function({Instr::function_call(std::nullopt, "Nope::g_void", {})}));
    CHECK(mentions(validate(p), "Nope::g_void"));
  }
  SUBCASE("ill-typed arithmetic") {
    auto bad = Expr::binary(BinaryOp::Div, Expr::boolean(true), Expr::int32(1));
    CHECK_FALSE(check_expr(bad, GotoProgram{}).empty());
  }
  SUBCASE("diagnostics carry instruction indices") {
    auto p = single(make_function({Instr::skip(), Instr::goto_("nowhere")}));
    auto ds = validate(p);
    REQUIRE_FALSE(ds.empty());
    CHECK(ds[0].index == 1);
    CHECK(ds[0].function == "T::f_void");
  }
}

TEST_CASE("validate: every instruction form is constructible and valid") {
  GotoProgram p;
  p.add_global({"g", GotoType::int32(), std::nullopt});
  GotoFunction callee = make_function({Instr::return_(Expr::int32(1))});
  callee.name = "T::g_int";
  callee.return_type = GotoType::int32();
  p.functions[callee.name] = callee;
  Expr x = Expr::symbol("x", GotoType::int32());
  auto f = make_function({
      Instr::decl("x", GotoType::int32()),
      Instr::assign(x, Expr::nondet(GotoType::int32())),
      Instr::function_call(x, "T::g_int", {}),
      Instr::if_(Expr::binary(BinaryOp::Lt, x, Expr::int32(0)), "L"),
      Instr::assert_(Expr::binary(BinaryOp::Ne, x, Expr::int32(0)), PropertyClass::UserAssert, "m"),
      Instr::assume(Expr::binary(BinaryOp::Ge, x, Expr::int32(0))),
      Instr::skip(),
      Instr::goto_("L"),
      Instr::label("L"),
      Instr::dead("x"),
      Instr::return_(std::nullopt),
  });
  p.functions[f.name] = f;
  auto ds = validate(p);
  for (const auto& d : ds) MESSAGE(d.str());
  CHECK(ds.empty());
  // THROW is a terminal form as well.
  auto t = make_function({Instr::throw_(Expr::null())});
  CHECK(validate(single(t)).empty());
}

TEST_CASE("validate: lowered fixtures are valid") {
  for (const auto& path : fixture_programs()) {
    CAPTURE(path.string());
    if (std::filesystem::is_directory(path) && path.filename() == "kind") continue;
    auto p = verifier::load_program({path});
    CHECK(validate(p).empty());
  }
}

TEST_CASE("successors") {
  auto f = make_function({Instr::skip(), Instr::if_(Expr::boolean(true), "L"), Instr::goto_("L"),
                          Instr::label("L"), Instr::return_(std::nullopt)});
  CHECK(successors(f, 0) == std::vector<std::size_t>{1});
  CHECK(successors(f, 1) == std::vector<std::size_t>{2, 3});
  CHECK(successors(f, 2) == std::vector<std::size_t>{3});
  CHECK(successors(f, 4).empty());
  CHECK(successors(f, 5).empty());
  auto t = make_function({Instr::throw_(Expr::null())});
  CHECK(successors(t, 0).empty());
}

TEST_CASE("successors: the only sinks are RETURN, THROW and END_FUNCTION") {
  for (const auto& path : fixture_programs()) {
    auto p = symex::instrument(verifier::load_program({path}), symex::default_checks());
    for (const auto& [name, fn] : p.functions) {
      for (std::size_t i = 0; i < fn.body.size(); ++i) {
        InstrKind k = fn.body[i].kind;
        bool sink = successors(fn, i).empty();
        bool terminal = k == InstrKind::Return || k == InstrKind::Throw || k == InstrKind::EndFunction;
        CHECK_MESSAGE(sink == terminal, name, " @", i);
        for (std::size_t s : successors(fn, i)) CHECK(s < fn.body.size());
      }
    }
  }
}

TEST_CASE("pretty_print: examples") {
  GotoFunction f;
  f.name = "A::f_void";
  f.body = {Instr::end_function()};
  std::string text = pretty_print(f);
  CHECK(text.find("f_void (A::f_void):") == 0);
  CHECK(text.find("END_FUNCTION") != std::string::npos);

  auto claim = Expr::unary(UnaryOp::Not, Expr::overflow(OverflowOp::Add,
                                                         Expr::symbol("i0", GotoType::int32()),
                                                         Expr::symbol("$i1", GotoType::int32())));
  std::string line = print_instruction(Instr::assert_(claim, PropertyClass::Overflow, "x"));
  CHECK(line.rfind("ASSERT !overflow(\"+\", i0, $i1)", 0) == 0);
}

TEST_CASE("pretty_print then read is the identity on lowered programs") {
  for (const auto& path : fixture_programs()) {
    CAPTURE(path.string());
    auto lowered = verifier::load_program({path});
    for (const auto& p : {lowered, symex::instrument(lowered, {PropertyClass::Overflow,
                                                               PropertyClass::DivByZero,
                                                               PropertyClass::Bounds,
                                                               PropertyClass::NullDeref,
                                                               PropertyClass::UserAssert})}) {
      GotoProgram back = read_program(pretty_print(p));
      CHECK(back == p);
      CHECK(pretty_print(back) == pretty_print(p));
    }
  }
}

TEST_CASE("pretty_print then read is the identity on random expressions") {
  ExprGen gen(20261015);
  for (int i = 0; i < 300; ++i) {
    GotoProgram p;
    p.add_global({"x", GotoType::int32(), std::nullopt});
    p.add_global({"y", GotoType::int32(), std::nullopt});
    p.add_global({"b", GotoType::boolean(), std::nullopt});
    Expr value = gen.integer(4);
    Expr cond = gen.boolean(4);
    p.functions["T::f_void"] =
        make_function({Instr::assign(Expr::symbol("x", GotoType::int32()), value),
                       Instr::if_(cond, "L"), Instr::label("L")});
    REQUIRE(validate(p).empty());
    GotoProgram back = read_program(pretty_print(p));
    CHECK_MESSAGE(back == p, pretty_print(p));
  }
}

TEST_CASE("reader rejects malformed dumps") {
  CHECK_THROWS_AS(read_program("f (A::f):\n  RETURNS void\n  PARAMETERS\n        BOGUS\n"), ParseError);
}
