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

#include "jimplebmc/gotoir/printer.hpp"
#include "jimplebmc/solver/brute_force.hpp"
#include "jimplebmc/symex/instrument.hpp"
#include "jimplebmc/symex/replay.hpp"
#include "jimplebmc/symex/ssa.hpp"
#include "jimplebmc/symex/vc.hpp"
#include "support.hpp"

using namespace jimplebmc;
using namespace jimplebmc::symex;
using gotoir::BinaryOp;
using gotoir::Expr;
using gotoir::GotoType;
using gotoir::PropertyClass;
using Instr = gotoir::GotoInstruction;

namespace {

CheckSet with_overflow() {
  CheckSet c = default_checks();
  c.insert(PropertyClass::Overflow);
  return c;
}

std::string entry_of(const gotoir::GotoProgram& p, const std::string& sel = "") {
  return verifier::resolve_entry(p, sel.empty() ? std::nullopt : std::optional<std::string>(sel));
}

// Single-function program `T::f_void` over width-4 locals.
gotoir::GotoProgram tiny(std::vector<Instr> body, std::vector<std::string> vars) {
  gotoir::GotoFunction f;
  f.name = "T::f_void";
  for (const auto& v : vars) f.body.push_back(Instr::decl(v, GotoType::signed_bv(4)));
  for (auto& in : body) f.body.push_back(std::move(in));
  f.body.push_back(Instr::end_function());
  gotoir::GotoProgram p;
  p.functions[f.name] = f;
  return p;
}

Expr v4(const std::string& n) { return Expr::symbol(n, GotoType::signed_bv(4)); }
Expr c4(int v) { return Expr::constant(v, GotoType::signed_bv(4)); }

solver::SolveResult z3(const solver::Formula& f) {
  return solver::solve(f, solver::find_solver(std::nullopt));
}

std::string loop_program(int trips) {
  return R"(public class L extends java.lang.Object
{
    public static void main()
    {
        int i0, i1;

        i0 = 0;
        i1 = 0;

     label1:
        if i0 >= )" + std::to_string(trips) + R"( goto label2;
        i1 = i1 + 2;
        i0 = i0 + 1;
        goto label1;

     label2:
        staticinvoke <Verifier: void assert(boolean)>(0);
        return;
    }
}
)";
}

}  // namespace

TEST_CASE("instrument: overflow, division and constant folding") {
  auto p = testsupport::load("misc/Foo.jimple");
  auto q = instrument(p, with_overflow());
  const auto& body = q.find_function("Foo::increment_int_int")->body;
  std::vector<std::string> lines;
  for (const auto& in : body) lines.push_back(gotoir::print_instruction(in));
  auto add = std::find(lines.begin(), lines.end(), "ASSIGN $i2 = $i1 + i0");
  REQUIRE(add != lines.end());
  CHECK(std::prev(add)->rfind("ASSERT !overflow(\"+\", $i1, i0)", 0) == 0);

  // Without the overflow class the claim is absent.
  auto plain = instrument(p, default_checks());
  for (const auto& in : plain.find_function("Foo::increment_int_int")->body)
    if (in.kind == gotoir::InstrKind::Assert) CHECK(in.property != PropertyClass::Overflow);

  auto d = testsupport::load_text({R"(public class D extends java.lang.Object
{
    public static int q(int, int)
    {
        int i0, i1, $i2;

        i0 := @parameter0: int;

        i1 := @parameter1: int;

        $i2 = i0 / i1;

        return $i2;
    }
}
)"});
  auto dq = instrument(d, default_checks());
  std::vector<std::string> dl;
  for (const auto& in : dq.find_function("D::q_int_int_int")->body) dl.push_back(gotoir::print_instruction(in));
  auto div = std::find(dl.begin(), dl.end(), "ASSIGN $i2 = i0 / i1");
  REQUIRE(div != dl.end());
  CHECK(std::prev(div)->rfind("ASSERT i1 != 0", 0) == 0);

  // 2 + 3 at 32 bits folds to a valid claim: discharged with no obligation.
  auto k = tiny({}, {});
  k.functions["T::f_void"].body.insert(
      k.functions["T::f_void"].body.begin(),
      {Instr::decl("x", GotoType::int32()),
       Instr::assign(Expr::symbol("x", GotoType::int32()),
                     Expr::binary(BinaryOp::Add, Expr::int32(2), Expr::int32(3)))});
  auto ssa = unroll(instrument(k, with_overflow()), "T::f_void", {});
  CHECK(ssa.obligations.empty());
  CHECK(ssa.discharged >= 1);
}

TEST_CASE("unroll: the increment constraint system starts with the expected conjuncts") {
  auto p = instrument(testsupport::load("misc/Foo.jimple"), with_overflow());
  auto ssa = unroll(p, "Foo::increment_int_int", {});
  REQUIRE(ssa.equations.size() >= 5);
  std::vector<std::pair<std::string, std::string>> head;
  for (std::size_t i = 0; i < 5; ++i)
    head.emplace_back(ssa.equations[i].source, ssa.equations[i].rhs_source);
  CHECK(head == std::vector<std::pair<std::string, std::string>>{{"@this", "nondet(Foo*)"},
                                                                  {"r0", "(Foo*)@this"},
                                                                  {"@parameter0", "nondet(int32)"},
                                                                  {"i0", "@parameter0"},
                                                                  {"$i1", "r0->member"}});
  CHECK(ssa.equations[0].kind == EquationKind::Input);
  CHECK(ssa.equations[2].kind == EquationKind::Input);
  int overflow = 0;
  for (const auto& o : ssa.obligations) {
    if (o.property != PropertyClass::Overflow) continue;
    ++overflow;
    CHECK(o.claim->op == solver::Op::Not);
    const auto& pred = o.claim->args[0];
    CHECK(pred->op == solver::Op::AddOverflow);
    std::set<std::string> operands{pred->args[0]->name, pred->args[1]->name};
    CHECK(operands == std::set<std::string>{"Foo::increment_int_int::i0#1",
                                            "Foo::increment_int_int::$i1#1"});
  }
  CHECK(overflow == 1);
  CHECK_FALSE(check_ssa(ssa));
}

TEST_CASE("unroll: straight-line code has one equation per assignment and no guards") {
  auto p = tiny({Instr::assign(v4("x"), c4(1)), Instr::assign(v4("y"), Expr::binary(BinaryOp::Add, v4("x"), v4("x"))),
                 Instr::assign(v4("x"), Expr::binary(BinaryOp::Sub, v4("y"), c4(1)))},
                {"x", "y"});
  auto ssa = unroll(p, "T::f_void", {1, false, false});
  CHECK(ssa.equations.size() == 3);
  for (const auto& e : ssa.equations) CHECK(solver::is_true(e.guard));
  CHECK_FALSE(ssa.bound_reached);
}

TEST_CASE("unroll: a three-trip loop gives the same verdict at k = 3 and k = 5") {
  auto p = testsupport::load_text({loop_program(3)});
  auto opts = testsupport::options(default_checks(), true);
  auto e = entry_of(p);
  auto k3 = verifier::run_bmc(p, e, 3, opts);
  auto k5 = verifier::run_bmc(p, e, 5, opts);
  // The assert(false) after the loop is reachable, and the loop exits in time.
  CHECK(k3.kind == verifier::VerdictKind::Failed);
  CHECK(k5.kind == k3.kind);
  CHECK_FALSE(k3.unwinding_failure);
  CHECK_FALSE(k5.unwinding_failure);
  // Below the trip count only the unwinding assertion can fail.
  auto k2 = verifier::run_bmc(p, e, 2, opts);
  CHECK(k2.kind == verifier::VerdictKind::Failed);
  CHECK(k2.unwinding_failure);
}

TEST_CASE("unroll: single assignment on every fixture at several bounds") {
  std::vector<std::string> items{"misc/Foo.jimple", "kind/NondetBound.jimple", "kind/NonInductive.jimple"};
  for (const auto& e : std::filesystem::directory_iterator(testsupport::fixture("benchmarks")))
    if (e.path().extension() != ".json") items.push_back("benchmarks/" + e.path().filename().string());
  for (const auto& item : items) {
    auto p = instrument(testsupport::load(item), with_overflow());
    for (unsigned k : {1u, 2u, 5u}) {
      for (bool ua : {false, true}) {
        auto entry = item == "misc/Foo.jimple" ? "Foo::increment_int_int" : entry_of(p);
        auto ssa = unroll(p, entry, {k, ua, false});
        auto problem = check_ssa(ssa);
        CHECK_MESSAGE(!problem, item, " k=", k, ": ", problem.value_or(""));
      }
    }
  }
}

TEST_CASE("unroll: deep recursion is cut at the bound, not a crash") {
  auto p = testsupport::load_text({R"(public class R extends java.lang.Object
{
    public static int down(int)
    {
        int i0, $i1, $i2;

        i0 := @parameter0: int;

        if i0 <= 0 goto label1;
        $i1 = i0 - 1;
        $i2 = staticinvoke <R: int down(int)>($i1);
        return $i2;

     label1:
        return 0;
    }
}
)"});
  auto q = instrument(p, default_checks());
  auto ssa = unroll(q, "R::down_int_int", {3, true, false});
  CHECK(ssa.bound_reached);
  bool unwinding = false;
  for (const auto& o : ssa.obligations) unwinding |= o.property == PropertyClass::Unwinding;
  CHECK(unwinding);
  auto v = verifier::run_bmc(p, "R::down_int_int", 3, testsupport::options(default_checks(), true));
  CHECK(v.kind == verifier::VerdictKind::Failed);
  CHECK(v.unwinding_failure);
}

TEST_CASE("encode_vc: examples") {
  // C := {x = 5}, P := (x = 5)
  auto p = tiny({Instr::assign(v4("x"), c4(5)),
                 Instr::assert_(Expr::binary(BinaryOp::Eq, v4("x"), c4(5)), PropertyClass::UserAssert, "p")},
                {"x"});
  auto ssa = unroll(p, "T::f_void", {});
  auto f = encode_vc(ssa);
  CHECK(z3(f).status == solver::SolveStatus::Unsat);

  // Nothing to violate: the formula is `false`.
  auto empty = unroll(tiny({Instr::assign(v4("x"), c4(1))}, {"x"}), "T::f_void", {});
  CHECK(solver::is_false(encode_vc(empty).assertion));
}

TEST_CASE("encode_vc: only the second of two obligations is violable") {
  auto p = tiny({Instr::assign(v4("x"), Expr::nondet(GotoType::signed_bv(4))),
                 Instr::assert_(Expr::binary(BinaryOp::Le, v4("x"), c4(7)), PropertyClass::UserAssert, "first"),
                 Instr::assert_(Expr::binary(BinaryOp::Ne, v4("x"), c4(3)), PropertyClass::UserAssert, "second")},
                {"x"});
  auto ssa = unroll(p, "T::f_void", {});
  REQUIRE(ssa.obligations.size() == 2);
  auto f = encode_vc(ssa);
  auto bf = solver::brute_force(f);
  auto z = z3(f);
  REQUIRE(bf.status == solver::SolveStatus::Sat);
  REQUIRE(z.status == solver::SolveStatus::Sat);
  CHECK(violated_obligation(ssa, bf.model) == std::optional<std::size_t>(1));
  CHECK(violated_obligation(ssa, z.model) == std::optional<std::size_t>(1));
  // Each obligation alone agrees with enumeration.
  CHECK(solver::brute_force(encode_vc(ssa, ObligationSelection::single(0))).status ==
        solver::SolveStatus::Unsat);
  CHECK(z3(encode_vc(ssa, ObligationSelection::single(0))).status == solver::SolveStatus::Unsat);
}

TEST_CASE("encode_vc: an assertion only constrains what comes after it") {
  // assert(x != 3); assert(x != 3 || false) -- the first must be reported.
  auto p = tiny({Instr::assign(v4("x"), Expr::nondet(GotoType::signed_bv(4))),
                 Instr::assert_(Expr::binary(BinaryOp::Ne, v4("x"), c4(3)), PropertyClass::UserAssert, "a"),
                 Instr::assert_(Expr::binary(BinaryOp::Ne, v4("x"), c4(3)), PropertyClass::UserAssert, "b")},
                {"x"});
  auto ssa = unroll(p, "T::f_void", {});
  auto z = z3(encode_vc(ssa));
  REQUIRE(z.status == solver::SolveStatus::Sat);
  CHECK(violated_obligation(ssa, z.model) == std::optional<std::size_t>(0));
  // The second alone is unreachable once the first is assumed.
  CHECK(z3(encode_vc(ssa, ObligationSelection::single(1))).status == solver::SolveStatus::Unsat);
}

TEST_CASE("build_trace: increment overflow ends at the overflow with concrete operands") {
  auto p = instrument(testsupport::load("misc/Foo.jimple"), with_overflow());
  auto ssa = unroll(p, "Foo::increment_int_int", {});
  auto sel = ObligationSelection::only({PropertyClass::Overflow});
  auto z = z3(encode_vc(ssa, sel));
  REQUIRE(z.status == solver::SolveStatus::Sat);
  auto cex = build_trace(z.model, ssa, sel);
  CHECK(cex.violated.property == PropertyClass::Overflow);
  std::map<std::string, std::int64_t> value;
  for (const auto& s : cex.steps) value[s.symbol] = std::stoll(s.value);
  REQUIRE(value.count("i0"));
  REQUIRE(value.count("$i1"));
  std::int64_t wide = value["i0"] + value["$i1"];
  CHECK((wide > 2147483647LL || wide < -2147483648LL));
  // The trace ends before the faulting assignment executes.
  CHECK_FALSE(value.count("$i2"));
  REQUIRE(cex.inputs.size() == 2);
  CHECK(cex.inputs[1].value.as_signed() == value["i0"]);
}

TEST_CASE("build_trace: a branchy program shows only the taken branch") {
  auto p = testsupport::load_text({R"(public class B extends java.lang.Object
{
    public static void f(int)
    {
        int i0, $i1, $i2;

        i0 := @parameter0: int;

        if i0 < 0 goto label1;
        $i1 = i0 * 2;
        goto label2;

     label1:
        $i2 = neg i0;
        $i1 = $i2 + 1;

     label2:
        if $i1 != 6 goto label3;
        staticinvoke <Verifier: void assert(boolean)>(0);

     label3:
        return;
    }
}
)"});
  auto q = instrument(p, default_checks());
  auto ssa = unroll(q, "B::f_void_int", {});
  for (int attempt = 0; attempt < 2; ++attempt) {
    // Force each branch in turn through an extra assumption on the input.
    auto f = encode_vc(ssa);
    auto in = solver::mk_symbol(ssa.inputs.at(0).symbol, solver::Sort::bitvec(32));
    auto side = attempt == 0 ? solver::mk_binary(solver::Op::BvSle, solver::mk_bv(0, 32), in)
                             : solver::mk_binary(solver::Op::BvSlt, in, solver::mk_bv(0, 32));
    auto z = z3(solver::Formula::of(solver::mk_and(f.assertion, side), {in}));
    REQUIRE(z.status == solver::SolveStatus::Sat);
    auto cex = build_trace(z.model, ssa);
    std::int64_t x = cex.inputs.at(0).value.as_signed();
    // Hand-computed expectation for each branch.
    std::vector<std::pair<std::string, std::string>> want{{"@parameter0", std::to_string(x)},
                                                          {"i0", std::to_string(x)}};
    if (x >= 0) {
      CHECK(x == 3);
      want.emplace_back("$i1", "6");
    } else {
      CHECK(x == -5);
      want.emplace_back("$i2", "5");
      want.emplace_back("$i1", "6");
    }
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& s : cex.steps) got.emplace_back(s.symbol, s.value);
    CHECK(got == want);
    auto outcome = replay(q, "B::f_void_int", {}, cex);
    CHECK(outcome.kind == ReplayOutcome::Kind::Violated);
    CHECK(replay_confirms(outcome, cex));
  }
}

TEST_CASE("replay: safe runs complete, off-by-one hits the bounds assertion") {
  auto three = testsupport::load_text({R"(public class A extends java.lang.Object
{
    public static int get(int)
    {
        int i0, $i1;
        int[] r0;

        i0 := @parameter0: int;

        r0 = newarray (int)[3];
        $i1 = r0[i0];
        return $i1;
    }
}
)"});
  auto q = instrument(three, default_checks());
  auto ssa = unroll(q, "A::get_int_int", {});
  Counterexample cex;
  cex.inputs.push_back({"@parameter0", GotoType::int32(), solver::Value::of_bv(3, 32), {}});
  auto out = replay(q, "A::get_int_int", {}, cex);
  CHECK(out.kind == ReplayOutcome::Kind::Violated);
  CHECK(out.property == PropertyClass::Bounds);
  CHECK(q.find_function("A::get_int_int")->body.at(out.instruction).kind == gotoir::InstrKind::Assert);

  for (std::uint64_t idx : {0u, 1u, 2u}) {
    cex.inputs[0].value = solver::Value::of_bv(idx, 32);
    CHECK(replay(q, "A::get_int_int", {}, cex).kind == ReplayOutcome::Kind::Completed);
  }
  // Inputs that run out are an error, not a verdict.
  cex.inputs.clear();
  CHECK_THROWS_AS(replay(q, "A::get_int_int", {}, cex), SemanticError);
  (void)ssa;
}

TEST_CASE("replay: a safe fixture completes on arbitrary inputs") {
  auto p = testsupport::load("benchmarks/TC16.jimple");
  auto q = instrument(p, with_overflow());
  auto e = entry_of(p);
  for (std::uint64_t pick : {0u, 42u, 99u}) {
    Counterexample cex;
    cex.inputs.push_back({"@parameter0", GotoType::array(GotoType::reference("java.lang.String")),
                          solver::Value::of_bv(2, 32), {}});
    cex.inputs.push_back({"nondet", GotoType::int32(), solver::Value::of_bv(pick, 32), {}});
    CHECK(replay(q, e, {}, cex).kind == ReplayOutcome::Kind::Completed);
  }
}

TEST_CASE("monotonicity: a violation found at k is found at every larger k") {
  for (const char* item : {"benchmarks/TC8.jimple", "benchmarks/TC9.jimple", "benchmarks/TC12.jimple",
                           "benchmarks/TC1.jimple"}) {
    CAPTURE(item);
    auto p = testsupport::load(item);
    auto opts = testsupport::options(with_overflow());
    auto e = entry_of(p);
    std::optional<unsigned> first;
    for (unsigned k = 1; k <= 8; ++k) {
      auto v = verifier::run_bmc(p, e, k, opts);
      if (v.kind == verifier::VerdictKind::Failed && !first) first = k;
      if (first) CHECK_MESSAGE(v.kind == verifier::VerdictKind::Failed, "k=", k);
    }
    CHECK(first.has_value());
  }
}
