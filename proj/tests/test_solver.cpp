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

#include <random>

#include "jimplebmc/error.hpp"
#include "jimplebmc/solver/brute_force.hpp"
#include "jimplebmc/solver/formula.hpp"
#include "jimplebmc/solver/smtlib.hpp"
#include "jimplebmc/solver/term.hpp"

using namespace jimplebmc;
using namespace jimplebmc::solver;

namespace {

SolverConfig z3() { return find_solver(std::nullopt); }

const Sort bv4 = Sort::bitvec(4);

// Reference semantics for the width-4 fragment, written against plain
// integers rather than the library's evaluator.
struct Ref {
  std::map<std::string, std::int64_t> env;  // unsigned 4-bit values or 0/1

  static std::int64_t sgn(std::int64_t u) { return u >= 8 ? u - 16 : u; }
  static std::int64_t wrap(std::int64_t v) { return ((v % 16) + 16) % 16; }

  std::int64_t eval(const Term& t) const {
    auto a = [&](int i) { return eval(t->args[static_cast<std::size_t>(i)]); };
    switch (t->op) {
      case Op::BoolConst:
      case Op::BvConst: return static_cast<std::int64_t>(t->value);
      case Op::Symbol: return env.at(t->name);
      case Op::Not: return !a(0);
      case Op::And: {
        for (std::size_t i = 0; i < t->args.size(); ++i)
          if (!eval(t->args[i])) return 0;
        return 1;
      }
      case Op::Or: {
        for (std::size_t i = 0; i < t->args.size(); ++i)
          if (eval(t->args[i])) return 1;
        return 0;
      }
      case Op::Implies: return !a(0) || a(1);
      case Op::Ite: return a(0) ? a(1) : a(2);
      case Op::Eq: return a(0) == a(1);
      case Op::BvNeg: return wrap(-a(0));
      case Op::BvNot: return wrap(~a(0));
      case Op::BvAdd: return wrap(a(0) + a(1));
      case Op::BvSub: return wrap(a(0) - a(1));
      case Op::BvMul: return wrap(a(0) * a(1));
      case Op::BvAnd: return a(0) & a(1);
      case Op::BvOr: return a(0) | a(1);
      case Op::BvXor: return a(0) ^ a(1);
      case Op::BvSdiv: {
        std::int64_t x = sgn(a(0)), y = sgn(a(1));
        if (y == 0) return x < 0 ? 1 : 15;  // SMT-LIB: -1 for x >= 0, 1 for x < 0
        return wrap(x / y);
      }
      case Op::BvSrem: {
        std::int64_t x = sgn(a(0)), y = sgn(a(1));
        if (y == 0) return wrap(x);
        return wrap(x % y);
      }
      case Op::BvSlt: return sgn(a(0)) < sgn(a(1));
      case Op::BvSle: return sgn(a(0)) <= sgn(a(1));
      case Op::BvUlt: return a(0) < a(1);
      case Op::BvUle: return a(0) <= a(1);
      case Op::AddOverflow: {
        std::int64_t r = sgn(a(0)) + sgn(a(1));
        return r < -8 || r > 7;
      }
      case Op::SubOverflow: {
        std::int64_t r = sgn(a(0)) - sgn(a(1));
        return r < -8 || r > 7;
      }
      case Op::MulOverflow: {
        std::int64_t r = sgn(a(0)) * sgn(a(1));
        return r < -8 || r > 7;
      }
      default: break;
    }
    throw std::logic_error("op outside the reference fragment");
  }
};

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}
  unsigned pick(unsigned n) { return static_cast<unsigned>(rng() % n); }

  Term bv(int depth) {
    if (depth == 0 || pick(3) == 0) {
      switch (pick(4)) {
        case 0: return mk_symbol("a", bv4);
        case 1: return mk_symbol("b", bv4);
        case 2: return mk_symbol("c", bv4);
        default: return mk_bv(pick(16), 4);
      }
    }
    static const Op ops[] = {Op::BvAdd, Op::BvSub, Op::BvMul, Op::BvAnd, Op::BvOr,
                             Op::BvXor, Op::BvSdiv, Op::BvSrem};
    switch (pick(5)) {
      case 0: return mk_unary(pick(2) ? Op::BvNeg : Op::BvNot, bv(depth - 1));
      case 1: return mk_ite(boolean(depth - 1), bv(depth - 1), bv(depth - 1));
      default: return mk_binary(ops[pick(8)], bv(depth - 1), bv(depth - 1));
    }
  }

  Term boolean(int depth) {
    if (depth == 0 || pick(4) == 0) return pick(3) ? mk_symbol("p", Sort::boolean()) : mk_bool(pick(2));
    static const Op rel[] = {Op::BvSlt, Op::BvSle, Op::BvUlt, Op::BvUle,
                             Op::AddOverflow, Op::SubOverflow, Op::MulOverflow};
    switch (pick(6)) {
      case 0: return mk_not(boolean(depth - 1));
      case 1: return mk_and(boolean(depth - 1), boolean(depth - 1));
      case 2: return mk_or(boolean(depth - 1), boolean(depth - 1));
      case 3: return mk_eq(bv(depth - 1), bv(depth - 1));
      default: return mk_binary(rel[pick(7)], bv(depth - 1), bv(depth - 1));
    }
  }
};

Ref reference_env(const Model& m, const Formula& f) {
  Ref r;
  for (const auto& d : f.declarations) r.env[d.name] = static_cast<std::int64_t>(m.find(d.name)->bits);
  return r;
}

}  // namespace

TEST_CASE("emit_smtlib2: shape and determinism") {
  Term x = mk_symbol("x", Sort::bitvec(32));
  Formula f = Formula::of(mk_eq(x, mk_bv(5, 32)));
  std::string text = emit_smtlib2(f);
  CHECK(text.find("(set-logic QF_ABV)") != std::string::npos);
  CHECK(text.find("(declare-const x (_ BitVec 32))") != std::string::npos);
  CHECK(text.find("(assert (= x (_ bv5 32)))") != std::string::npos);
  CHECK(text.find("(check-sat)") != std::string::npos);
  CHECK(emit_smtlib2(f) == text);
  // Structurally equal formulas built separately give byte-identical text.
  Formula g = Formula::of(mk_eq(mk_symbol("x", Sort::bitvec(32)), mk_bv(5, 32)));
  CHECK(emit_smtlib2(g) == text);

  Formula no = Formula::of(mk_false());
  CHECK(emit_smtlib2(no).find("(assert false)") != std::string::npos);
  CHECK(solve(no, z3()).status == SolveStatus::Unsat);
}

TEST_CASE("emit_smtlib2: overflow expands through sign extension by one bit") {
  Term a = mk_symbol("a", Sort::bitvec(32));
  Term b = mk_symbol("b", Sort::bitvec(32));
  std::string text = emit_smtlib2(Formula::of(mk_binary(Op::AddOverflow, a, b)));
  CHECK(text.find("(_ sign_extend 1)") != std::string::npos);
  CHECK(text.find("bvadd") != std::string::npos);
}

TEST_CASE("smt_symbol quoting") {
  CHECK(smt_symbol("x") == "x");
  CHECK(smt_symbol("$i1") == "$i1");
  CHECK(smt_symbol("Foo::increment_int_int::r0#1") == "|Foo::increment_int_int::r0#1|");
  CHECK(smt_symbol("@this") == "|@this|");
  CHECK(smt_symbol("assert") == "|assert|");
}

TEST_CASE("solve: examples") {
  Term x = mk_symbol("x", Sort::boolean());
  CHECK(solve(Formula::of(mk_and(x, mk_not(x))), z3()).status == SolveStatus::Unsat);

  Term a = mk_symbol("a", bv4);
  auto r = solve(Formula::of(mk_binary(Op::BvSlt, mk_bv(6, 4), a)), z3());
  REQUIRE(r.status == SolveStatus::Sat);
  CHECK(r.model.find("a")->as_signed() == 7);
}

TEST_CASE("solve: model totality covers extra declarations") {
  Term a = mk_symbol("a", bv4);
  Term unused = mk_symbol("unused", Sort::bitvec(8));
  Term arr = mk_symbol("arr", Sort::array(4, 4));
  Formula f = Formula::of(mk_eq(mk_select(arr, a), mk_bv(3, 4)), {unused});
  auto r = solve(f, z3());
  REQUIRE(r.status == SolveStatus::Sat);
  for (const auto& d : f.declarations) CHECK_MESSAGE(r.model.has(d.name), d.name);
  CHECK(evaluate(f.assertion, r.model).as_bool());
  CHECK(r.model.find("arr")->at(r.model.find("a")->bits) == 3);
}

TEST_CASE("solve: missing solver is a configuration error") {
  CHECK_THROWS_AS(find_solver(std::string("/nonexistent/solver")), jimplebmc::ConfigError);
  CHECK_THROWS_WITH(find_solver(std::string("/nonexistent/solver")), doctest::Contains("/nonexistent/solver"));
}

TEST_CASE("solve: unusable solver output is unknown, not a verdict") {
  SolverConfig cfg{"/bin/true", std::chrono::milliseconds(5000)};
  CHECK(solve(Formula::of(mk_symbol("p", Sort::boolean())), cfg).status == SolveStatus::Unknown);
  auto parsed = parse_solver_output("unknown\n", Formula::of(mk_symbol("p", Sort::boolean())));
  CHECK(parsed.status == SolveStatus::Unknown);
}

TEST_CASE("solve: timeout is unknown") {
  // A shell that never answers stands in for a hung solver.
  SolverConfig cfg{"/bin/sleep", std::chrono::milliseconds(200)};
  auto start = std::chrono::steady_clock::now();
  auto r = solve(Formula::of(mk_symbol("p", Sort::boolean())), cfg);
  CHECK(r.status == SolveStatus::Unknown);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(5));
}

TEST_CASE("brute_force: examples") {
  Sort bv2 = Sort::bitvec(2);
  Term x = mk_symbol("x", bv2), y = mk_symbol("y", bv2);
  auto r = brute_force(Formula::of(mk_eq(mk_binary(Op::BvAdd, x, y), mk_bv(0, 2))));
  REQUIRE(r.status == SolveStatus::Sat);
  CHECK(((r.model.find("x")->bits + r.model.find("y")->bits) & 3) == 0);

  // x + y odd and x + y even at the same time: 16 valuations, none works.
  Term sum = mk_binary(Op::BvAdd, x, y);
  Term odd = mk_eq(mk_extract(sum, 0, 0), mk_bv(1, 1));
  Term even = mk_eq(mk_binary(Op::BvAnd, sum, mk_bv(1, 2)), mk_bv(0, 2));
  auto u = brute_force(Formula::of(mk_and(odd, even)));
  CHECK(u.status == SolveStatus::Unsat);
  CHECK(u.valuations == 16);
}

TEST_CASE("brute_force: refuses formulas outside its limits") {
  CHECK_THROWS_AS(brute_force(Formula::of(mk_eq(mk_symbol("w", Sort::bitvec(16)), mk_bv(1, 16)))),
                  OracleLimitError);
  std::vector<Term> many;
  for (int i = 0; i < 5; ++i) many.push_back(mk_symbol("s" + std::to_string(i), Sort::boolean()));
  CHECK_THROWS_AS(brute_force(Formula::of(mk_and(many))), OracleLimitError);
}

TEST_CASE("solve and brute_force agree on random width-4 formulas") {
  Gen gen(4242);
  int sat = 0, unsat = 0, checked = 0;
  while (checked < 60) {
    Term t = gen.boolean(4);
    Formula f = Formula::of(t);
    if (f.declarations.empty()) continue;
    ++checked;
    auto bf = brute_force(f);
    auto z = solve(f, z3());
    REQUIRE(z.status != SolveStatus::Unknown);
    CHECK_MESSAGE(z.status == bf.status, to_string(t));
    if (z.status == SolveStatus::Sat) {
      ++sat;
      CHECK(evaluate(f.assertion, z.model).as_bool());
      CHECK_MESSAGE(reference_env(z.model, f).eval(f.assertion) == 1, to_string(t));
      CHECK(reference_env(bf.model, f).eval(f.assertion) == 1);
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 0);
  CHECK(unsat > 0);
}

TEST_CASE("evaluator matches the reference on every valuation of random terms") {
  Gen gen(99);
  for (int i = 0; i < 40; ++i) {
    Term t = gen.bv(3);
    for (unsigned a = 0; a < 16; ++a) {
      for (unsigned b = 0; b < 16; b += 5) {
        Model m;
        m.values["a"] = Value::of_bv(a, 4);
        m.values["b"] = Value::of_bv(b, 4);
        m.values["c"] = Value::of_bv((a * 7 + b) & 15, 4);
        m.values["p"] = Value::of_bool((a ^ b) & 1);
        Ref r;
        for (const auto& [k, v] : m.values) r.env[k] = static_cast<std::int64_t>(v.bits);
        CHECK_MESSAGE(static_cast<std::int64_t>(evaluate(t, m).bits) == r.eval(t), to_string(t));
      }
    }
  }
}

TEST_CASE("constructors fold constants without changing meaning") {
  CHECK(is_true(mk_binary(Op::BvSlt, mk_bv(1, 8), mk_bv(2, 8))));
  CHECK(is_false(mk_binary(Op::AddOverflow, mk_bv(2, 32), mk_bv(3, 32))));
  Term x = mk_symbol("x", bv4);
  CHECK(is_true(mk_eq(x, x)));
  CHECK(to_string(mk_select(mk_store(mk_symbol("m", Sort::array(4, 4)), x, mk_bv(3, 4)), x)) ==
        to_string(mk_bv(3, 4)));
}
