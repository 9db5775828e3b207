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

// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "jimplebmc/solver/brute_force.hpp"
#include "jimplebmc/symex/instrument.hpp"
#include "jimplebmc/symex/ssa.hpp"
#include "jimplebmc/verifier/verifier.hpp"

using namespace jimplebmc;
using gotoir::BinaryOp;
using gotoir::Expr;
using gotoir::ExprKind;
using gotoir::GotoType;
using gotoir::InstrKind;
using gotoir::PropertyClass;
using Instr = gotoir::GotoInstruction;
using verifier::VerdictKind;
using Clock = std::chrono::steady_clock;

namespace {

std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(FIXTURES_DIR) / rel; }

symex::CheckSet checks(bool overflow) {
  auto c = symex::default_checks();
  if (overflow) c.insert(PropertyClass::Overflow);
  return c;
}

verifier::VerifyOptions options(bool overflow, bool unwinding = false) {
  verifier::VerifyOptions o;
  o.checks = checks(overflow);
  o.unwinding_assertions = unwinding;
  o.solver = solver::find_solver(std::nullopt, std::chrono::milliseconds(60000));
  return o;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Replay bookkeeping shared by every criterion that produces failures.
std::mutex replay_mu;
unsigned failed_total = 0, replay_confirmed = 0;
std::vector<std::string> replay_misses;

void record_replay(const verifier::Verdict& v, const std::string& what) {
  if (v.kind != VerdictKind::Failed) return;
  bool ok = v.counterexample && v.replay && symex::replay_confirms(*v.replay, *v.counterexample);
  std::lock_guard lock(replay_mu);
  ++failed_total;
  if (ok) ++replay_confirmed;
  else replay_misses.push_back(what);
}

struct Result {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Benchmark suite

Result benchmarks() {
  auto t0 = Clock::now();
  std::ifstream in(fixture("benchmarks/expected.json"));
  auto expected = nlohmann::json::parse(in);
  struct Row {
    std::string name, verdict, property;
    std::filesystem::path path;
  };
  std::vector<Row> rows;
  for (const auto& [name, e] : expected.items())
    rows.push_back({name, e["verdict"], e["property"].is_string() ? e["property"].get<std::string>() : "",
                    fixture("benchmarks/" + e["path"].get<std::string>())});
  std::vector<std::future<std::string>> jobs;
  for (const Row& r : rows)
    jobs.push_back(std::async(std::launch::async, [r] {
      auto p = verifier::load_program({r.path});
      auto v = verifier::run_bmc(p, verifier::resolve_entry(p, std::nullopt), 10, options(true));
      record_replay(v, "benchmarks " + r.name);
      std::string got = verifier::verdict_kind_name(v.kind);
      bool ok;
      if (r.verdict == "VerificationFailed")
        ok = v.kind == VerdictKind::Failed && !v.unwinding_failure &&
             verifier::property_label(*v.counterexample) == r.property && v.replay &&
             symex::replay_confirms(*v.replay, *v.counterexample);
      else
        ok = v.kind == VerdictKind::Successful || v.kind == VerdictKind::SafeWithinBound;
      return ok ? std::string() : r.name + " got " + got;
    }));
  unsigned correct = 0;
  std::string misses;
  for (auto& j : jobs) {
    std::string m = j.get();
    if (m.empty()) ++correct;
    else misses += " " + m;
  }
  double secs = since(t0);
  std::ostringstream d;
  d << correct << "/" << rows.size() << " correct and replayed, " << secs << " s" << misses;
  return {rows.size() == 21 && correct == rows.size() && secs < 60.0, d.str()};
}

// ---------------------------------------------------------------------------
// Golden lowering of Foo.increment

std::string shape(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Symbol: {
      // Parameter globals are qualified with the function key.
      auto sep = e.name().rfind("::");
      return sep == std::string::npos ? e.name() : e.name().substr(sep + 2);
    }
    case ExprKind::Cast:
      return "cast<" + e.type().str() + ">(" + shape(e.op(0)) + ")";
    case ExprKind::Member:
      return "member(" + shape(e.op(0)) + "," + e.name() + ")";
    case ExprKind::Binary:
      return std::string("binary<") + gotoir::binary_op_text(e.binary_op()) + ">(" + shape(e.op(0)) +
             "," + shape(e.op(1)) + ")";
    default:
      return "other";
  }
}

Result golden() {
  auto p = verifier::load_program({fixture("misc/Foo.jimple")});
  const auto* f = p.find_function("Foo::increment_int_int");
  if (!f) return {false, "increment not lowered"};
  std::vector<std::string> decls, body;
  for (const auto& in : f->body) {
    if (in.kind == InstrKind::Decl) decls.push_back(in.name + ":" + in.type.str());
    if (in.kind == InstrKind::Assign) body.push_back("ASSIGN " + shape(*in.lhs) + " := " + shape(*in.expr));
    if (in.kind == InstrKind::Return) body.push_back("RETURN " + shape(*in.expr));
  }
  // Expected structure: declarations, then the
  // prologue identity reads, member read, add, member write, re-read, return.
  const std::vector<std::string> want_decls{"r0:Foo*", "i0:int32", "$i1:int32", "$i2:int32", "$i3:int32"};
  const std::vector<std::string> want_body{
      "ASSIGN r0 := cast<Foo*>(@this)",
      "ASSIGN i0 := @parameter0",
      "ASSIGN $i1 := member(r0,member)",
      "ASSIGN $i2 := binary<+>($i1,i0)",
      "ASSIGN member(r0,member) := $i2",
      "ASSIGN $i3 := member(r0,member)",
      "RETURN $i3",
  };
  bool ok = decls == want_decls && body == want_body;
  std::string d = std::to_string(body.size()) + " statements";
  if (!ok) {
    d += ":";
    for (const auto& s : body) d += " [" + s + "]";
  }
  return {ok, d};
}

// ---------------------------------------------------------------------------
// VC shape of increment

Result vc_shape() {
  auto p = symex::instrument(verifier::load_program({fixture("misc/Foo.jimple")}), checks(true));
  auto ssa = symex::unroll(p, "Foo::increment_int_int", {});
  // C := @this=nondet() ∧ r0=@this ∧ @parameter0=nondet() ∧ i0=@parameter0 ∧ $i1=r0->member
  const std::vector<std::pair<std::string, std::string>> want{{"@this", "nondet"},
                                                              {"r0", "@this"},
                                                              {"@parameter0", "nondet"},
                                                              {"i0", "@parameter0"},
                                                              {"$i1", "r0->member"}};
  if (ssa.equations.size() < 5) return {false, "fewer than five equations"};
  std::string d;
  bool ok = true;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& eq = ssa.equations[i];
    bool nondet = want[i].second == "nondet";
    bool kind_ok = nondet ? eq.kind == symex::EquationKind::Input : eq.kind != symex::EquationKind::Input;
    // The right-hand side may carry a cast (r0 = (Foo*)@this).
    bool rhs_ok = nondet ? eq.rhs_source.rfind("nondet(", 0) == 0
                         : eq.rhs_source.find(want[i].second) != std::string::npos;
    if (eq.source != want[i].first || !kind_ok || !rhs_ok) {
      ok = false;
      d += " eq" + std::to_string(i) + "=" + eq.source + ":" + eq.rhs_source;
    }
  }
  // P := overflow("+", i0, $i1), operands compared as a set.
  unsigned overflow = 0;
  for (const auto& o : ssa.obligations) {
    if (o.property != PropertyClass::Overflow) continue;
    ++overflow;
    const auto& pred = o.claim->op == solver::Op::Not ? o.claim->args[0] : o.claim;
    std::set<std::string> got;
    for (const auto& a : pred->args) {
      std::string n = a->name;
      auto hash = n.find('#');
      auto sep = n.rfind("::", hash);
      got.insert(n.substr(sep + 2, hash - sep - 2));
    }
    if (pred->op != solver::Op::AddOverflow || got != std::set<std::string>{"i0", "$i1"}) {
      ok = false;
      d += " overflow obligation has unexpected shape";
    }
  }
  if (overflow != 1) {
    ok = false;
    d += " " + std::to_string(overflow) + " overflow obligations";
  }
  return {ok, ok ? "5 equations and 1 overflow obligation match" : d};
}

// ---------------------------------------------------------------------------
// Random width-4 programs against an exhaustive interpreter

struct Operand {
  bool is_var = false;
  int v = 0;  // variable index or constant
};

enum class SK { Copy, Arith, IfThen, Assume, Assert, ArrRead, ArrWrite };
enum class Cmp { Lt, Le, Eq, Ne };
const BinaryOp kArith[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div,
                           BinaryOp::Rem, BinaryOp::BitAnd, BinaryOp::BitOr, BinaryOp::BitXor};

struct Stmt {
  SK kind = SK::Copy;
  int dst = 0;
  Operand x, y;
  BinaryOp op = BinaryOp::Add;
  Cmp cmp = Cmp::Lt;
  // Preceded by assumptions that rule out its failure.
  bool guarded = false;
  std::vector<Stmt> then;
};

struct RProg {
  std::array<std::optional<int>, 3> init;  // nullopt: nondet input
  bool overflow = true;
  bool guarded = false;
  std::optional<int> array_len;
  std::vector<Stmt> pre, body, post;
  std::optional<int> trips;  // loop counter is variable 2
  Stmt final_assert;
};

constexpr int kVars = 3;
const char* kNames[] = {"a", "b", "c"};

struct Gen {
  std::mt19937 rng;
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Operand operand() {
    if (pick(0, 2) == 0) return {false, pick(-8, 7)};
    return {true, pick(0, kVars - 1)};
  }
  Stmt stmt(const RProg& p, bool in_loop, bool nested) {
    Stmt s;
    int writable = (p.trips ? kVars - 1 : kVars) - 1;
    for (;;) {
      s.kind = static_cast<SK>(pick(0, 6));
      if ((s.kind == SK::ArrRead || s.kind == SK::ArrWrite) && !p.array_len) continue;
      if (s.kind == SK::IfThen && nested) continue;
      break;
    }
    s.dst = pick(0, writable);
    s.x = operand();
    s.y = operand();
    s.op = kArith[pick(0, 7)];
    s.cmp = static_cast<Cmp>(pick(0, 3));
    s.guarded = p.guarded && pick(0, 3) != 0;
    if (s.kind == SK::IfThen) {
      int n = pick(1, 2);
      for (int i = 0; i < n; ++i) s.then.push_back(stmt(p, in_loop, true));
    }
    return s;
  }
  RProg program() {
    RProg p;
    for (auto& i : p.init)
      if (pick(0, 2) != 0) i = std::nullopt;
      else i = pick(-8, 7);
    p.guarded = pick(0, 1) != 0;
    p.overflow = p.guarded ? pick(0, 3) == 0 : pick(0, 3) != 0;
    if (pick(0, 1)) p.array_len = pick(0, 4);
    if (pick(0, 2) != 0) {
      p.trips = pick(0, 4);
      p.init[2] = 0;
    }
    for (int i = pick(0, 3); i > 0; --i) p.pre.push_back(stmt(p, false, false));
    if (p.trips)
      for (int i = pick(1, 3); i > 0; --i) p.body.push_back(stmt(p, true, false));
    for (int i = pick(0, 2); i > 0; --i) p.post.push_back(stmt(p, false, false));
    p.final_assert.kind = SK::Assert;
    p.final_assert.x = operand();
    p.final_assert.y = operand();
    p.final_assert.cmp = static_cast<Cmp>(pick(0, 3));
    p.final_assert.guarded = p.guarded && pick(0, 1) != 0;
    return p;
  }
};

// Concrete semantics, written against plain integers.
int wrap4(int v) { return ((v + 8) & 15) - 8; }

struct Interp {
  const RProg& p;
  std::array<int, kVars> var{};
  std::vector<int> arr;
  std::optional<PropertyClass> violation;
  bool blocked = false;

  int val(const Operand& o) const { return o.is_var ? var[o.v] : o.v; }
  bool test(const Stmt& s) const {
    int a = val(s.x), b = val(s.y);
    switch (s.cmp) {
      case Cmp::Lt: return a < b;
      case Cmp::Le: return a <= b;
      case Cmp::Eq: return a == b;
      case Cmp::Ne: return a != b;
    }
    return false;
  }
  bool index_ok(int i) const { return i >= 0 && i < static_cast<int>(arr.size()); }
  // Returns false when execution stops.
  bool assume(bool c) {
    if (!c) blocked = true;
    return c;
  }
  bool exec(const Stmt& s) {
    if (s.guarded) {
      switch (s.kind) {
        case SK::Arith:
          if ((s.op == BinaryOp::Div || s.op == BinaryOp::Rem) && !assume(val(s.y) != 0)) return false;
          break;
        case SK::ArrRead:
        case SK::ArrWrite:
          if (!assume(0 <= val(s.x)) || !assume(val(s.x) < static_cast<int>(arr.size()))) return false;
          break;
        case SK::Assert:
          if (!assume(test(s))) return false;
          break;
        default:
          break;
      }
    }
    switch (s.kind) {
      case SK::Copy:
        var[s.dst] = val(s.x);
        return true;
      case SK::Arith: {
        int a = val(s.x), b = val(s.y), r = 0;
        switch (s.op) {
          case BinaryOp::Add: r = a + b; break;
          case BinaryOp::Sub: r = a - b; break;
          case BinaryOp::Mul: r = a * b; break;
          case BinaryOp::Div:
          case BinaryOp::Rem:
            if (b == 0) return fail(PropertyClass::DivByZero);
            r = s.op == BinaryOp::Div ? a / b : a % b;
            break;
          case BinaryOp::BitAnd: r = a & b; break;
          case BinaryOp::BitOr: r = a | b; break;
          case BinaryOp::BitXor: r = a ^ b; break;
          default: break;
        }
        bool arith = s.op == BinaryOp::Add || s.op == BinaryOp::Sub || s.op == BinaryOp::Mul;
        if (arith && p.overflow && (r < -8 || r > 7)) return fail(PropertyClass::Overflow);
        var[s.dst] = wrap4(r);
        return true;
      }
      case SK::IfThen:
        if (test(s))
          for (const Stmt& t : s.then)
            if (!exec(t)) return false;
        return true;
      case SK::Assume:
        if (!test(s)) blocked = true;
        return !blocked;
      case SK::Assert:
        return test(s) ? true : fail(PropertyClass::UserAssert);
      case SK::ArrRead:
        if (!index_ok(val(s.x))) return fail(PropertyClass::Bounds);
        var[s.dst] = arr[val(s.x)];
        return true;
      case SK::ArrWrite:
        if (!index_ok(val(s.x))) return fail(PropertyClass::Bounds);
        arr[val(s.x)] = val(s.y);
        return true;
    }
    return true;
  }
  bool fail(PropertyClass c) {
    violation = c;
    return false;
  }
  bool run_all(const std::vector<Stmt>& ss) {
    for (const Stmt& s : ss)
      if (!exec(s)) return false;
    return true;
  }
  // `inputs` feed the nondet initialisers in variable order.
  void run(const std::vector<int>& inputs) {
    std::size_t next = 0;
    for (int i = 0; i < kVars; ++i) var[i] = p.init[i] ? *p.init[i] : inputs.at(next++);
    if (p.array_len) arr.assign(*p.array_len, 0);
    if (!run_all(p.pre)) return;
    if (p.trips) {
      while (var[2] < *p.trips) {
        if (!run_all(p.body)) return;
        var[2] = var[2] + 1;
      }
    }
    if (!run_all(p.post)) return;
    exec(p.final_assert);
  }
};

std::optional<PropertyClass> interpret(const RProg& p, const std::vector<int>& inputs) {
  Interp in{p, {}, {}, std::nullopt, false};
  in.run(inputs);
  return in.violation;
}

int nondet_count(const RProg& p) {
  return static_cast<int>(std::count(p.init.begin(), p.init.end(), std::nullopt));
}

bool exhaustive_fails(const RProg& p) {
  int n = nondet_count(p);
  std::vector<int> in(n, -8);
  for (;;) {
    if (interpret(p, in)) return true;
    int i = 0;
    while (i < n && in[i] == 7) in[i++] = -8;
    if (i == n) return false;
    ++in[i];
  }
}

// Translation of the same program into GOTO.
struct Lower {
  std::vector<Instr> out;
  int labels = 0;
  static GotoType t4() { return GotoType::signed_bv(4); }
  static Expr var(int i) { return Expr::symbol(kNames[i], t4()); }
  static Expr arr() { return Expr::symbol("arr", GotoType::array(t4())); }
  static Expr operand(const Operand& o) { return o.is_var ? var(o.v) : Expr::constant(o.v, t4()); }
  static Expr cond(const Stmt& s) {
    static const BinaryOp ops[] = {BinaryOp::Lt, BinaryOp::Le, BinaryOp::Eq, BinaryOp::Ne};
    return Expr::binary(ops[static_cast<int>(s.cmp)], operand(s.x), operand(s.y));
  }
  void guard(const Stmt& s) {
    if (!s.guarded) return;
    switch (s.kind) {
      case SK::Arith:
        if (s.op == BinaryOp::Div || s.op == BinaryOp::Rem)
          out.push_back(Instr::assume(Expr::binary(BinaryOp::Ne, operand(s.y), Expr::constant(0, t4()))));
        break;
      case SK::ArrRead:
      case SK::ArrWrite:
        out.push_back(Instr::assume(Expr::binary(BinaryOp::Le, Expr::constant(0, t4()), operand(s.x))));
        out.push_back(Instr::assume(Expr::binary(
            BinaryOp::Lt, Expr::cast(operand(s.x), GotoType::int32()), Expr::length(arr()))));
        break;
      case SK::Assert:
        out.push_back(Instr::assume(cond(s)));
        break;
      default:
        break;
    }
  }
  void stmt(const Stmt& s) {
    guard(s);
    switch (s.kind) {
      case SK::Copy: out.push_back(Instr::assign(var(s.dst), operand(s.x))); break;
      case SK::Arith:
        out.push_back(Instr::assign(var(s.dst), Expr::binary(s.op, operand(s.x), operand(s.y))));
        break;
      case SK::IfThen: {
        std::string skip = "skip" + std::to_string(labels++);
        out.push_back(Instr::if_(Expr::unary(gotoir::UnaryOp::Not, cond(s)), skip));
        for (const Stmt& t : s.then) stmt(t);
        out.push_back(Instr::label(skip));
        break;
      }
      case SK::Assume: out.push_back(Instr::assume(cond(s))); break;
      case SK::Assert: out.push_back(Instr::assert_(cond(s), PropertyClass::UserAssert, "user")); break;
      case SK::ArrRead: out.push_back(Instr::assign(var(s.dst), Expr::index(arr(), operand(s.x)))); break;
      case SK::ArrWrite: out.push_back(Instr::assign(Expr::index(arr(), operand(s.x)), operand(s.y))); break;
    }
  }
  gotoir::GotoProgram program(const RProg& p) {
    for (int i = 0; i < kVars; ++i) out.push_back(Instr::decl(kNames[i], t4()));
    for (int i = 0; i < kVars; ++i)
      out.push_back(Instr::assign(var(i), p.init[i] ? Expr::constant(*p.init[i], t4()) : Expr::nondet(t4())));
    if (p.array_len) {
      out.push_back(Instr::decl("arr", GotoType::array(t4())));
      out.push_back(Instr::assign(arr(), Expr::new_array(t4(), Expr::int32(*p.array_len))));
    }
    for (const Stmt& s : p.pre) stmt(s);
    if (p.trips) {
      out.push_back(Instr::label("head"));
      out.push_back(Instr::if_(Expr::binary(BinaryOp::Ge, var(2), Expr::constant(*p.trips, t4())), "exit"));
      for (const Stmt& s : p.body) stmt(s);
      out.push_back(Instr::assign(var(2), Expr::binary(BinaryOp::Add, var(2), Expr::constant(1, t4()))));
      out.push_back(Instr::goto_("head"));
      out.push_back(Instr::label("exit"));
    }
    for (const Stmt& s : p.post) stmt(s);
    stmt(p.final_assert);
    out.push_back(Instr::end_function());
    gotoir::GotoFunction f;
    f.name = "R::f_void";
    f.body = out;
    gotoir::GotoProgram prog;
    prog.functions[f.name] = f;
    return prog;
  }
};

Result oracle_equivalence() {
  constexpr unsigned kPrograms = 600;
  auto t0 = Clock::now();
  std::atomic<unsigned> next{0}, disagreements{0}, failing{0}, done{0};
  std::mutex mu;
  std::string first_problem;
  auto worker = [&] {
    for (unsigned i; (i = next++) < kPrograms;) {
      Gen g{std::mt19937(0xC0FFEEu + i)};
      RProg rp = g.program();
      auto prog = Lower{}.program(rp);
      std::string problem;
      try {
        bool oracle = exhaustive_fails(rp);
        auto v = verifier::run_bmc(prog, "R::f_void", 5, options(rp.overflow, true));
        record_replay(v, "random #" + std::to_string(i));
        bool bmc = v.kind == VerdictKind::Failed;
        if (oracle) ++failing;
        if (bmc != oracle || v.unwinding_failure || v.kind == VerdictKind::Unknown) {
          problem = "verdict " + std::string(verifier::verdict_kind_name(v.kind)) + " vs oracle " +
                    (oracle ? "failing" : "safe");
        } else if (bmc) {
          // The reported inputs must violate the same class concretely.
          std::vector<int> in;
          for (const auto& x : v.counterexample->inputs) in.push_back(static_cast<int>(x.value.as_signed()));
          if (static_cast<int>(in.size()) != nondet_count(rp)) problem = "input count mismatch";
          else if (interpret(rp, in) != v.counterexample->violated.property)
            problem = "counterexample does not reproduce in the interpreter";
        }
      } catch (const std::exception& e) {
        problem = std::string("exception: ") + e.what();
      }
      ++done;
      if (!problem.empty()) {
        ++disagreements;
        std::lock_guard lock(mu);
        if (first_problem.empty()) first_problem = "program " + std::to_string(i) + ": " + problem;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::max(2u, std::thread::hardware_concurrency());
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::ostringstream d;
  d << done << " programs (" << failing << " failing), " << disagreements << " disagreements, "
    << since(t0) << " s";
  if (!first_problem.empty()) d << "; " << first_problem;
  return {done >= 500 && disagreements == 0, d.str()};
}

// ---------------------------------------------------------------------------
// Overflow predicates at width 4 against width-8 arithmetic

Result overflow_semantics() {
  const std::pair<solver::Op, char> ops[] = {
      {solver::Op::AddOverflow, '+'}, {solver::Op::SubOverflow, '-'}, {solver::Op::MulOverflow, '*'}};
  auto cfg = solver::find_solver(std::nullopt);
  unsigned mismatches = 0, cases = 0;
  auto a = solver::mk_symbol("a", solver::Sort::bitvec(4));
  auto b = solver::mk_symbol("b", solver::Sort::bitvec(4));
  for (auto [op, sym] : ops) {
    auto pred = solver::mk_binary(op, a, b);
    std::vector<solver::Term> out_of_range;
    for (int x = -8; x <= 7; ++x) {
      for (int y = -8; y <= 7; ++y) {
        // Width-8 recomputation: exact for 4-bit operands.
        std::int8_t wide = sym == '+' ? std::int8_t(x + y) : sym == '-' ? std::int8_t(x - y) : std::int8_t(x * y);
        bool expected = wide < -8 || wide > 7;
        solver::Model m;
        m.values["a"] = solver::Value::of_bv(static_cast<std::uint64_t>(x), 4);
        m.values["b"] = solver::Value::of_bv(static_cast<std::uint64_t>(y), 4);
        ++cases;
        if (solver::evaluate(pred, m).as_bool() != expected) ++mismatches;
        if (expected)
          out_of_range.push_back(solver::mk_and(solver::mk_eq(a, solver::mk_bv(x, 4)), solver::mk_eq(b, solver::mk_bv(y, 4))));
      }
    }
    // The emitted SMT expansion must agree with the table on all 256 pairs.
    auto table = solver::mk_or(out_of_range);
    auto differ = solver::mk_not(solver::mk_eq(pred, table));
    auto r = solver::solve(solver::Formula::of(differ, {a, b}), cfg);
    if (r.status != solver::SolveStatus::Unsat) ++mismatches;
  }
  return {cases == 768 && mismatches == 0,
          std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches (evaluator and solver)"};
}

// ---------------------------------------------------------------------------
// k-induction proof of the nondet-bound loop

Result kinduction() {
  auto p = verifier::load_program({fixture("kind/NondetBound.jimple")});
  auto entry = verifier::resolve_entry(p, std::nullopt);
  auto t0 = Clock::now();
  auto v = verifier::run_kinduction(p, entry, 10, options(false));
  double secs = since(t0);
  // Plain BMC with unwinding assertions cannot prove it at any fixed bound.
  bool bmc_cannot = true;
  for (unsigned k : {1u, 5u, 20u}) {
    auto b = verifier::run_bmc(p, entry, k, options(false, true));
    record_replay(b, "NondetBound bmc k=" + std::to_string(k));
    bmc_cannot &= b.kind == VerdictKind::Failed && b.unwinding_failure;
  }
  std::ostringstream d;
  d << verifier::verdict_kind_name(v.kind) << " at k = " << v.bound << " in " << secs << " s"
    << (bmc_cannot ? ", fixed-bound BMC reports unwinding failures" : ", fixed-bound BMC unexpectedly conclusive");
  return {v.kind == VerdictKind::Successful && secs < 5.0 && bmc_cannot, d.str()};
}

// ---------------------------------------------------------------------------
// Replay across the whole fixture corpus and every strategy

void replay_corpus() {
  std::vector<std::vector<std::filesystem::path>> items;
  for (const auto& dir : {"benchmarks", "kind", "misc"})
    for (const auto& e : std::filesystem::directory_iterator(fixture(dir)))
      if (e.path().extension() != ".json") items.push_back({e.path()});
  std::vector<std::future<void>> jobs;
  for (const auto& item : items)
    jobs.push_back(std::async(std::launch::async, [item] {
      auto p = verifier::load_program(item);
      std::vector<std::string> entries;
      try {
        entries.push_back(verifier::resolve_entry(p, std::nullopt));
      } catch (const std::exception&) {
        for (const auto& [name, f] : p.functions)
          if (name.rfind("Foo::", 0) == 0) entries.push_back(name);
      }
      for (const auto& entry : entries) {
        std::string what = item.front().filename().string() + " " + entry;
        for (bool ovf : {false, true}) {
          record_replay(verifier::run_bmc(p, entry, 10, options(ovf, true)), what + " bmc");
          record_replay(verifier::run_incremental(p, entry, 10, options(ovf, true)), what + " incremental");
          record_replay(verifier::run_kinduction(p, entry, 10, options(ovf)), what + " k-induction");
        }
      }
    }));
  for (auto& j : jobs) j.get();
}

Result replay() {
  replay_corpus();
  std::lock_guard lock(replay_mu);
  std::string d = std::to_string(replay_confirmed) + "/" + std::to_string(failed_total) +
                  " failed verdicts replayed to the same class and position";
  for (const auto& m : replay_misses) d += "; miss: " + m;
  return {failed_total > 0 && replay_confirmed == failed_total, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"benchmark suite TC0-TC20", benchmarks},
      {"golden lowering of increment", golden},
      {"verification condition shape", vc_shape},
      {"oracle equivalence on random width-4 programs", oracle_equivalence},
      {"overflow semantics at width 4", overflow_semantics},
      {"k-induction proof of the nondet-bound loop", kinduction},
      {"counterexample replay", replay},
  };
  bool all = true;
  for (const auto& [name, check] : criteria) {
    Result r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    all &= r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << name << ": " << r.detail << std::endl;
  }
  return all ? 0 : 1;
}
