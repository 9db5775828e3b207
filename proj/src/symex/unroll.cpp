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

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "jimplebmc/gotoir/printer.hpp"
#include "jimplebmc/symex/ssa.hpp"
#include "semantics.hpp"

namespace jimplebmc::symex {

using gotoir::Expr;
using gotoir::ExprKind;
using gotoir::GotoFunction;
using gotoir::GotoInstruction;
using gotoir::GotoProgram;
using gotoir::GotoType;
using gotoir::InstrKind;
using gotoir::PropertyClass;
using solver::Sort;
using solver::Term;
using namespace detail;

const char* equation_kind_name(EquationKind k) {
  switch (k) {
    case EquationKind::Assign: return "assign";
    case EquationKind::Input: return "input";
    case EquationKind::Heap: return "heap";
    case EquationKind::Phi: return "phi";
    case EquationKind::Havoc: return "havoc";
  }
  return "?";
}

namespace {

struct LoopInfo {
  std::map<std::size_t, std::size_t> tails;  // head -> last back-edge source
  std::unordered_map<std::string, std::size_t> labels;
};

LoopInfo analyse(const GotoFunction& fn) {
  LoopInfo info;
  for (std::size_t i = 0; i < fn.body.size(); ++i)
    if (fn.body[i].kind == InstrKind::Label) info.labels.emplace(fn.body[i].name, i);
  for (std::size_t i = 0; i < fn.body.size(); ++i) {
    const GotoInstruction& ins = fn.body[i];
    if (ins.kind != InstrKind::Goto && ins.kind != InstrKind::If) continue;
    std::size_t t = info.labels.at(ins.name);
    if (t <= i) info.tails[t] = std::max(info.tails[t], i);
  }
  return info;
}

bool is_global(const std::string& name) { return name.find("::") != std::string::npos; }

// Functions reachable through calls from `root` (excluding root), in
// discovery order; `recursive` is set when a call cycle exists.
void callees(const GotoProgram& p, const std::string& root, std::set<std::string>& seen,
             std::vector<std::string>& path, bool& recursive) {
  const GotoFunction* fn = p.find_function(root);
  if (!fn) return;
  path.push_back(root);
  for (const GotoInstruction& ins : fn->body) {
    if (ins.kind != InstrKind::FunctionCall) continue;
    if (std::find(path.begin(), path.end(), ins.name) != path.end()) {
      recursive = true;
      continue;
    }
    if (seen.insert(ins.name).second) callees(p, ins.name, seen, path, recursive);
  }
  path.pop_back();
}

struct State {
  Term guard = solver::mk_true();
  std::map<std::string, Term> vars;
  std::map<std::string, Term> heap;
  std::map<std::pair<unsigned, std::size_t>, unsigned> loops;
  std::vector<std::string> pending_inputs;
  std::optional<std::size_t> via_backedge;

  bool live() const { return !solver::is_false(guard); }
};

bool same_term(const Term& a, const Term& b) {
  if (a == b) return true;
  return solver::is_const(a) && solver::is_const(b) && a->sort == b->sort && a->value == b->value;
}

// or(a, b) with the common conjuncts factored out; or(P and x, P and not x) = P.
Term guard_or(const Term& a, const Term& b) {
  auto parts = [](const Term& t) {
    return t->op == solver::Op::And ? t->args : std::vector<Term>{t};
  };
  std::vector<Term> pa = parts(a), pb = parts(b);
  std::vector<Term> common, ra, rb;
  for (const Term& x : pa)
    (std::any_of(pb.begin(), pb.end(), [&](const Term& y) { return x == y; }) ? common : ra).push_back(x);
  for (const Term& y : pb)
    if (std::none_of(common.begin(), common.end(), [&](const Term& x) { return x == y; })) rb.push_back(y);
  Term rest;
  if (ra.size() == 1 && rb.size() == 1 &&
      ((ra[0]->op == solver::Op::Not && ra[0]->args[0] == rb[0]) ||
       (rb[0]->op == solver::Op::Not && rb[0]->args[0] == ra[0])))
    rest = solver::mk_true();
  else
    rest = solver::mk_or(solver::mk_and(ra), solver::mk_and(rb));
  common.push_back(rest);
  return solver::mk_and(common);
}

class Unroller : public Env {
 public:
  Unroller(const GotoProgram& program, const std::string& entry, const UnrollOptions& options)
      : program_(program), entry_(entry), options_(options) {
    if (options.unwind < 1) throw std::invalid_argument("unwind bound must be at least 1");
  }

  SsaEquationSet run() {
    const GotoFunction* entry = program_.find_function(entry_);
    if (!entry) throw SemanticError("entry function '" + entry_ + "' not found");
    State s;
    frame_stack_.push_back({nullptr, 0});
    cur_ = &s;
    for (const gotoir::GotoGlobal& g : program_.globals) {
      if (!g.initial) continue;
      cur_function_ = "";
      if (g.initial->kind() == ExprKind::NewObject) {
        Term id = allocate_object(g.initial->name());
        define(g.name, id, EquationKind::Assign, g.name, gotoir::print_expr(*g.initial), {});
      } else if (g.initial->is_constant() && g.initial->value() != 0) {
        define(g.name, eval_expr(*g.initial, *this), EquationKind::Assign, g.name,
               gotoir::print_expr(*g.initial), {});
      }
    }
    frame_stack_.pop_back();
    for (const std::string& init : program_.initializers) {
      const GotoFunction* fn = program_.find_function(init);
      if (!fn) continue;
      s = call_function(*fn, std::move(s));
      if (!s.live()) break;
    }
    if (options_.induction_step) setup_step(*entry);
    s.pending_inputs = entry->parameters;
    if (s.live()) s = call_function(*entry, std::move(s), true);
    std::sort(out_.initial_heap.begin(), out_.initial_heap.end(),
              [](const Term& a, const Term& b) { return a->name < b->name; });
    return std::move(out_);
  }

  // Env ------------------------------------------------------------------

  Term read_symbol(const std::string& name, const GotoType& type) override {
    auto p = std::find(cur_->pending_inputs.begin(), cur_->pending_inputs.end(), name);
    if (p != cur_->pending_inputs.end()) {
      cur_->pending_inputs.erase(p);
      materialise_parameter(name, type);
    }
    std::string l1 = level1(name);
    auto it = cur_->vars.find(l1);
    if (it != cur_->vars.end()) return it->second;
    return zero_of(type);
  }

  Term read_field(const Term& base, const std::string& decl, const std::string& field,
                  const GotoType& type) override {
    Term arr = heap_array(field_array_name(decl, field), Sort::array(32, storage_width(type)));
    return from_storage(solver::mk_select(arr, base), type);
  }

  Term read_element(const Term& array, const Term& index, const GotoType& element) override {
    Term arr = heap_array(element_array_name(element), Sort::array(64, storage_width(element)));
    return from_storage(solver::mk_select(arr, element_key(array, index)), element);
  }

  Term read_length(const Term& array) override {
    return solver::mk_select(heap_array(kLengthArray, Sort::array(32, 32)), array);
  }

  Term nondet(const GotoType& type) override {
    return make_input(type, "nondet(" + type.str() + ")", false);
  }

  Term allocate_object(const std::string& cls) override {
    Term id = solver::mk_bv(next_id_++, gotoir::kReferenceWidth);
    if (const gotoir::ClassRecord* rec = program_.find_record(cls)) {
      for (const gotoir::RecordField& f : rec->fields) {
        std::string name = field_array_name(f.declaring_class, f.name);
        Term arr = heap_array(name, Sort::array(32, storage_width(f.type)));
        Term zero = solver::mk_bv(0, storage_width(f.type));
        define_heap(name, solver::mk_store(arr, id, zero), zero, "new " + cls);
      }
    }
    return id;
  }

  Term allocate_array(const GotoType& element, const Term& size) override {
    Term id = solver::mk_bv(next_id_++, gotoir::kReferenceWidth);
    Term len = solver::mk_resize(size, 32, true);
    Term arr = heap_array(kLengthArray, Sort::array(32, 32));
    define_heap(kLengthArray, solver::mk_store(arr, id, len), len, "new " + element.str() + "[]");
    return id;
  }

 private:
  struct Frame {
    const GotoFunction* fn;
    unsigned id;
  };

  // Naming -----------------------------------------------------------------

  std::string level1(const std::string& name) const {
    if (is_global(name)) return name;
    const Frame& f = frame_stack_.back();
    std::string l1 = f.fn->name + "::" + name;
    if (f.id != 0) l1 += "!" + std::to_string(f.id);
    return l1;
  }

  std::string return_var(const Frame& f) const {
    std::string r = f.fn->name + "::#return";
    if (f.id != 0) r += "!" + std::to_string(f.id);
    return r;
  }

  Term define(const std::string& l1, const Term& rhs, EquationKind kind, std::string source,
              std::string rhs_source, SourcePos pos, Term shown = nullptr) {
    unsigned v = ++versions_[l1];
    std::string name = l1 + "#" + std::to_string(v);
    Term sym = solver::mk_symbol(name, rhs->sort);
    Equation eq;
    eq.lhs = name;
    eq.variable = l1;
    eq.symbol = sym;
    eq.rhs = rhs;
    eq.guard = cur_->guard;
    eq.shown = shown ? shown : rhs;
    eq.kind = kind;
    eq.function = cur_function_;
    eq.source = std::move(source);
    eq.rhs_source = std::move(rhs_source);
    eq.pos = pos;
    out_.equations.push_back(std::move(eq));
    Term value = solver::is_const(rhs) ? rhs : sym;
    if (rhs->sort.is_array())
      cur_->heap[l1] = sym;
    else
      cur_->vars[l1] = value;
    return value;
  }

  void define_heap(const std::string& name, const Term& value, const Term& shown,
                   std::string source) {
    define(name, value, EquationKind::Heap, std::move(source), "", pos_, shown);
  }

  Term initial_array(const std::string& name, const Sort& sort) {
    auto it = initial_.find(name);
    if (it != initial_.end()) return it->second;
    Term t;
    if (name.rfind("heap::elements::", 0) == 0) {
      t = solver::mk_const_array(sort, solver::mk_bv(0, sort.width()));
    } else {
      t = solver::mk_symbol(name + "#0", sort);
      out_.initial_heap.push_back(t);
    }
    initial_.emplace(name, t);
    return t;
  }

  Term heap_array(const std::string& name, const Sort& sort) {
    auto it = cur_->heap.find(name);
    if (it != cur_->heap.end()) return it->second;
    return initial_array(name, sort);
  }

  // Inputs -----------------------------------------------------------------

  Term make_input(const GotoType& type, std::string description, bool non_null) {
    std::string name = "nondet!" + std::to_string(next_input_++);
    Term sym = solver::mk_symbol(name, value_sort(type));
    out_.inputs.push_back({name, type, std::move(description), cur_->guard, pos_});
    if (type.is_pointer()) {
      Term id = solver::mk_bv(next_id_++, gotoir::kReferenceWidth);
      Term fresh = solver::mk_eq(sym, id);
      Term range = non_null ? fresh
                            : solver::mk_or(solver::mk_eq(sym, solver::mk_bv(kNullId, 32)), fresh);
      assume(range);
      if (type.is_array()) {
        Term len = solver::mk_select(heap_array(kLengthArray, Sort::array(32, 32)), id);
        assume(solver::mk_binary(solver::Op::BvSle, solver::mk_bv(0, 32), len));
      }
    }
    return sym;
  }

  void materialise_parameter(const std::string& global, const GotoType& type) {
    const gotoir::GotoGlobal* g = program_.find_global(global);
    GotoType t = g ? g->type : type;
    bool receiver = global.ends_with("::@this");
    bool main_args = t.is_array() && entry_display().rfind("main_", 0) == 0;
    std::string shown = gotoir::print_expr(Expr::symbol(global, t), entry_);
    Term v = make_input(t, shown, receiver || main_args);
    define(global, v, EquationKind::Input, shown, "nondet(" + t.str() + ")", pos_);
  }

  void flush_parameters() {
    while (!cur_->pending_inputs.empty()) {
      std::string g = cur_->pending_inputs.front();
      cur_->pending_inputs.erase(cur_->pending_inputs.begin());
      const gotoir::GotoGlobal* glob = program_.find_global(g);
      materialise_parameter(g, glob ? glob->type : GotoType::int32());
    }
  }

  std::string entry_display() const {
    auto p = entry_.rfind("::");
    return p == std::string::npos ? entry_ : entry_.substr(p + 2);
  }

  void assume(const Term& cond) {
    Term a = solver::mk_implies(cur_->guard, cond);
    if (!solver::is_true(a)) out_.assumptions.push_back(a);
  }

  // Obligations ------------------------------------------------------------

  bool in_step_assume_phase() const {
    if (!options_.induction_step || !step_head_) return false;
    if (entry_pc_ < *step_head_ || entry_pc_ > step_tail_) return false;
    auto it = cur_->loops.find({0, *step_head_});
    unsigned count = it == cur_->loops.end() ? 0 : it->second;
    return count < options_.unwind;
  }

  void oblige(const Term& claim, PropertyClass cls, std::string comment, std::string claim_source,
              std::size_t index) {
    if (!cur_->live()) return;
    if (solver::is_true(claim)) {
      ++out_.discharged;
      return;
    }
    if (!in_step_assume_phase()) {
      Obligation o;
      o.guard = cur_->guard;
      o.claim = claim;
      o.property = cls;
      o.comment = std::move(comment);
      o.claim_source = std::move(claim_source);
      o.function = cur_function_;
      o.instruction = index;
      o.pos = pos_;
      o.assumptions_before = out_.assumptions.size();
      o.equations_before = out_.equations.size();
      out_.obligations.push_back(std::move(o));
    }
    // Later obligations only consider runs where this one held.
    assume(claim);
    if (solver::is_false(claim)) cur_->guard = solver::mk_false();
  }

  // Cuts the current path (or its `taken` part) at the unwinding bound.
  void cut(const Term& taken, std::string what, std::size_t index) {
    if (solver::is_false(taken)) return;
    if (!options_.induction_step) out_.bound_reached = true;
    Term saved = cur_->guard;
    cur_->guard = taken;
    if (options_.unwinding_assertions && !options_.induction_step) {
      oblige(solver::mk_false(), PropertyClass::Unwinding, "unwinding assertion " + what, "false",
             index);
    } else {
      assume(solver::mk_false());
    }
    cur_->guard = saved;
  }

  // Writes -------------------------------------------------------------------

  void write(const Expr& place, const Term& value, const std::string& rhs_source) {
    std::string source = gotoir::print_expr(place, cur_function_);
    switch (place.kind()) {
      case ExprKind::Symbol:
        define(level1(place.name()), value, EquationKind::Assign, source, rhs_source, pos_);
        return;
      case ExprKind::Member: {
        Term base = eval_expr(place.op(0), *this);
        std::string name = field_array_name(place.record(), place.name());
        Term arr = heap_array(name, Sort::array(32, storage_width(place.type())));
        Term stored = to_storage(value, place.type());
        define(name, solver::mk_store(arr, base, stored), EquationKind::Heap, source, rhs_source,
               pos_, value);
        return;
      }
      case ExprKind::Index: {
        Term base = eval_expr(place.op(0), *this);
        Term idx = eval_expr(place.op(1), *this);
        std::string name = element_array_name(place.type());
        Term arr = heap_array(name, Sort::array(64, storage_width(place.type())));
        Term stored = to_storage(value, place.type());
        define(name, solver::mk_store(arr, element_key(base, idx), stored), EquationKind::Heap,
               source, rhs_source, pos_, value);
        return;
      }
      default:
        throw std::logic_error("assignment to non-place " + place.str());
    }
  }

  // Merging ------------------------------------------------------------------

  State merge(State a, State b) {
    if (!a.live()) return b;
    if (!b.live()) return a;
    State m;
    m.guard = guard_or(a.guard, b.guard);
    m.pending_inputs = a.pending_inputs;
    m.loops = a.loops;
    for (auto& [k, v] : b.loops) m.loops[k] = std::max(m.loops[k], v);
    State* saved = cur_;
    cur_ = &m;
    std::set<std::string> names;
    for (auto& [k, v] : a.vars) names.insert(k);
    for (auto& [k, v] : b.vars) names.insert(k);
    for (const std::string& n : names) {
      auto ia = a.vars.find(n), ib = b.vars.find(n);
      Term va = ia != a.vars.end() ? ia->second : nullptr;
      Term vb = ib != b.vars.end() ? ib->second : nullptr;
      const Sort& s = (va ? va : vb)->sort;
      if (!va) va = s.is_bool() ? solver::mk_false() : solver::mk_bv(0, s.width());
      if (!vb) vb = s.is_bool() ? solver::mk_false() : solver::mk_bv(0, s.width());
      if (same_term(va, vb)) {
        m.vars[n] = va;
        continue;
      }
      define(n, solver::mk_ite(a.guard, va, vb), EquationKind::Phi, n, "phi", pos_);
    }
    names.clear();
    for (auto& [k, v] : a.heap) names.insert(k);
    for (auto& [k, v] : b.heap) names.insert(k);
    for (const std::string& n : names) {
      auto ia = a.heap.find(n), ib = b.heap.find(n);
      const Sort& s = (ia != a.heap.end() ? ia->second : ib->second)->sort;
      Term va = ia != a.heap.end() ? ia->second : initial_array(n, s);
      Term vb = ib != b.heap.end() ? ib->second : initial_array(n, s);
      if (va == vb) {
        m.heap[n] = va;
        continue;
      }
      define(n, solver::mk_ite(a.guard, va, vb), EquationKind::Phi, n, "phi", pos_);
    }
    cur_ = saved;
    return m;
  }

  // Execution ----------------------------------------------------------------

  const LoopInfo& loop_info(const GotoFunction& fn) {
    auto it = loop_cache_.find(&fn);
    if (it == loop_cache_.end()) it = loop_cache_.emplace(&fn, analyse(fn)).first;
    return it->second;
  }

  State call_function(const GotoFunction& fn, State entry, bool is_entry = false) {
    unsigned id = is_entry ? 0 : ++next_frame_;
    frame_stack_.push_back({&fn, id});
    std::string saved_fn = cur_function_;
    cur_function_ = fn.name;
    State result = run_body(fn, std::move(entry), id, is_entry);
    frame_stack_.pop_back();
    last_frame_ = id;
    cur_function_ = saved_fn;
    return result;
  }

  State run_body(const GotoFunction& fn, State start, unsigned frame, bool is_entry) {
    const LoopInfo& info = loop_info(fn);
    std::map<std::size_t, std::vector<State>> pending;
    State cur = std::move(start);
    std::size_t pc = 0;
    bool prologue = is_entry;
    const std::size_t end = fn.body.size() - 1;
    while (true) {
      auto p = pending.find(pc);
      if (p != pending.end()) {
        std::vector<State> waiting = std::move(p->second);
        pending.erase(p);
        for (State& w : waiting) cur = merge(std::move(cur), std::move(w));
      }
      if (!cur.live()) {
        if (pending.empty()) return cur;
        pc = pending.begin()->first;
        continue;
      }
      cur_ = &cur;
      const GotoInstruction& ins = fn.body[pc];
      pos_ = ins.pos();
      if (is_entry) entry_pc_ = pc;
      if (prologue && !ins.atomic && ins.kind != InstrKind::Decl) {
        prologue = false;
        flush_parameters();
      }
      if (info.tails.count(pc)) {
        if (cur.via_backedge != pc) {
          cur.loops[{frame, pc}] = 0;
          if (is_entry && step_head_ && *step_head_ == pc && !havocked_) havoc_loop(fn);
        }
      }
      cur.via_backedge.reset();
      switch (ins.kind) {
        case InstrKind::Assign: {
          Term v = eval_expr(*ins.expr, *this);
          write(*ins.lhs, v, gotoir::print_expr(*ins.expr, fn.name));
          ++pc;
          break;
        }
        case InstrKind::FunctionCall:
          cur = do_call(ins, std::move(cur), pc);
          cur_ = &cur;
          ++pc;
          break;
        case InstrKind::Goto:
          pc = jump(cur, pending, pc, info.labels.at(ins.name), solver::mk_true(), frame);
          break;
        case InstrKind::If:
          pc = jump(cur, pending, pc, info.labels.at(ins.name), eval_expr(*ins.expr, *this), frame);
          break;
        case InstrKind::Return:
          if (ins.expr) {
            Term v = eval_expr(*ins.expr, *this);
            define(return_var(frame_stack_.back()), v, EquationKind::Assign, "return",
                   gotoir::print_expr(*ins.expr, fn.name), pos_);
          }
          if (pc != end) {
            pending[end].push_back(std::move(cur));
            cur = State{};
            cur.guard = solver::mk_false();
          }
          pc = end;
          break;
        case InstrKind::Throw: {
          eval_expr(*ins.expr, *this);
          std::string type = ins.expr->type().is_reference() ? ins.expr->type().record_name()
                                                            : ins.expr->type().str();
          oblige(solver::mk_false(), PropertyClass::UncaughtException,
                 ins.comment.empty() ? "uncaught exception " + type : ins.comment, "false", pc);
          cur.guard = solver::mk_false();
          ++pc;
          break;
        }
        case InstrKind::Assert:
          oblige(eval_expr(*ins.expr, *this), ins.property, ins.comment,
                 gotoir::print_expr(*ins.expr, fn.name), pc);
          ++pc;
          break;
        case InstrKind::Assume: {
          Term c = eval_expr(*ins.expr, *this);
          assume(c);
          if (solver::is_false(c)) cur.guard = solver::mk_false();
          ++pc;
          break;
        }
        case InstrKind::EndFunction:
          return cur;
        default:
          ++pc;
          break;
      }
    }
  }

  std::size_t jump(State& cur, std::map<std::size_t, std::vector<State>>& pending, std::size_t pc,
                   std::size_t target, const Term& cond, unsigned frame) {
    Term taken = solver::mk_and(cur.guard, cond);
    Term fall = solver::mk_and(cur.guard, solver::mk_not(cond));
    if (target > pc) {
      if (!solver::is_false(taken)) {
        State t = cur;
        t.guard = taken;
        pending[target].push_back(std::move(t));
      }
      cur.guard = fall;
      return pc + 1;
    }
    // Back-edge.
    unsigned& count = cur.loops[{frame, target}];
    if (solver::is_false(taken)) {
      cur.guard = fall;
      return pc + 1;
    }
    if (count < options_.unwind) {
      if (!solver::is_false(fall)) {
        State f = cur;
        f.guard = fall;
        pending[pc + 1].push_back(std::move(f));
      }
      ++count;
      cur.guard = taken;
      cur.via_backedge = target;
      return target;
    }
    cut(taken, "for loop at " + describe(frame_stack_.back().fn->body[target]), pc);
    cur.guard = fall;
    return pc + 1;
  }

  static std::string describe(const GotoInstruction& head) {
    std::string s = head.kind == InstrKind::Label ? head.name : "?";
    if (head.pos().valid()) s += " (line " + std::to_string(head.pos().line) + ")";
    return s;
  }

  State do_call(const GotoInstruction& ins, State cur, std::size_t pc) {
    const GotoFunction* callee = program_.find_function(ins.name);
    if (!callee) throw SemanticError(ins.pos(), "call to undefined function " + ins.name);
    unsigned active = 0;
    for (const Frame& f : frame_stack_)
      if (f.fn == callee) ++active;
    if (active >= options_.unwind) {
      cut(cur.guard, "for recursion into " + callee->display_name(), pc);
      cur.guard = solver::mk_false();
      return cur;
    }
    State out = call_function(*callee, std::move(cur));
    cur_ = &out;
    if (ins.lhs && out.live()) {
      Term v = read_return(*callee);
      write(*ins.lhs, v, "return of " + callee->display_name());
    }
    return out;
  }

  // Return value of the frame that was popped last.
  Term read_return(const GotoFunction& callee) {
    std::string r = callee.name + "::#return!" + std::to_string(last_frame_);
    auto it = cur_->vars.find(r);
    if (it != cur_->vars.end()) return it->second;
    return zero_of(callee.return_type);
  }

  // k-induction step case --------------------------------------------------

  void setup_step(const GotoFunction& entry) {
    const LoopInfo& info = loop_info(entry);
    if (info.tails.size() != 1) return;
    step_head_ = info.tails.begin()->first;
    step_tail_ = info.tails.begin()->second;
  }

  void collect_writes(const GotoFunction& fn, std::size_t from, std::size_t to, bool locals,
                      std::set<std::string>& vars, std::set<std::string>& arrays,
                      std::set<std::string>& visited) {
    for (std::size_t i = from; i <= to && i < fn.body.size(); ++i) {
      const GotoInstruction& ins = fn.body[i];
      auto place = [&](const Expr& p) {
        if (p.kind() == ExprKind::Symbol) {
          if (locals || is_global(p.name())) vars.insert(p.name());
        } else if (p.kind() == ExprKind::Member) {
          arrays.insert(field_array_name(p.record(), p.name()));
        } else if (p.kind() == ExprKind::Index) {
          arrays.insert(element_array_name(p.type()));
        }
      };
      auto allocs = [&](const Expr& e) {
        gotoir::for_each_subexpr(e, [&](const Expr& s) {
          if (s.kind() == ExprKind::NewArray) arrays.insert(kLengthArray);
          if (s.kind() == ExprKind::NewObject)
            if (const gotoir::ClassRecord* r = program_.find_record(s.name()))
              for (const gotoir::RecordField& f : r->fields)
                arrays.insert(field_array_name(f.declaring_class, f.name));
        });
      };
      if (ins.lhs) place(*ins.lhs);
      if (ins.expr) allocs(*ins.expr);
      if (ins.kind == InstrKind::FunctionCall && visited.insert(ins.name).second)
        if (const GotoFunction* c = program_.find_function(ins.name))
          collect_writes(*c, 0, c->body.size(), false, vars, arrays, visited);
    }
  }

  void havoc_loop(const GotoFunction& fn) {
    havocked_ = true;
    std::set<std::string> vars, arrays, visited;
    collect_writes(fn, *step_head_, step_tail_, true, vars, arrays, visited);
    for (const std::string& v : vars) {
      std::string l1 = level1(v);
      GotoType t = GotoType::int32();
      if (const gotoir::GotoGlobal* g = program_.find_global(v)) t = g->type;
      else if (auto ty = local_type(fn, v)) t = *ty;
      Term sym = solver::mk_symbol("havoc!" + std::to_string(next_input_++), value_sort(t));
      define(l1, sym, EquationKind::Havoc, v, "havoc", pos_);
    }
    for (const std::string& a : arrays) {
      auto it = cur_->heap.find(a);
      Sort s = it != cur_->heap.end() ? it->second->sort : array_sort_for(a);
      Term sym = solver::mk_symbol("havoc!" + std::to_string(next_input_++), s);
      define(a, sym, EquationKind::Havoc, a, "havoc", pos_);
    }
  }

  static std::optional<GotoType> local_type(const GotoFunction& fn, const std::string& name) {
    for (const GotoInstruction& ins : fn.body)
      if (ins.kind == InstrKind::Decl && ins.name == name) return ins.type;
    return std::nullopt;
  }

  Sort array_sort_for(const std::string& name) {
    if (name == kLengthArray) return Sort::array(32, 32);
    for (auto& [rname, rec] : program_.records)
      for (const gotoir::RecordField& f : rec.fields)
        if (field_array_name(f.declaring_class, f.name) == name)
          return Sort::array(32, storage_width(f.type));
    // Element arrays: recover the element type from the program.
    std::optional<Sort> found;
    for (auto& [fname, fn] : program_.functions)
      for (const GotoInstruction& ins : fn.body) {
        auto look = [&](const Expr& e) {
          gotoir::for_each_subexpr(e, [&](const Expr& s) {
            if (s.kind() == ExprKind::Index && element_array_name(s.type()) == name)
              found = Sort::array(64, storage_width(s.type()));
          });
        };
        if (ins.lhs) look(*ins.lhs);
        if (ins.expr) look(*ins.expr);
      }
    if (found) return *found;
    throw std::logic_error("unknown heap array " + name);
  }

  const GotoProgram& program_;
  std::string entry_;
  UnrollOptions options_;
  SsaEquationSet out_;
  State* cur_ = nullptr;
  std::string cur_function_;
  SourcePos pos_;
  std::vector<Frame> frame_stack_;
  std::map<std::string, unsigned> versions_;
  std::map<std::string, Term> initial_;
  std::unordered_map<const GotoFunction*, LoopInfo> loop_cache_;
  unsigned next_input_ = 0;
  unsigned next_frame_ = 0;
  unsigned last_frame_ = 0;
  std::uint64_t next_id_ = kFirstObjectId;
  std::size_t entry_pc_ = 0;
  std::optional<std::size_t> step_head_;
  std::size_t step_tail_ = 0;
  bool havocked_ = false;
};

}  // namespace

SsaEquationSet unroll(const GotoProgram& program, const std::string& entry,
                      const UnrollOptions& options) {
  return Unroller(program, entry, options).run();
}

bool supports_induction_step(const GotoProgram& program, const std::string& entry) {
  const GotoFunction* fn = program.find_function(entry);
  if (!fn) return false;
  if (analyse(*fn).tails.size() != 1) return false;
  std::set<std::string> seen;
  std::vector<std::string> path;
  bool recursive = false;
  callees(program, entry, seen, path, recursive);
  for (const std::string& init : program.initializers) {
    seen.insert(init);
    callees(program, init, seen, path, recursive);
  }
  if (recursive) return false;
  for (const std::string& c : seen)
    if (const GotoFunction* f = program.find_function(c); f && !analyse(*f).tails.empty())
      return false;
  return true;
}

std::optional<std::string> check_ssa(const SsaEquationSet& ssa) {
  std::set<std::string> defined;
  for (const Input& in : ssa.inputs) defined.insert(in.symbol);
  for (const Term& h : ssa.initial_heap) defined.insert(h->name);
  auto undefined = [&](const Term& t) -> std::optional<std::string> {
    for (const Term& s : solver::free_symbols(t))
      if (!defined.count(s->name) && s->name.rfind("havoc!", 0) != 0) return s->name;
    return std::nullopt;
  };
  for (const Equation& eq : ssa.equations) {
    if (auto u = undefined(eq.rhs)) return "equation for " + eq.lhs + " uses undefined " + *u;
    if (auto u = undefined(eq.guard)) return "guard of " + eq.lhs + " uses undefined " + *u;
    if (!defined.insert(eq.lhs).second) return "symbol " + eq.lhs + " assigned twice";
  }
  for (const Obligation& o : ssa.obligations) {
    if (auto u = undefined(o.claim)) return "obligation uses undefined " + *u;
    if (auto u = undefined(o.guard)) return "obligation guard uses undefined " + *u;
  }
  for (const Term& a : ssa.assumptions)
    if (auto u = undefined(a)) return "assumption uses undefined " + *u;
  return std::nullopt;
}

}  // namespace jimplebmc::symex
