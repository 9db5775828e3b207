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

#include "jimplebmc/symex/replay.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

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
using solver::Term;
using namespace detail;

const char* replay_outcome_name(ReplayOutcome::Kind k) {
  switch (k) {
    case ReplayOutcome::Kind::Violated: return "violated";
    case ReplayOutcome::Kind::Completed: return "completed";
    case ReplayOutcome::Kind::BoundExhausted: return "bound-exhausted";
    case ReplayOutcome::Kind::Infeasible: return "infeasible";
  }
  return "?";
}

bool replay_confirms(const ReplayOutcome& outcome, const Counterexample& cex) {
  return outcome.kind == ReplayOutcome::Kind::Violated &&
         outcome.property == cex.violated.property && outcome.function == cex.violated.function &&
         outcome.instruction == cex.violated.instruction;
}

namespace {

// Ids for objects allocated during replay; far above anything the symbolic
// engine hands out, so they never meet ids that came from inputs.
constexpr std::uint64_t kReplayIdBase = std::uint64_t{1} << 30;

// Stops interpretation with an outcome.
struct Stop {
  ReplayOutcome outcome;
};

class Interpreter : public Env {
 public:
  Interpreter(const GotoProgram& program, const std::string& entry, const UnrollOptions& options,
              const Counterexample& cex)
      : program_(program), entry_(entry), options_(options), cex_(cex) {}

  ReplayOutcome run() {
    const GotoFunction* entry = program_.find_function(entry_);
    if (!entry) throw SemanticError("entry function '" + entry_ + "' not found");
    try {
      for (const gotoir::GotoGlobal& g : program_.globals) {
        if (!g.initial) continue;
        if (g.initial->kind() == ExprKind::NewObject || g.initial->is_constant())
          globals_[g.name] = eval_expr(*g.initial, *this);
      }
      for (const std::string& init : program_.initializers)
        if (const GotoFunction* fn = program_.find_function(init)) call(*fn, false);
      pending_ = entry->parameters;
      call(*entry, true);
    } catch (Stop& s) {
      s.outcome.steps = steps_;
      return s.outcome;
    }
    ReplayOutcome done;
    done.kind = ReplayOutcome::Kind::Completed;
    done.steps = steps_;
    return done;
  }

  Term read_symbol(const std::string& name, const GotoType& type) override {
    auto p = std::find(pending_.begin(), pending_.end(), name);
    if (p != pending_.end()) {
      pending_.erase(p);
      globals_[name] = next_input(type);
    }
    if (name.find("::") != std::string::npos) {
      auto it = globals_.find(name);
      return it != globals_.end() ? it->second : zero_of(type);
    }
    auto& locals = frames_.back().locals;
    auto it = locals.find(name);
    return it != locals.end() ? it->second : zero_of(type);
  }

  Term read_field(const Term& base, const std::string& decl, const std::string& field,
                  const GotoType& type) override {
    std::string arr = field_array_name(decl, field);
    auto it = heap_.find({arr, base->value});
    std::uint64_t bits = it != heap_.end() ? it->second : initial(arr, base->value);
    return from_storage(solver::mk_bv(bits, storage_width(type)), type);
  }

  Term read_element(const Term& array, const Term& index, const GotoType& element) override {
    Term key = element_key(array, index);
    auto it = heap_.find({element_array_name(element), key->value});
    std::uint64_t bits = it != heap_.end() ? it->second : 0;
    return from_storage(solver::mk_bv(bits, storage_width(element)), element);
  }

  Term read_length(const Term& array) override {
    auto it = heap_.find({kLengthArray, array->value});
    std::uint64_t bits = it != heap_.end() ? it->second : initial(kLengthArray, array->value);
    return solver::mk_bv(bits, 32);
  }

  Term nondet(const GotoType& type) override { return next_input(type); }

  Term allocate_object(const std::string& cls) override {
    std::uint64_t id = next_id_++;
    if (const gotoir::ClassRecord* rec = program_.find_record(cls))
      for (const gotoir::RecordField& f : rec->fields)
        heap_[{field_array_name(f.declaring_class, f.name), id}] = 0;
    return solver::mk_bv(id, 32);
  }

  Term allocate_array(const GotoType&, const Term& size) override {
    std::uint64_t id = next_id_++;
    heap_[{kLengthArray, id}] = solver::mk_resize(size, 32, true)->value;
    return solver::mk_bv(id, 32);
  }

 private:
  struct Frame {
    const GotoFunction* fn;
    std::map<std::string, Term> locals;
    std::map<std::size_t, unsigned> loops;
    Term result;
  };

  std::uint64_t initial(const std::string& array, std::uint64_t index) const {
    const solver::Value* v = cex_.initial_heap.find(array + "#0");
    return v ? v->at(index) : 0;
  }

  Term next_input(const GotoType& type) {
    if (input_ >= cex_.inputs.size())
      throw SemanticError("replay ran out of inputs at input #" + std::to_string(input_));
    const InputValue& in = cex_.inputs[input_++];
    if (!(in.type == type) && !(in.type.is_pointer() && type.is_pointer()))
      throw SemanticError("replay input #" + std::to_string(input_ - 1) + " has type " +
                          in.type.str() + ", expected " + type.str());
    if (type.is_bool()) return solver::mk_bool(in.value.as_bool());
    return solver::mk_bv(in.value.bits, value_sort(type).width());
  }

  [[noreturn]] void stop(ReplayOutcome::Kind kind, PropertyClass cls, std::size_t pc,
                         const GotoInstruction& ins, std::string comment) {
    ReplayOutcome o;
    o.kind = kind;
    o.property = cls;
    o.function = frames_.back().fn->name;
    o.instruction = pc;
    o.pos = ins.pos();
    o.comment = std::move(comment);
    throw Stop{o};
  }

  void write(const Expr& place, const Term& value) {
    switch (place.kind()) {
      case ExprKind::Symbol:
        if (place.name().find("::") != std::string::npos)
          globals_[place.name()] = value;
        else
          frames_.back().locals[place.name()] = value;
        return;
      case ExprKind::Member: {
        Term base = eval_expr(place.op(0), *this);
        heap_[{field_array_name(place.record(), place.name()), base->value}] =
            to_storage(value, place.type())->value;
        return;
      }
      case ExprKind::Index: {
        Term base = eval_expr(place.op(0), *this);
        Term idx = eval_expr(place.op(1), *this);
        heap_[{element_array_name(place.type()), element_key(base, idx)->value}] =
            to_storage(value, place.type())->value;
        return;
      }
      default:
        throw std::logic_error("assignment to non-place");
    }
  }

  const std::unordered_map<std::string, std::size_t>& labels(const GotoFunction& fn) {
    auto it = labels_.find(&fn);
    if (it != labels_.end()) return it->second;
    std::unordered_map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < fn.body.size(); ++i)
      if (fn.body[i].kind == InstrKind::Label) m.emplace(fn.body[i].name, i);
    return labels_.emplace(&fn, std::move(m)).first->second;
  }

  const std::map<std::size_t, bool>& heads(const GotoFunction& fn) {
    auto it = heads_.find(&fn);
    if (it != heads_.end()) return it->second;
    std::map<std::size_t, bool> h;
    const auto& l = labels(fn);
    for (std::size_t i = 0; i < fn.body.size(); ++i) {
      const GotoInstruction& ins = fn.body[i];
      if ((ins.kind == InstrKind::Goto || ins.kind == InstrKind::If) && l.at(ins.name) <= i)
        h[l.at(ins.name)] = true;
    }
    return heads_.emplace(&fn, std::move(h)).first->second;
  }

  Term call(const GotoFunction& fn, bool is_entry) {
    frames_.push_back({&fn, {}, {}, nullptr});
    const auto& lab = labels(fn);
    const auto& hd = heads(fn);
    bool prologue = is_entry;
    std::size_t pc = 0;
    std::optional<std::size_t> via_backedge;
    while (true) {
      const GotoInstruction& ins = fn.body.at(pc);
      ++steps_;
      if (prologue && !ins.atomic && ins.kind != InstrKind::Decl) {
        prologue = false;
        while (!pending_.empty()) {
          std::string g = pending_.front();
          pending_.erase(pending_.begin());
          const gotoir::GotoGlobal* glob = program_.find_global(g);
          globals_[g] = next_input(glob ? glob->type : GotoType::int32());
        }
      }
      if (hd.count(pc) && via_backedge != pc) frames_.back().loops[pc] = 0;
      via_backedge.reset();
      switch (ins.kind) {
        case InstrKind::Assign:
          write(*ins.lhs, eval_expr(*ins.expr, *this));
          ++pc;
          break;
        case InstrKind::FunctionCall: {
          const GotoFunction* callee = program_.find_function(ins.name);
          if (!callee) throw SemanticError(ins.pos(), "call to undefined function " + ins.name);
          unsigned active = 0;
          for (const Frame& f : frames_)
            if (f.fn == callee) ++active;
          if (active >= options_.unwind) bound_hit(pc, ins);
          Term r = call(*callee, false);
          if (ins.lhs) write(*ins.lhs, r ? r : zero_of(callee->return_type));
          ++pc;
          break;
        }
        case InstrKind::Goto:
        case InstrKind::If: {
          bool taken = ins.kind == InstrKind::Goto || solver::is_true(eval_expr(*ins.expr, *this));
          std::size_t target = lab.at(ins.name);
          if (!taken) {
            ++pc;
          } else if (target > pc) {
            pc = target;
          } else {
            unsigned& count = frames_.back().loops[target];
            if (count >= options_.unwind) bound_hit(pc, ins);
            ++count;
            via_backedge = target;
            pc = target;
          }
          break;
        }
        case InstrKind::Return:
          if (ins.expr) frames_.back().result = eval_expr(*ins.expr, *this);
          pc = fn.body.size() - 1;
          break;
        case InstrKind::Throw:
          eval_expr(*ins.expr, *this);
          stop(ReplayOutcome::Kind::Violated, PropertyClass::UncaughtException, pc, ins, ins.comment);
        case InstrKind::Assert:
          if (!solver::is_true(eval_expr(*ins.expr, *this)))
            stop(ReplayOutcome::Kind::Violated, ins.property, pc, ins, ins.comment);
          ++pc;
          break;
        case InstrKind::Assume:
          if (!solver::is_true(eval_expr(*ins.expr, *this)))
            stop(ReplayOutcome::Kind::Infeasible, PropertyClass::UserAssert, pc, ins, "assumption failed");
          ++pc;
          break;
        case InstrKind::EndFunction: {
          Term r = frames_.back().result;
          frames_.pop_back();
          return r;
        }
        default:
          ++pc;
          break;
      }
    }
  }

  [[noreturn]] void bound_hit(std::size_t pc, const GotoInstruction& ins) {
    if (options_.unwinding_assertions)
      stop(ReplayOutcome::Kind::Violated, PropertyClass::Unwinding, pc, ins, "unwinding assertion");
    stop(ReplayOutcome::Kind::BoundExhausted, PropertyClass::Unwinding, pc, ins, "bound exhausted");
  }

  const GotoProgram& program_;
  std::string entry_;
  UnrollOptions options_;
  const Counterexample& cex_;
  std::vector<Frame> frames_;
  std::map<std::string, Term> globals_;
  std::map<std::pair<std::string, std::uint64_t>, std::uint64_t> heap_;
  std::vector<std::string> pending_;
  std::unordered_map<const GotoFunction*, std::unordered_map<std::string, std::size_t>> labels_;
  std::unordered_map<const GotoFunction*, std::map<std::size_t, bool>> heads_;
  std::size_t input_ = 0;
  std::size_t steps_ = 0;
  std::uint64_t next_id_ = kReplayIdBase;
};

}  // namespace

ReplayOutcome replay(const GotoProgram& program, const std::string& entry,
                     const UnrollOptions& options, const Counterexample& inputs) {
  return Interpreter(program, entry, options, inputs).run();
}

}  // namespace jimplebmc::symex
