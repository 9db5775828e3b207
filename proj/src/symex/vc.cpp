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

#include "jimplebmc/symex/vc.hpp"

#include <algorithm>
#include <stdexcept>

namespace jimplebmc::symex {

using solver::Term;

bool ObligationSelection::selects(const Obligation& o, std::size_t i) const {
  switch (mode) {
    case Mode::All: return true;
    case Mode::Single: return i == index;
    case Mode::Classes:
      return std::find(classes.begin(), classes.end(), o.property) != classes.end();
  }
  return false;
}

solver::Formula encode_vc(const SsaEquationSet& ssa, const ObligationSelection& selection) {
  // Assumptions and obligations interleave: each obligation sees only the
  // assumptions before it. Built back to front as
  //   a1 && (v1 || (a2 && (v2 || ...)))
  // so the formula stays linear in the number of events.
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < ssa.obligations.size(); ++i)
    if (selection.selects(ssa.obligations[i], i)) chosen.push_back(i);
  if (chosen.empty()) return solver::Formula::of(solver::mk_false());
  Term goal = solver::mk_false();
  std::size_t next_assumption = ssa.obligations[chosen.back()].assumptions_before;
  for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
    const Obligation& o = ssa.obligations[*it];
    for (std::size_t a = next_assumption; a > o.assumptions_before; --a)
      goal = solver::mk_and(ssa.assumptions[a - 1], goal);
    next_assumption = o.assumptions_before;
    goal = solver::mk_or(solver::mk_and(o.guard, solver::mk_not(o.claim)), goal);
  }
  for (std::size_t a = next_assumption; a > 0; --a) goal = solver::mk_and(ssa.assumptions[a - 1], goal);
  if (solver::is_false(goal)) return solver::Formula::of(solver::mk_false());
  std::vector<Term> conjuncts;
  conjuncts.reserve(ssa.equations.size() + 1);
  for (const Equation& eq : ssa.equations) conjuncts.push_back(solver::mk_eq(eq.symbol, eq.rhs));
  conjuncts.push_back(goal);
  std::vector<Term> inputs;
  for (const Input& in : ssa.inputs)
    inputs.push_back(solver::mk_symbol(in.symbol, in.type.is_bool() ? solver::Sort::boolean()
                                                                    : solver::Sort::bitvec(
                                                                          in.type.is_integer()
                                                                              ? in.type.width()
                                                                              : 32)));
  return solver::Formula::of(solver::mk_and(conjuncts), inputs);
}

std::optional<std::size_t> violated_obligation(const SsaEquationSet& ssa, const solver::Model& model,
                                               const ObligationSelection& selection) {
  std::size_t checked = 0;  // assumptions known to hold so far
  for (std::size_t i = 0; i < ssa.obligations.size(); ++i) {
    const Obligation& o = ssa.obligations[i];
    if (!selection.selects(o, i)) continue;
    for (; checked < o.assumptions_before; ++checked)
      if (!solver::evaluate(ssa.assumptions[checked], model).as_bool()) return std::nullopt;
    if (solver::evaluate(o.guard, model).as_bool() && !solver::evaluate(o.claim, model).as_bool())
      return i;
  }
  return std::nullopt;
}

namespace {

// Value of `t` rendered for a trace; references print as object ids.
std::string render(const Term& t, const solver::Model& model) {
  return solver::evaluate(t, model).str();
}

std::optional<bool> underflow_of(const Obligation& o, const solver::Model& model) {
  if (o.property != gotoir::PropertyClass::Overflow) return std::nullopt;
  // Claims are not(overflow(a, b)); look for the operator node.
  Term c = o.claim;
  while (c->op == solver::Op::Not || c->op == solver::Op::Or) {
    if (c->op == solver::Op::Or) c = c->args.back();
    else c = c->args[0];
  }
  using solver::Op;
  if (c->op != Op::AddOverflow && c->op != Op::SubOverflow && c->op != Op::MulOverflow)
    return std::nullopt;
  std::int64_t a = solver::evaluate(c->args[0], model).as_signed();
  std::int64_t b = solver::evaluate(c->args[1], model).as_signed();
  __int128 r = c->op == Op::AddOverflow   ? __int128{a} + b
               : c->op == Op::SubOverflow ? __int128{a} - b
                                          : __int128{a} * b;
  return r < 0;
}

}  // namespace

Counterexample build_trace(const solver::Model& model, const SsaEquationSet& ssa,
                           const ObligationSelection& selection) {
  auto index = violated_obligation(ssa, model, selection);
  if (!index) throw std::logic_error("model violates no selected obligation");
  Counterexample cex;
  cex.obligation_index = *index;
  cex.violated = ssa.obligations[*index];
  for (std::size_t e = 0; e < cex.violated.equations_before; ++e) {
    const Equation& eq = ssa.equations[e];
    if (eq.kind == EquationKind::Phi || eq.kind == EquationKind::Havoc) continue;
    if (eq.kind == EquationKind::Heap && eq.rhs_source.empty()) continue;  // allocation bookkeeping
    if (!solver::evaluate(eq.guard, model).as_bool()) continue;
    TraceStep step;
    step.pos = eq.pos;
    step.function = eq.function;
    step.symbol = eq.source;
    step.value = render(eq.kind == EquationKind::Heap ? eq.shown : eq.symbol, model);
    step.input = eq.kind == EquationKind::Input;
    cex.steps.push_back(std::move(step));
  }
  for (const Input& in : ssa.inputs) {
    if (!solver::evaluate(in.guard, model).as_bool()) continue;
    const solver::Value* v = model.find(in.symbol);
    if (!v) throw std::logic_error("model lacks input " + in.symbol);
    cex.inputs.push_back({in.description, in.type, *v, in.pos});
  }
  for (const Term& h : ssa.initial_heap) {
    const solver::Value* v = model.find(h->name);
    if (v) cex.initial_heap.values[h->name] = *v;
  }
  cex.underflow = underflow_of(cex.violated, model);
  return cex;
}

}  // namespace jimplebmc::symex
