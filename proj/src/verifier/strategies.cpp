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

#include <fstream>

#include "jimplebmc/verifier/verifier.hpp"

namespace jimplebmc::verifier {

using gotoir::PropertyClass;
using symex::ObligationSelection;

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Bmc: return "bmc";
    case Strategy::Incremental: return "incremental-bmc";
    case Strategy::KInduction: return "k-induction";
  }
  return "?";
}

const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Failed: return "VerificationFailed";
    case VerdictKind::Successful: return "VerificationSuccessful";
    case VerdictKind::SafeWithinBound: return "SafeWithinBound";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

ObligationSelection properties() {
  return ObligationSelection::only({PropertyClass::Overflow, PropertyClass::DivByZero,
                                    PropertyClass::Bounds, PropertyClass::NullDeref,
                                    PropertyClass::UserAssert, PropertyClass::UncaughtException});
}

ObligationSelection unwinding() { return ObligationSelection::only({PropertyClass::Unwinding}); }

bool selects_any(const symex::SsaEquationSet& ssa, const ObligationSelection& sel) {
  for (std::size_t i = 0; i < ssa.obligations.size(); ++i)
    if (sel.selects(ssa.obligations[i], i)) return true;
  return false;
}

// One query; formulas that fold to `false` never reach the solver.
solver::SolveResult query(const symex::SsaEquationSet& ssa, const ObligationSelection& sel,
                          const VerifyOptions& options, Verdict& v, bool dump) {
  if (!selects_any(ssa, sel)) return {solver::SolveStatus::Unsat, {}, {}};
  solver::Formula f = symex::encode_vc(ssa, sel);
  if (dump && options.smt_formula) {
    std::ofstream out(*options.smt_formula, std::ios::binary);
    out << solver::emit_smtlib2(f);
  }
  if (solver::is_false(f.assertion)) return {solver::SolveStatus::Unsat, {}, {}};
  ++v.solver_calls;
  return solver::solve(f, options.solver);
}

void table(const symex::SsaEquationSet& ssa, Verdict& v, std::optional<std::size_t> violated) {
  v.obligations.clear();
  for (std::size_t i = 0; i < ssa.obligations.size(); ++i) {
    const symex::Obligation& o = ssa.obligations[i];
    if (o.property == PropertyClass::Unwinding) continue;
    std::string status = violated ? (i == *violated ? "violated" : "unchecked") : "not violated";
    v.obligations.push_back({o.property, o.comment, o.function, o.pos, status});
  }
}

// Turns a SAT answer into a replay-validated failure, or Unknown if the
// counterexample does not reproduce.
void fail_with(const solver::Model& model, const symex::SsaEquationSet& ssa,
               const ObligationSelection& sel, const gotoir::GotoProgram& inst,
               const std::string& entry, unsigned k, bool unwinding_assertions, Verdict& v) {
  symex::Counterexample cex = symex::build_trace(model, ssa, sel);
  symex::ReplayOutcome out;
  try {
    out = symex::replay(inst, entry, {k, unwinding_assertions, false}, cex);
  } catch (const Error& e) {
    v.kind = VerdictKind::Unknown;
    v.reason = std::string("counterexample replay failed: ") + e.what();
    return;
  }
  v.replay = out;
  if (!symex::replay_confirms(out, cex)) {
    v.kind = VerdictKind::Unknown;
    v.reason = std::string("counterexample did not replay (replay outcome: ") +
               symex::replay_outcome_name(out.kind) + ")";
    return;
  }
  v.kind = VerdictKind::Failed;
  v.unwinding_failure = cex.violated.property == PropertyClass::Unwinding;
  table(ssa, v, cex.obligation_index);
  v.counterexample = std::move(cex);
}

enum class Base { Failed, Unknown, Complete, Incomplete };

// Base case at bound k: properties first, then (if asked) completeness.
Base base_case(const gotoir::GotoProgram& inst, const std::string& entry, unsigned k,
               const VerifyOptions& options, bool check_unwinding, Verdict& v) {
  v.bound = k;
  symex::SsaEquationSet ssa = symex::unroll(inst, entry, {k, true, false});
  solver::SolveResult r = query(ssa, properties(), options, v, true);
  if (r.status == solver::SolveStatus::Unknown) {
    v.kind = VerdictKind::Unknown;
    v.reason = r.reason;
    return Base::Unknown;
  }
  if (r.status == solver::SolveStatus::Sat) {
    fail_with(r.model, ssa, properties(), inst, entry, k, true, v);
    return v.kind == VerdictKind::Failed ? Base::Failed : Base::Unknown;
  }
  table(ssa, v, std::nullopt);
  if (!ssa.bound_reached) return Base::Complete;
  if (!check_unwinding) return Base::Incomplete;
  solver::SolveResult u = query(ssa, unwinding(), options, v, false);
  if (u.status == solver::SolveStatus::Unsat) return Base::Complete;
  if (u.status == solver::SolveStatus::Sat && options.unwinding_assertions) {
    fail_with(u.model, ssa, unwinding(), inst, entry, k, true, v);
    return v.kind == VerdictKind::Failed ? Base::Failed : Base::Unknown;
  }
  return Base::Incomplete;
}

Verdict start(const gotoir::GotoProgram& program, const std::string& entry, Strategy s) {
  Verdict v;
  v.strategy = s;
  v.entry = entry;
  v.unknown_calls = program.unknown_calls;
  return v;
}

void finish(Verdict& v, Clock::time_point t0) {
  v.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

Verdict run_bmc(const gotoir::GotoProgram& program, const std::string& entry, unsigned k,
                const VerifyOptions& options) {
  auto t0 = Clock::now();
  Verdict v = start(program, entry, Strategy::Bmc);
  gotoir::GotoProgram inst = symex::instrument(program, options.checks);
  switch (base_case(inst, entry, k, options, true, v)) {
    case Base::Complete:
      v.kind = VerdictKind::Successful;
      v.reason = "all paths explored within bound " + std::to_string(k);
      break;
    case Base::Incomplete:
      v.kind = VerdictKind::SafeWithinBound;
      v.reason = "no violation within bound " + std::to_string(k);
      break;
    default:
      break;
  }
  finish(v, t0);
  return v;
}

Verdict run_incremental(const gotoir::GotoProgram& program, const std::string& entry,
                        unsigned k_max, const VerifyOptions& options) {
  auto t0 = Clock::now();
  Verdict v = start(program, entry, Strategy::Incremental);
  gotoir::GotoProgram inst = symex::instrument(program, options.checks);
  VerifyOptions opts = options;
  opts.unwinding_assertions = false;  // completeness is a stopping test here, not a property
  for (unsigned k = 1; k <= k_max; ++k) {
    Base b = base_case(inst, entry, k, opts, true, v);
    if (b == Base::Failed || b == Base::Unknown) {
      finish(v, t0);
      return v;
    }
    if (b == Base::Complete) {
      v.kind = VerdictKind::Successful;
      v.reason = "no path exceeds bound " + std::to_string(k);
      finish(v, t0);
      return v;
    }
  }
  v.kind = VerdictKind::SafeWithinBound;
  v.bound = k_max;
  v.reason = "no violation within bound " + std::to_string(k_max);
  finish(v, t0);
  return v;
}

Verdict run_kinduction(const gotoir::GotoProgram& program, const std::string& entry,
                       unsigned k_max, const VerifyOptions& options) {
  auto t0 = Clock::now();
  Verdict v = start(program, entry, Strategy::KInduction);
  gotoir::GotoProgram inst = symex::instrument(program, options.checks);
  VerifyOptions opts = options;
  opts.unwinding_assertions = false;
  bool step_possible = symex::supports_induction_step(inst, entry);
  std::string last_unknown;
  for (unsigned k = 1; k <= k_max; ++k) {
    Base b = base_case(inst, entry, k, opts, true, v);
    if (b == Base::Failed) {
      finish(v, t0);
      return v;
    }
    if (b == Base::Unknown) {
      last_unknown = v.reason;
      continue;
    }
    if (b == Base::Complete) {
      v.kind = VerdictKind::Successful;
      v.reason = "forward condition holds at k = " + std::to_string(k);
      finish(v, t0);
      return v;
    }
    if (!step_possible) continue;
    symex::SsaEquationSet step = symex::unroll(inst, entry, {k, false, true});
    solver::SolveResult r = query(step, properties(), opts, v, false);
    if (r.status == solver::SolveStatus::Unsat) {
      v.kind = VerdictKind::Successful;
      v.bound = k;
      v.reason = "inductive step holds at k = " + std::to_string(k);
      finish(v, t0);
      return v;
    }
    if (r.status == solver::SolveStatus::Unknown) last_unknown = r.reason;
  }
  v.kind = VerdictKind::Unknown;
  v.bound = k_max;
  v.reason = "k-induction inconclusive up to k = " + std::to_string(k_max);
  if (!step_possible) v.reason += " (no inductive step for this loop structure)";
  if (!last_unknown.empty()) v.reason += "; last solver answer: " + last_unknown;
  finish(v, t0);
  return v;
}

}  // namespace jimplebmc::verifier
