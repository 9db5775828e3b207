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

#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "jimplebmc/verifier/verifier.hpp"

namespace jimplebmc::verifier {

using gotoir::PropertyClass;

int exit_code(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Successful:
    case VerdictKind::SafeWithinBound:
      return 0;
    case VerdictKind::Failed:
      return 1;
    case VerdictKind::Unknown:
      return 2;
  }
  return 2;
}

std::string property_label(const symex::Counterexample& cex) {
  if (cex.violated.property == PropertyClass::Overflow && cex.underflow.value_or(false))
    return "underflow";
  return gotoir::property_class_name(cex.violated.property);
}

namespace {

std::string where(const std::string& function, SourcePos pos) {
  std::string s = function.empty() ? "<init>" : function;
  if (pos.valid()) s += " line " + std::to_string(pos.line);
  return s;
}

std::string input_value(const symex::InputValue& in) {
  if (in.type.is_pointer()) return in.value.bits == 0 ? "null" : "object#" + std::to_string(in.value.bits);
  return in.value.str();
}

}  // namespace

std::string report_text(const Verdict& v) {
  std::ostringstream out;
  out << "Entry: " << v.entry << "\nStrategy: " << strategy_name(v.strategy) << ", bound "
      << v.bound << "\n";
  if (!v.unknown_calls.empty()) {
    out << "Calls without body or model (treated as nondet):\n";
    for (const std::string& c : v.unknown_calls) out << "  " << c << "\n";
  }
  switch (v.kind) {
    case VerdictKind::Failed: {
      const symex::Counterexample& cex = *v.counterexample;
      out << "\nCounterexample:\n";
      std::size_t n = 0;
      for (const symex::TraceStep& s : cex.steps)
        out << "  State " << ++n << " " << where(s.function, s.pos) << ": " << s.symbol << " = "
            << s.value << (s.input ? "  [input]" : "") << "\n";
      out << "\nInputs:\n";
      for (const symex::InputValue& in : cex.inputs)
        out << "  " << in.description << " = " << input_value(in) << "\n";
      out << "\nViolated property:\n  " << where(cex.violated.function, cex.violated.pos) << "\n  "
          << (v.unwinding_failure ? "unwinding assertion" : property_label(cex)) << ": "
          << cex.violated.comment << "\n  " << cex.violated.claim_source << "\n";
      out << "Counterexample replay: confirmed\n\nVERIFICATION FAILED\n";
      break;
    }
    case VerdictKind::Successful:
      out << "(" << v.reason << ")\n";
      if (!v.unknown_calls.empty()) out << "Note: safe modulo unknown calls (listed above)\n";
      out << "\nVERIFICATION SUCCESSFUL\n";
      break;
    case VerdictKind::SafeWithinBound:
      out << "(" << v.reason << "; loops may run longer)\n";
      if (!v.unknown_calls.empty()) out << "Note: safe modulo unknown calls (listed above)\n";
      out << "\nVERIFICATION SUCCESSFUL (bounded, k = " << v.bound << ")\n";
      break;
    case VerdictKind::Unknown:
      out << "\nVERIFICATION UNKNOWN: " << v.reason << "\n";
      break;
  }
  out << "Runtime: " << std::fixed << std::setprecision(3) << v.seconds << "s, solver calls: "
      << v.solver_calls << "\n";
  return out.str();
}

std::string report_json(const Verdict& v) {
  using nlohmann::json;
  json j;
  j["verdict"] = verdict_kind_name(v.kind);
  j["entry"] = v.entry;
  j["strategy"] = strategy_name(v.strategy);
  j["bound"] = v.bound;
  j["reason"] = v.reason;
  j["exit_code"] = exit_code(v);
  j["seconds"] = v.seconds;
  j["solver_calls"] = v.solver_calls;
  j["unknown_calls"] = v.unknown_calls;
  json obligations = json::array();
  for (const ObligationStatus& o : v.obligations)
    obligations.push_back({{"property", gotoir::property_class_name(o.property)},
                           {"comment", o.comment},
                           {"function", o.function},
                           {"line", o.pos.line},
                           {"status", o.status}});
  j["obligations"] = obligations;
  if (v.counterexample) {
    const symex::Counterexample& cex = *v.counterexample;
    json c;
    c["property"] = gotoir::property_class_name(cex.violated.property);
    c["label"] = v.unwinding_failure ? "unwinding" : property_label(cex);
    c["comment"] = cex.violated.comment;
    c["claim"] = cex.violated.claim_source;
    c["function"] = cex.violated.function;
    c["line"] = cex.violated.pos.line;
    c["column"] = cex.violated.pos.column;
    c["replay_confirmed"] = v.replay && symex::replay_confirms(*v.replay, cex);
    json steps = json::array();
    for (const symex::TraceStep& s : cex.steps)
      steps.push_back({{"function", s.function}, {"line", s.pos.line}, {"symbol", s.symbol},
                       {"value", s.value}, {"input", s.input}});
    c["steps"] = steps;
    json inputs = json::array();
    for (const symex::InputValue& in : cex.inputs)
      inputs.push_back({{"description", in.description}, {"type", in.type.str()},
                        {"value", input_value(in)}, {"line", in.pos.line}});
    c["inputs"] = inputs;
    j["counterexample"] = c;
  }
  return j.dump(2);
}

}  // namespace jimplebmc::verifier
