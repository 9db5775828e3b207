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

#include "jimplebmc/gotoir/validate.hpp"
#include "jimplebmc/jimple/class_table.hpp"
#include "jimplebmc/jimple/parser.hpp"
#include "jimplebmc/lowering/lowering.hpp"
#include "jimplebmc/opmodels/catalog.hpp"
#include "jimplebmc/verifier/verifier.hpp"

namespace jimplebmc::verifier {

namespace fs = std::filesystem;

gotoir::GotoProgram load_program(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const fs::path& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".jimple") found.push_back(e.path());
      std::sort(found.begin(), found.end());
      if (found.empty()) throw ConfigError("no .jimple files under " + in.string());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(in)) {
      files.push_back(in);
    } else {
      throw ConfigError("input file not found: " + in.string());
    }
  }
  if (files.empty()) throw ConfigError("no input files");
  std::vector<jimple::JimpleClass> classes;
  for (const fs::path& f : files) classes.push_back(jimple::parse_class_file(f));
  jimple::ClassTable table = jimple::ClassTable::build(std::move(classes), opmodels::is_modeled_external);
  gotoir::GotoProgram program = lowering::lower_program(table);
  auto diags = gotoir::validate(program);
  if (!diags.empty()) throw SemanticError("invalid GOTO program: " + diags.front().str());
  return program;
}

namespace {

std::string escape(const std::string& name) {
  std::string out;
  for (char c : name) out += c == '_' ? std::string("__") : std::string(1, c);
  return out;
}

bool names_method(const std::string& display, const std::string& method) {
  std::string e = escape(method) + "_";
  return display.size() > e.size() && display.compare(0, e.size(), e) == 0 && display[e.size()] != '_';
}

bool is_model(const gotoir::GotoProgram& p, const gotoir::GotoFunction& fn) {
  (void)p;
  return fn.class_name().rfind("java.", 0) == 0 || fn.class_name().rfind("kotlin.", 0) == 0 ||
         fn.class_name().rfind("org.sosy_lab.", 0) == 0;
}

}  // namespace

std::string resolve_entry(const gotoir::GotoProgram& program,
                          const std::optional<std::string>& selector) {
  std::string sel = selector.value_or("main");
  if (program.find_function(sel)) return sel;
  std::string cls, method = sel;
  if (auto p = sel.rfind("::"); p != std::string::npos) {
    cls = sel.substr(0, p);
    method = sel.substr(p + 2);
  } else if (auto d = sel.rfind('.'); d != std::string::npos) {
    // Java style `pkg.Cls.method`.
    cls = sel.substr(0, d);
    method = sel.substr(d + 1);
  }
  std::vector<std::string> exact, named;
  for (const auto& [key, fn] : program.functions) {
    if (is_model(program, fn)) continue;
    if (!cls.empty() && fn.class_name() != cls) continue;
    if (fn.display_name() == method) exact.push_back(key);
    else if (names_method(fn.display_name(), method)) named.push_back(key);
  }
  std::vector<std::string>& hits = exact.empty() ? named : exact;
  if (hits.size() > 1 && method == "main") {
    // Prefer the conventional main(String[]).
    std::vector<std::string> std_main;
    for (const std::string& h : hits)
      if (h.ends_with("::main_void_StringArr")) std_main.push_back(h);
    if (std_main.size() == 1) return std_main.front();
  }
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) throw ConfigError("entry function '" + sel + "' not found");
  std::string msg = "entry function '" + sel + "' is ambiguous:";
  for (const std::string& h : hits) msg += " " + h;
  throw ConfigError(msg);
}

Verdict verify(const RunConfig& config) {
  if (config.unwind < 1) throw ConfigError("--unwind must be at least 1");
  gotoir::GotoProgram program = load_program(config.inputs);
  std::string entry = resolve_entry(program, config.entry);
  VerifyOptions options;
  options.checks = config.checks;
  options.unwinding_assertions = config.unwinding_assertions;
  options.solver = solver::find_solver(config.solver_path, config.timeout);
  options.smt_formula = config.smt_formula;
  switch (config.strategy) {
    case Strategy::Bmc: return run_bmc(program, entry, config.unwind, options);
    case Strategy::Incremental: return run_incremental(program, entry, config.unwind, options);
    case Strategy::KInduction: return run_kinduction(program, entry, config.unwind, options);
  }
  throw ConfigError("unknown strategy");
}

}  // namespace jimplebmc::verifier
