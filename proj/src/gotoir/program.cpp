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

#include "jimplebmc/gotoir/program.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace jimplebmc::gotoir {

namespace {

constexpr std::array<std::pair<PropertyClass, const char*>, 7> kPropertyNames{{
    {PropertyClass::Overflow, "overflow"},
    {PropertyClass::DivByZero, "div-by-zero"},
    {PropertyClass::Bounds, "bounds"},
    {PropertyClass::NullDeref, "null-deref"},
    {PropertyClass::UserAssert, "user-assert"},
    {PropertyClass::UncaughtException, "uncaught-exception"},
    {PropertyClass::Unwinding, "unwinding"},
}};

GotoInstruction make(InstrKind kind, SourcePos pos) {
  GotoInstruction i;
  i.kind = kind;
  i.tag.pos = pos;
  return i;
}

}  // namespace

const char* property_class_name(PropertyClass c) {
  for (const auto& [k, name] : kPropertyNames)
    if (k == c) return name;
  return "?";
}

std::optional<PropertyClass> property_class_from_name(std::string_view name) {
  for (const auto& [k, n] : kPropertyNames)
    if (name == n) return k;
  return std::nullopt;
}

const char* instr_kind_name(InstrKind kind) {
  switch (kind) {
    case InstrKind::Assign: return "ASSIGN";
    case InstrKind::Decl: return "DECL";
    case InstrKind::Dead: return "DEAD";
    case InstrKind::FunctionCall: return "FUNCTION_CALL";
    case InstrKind::Label: return "LABEL";
    case InstrKind::Goto: return "GOTO";
    case InstrKind::If: return "IF";
    case InstrKind::Skip: return "SKIP";
    case InstrKind::Return: return "RETURN";
    case InstrKind::Throw: return "THROW";
    case InstrKind::Assert: return "ASSERT";
    case InstrKind::Assume: return "ASSUME";
    case InstrKind::EndFunction: return "END_FUNCTION";
  }
  return "?";
}

GotoInstruction GotoInstruction::assign(Expr lhs, Expr rhs, SourcePos pos) {
  auto i = make(InstrKind::Assign, pos);
  i.lhs = std::move(lhs);
  i.expr = std::move(rhs);
  return i;
}

GotoInstruction GotoInstruction::decl(std::string name, const GotoType& type, SourcePos pos) {
  auto i = make(InstrKind::Decl, pos);
  i.name = std::move(name);
  i.type = type;
  return i;
}

GotoInstruction GotoInstruction::dead(std::string name, SourcePos pos) {
  auto i = make(InstrKind::Dead, pos);
  i.name = std::move(name);
  return i;
}

GotoInstruction GotoInstruction::function_call(std::optional<Expr> lhs, std::string function,
                                               std::vector<Expr> args, SourcePos pos) {
  auto i = make(InstrKind::FunctionCall, pos);
  i.lhs = std::move(lhs);
  i.name = std::move(function);
  i.args = std::move(args);
  return i;
}

GotoInstruction GotoInstruction::label(std::string label, SourcePos pos) {
  auto i = make(InstrKind::Label, pos);
  i.name = std::move(label);
  return i;
}

GotoInstruction GotoInstruction::goto_(std::string label, SourcePos pos) {
  auto i = make(InstrKind::Goto, pos);
  i.name = std::move(label);
  return i;
}

GotoInstruction GotoInstruction::if_(Expr condition, std::string label, SourcePos pos) {
  auto i = make(InstrKind::If, pos);
  i.expr = std::move(condition);
  i.name = std::move(label);
  return i;
}

GotoInstruction GotoInstruction::skip(SourcePos pos) { return make(InstrKind::Skip, pos); }

GotoInstruction GotoInstruction::return_(std::optional<Expr> value, SourcePos pos) {
  auto i = make(InstrKind::Return, pos);
  i.expr = std::move(value);
  return i;
}

GotoInstruction GotoInstruction::throw_(Expr value, SourcePos pos) {
  auto i = make(InstrKind::Throw, pos);
  i.expr = std::move(value);
  return i;
}

GotoInstruction GotoInstruction::assert_(Expr claim, PropertyClass property,
                                         std::string comment, SourcePos pos) {
  auto i = make(InstrKind::Assert, pos);
  i.expr = std::move(claim);
  i.property = property;
  i.comment = std::move(comment);
  return i;
}

GotoInstruction GotoInstruction::assume(Expr condition, SourcePos pos) {
  auto i = make(InstrKind::Assume, pos);
  i.expr = std::move(condition);
  return i;
}

GotoInstruction GotoInstruction::end_function() { return make(InstrKind::EndFunction, {}); }

std::string GotoFunction::display_name() const {
  auto sep = name.rfind("::");
  return sep == std::string::npos ? name : name.substr(sep + 2);
}

std::string GotoFunction::class_name() const {
  auto sep = name.rfind("::");
  return sep == std::string::npos ? std::string() : name.substr(0, sep);
}

std::optional<std::size_t> GotoFunction::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < body.size(); ++i)
    if (body[i].kind == InstrKind::Label && body[i].name == label) return i;
  return std::nullopt;
}

const GotoFunction* GotoProgram::find_function(const std::string& name) const {
  auto it = functions.find(name);
  return it == functions.end() ? nullptr : &it->second;
}

const GotoGlobal* GotoProgram::find_global(const std::string& name) const {
  for (const GotoGlobal& g : globals)
    if (g.name == name) return &g;
  return nullptr;
}

const ClassRecord* GotoProgram::find_record(const std::string& name) const {
  auto it = records.find(name);
  return it == records.end() ? nullptr : &it->second;
}

void GotoProgram::add_global(GotoGlobal global) {
  if (!find_global(global.name)) globals.push_back(std::move(global));
}

std::vector<std::size_t> successors(const GotoFunction& function, std::size_t index) {
  const GotoInstruction& instr = function.body.at(index);
  std::vector<std::size_t> out;
  switch (instr.kind) {
    case InstrKind::Goto:
      if (auto t = function.label_index(instr.name)) out.push_back(*t);
      break;
    case InstrKind::If:
      if (auto t = function.label_index(instr.name)) out.push_back(*t);
      if (index + 1 < function.body.size()) out.push_back(index + 1);
      break;
    case InstrKind::Return:
    case InstrKind::Throw:
    case InstrKind::EndFunction:
      break;
    default:
      if (index + 1 < function.body.size()) out.push_back(index + 1);
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string parameter_global_name(const std::string& function, const std::string& at_name) {
  return function + "::" + at_name;
}

}  // namespace jimplebmc::gotoir
