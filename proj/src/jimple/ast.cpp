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

#include "jimplebmc/jimple/ast.hpp"

namespace jimplebmc::jimple {

std::string FieldSignature::str() const {
  return "<" + class_name + ": " + type.str() + " " + name + ">";
}

std::string MethodSignature::str() const {
  std::string text = "<" + class_name + ": " + return_type.str() + " " + name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) text += ",";
    text += params[i].str();
  }
  return text + ")>";
}

const char* binary_op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Rem: return "%";
    case BinaryOp::And: return "&";
    case BinaryOp::Or: return "|";
    case BinaryOp::Xor: return "^";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
    case BinaryOp::Ushr: return ">>>";
    case BinaryOp::Cmp: return "cmp";
    case BinaryOp::Cmpl: return "cmpl";
    case BinaryOp::Cmpg: return "cmpg";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

bool is_relational(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
      return true;
    default:
      return false;
  }
}

const char* invoke_kind_text(InvokeKind kind) {
  switch (kind) {
    case InvokeKind::Virtual: return "virtualinvoke";
    case InvokeKind::Special: return "specialinvoke";
    case InvokeKind::Static: return "staticinvoke";
  }
  return "?";
}

int IdentityStmt::parameter_index() const {
  constexpr std::string_view prefix = "@parameter";
  if (source.rfind(prefix, 0) != 0 || source.size() == prefix.size()) return -1;
  int index = 0;
  for (std::size_t i = prefix.size(); i < source.size(); ++i) {
    if (source[i] < '0' || source[i] > '9') return -1;
    index = index * 10 + (source[i] - '0');
  }
  return index;
}

const JimpleField* JimpleClass::find_field(const std::string& field) const {
  for (const JimpleField& f : fields)
    if (f.name == field) return &f;
  return nullptr;
}

const JimpleMethod* JimpleClass::find_method(const std::string& method,
                                             const std::vector<JimpleType>& params) const {
  for (const JimpleMethod& m : methods)
    if (m.name == method && m.params == params) return &m;
  return nullptr;
}

}  // namespace jimplebmc::jimple
