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

#include "jimplebmc/jimple/printer.hpp"

#include <sstream>

namespace jimplebmc::jimple {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string join_modifiers(const std::vector<std::string>& mods) {
  std::string out;
  for (const auto& m : mods) out += m + " ";
  return out;
}

std::string print_rvalue(const Rvalue& rv) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Operand>) {
          return print_operand(v);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return print_operand(v.lhs) + " " + binary_op_text(v.op) + " " + print_operand(v.rhs);
        } else if constexpr (std::is_same_v<T, NegExpr>) {
          return "neg " + print_operand(v.operand);
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          return "(" + v.type.str() + ") " + print_operand(v.operand);
        } else if constexpr (std::is_same_v<T, NewExpr>) {
          return "new " + v.class_name;
        } else if constexpr (std::is_same_v<T, NewArrayExpr>) {
          return "newarray (" + v.element.str() + ")[" + print_operand(v.size) + "]";
        } else if constexpr (std::is_same_v<T, LengthExpr>) {
          return "lengthof " + print_operand(v.array);
        } else if constexpr (std::is_same_v<T, InstanceFieldRef>) {
          return v.base + "." + v.field.str();
        } else if constexpr (std::is_same_v<T, StaticFieldRef>) {
          return v.field.str();
        } else {
          return v.base + "[" + print_operand(v.index) + "]";
        }
      },
      rv.value);
}

std::string print_place(const Place& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LocalRef>) {
          return v.name;
        } else if constexpr (std::is_same_v<T, InstanceFieldRef>) {
          return v.base + "." + v.field.str();
        } else if constexpr (std::is_same_v<T, StaticFieldRef>) {
          return v.field.str();
        } else {
          return v.base + "[" + print_operand(v.index) + "]";
        }
      },
      p.value);
}

std::string print_invoke(const InvokeExpr& call) {
  std::string text = std::string(invoke_kind_text(call.kind)) + " ";
  if (call.receiver) text += *call.receiver + ".";
  text += call.method.str() + "(";
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (i) text += ", ";
    text += print_operand(call.args[i]);
  }
  return text + ")";
}

}  // namespace

std::string print_operand(const Operand& op) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LocalRef>) {
          return v.name;
        } else if constexpr (std::is_same_v<T, IntConstant>) {
          return std::to_string(v.value) + (v.is_long ? "L" : "");
        } else if constexpr (std::is_same_v<T, FloatConstant>) {
          return v.text;
        } else if constexpr (std::is_same_v<T, NullConstant>) {
          return "null";
        } else {
          return "\"" + escape(v.value) + "\"";
        }
      },
      op.value);
}

std::string print_class(const JimpleClass& cls) {
  std::ostringstream out;
  out << join_modifiers(cls.modifiers) << (cls.is_interface ? "interface " : "class ")
      << cls.name;
  if (cls.superclass) out << " extends " << *cls.superclass;
  if (!cls.interfaces.empty()) {
    out << " implements ";
    for (std::size_t i = 0; i < cls.interfaces.size(); ++i)
      out << (i ? ", " : "") << cls.interfaces[i];
  }
  out << "\n{\n";
  for (const JimpleField& f : cls.fields)
    out << "    " << join_modifiers(f.modifiers) << f.type.str() << " " << f.name << ";\n";

  for (const JimpleMethod& m : cls.methods) {
    out << "\n    " << join_modifiers(m.modifiers) << m.return_type.str() << " " << m.name
        << "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) out << (i ? ", " : "") << m.params[i].str();
    out << ")";
    if (!m.throws.empty()) {
      out << " throws ";
      for (std::size_t i = 0; i < m.throws.size(); ++i) out << (i ? ", " : "") << m.throws[i];
    }
    if (!m.has_body) {
      out << ";\n";
      continue;
    }
    out << "\n    {\n";
    bool in_declarations = true;
    for (const JimpleStmt& s : m.body) {
      if (const auto* d = std::get_if<DeclarationStmt>(&s.node)) {
        out << "        " << d->type.str() << " " << d->name << ";\n";
        continue;
      }
      if (in_declarations) {
        out << "\n";
        in_declarations = false;
      }
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IdentityStmt>) {
              out << "        " << v.local << " := " << v.source << ": " << v.type.str() << ";\n";
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
              out << "        " << print_place(v.lhs) << " = " << print_rvalue(v.rhs) << ";\n";
            } else if constexpr (std::is_same_v<T, LabelStmt>) {
              out << "\n     " << v.label << ":\n";
            } else if constexpr (std::is_same_v<T, GotoStmt>) {
              out << "        goto " << v.target << ";\n";
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              out << "        if " << print_operand(v.condition.lhs) << " "
                  << binary_op_text(v.condition.op) << " " << print_operand(v.condition.rhs)
                  << " goto " << v.target << ";\n";
            } else if constexpr (std::is_same_v<T, InvokeStmt>) {
              out << "        ";
              if (v.lhs) out << *v.lhs << " = ";
              out << print_invoke(v.call) << ";\n";
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
              out << "        return";
              if (v.value) out << " " << print_operand(*v.value);
              out << ";\n";
            } else if constexpr (std::is_same_v<T, ThrowStmt>) {
              out << "        throw " << print_operand(v.value) << ";\n";
            } else if constexpr (std::is_same_v<T, BreakpointStmt>) {
              out << "        breakpoint;\n";
            } else if constexpr (std::is_same_v<T, NopStmt>) {
              out << "        nop;\n";
            }
          },
          s.node);
    }
    out << "    }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace jimplebmc::jimple
