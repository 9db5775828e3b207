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

#include "jimplebmc/gotoir/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace jimplebmc::gotoir {

namespace {

using SymbolTable = std::map<std::string, GotoType>;

class ExprChecker {
 public:
  ExprChecker(const GotoProgram& program, const SymbolTable* symbols)
      : program_(program), symbols_(symbols) {}

  std::vector<std::string> problems;

  void check(const Expr& e) {
    for (const Expr& o : e.operands()) check(o);
    const auto& ops = e.operands();
    switch (e.kind()) {
      case ExprKind::Constant:
      case ExprKind::Nondet:
      case ExprKind::StringLiteral:
        break;
      case ExprKind::Symbol:
        if (symbols_) {
          auto it = symbols_->find(e.name());
          if (it == symbols_->end())
            fail("undeclared symbol '" + e.name() + "'");
          else if (!(it->second == e.type()))
            fail("symbol '" + e.name() + "' used as " + e.type().str() + " but declared " +
                 it->second.str());
        }
        break;
      case ExprKind::Unary:
        if (e.unary_op() == UnaryOp::Not)
          want(ops[0].type().is_bool(), "operand of ! must be boolean");
        else
          want(ops[0].type().is_integer(), "operand of unary - must be an integer");
        break;
      case ExprKind::Binary: check_binary(e); break;
      case ExprKind::IfThenElse:
        want(ops[0].type().is_bool(), "ite condition must be boolean");
        want(assignable(ops[1].type(), ops[2].type()), "ite branches have different types");
        break;
      case ExprKind::Member: {
        want(ops[0].type().is_reference(), "member access through a non-reference");
        const ClassRecord* rec = program_.find_record(e.record());
        if (!rec) {
          fail("member access into unknown record '" + e.record() + "'");
        } else if (const RecordField* f = rec->find(e.name()); !f) {
          fail("record '" + e.record() + "' has no field '" + e.name() + "'");
        } else if (!(f->type == e.type())) {
          fail("field '" + e.name() + "' has type " + f->type.str());
        }
        break;
      }
      case ExprKind::Index:
        want(ops[0].type().is_array(), "index into a non-array");
        want(ops[1].type().is_integer(), "array index must be an integer");
        break;
      case ExprKind::NewObject:
        if (!program_.find_record(e.name()))
          fail("allocation of unknown record '" + e.name() + "'");
        break;
      case ExprKind::NewArray:
        want(ops[0].type().is_integer(), "array size must be an integer");
        break;
      case ExprKind::Length:
        want(ops[0].type().is_array(), "length of a non-array");
        break;
      case ExprKind::Cast: {
        const GotoType& from = ops[0].type();
        const GotoType& to = e.type();
        bool ok = ((from.is_integer() || from.is_bool()) && (to.is_integer() || to.is_bool())) ||
                  (from.is_pointer() && to.is_pointer());
        want(ok, "invalid cast from " + from.str() + " to " + to.str());
        break;
      }
      case ExprKind::Compare:
      case ExprKind::Overflow:
        want(ops[0].type().is_integer() && ops[0].type() == ops[1].type(),
             "comparison/overflow operands must be integers of one type");
        break;
    }
  }

 private:
  void check_binary(const Expr& e) {
    const GotoType& a = e.op(0).type();
    const GotoType& b = e.op(1).type();
    BinaryOp op = e.binary_op();
    const std::string text = binary_op_text(op);
    if (is_logical(op)) {
      want(a.is_bool() && b.is_bool(), "operands of " + text + " must be boolean");
    } else if (op == BinaryOp::Eq || op == BinaryOp::Ne) {
      want(a == b || (a.is_pointer() && b.is_pointer()),
           "operands of " + text + " have different types");
    } else if (is_relational(op)) {
      want(a.is_integer() && a == b, "operands of " + text + " must be integers of one type");
    } else if (op == BinaryOp::Div || op == BinaryOp::Rem) {
      want(a.is_integer() && a == b, "division operands must be integers of one type");
    } else if (op == BinaryOp::BitAnd || op == BinaryOp::BitOr || op == BinaryOp::BitXor) {
      want((a.is_integer() || a.is_bool()) && a == b,
           "operands of " + text + " must have one integer type");
    } else {
      want(a.is_integer() && a == b, "operands of " + text + " must be integers of one type");
    }
  }

  void want(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
  void fail(const std::string& msg) { problems.push_back(msg); }

  const GotoProgram& program_;
  const SymbolTable* symbols_;
};

bool is_place(const Expr& e) {
  return e.kind() == ExprKind::Symbol || e.kind() == ExprKind::Member ||
         e.kind() == ExprKind::Index;
}

class FunctionValidator {
 public:
  FunctionValidator(const GotoProgram& program, const GotoFunction& fn,
                    std::vector<Diagnostic>& out)
      : program_(program), fn_(fn), out_(out) {}

  void run() {
    const auto& body = fn_.body;
    if (body.empty() || body.back().kind != InstrKind::EndFunction)
      report(body.empty() ? 0 : body.size() - 1, "function must end with END_FUNCTION");
    for (std::size_t i = 0; i + 1 < body.size(); ++i)
      if (body[i].kind == InstrKind::EndFunction) report(i, "END_FUNCTION before the end");

    for (const GotoGlobal& g : program_.globals) symbols_[g.name] = g.type;
    std::set<std::string> labels;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const GotoInstruction& in = body[i];
      if (in.kind == InstrKind::Decl) {
        if (in.type.is_void()) report(i, "DECL of '" + in.name + "' has type void");
        symbols_[in.name] = in.type;
      }
      if (in.kind == InstrKind::Label && !labels.insert(in.name).second)
        report(i, "duplicate label '" + in.name + "'");
    }
    for (const std::string& p : fn_.parameters)
      if (!program_.find_global(p)) report(0, "parameter global '" + p + "' is not declared");

    for (std::size_t i = 0; i < body.size(); ++i) check_instruction(i, body[i]);
    check_decl_dead();
  }

 private:
  void report(std::size_t index, std::string msg) {
    out_.push_back({fn_.name, index, std::move(msg)});
  }

  void check(std::size_t index, const Expr& e) {
    ExprChecker c(program_, &symbols_);
    c.check(e);
    for (auto& p : c.problems) report(index, p);
  }

  void check_condition(std::size_t i, const std::optional<Expr>& e, const char* what) {
    if (!e) {
      report(i, std::string(what) + " without a condition");
      return;
    }
    check(i, *e);
    if (!e->type().is_bool()) report(i, std::string(what) + " condition must be boolean");
  }

  void check_target(std::size_t i, const std::string& label) {
    if (!fn_.label_index(label)) report(i, "jump to missing label '" + label + "'");
  }

  void check_instruction(std::size_t i, const GotoInstruction& in) {
    switch (in.kind) {
      case InstrKind::Assign:
        if (!in.lhs || !in.expr) {
          report(i, "ASSIGN needs a place and a value");
          return;
        }
        if (!is_place(*in.lhs)) report(i, "ASSIGN target is not a place");
        check(i, *in.lhs);
        check(i, *in.expr);
        if (!assignable(in.lhs->type(), in.expr->type()))
          report(i, "ASSIGN of " + in.expr->type().str() + " to " + in.lhs->type().str());
        break;
      case InstrKind::FunctionCall: {
        const GotoFunction* callee = program_.find_function(in.name);
        if (!callee) {
          report(i, "call to unknown function '" + in.name + "'");
        } else if (callee->parameters.size() != in.args.size()) {
          report(i, "call to '" + in.name + "' passes " + std::to_string(in.args.size()) +
                        " arguments, expected " + std::to_string(callee->parameters.size()));
        }
        for (const Expr& a : in.args) check(i, a);
        if (in.lhs) {
          if (!is_place(*in.lhs)) report(i, "call result target is not a place");
          check(i, *in.lhs);
          if (callee && !assignable(in.lhs->type(), callee->return_type))
            report(i, "call result of type " + callee->return_type.str() + " stored to " +
                          in.lhs->type().str());
        }
        break;
      }
      case InstrKind::Goto: check_target(i, in.name); break;
      case InstrKind::If:
        check_condition(i, in.expr, "IF");
        check_target(i, in.name);
        break;
      case InstrKind::Assert: check_condition(i, in.expr, "ASSERT"); break;
      case InstrKind::Assume: check_condition(i, in.expr, "ASSUME"); break;
      case InstrKind::Return:
        if (in.expr) {
          check(i, *in.expr);
          if (fn_.return_type.is_void())
            report(i, "RETURN with a value in a void function");
          else if (!assignable(fn_.return_type, in.expr->type()))
            report(i, "RETURN of " + in.expr->type().str() + " from function returning " +
                          fn_.return_type.str());
        } else if (!fn_.return_type.is_void()) {
          report(i, "RETURN without a value in a non-void function");
        }
        break;
      case InstrKind::Throw:
        if (!in.expr)
          report(i, "THROW without a value");
        else
          check(i, *in.expr);
        break;
      case InstrKind::Decl:
      case InstrKind::Dead:
      case InstrKind::Label:
      case InstrKind::Skip:
      case InstrKind::EndFunction:
        break;
    }
  }

  // Forward must-analysis: the set of names declared on every path.
  void check_decl_dead() {
    const auto& body = fn_.body;
    const std::size_t n = body.size();
    if (n == 0) return;
    std::vector<std::optional<std::set<std::string>>> in(n);
    in[0] = std::set<std::string>{};
    std::vector<std::size_t> work{0};
    while (!work.empty()) {
      std::size_t i = work.back();
      work.pop_back();
      std::set<std::string> out = *in[i];
      if (body[i].kind == InstrKind::Decl) out.insert(body[i].name);
      if (body[i].kind == InstrKind::Dead) out.erase(body[i].name);
      for (std::size_t s : successors(fn_, i)) {
        if (!in[s]) {
          in[s] = out;
          work.push_back(s);
          continue;
        }
        std::set<std::string> meet;
        for (const auto& name : *in[s])
          if (out.count(name)) meet.insert(name);
        if (meet != *in[s]) {
          in[s] = std::move(meet);
          work.push_back(s);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (body[i].kind == InstrKind::Dead && in[i] && !in[i]->count(body[i].name))
        report(i, "DEAD '" + body[i].name + "' is not preceded by a DECL on every path");
  }

  const GotoProgram& program_;
  const GotoFunction& fn_;
  std::vector<Diagnostic>& out_;
  SymbolTable symbols_;
};

}  // namespace

std::string Diagnostic::str() const {
  if (function.empty()) return message;
  return function + "[" + std::to_string(index) + "]: " + message;
}

bool assignable(const GotoType& to, const GotoType& from) {
  return to == from || (to.is_pointer() && from.is_pointer());
}

std::vector<std::string> check_expr(const Expr& e, const GotoProgram& program) {
  ExprChecker c(program, nullptr);
  c.check(e);
  return c.problems;
}

std::vector<Diagnostic> validate(const GotoProgram& program) {
  std::vector<Diagnostic> out;
  for (const auto& [key, fn] : program.functions) {
    if (key != fn.name) out.push_back({key, 0, "function stored under key '" + key + "'"});
    FunctionValidator(program, fn, out).run();
  }
  std::set<std::string> names;
  for (const GotoGlobal& g : program.globals) {
    if (!names.insert(g.name).second) out.push_back({"", 0, "duplicate global '" + g.name + "'"});
    if (g.initial && !assignable(g.type, g.initial->type()))
      out.push_back({"", 0, "initial value of global '" + g.name + "' has the wrong type"});
  }
  for (const auto& [name, rec] : program.records) {
    if (!rec.superclass.empty()) {
      const ClassRecord* super = program.find_record(rec.superclass);
      bool prefix = super && super->fields.size() <= rec.fields.size() &&
                    std::equal(super->fields.begin(), super->fields.end(), rec.fields.begin());
      if (super && !prefix)
        out.push_back({"", 0, "record '" + name + "' does not extend the layout of '" +
                                  rec.superclass + "'"});
    }
  }
  return out;
}

}  // namespace jimplebmc::gotoir
