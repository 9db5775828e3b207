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

// Dump format, one item per line:
//
//   RECORD B : A              class records, fields in layout order
//     FIELD a: int32 from A
//   END_RECORD
//   GLOBAL `C::s`: int32 = 0
//   UNKNOWN_CALL "<C: int f()>"
//   INITIALIZER `C::<clinit>_void`
//
//   f_int_int (C::f_int_int):
//     RETURNS int32
//     PARAMETERS @parameter0
//           DECL i0: int32
//           ATOMIC_BEGIN
//           ASSIGN i0 = @parameter0
//           ATOMIC_END
//           ...
//           END_FUNCTION
//
// Inside a function, `@x` abbreviates that function's parameter global
// `<function>::@x`. Names outside [A-Za-z0-9_$.] are backquoted.

#include "jimplebmc/gotoir/printer.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace jimplebmc::gotoir {

namespace {

const std::set<std::string, std::less<>> kReserved{
    "true", "false", "null", "nondet", "new", "length", "cmp", "cmpl", "cmpg",
    "overflow", "ite", "bool", "void"};

bool is_width_keyword(std::string_view s) {
  std::size_t start = s.starts_with("uint") ? 4 : s.starts_with("int") ? 3 : 0;
  if (start == 0 || s.size() == start) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool plain_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool plain_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '.';
}

bool is_plain(std::string_view s) {
  if (s.empty() || !plain_start(s[0])) return false;
  for (char c : s)
    if (!plain_char(c)) return false;
  return !kReserved.count(s) && !is_width_keyword(s);
}

std::string quote(std::string_view s, char q) {
  std::string out(1, q);
  for (char c : s) {
    if (c == q || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += q;
  return out;
}

std::string ident(std::string_view s) { return is_plain(s) ? std::string(s) : quote(s, '`'); }

class Printer {
 public:
  explicit Printer(std::string function) : function_(std::move(function)) {}

  std::string symbol(const std::string& name) const {
    if (!function_.empty() && name.size() > function_.size() + 3 &&
        name.compare(0, function_.size(), function_) == 0 &&
        name.compare(function_.size(), 3, "::@") == 0) {
      std::string rest = name.substr(function_.size() + 3);
      if (is_plain(rest)) return "@" + rest;
    }
    return ident(name);
  }

  std::string type(const GotoType& t) const {
    if (t.is_reference()) return ident(t.record_name()) + "*";
    if (t.is_array()) return type(t.element()) + "[]";
    return t.str();
  }

  std::string expr(const Expr& e, bool nested = false) const {
    switch (e.kind()) {
      case ExprKind::Constant: return constant(e);
      case ExprKind::Symbol: return symbol(e.name());
      case ExprKind::Unary: {
        const Expr& o = e.op(0);
        std::string inner = expr(o, true);
        if (e.unary_op() == UnaryOp::Neg && o.is_constant()) inner = "(" + inner + ")";
        return unary_op_text(e.unary_op()) + inner;
      }
      case ExprKind::Binary: {
        std::string text = expr(e.op(0), true) + " " + binary_op_text(e.binary_op()) + " " +
                           expr(e.op(1), true);
        return nested ? "(" + text + ")" : text;
      }
      case ExprKind::IfThenElse:
        return "ite(" + expr(e.op(0)) + ", " + expr(e.op(1)) + ", " + expr(e.op(2)) + ")";
      case ExprKind::Member: {
        std::string base = expr(e.op(0), true);
        const GotoType& bt = e.op(0).type();
        if (bt.is_reference() && bt.record_name() == e.record())
          return base + "->" + ident(e.name());
        return base + "->" + ident(e.record()) + "::" + ident(e.name());
      }
      case ExprKind::Index: return expr(e.op(0), true) + "[" + expr(e.op(1)) + "]";
      case ExprKind::NewObject: return "new " + ident(e.name());
      case ExprKind::NewArray:
        return "new " + type(e.type().element()) + "[" + expr(e.op(0)) + "]";
      case ExprKind::Length: return "length(" + expr(e.op(0)) + ")";
      case ExprKind::Cast: return "(" + type(e.type()) + ")" + expr(e.op(0), true);
      case ExprKind::Nondet: return "nondet(" + type(e.type()) + ")";
      case ExprKind::Compare:
        return std::string(compare_kind_text(e.compare_kind())) + "(" + expr(e.op(0)) + ", " +
               expr(e.op(1)) + ")";
      case ExprKind::Overflow:
        return std::string("overflow(\"") + overflow_op_text(e.overflow_op()) + "\", " +
               expr(e.op(0)) + ", " + expr(e.op(1)) + ")";
      case ExprKind::StringLiteral: return quote(e.name(), '"');
    }
    return "?";
  }

  std::string instruction(const GotoInstruction& in) const {
    std::string s = instr_kind_name(in.kind);
    switch (in.kind) {
      case InstrKind::Assign: return s + " " + expr(*in.lhs) + " = " + expr(*in.expr);
      case InstrKind::Decl: return s + " " + symbol(in.name) + ": " + type(in.type);
      case InstrKind::Dead: return s + " " + symbol(in.name);
      case InstrKind::FunctionCall: {
        s += " ";
        if (in.lhs) s += expr(*in.lhs) + " = ";
        s += ident(in.name) + "(";
        for (std::size_t i = 0; i < in.args.size(); ++i) {
          if (i) s += ", ";
          s += expr(in.args[i]);
        }
        return s + ")";
      }
      case InstrKind::Label:
      case InstrKind::Goto: return s + " " + ident(in.name);
      case InstrKind::If: return "IF " + expr(*in.expr) + " GOTO " + ident(in.name);
      case InstrKind::Return: return in.expr ? "RETURN: " + expr(*in.expr) : s;
      case InstrKind::Throw: return s + " " + expr(*in.expr);
      case InstrKind::Assert: {
        s += " " + expr(*in.expr) + "  // " + property_class_name(in.property);
        if (!in.comment.empty()) s += ": " + in.comment;
        return s;
      }
      case InstrKind::Assume: return s + " " + expr(*in.expr);
      case InstrKind::Skip:
      case InstrKind::EndFunction: return s;
    }
    return s;
  }

 private:
  std::string constant(const Expr& e) const {
    const GotoType& t = e.type();
    if (t.is_bool()) return e.value() ? "true" : "false";
    if (t.is_pointer()) {
      if (t == GotoType::reference("java.lang.Object")) return "null";
      return "null#" + type(t);
    }
    std::string v = std::to_string(e.value());
    if (t == GotoType::int32()) return v;
    return v + "#" + type(t);
  }

  std::string function_;
};

void print_function(std::ostringstream& os, const GotoFunction& fn) {
  Printer p(fn.name);
  os << fn.display_name() << " (" << fn.name << "):\n";
  os << "  RETURNS " << p.type(fn.return_type) << "\n";
  os << "  PARAMETERS";
  for (std::size_t i = 0; i < fn.parameters.size(); ++i)
    os << (i ? ", " : " ") << p.symbol(fn.parameters[i]);
  os << "\n";
  bool in_atomic = false;
  for (const GotoInstruction& in : fn.body) {
    if (in.atomic != in_atomic) {
      os << "        " << (in.atomic ? "ATOMIC_BEGIN" : "ATOMIC_END") << "\n";
      in_atomic = in.atomic;
    }
    os << "        " << p.instruction(in) << "\n";
  }
  if (in_atomic) os << "        ATOMIC_END\n";
}

// ---------------------------------------------------------------------------
// Reader

enum class Tok { Ident, Quoted, At, Number, String, Punct, Comment, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t number = 0;
};

std::vector<Token> tokenize_line(std::string_view line, unsigned lineno) {
  static constexpr std::string_view kPuncts[] = {
      ">>>", "->", "::", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "(", ")",
      "[",   "]",  ",",  ":",  "=",  "*",  "+",  "-",  "/",  "%",  "<",  ">",  "!",
      "&",   "|",  "^",  "#"};
  std::vector<Token> out;
  std::size_t i = 0;
  auto error = [&](const std::string& msg) {
    throw ParseError(SourcePos{lineno, static_cast<unsigned>(i + 1)}, msg);
  };
  auto read_quoted = [&](char q) {
    std::string text;
    ++i;
    while (i < line.size() && line[i] != q) {
      if (line[i] == '\\' && i + 1 < line.size()) {
        ++i;
        text += line[i] == 'n' ? '\n' : line[i];
      } else {
        text += line[i];
      }
      ++i;
    }
    if (i >= line.size()) error("unterminated quote");
    ++i;
    return text;
  };
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    if (line.substr(i, 2) == "//") {
      t.kind = Tok::Comment;
      t.text = std::string(line.substr(i + 2));
      i = line.size();
    } else if (plain_start(c)) {
      std::size_t s = i;
      while (i < line.size() && plain_char(line[i])) ++i;
      t.kind = Tok::Ident;
      t.text = std::string(line.substr(s, i - s));
    } else if (c == '`') {
      t.kind = Tok::Quoted;
      t.text = read_quoted('`');
    } else if (c == '"') {
      t.kind = Tok::String;
      t.text = read_quoted('"');
    } else if (c == '@') {
      std::size_t s = ++i;
      while (i < line.size() && plain_char(line[i])) ++i;
      t.kind = Tok::At;
      t.text = "@" + std::string(line.substr(s, i - s));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t s = i;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      t.kind = Tok::Number;
      t.text = std::string(line.substr(s, i - s));
      std::uint64_t v = 0;
      auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (r.ec != std::errc()) error("bad number");
      t.number = static_cast<std::int64_t>(v);
    } else {
      bool found = false;
      for (std::string_view p : kPuncts) {
        if (line.substr(i, p.size()) == p) {
          t.kind = Tok::Punct;
          t.text = std::string(p);
          i += p.size();
          found = true;
          break;
        }
      }
      if (!found) error(std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{});
  return out;
}

class LineReader {
 public:
  LineReader(std::vector<Token> toks, unsigned lineno, const GotoProgram& program,
             const std::map<std::string, GotoType>& symbols, std::string function)
      : toks_(std::move(toks)),
        lineno_(lineno),
        program_(program),
        symbols_(symbols),
        function_(std::move(function)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }
  Token next() {
    Token t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    std::string near = at_end() ? "end of line" : "'" + peek().text + "'";
    throw ParseError(SourcePos{lineno_, static_cast<unsigned>(pos_ + 1)},
                     msg + " near " + near);
  }

  std::string name() {
    const Token& t = peek();
    if (t.kind == Tok::Ident || t.kind == Tok::Quoted) return next().text;
    if (t.kind == Tok::At) {
      if (function_.empty()) fail("'@' name outside a function");
      return parameter_global_name(function_, next().text);
    }
    fail("expected a name");
  }

  bool at_type() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (is_width_keyword(t.text) || t.text == "bool" || t.text == "void"))
      return true;
    return (t.kind == Tok::Ident || t.kind == Tok::Quoted) && is_punct("*", 1) &&
           (is_punct(")", 2) || is_punct("[", 2));
  }

  GotoType type() {
    GotoType t;
    const Token& tok = peek();
    if (tok.kind == Tok::Ident && tok.text == "bool") {
      next();
      t = GotoType::boolean();
    } else if (tok.kind == Tok::Ident && tok.text == "void") {
      next();
      t = GotoType::void_type();
    } else if (tok.kind == Tok::Ident && is_width_keyword(tok.text)) {
      bool u = tok.text[0] == 'u';
      unsigned w = static_cast<unsigned>(std::stoul(tok.text.substr(u ? 4 : 3)));
      if (w == 0 || w > 64) fail("bad integer width");
      next();
      t = u ? GotoType::unsigned_bv(w) : GotoType::signed_bv(w);
    } else if (tok.kind == Tok::Ident || tok.kind == Tok::Quoted) {
      std::string rec = next().text;
      expect("*");
      t = GotoType::reference(rec);
    } else {
      fail("expected a type");
    }
    while (is_punct("[") && is_punct("]", 1)) {
      next();
      next();
      t = GotoType::array(t);
    }
    return t;
  }

  Expr expr() {
    Expr lhs = primary();
    if (peek().kind == Tok::Punct) {
      if (auto op = binary_op(peek().text)) {
        next();
        Expr rhs = primary();
        return Expr::binary(*op, std::move(lhs), std::move(rhs));
      }
    }
    return lhs;
  }

  Expr primary() {
    Expr e = atom();
    for (;;) {
      if (is_punct("->")) {
        next();
        std::string first = name();
        std::string record, field;
        if (is_punct("::")) {
          next();
          record = first;
          field = name();
        } else {
          if (!e.type().is_reference()) fail("member access through a non-reference");
          record = e.type().record_name();
          field = first;
        }
        const ClassRecord* rec = program_.find_record(record);
        const RecordField* f = rec ? rec->find(field) : nullptr;
        if (!f) fail("unknown field " + record + "::" + field);
        e = Expr::member(std::move(e), record, field, f->type);
      } else if (is_punct("[")) {
        next();
        Expr idx = expr();
        expect("]");
        e = Expr::index(std::move(e), std::move(idx));
      } else {
        return e;
      }
    }
  }

 private:
  static std::optional<BinaryOp> binary_op(const std::string& s) {
    static const std::pair<const char*, BinaryOp> kOps[] = {
        {"+", BinaryOp::Add},     {"-", BinaryOp::Sub},    {"*", BinaryOp::Mul},
        {"/", BinaryOp::Div},     {"%", BinaryOp::Rem},    {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le},     {">", BinaryOp::Gt},     {">=", BinaryOp::Ge},
        {"==", BinaryOp::Eq},     {"!=", BinaryOp::Ne},    {"&&", BinaryOp::And},
        {"||", BinaryOp::Or},     {"<<", BinaryOp::Shl},   {">>", BinaryOp::Shr},
        {">>>", BinaryOp::Ushr},  {"&", BinaryOp::BitAnd}, {"|", BinaryOp::BitOr},
        {"^", BinaryOp::BitXor}};
    for (const auto& [text, op] : kOps)
      if (s == text) return op;
    return std::nullopt;
  }

  Expr call_args_compare(CompareKind kind) {
    expect("(");
    Expr a = expr();
    expect(",");
    Expr b = expr();
    expect(")");
    return Expr::compare(kind, std::move(a), std::move(b));
  }

  Expr number_literal(bool negative) {
    Token t = next();
    std::int64_t v = negative ? static_cast<std::int64_t>(0 - static_cast<std::uint64_t>(t.number))
                              : t.number;
    GotoType ty = GotoType::int32();
    if (is_punct("#")) {
      next();
      ty = type();
    }
    return Expr::constant(v, ty);
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) return number_literal(false);
    if (is_punct("-") && peek(1).kind == Tok::Number) {
      next();
      return number_literal(true);
    }
    if (is_punct("-")) {
      next();
      return Expr::unary(UnaryOp::Neg, primary());
    }
    if (is_punct("!")) {
      next();
      return Expr::unary(UnaryOp::Not, primary());
    }
    if (is_punct("(")) {
      next();
      if (at_type()) {
        GotoType ty = type();
        expect(")");
        return Expr::cast(primary(), ty);
      }
      Expr e = expr();
      expect(")");
      return e;
    }
    if (t.kind == Tok::String) return Expr::string_literal(next().text);
    if (t.kind == Tok::Ident) {
      const std::string& w = t.text;
      if (w == "true" || w == "false") {
        bool v = w == "true";
        next();
        return Expr::boolean(v);
      }
      if (w == "null") {
        next();
        GotoType ty = GotoType::reference("java.lang.Object");
        if (is_punct("#")) {
          next();
          ty = type();
        }
        return Expr::null(ty);
      }
      if (w == "nondet") {
        next();
        expect("(");
        GotoType ty = type();
        expect(")");
        return Expr::nondet(ty);
      }
      if (w == "new") {
        next();
        if (!at_type()) return Expr::new_object(name());
        GotoType elem = type();
        expect("[");
        Expr size = expr();
        expect("]");
        return Expr::new_array(elem, std::move(size));
      }
      if (w == "length") {
        next();
        expect("(");
        Expr a = expr();
        expect(")");
        return Expr::length(std::move(a));
      }
      if (w == "ite") {
        next();
        expect("(");
        Expr c = expr();
        expect(",");
        Expr a = expr();
        expect(",");
        Expr b = expr();
        expect(")");
        return Expr::if_then_else(std::move(c), std::move(a), std::move(b));
      }
      if (w == "cmp" || w == "cmpl" || w == "cmpg") {
        CompareKind k = w == "cmp" ? CompareKind::Cmp
                        : w == "cmpl" ? CompareKind::Cmpl
                                      : CompareKind::Cmpg;
        next();
        return call_args_compare(k);
      }
      if (w == "overflow") {
        next();
        expect("(");
        if (peek().kind != Tok::String) fail("expected operator string");
        std::string op = next().text;
        OverflowOp oop = op == "+" ? OverflowOp::Add
                         : op == "-" ? OverflowOp::Sub
                         : op == "*" ? OverflowOp::Mul
                                     : (fail("bad overflow operator"), OverflowOp::Add);
        expect(",");
        Expr a = expr();
        expect(",");
        Expr b = expr();
        expect(")");
        return Expr::overflow(oop, std::move(a), std::move(b));
      }
    }
    std::string n = name();
    auto it = symbols_.find(n);
    if (it == symbols_.end()) fail("undeclared symbol '" + n + "'");
    return Expr::symbol(n, it->second);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  unsigned lineno_;
  const GotoProgram& program_;
  const std::map<std::string, GotoType>& symbols_;
  std::string function_;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

class ProgramReader {
 public:
  explicit ProgramReader(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      lines_.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  GotoProgram run() {
    // Records and globals precede functions; function bodies are read in a
    // second pass so that calls can look up callee signatures.
    std::vector<std::size_t> function_starts;
    for (index_ = 0; index_ < lines_.size(); ++index_) {
      std::string line = trim(lines_[index_]);
      if (line.empty()) continue;
      if (line.starts_with("RECORD ")) {
        read_record();
      } else if (line.starts_with("GLOBAL ")) {
        read_global();
      } else if (line.starts_with("UNKNOWN_CALL ")) {
        auto toks = tokenize_line(line.substr(13), lineno());
        if (toks[0].kind != Tok::String) throw ParseError(pos(), "expected string");
        program_.unknown_calls.push_back(toks[0].text);
      } else if (line.starts_with("INITIALIZER ")) {
        program_.initializers.push_back(reader(line.substr(12), globals_).name());
      } else if (line.ends_with("):")) {
        function_starts.push_back(index_);
        read_function_header();
      } else if (function_starts.empty()) {
        throw ParseError(pos(), "unexpected line: " + line);
      }
    }
    for (std::size_t s : function_starts) read_function_body(s);
    return std::move(program_);
  }

 private:
  unsigned lineno() const { return static_cast<unsigned>(index_ + 1); }
  SourcePos pos() const { return {lineno(), 1}; }

  LineReader reader(std::string_view text, const std::map<std::string, GotoType>& syms,
                    const std::string& fn = {}) {
    return LineReader(tokenize_line(text, lineno()), lineno(), program_, syms, fn);
  }

  void read_record() {
    std::string head = trim(lines_[index_]).substr(7);
    auto r = reader(head, globals_);
    ClassRecord rec;
    rec.name = r.name();
    if (r.is_punct(":")) {
      r.next();
      rec.superclass = r.name();
    }
    for (++index_; index_ < lines_.size(); ++index_) {
      std::string line = trim(lines_[index_]);
      if (line == "END_RECORD") {
        program_.records[rec.name] = std::move(rec);
        return;
      }
      if (!line.starts_with("FIELD ")) throw ParseError(pos(), "expected FIELD or END_RECORD");
      auto f = reader(line.substr(6), globals_);
      RecordField field;
      field.name = f.name();
      f.expect(":");
      field.type = f.type();
      if (!f.is_word("from")) f.fail("expected 'from'");
      f.next();
      field.declaring_class = f.name();
      rec.fields.push_back(std::move(field));
    }
    throw ParseError(pos(), "missing END_RECORD");
  }

  void read_global() {
    auto r = reader(trim(lines_[index_]).substr(7), globals_);
    GotoGlobal g;
    g.name = r.name();
    r.expect(":");
    g.type = r.type();
    if (r.is_punct("=")) {
      r.next();
      g.initial = r.expr();
    }
    if (!r.at_end()) r.fail("trailing text");
    globals_[g.name] = g.type;
    program_.globals.push_back(std::move(g));
  }

  void read_function_header() {
    std::string line = trim(lines_[index_]);
    auto open = line.find(" (");
    if (open == std::string::npos) throw ParseError(pos(), "malformed function header");
    GotoFunction fn;
    fn.name = line.substr(open + 2, line.size() - open - 4);
    ++index_;
    std::string ret = trim(lines_.at(index_));
    if (!ret.starts_with("RETURNS ")) throw ParseError(pos(), "expected RETURNS");
    fn.return_type = reader(ret.substr(8), globals_, fn.name).type();
    ++index_;
    std::string params = trim(lines_.at(index_));
    if (!params.starts_with("PARAMETERS")) throw ParseError(pos(), "expected PARAMETERS");
    auto r = reader(params.substr(10), globals_, fn.name);
    while (!r.at_end()) {
      fn.parameters.push_back(r.name());
      if (r.is_punct(",")) r.next();
    }
    program_.functions[fn.name] = std::move(fn);
  }

  void read_function_body(std::size_t header) {
    index_ = header;
    std::string line = trim(lines_[index_]);
    auto open = line.find(" (");
    std::string name = line.substr(open + 2, line.size() - open - 4);
    GotoFunction& fn = program_.functions[name];
    index_ += 3;
    // Locals are all declared up front in lowered code, but collect them in
    // a pre-scan so that the reader does not depend on that.
    std::map<std::string, GotoType> syms = globals_;
    for (std::size_t j = index_; j < lines_.size(); ++j) {
      std::string l = trim(lines_[j]);
      if (l == "END_FUNCTION") break;
      if (l.starts_with("DECL ")) {
        std::size_t saved = index_;
        index_ = j;
        auto r = reader(l.substr(5), syms, name);
        std::string local = r.name();
        r.expect(":");
        syms[local] = r.type();
        index_ = saved;
      }
    }
    bool atomic = false;
    for (; index_ < lines_.size(); ++index_) {
      std::string l = trim(lines_[index_]);
      if (l.empty()) continue;
      if (l == "ATOMIC_BEGIN") {
        atomic = true;
        continue;
      }
      if (l == "ATOMIC_END") {
        atomic = false;
        continue;
      }
      GotoInstruction in = read_instruction(l, syms, name);
      in.atomic = atomic;
      bool end = in.kind == InstrKind::EndFunction;
      fn.body.push_back(std::move(in));
      if (end) return;
    }
    throw ParseError(pos(), "missing END_FUNCTION in " + name);
  }

  GotoInstruction read_instruction(const std::string& line,
                                   const std::map<std::string, GotoType>& syms,
                                   const std::string& fn) {
    auto space = line.find(' ');
    std::string kw = line.substr(0, space);
    std::string rest = space == std::string::npos ? "" : line.substr(space + 1);
    if (kw == "RETURN:") {
      kw = "RETURN";
    }
    auto r = reader(rest, syms, fn);
    GotoInstruction in;
    auto done = [&] {
      if (!r.at_end()) r.fail("trailing text");
    };
    if (kw == "ASSIGN") {
      Expr lhs = r.primary();
      r.expect("=");
      in = GotoInstruction::assign(std::move(lhs), r.expr());
    } else if (kw == "DECL") {
      std::string n = r.name();
      r.expect(":");
      in = GotoInstruction::decl(n, r.type());
    } else if (kw == "DEAD") {
      in = GotoInstruction::dead(r.name());
    } else if (kw == "FUNCTION_CALL") {
      std::optional<Expr> lhs;
      std::string callee;
      // Either `place = f(args)` or `f(args)`; a call target is never followed by '='.
      if (r.is_punct("(", 1)) {
        callee = r.name();
      } else {
        lhs = r.primary();
        r.expect("=");
        callee = r.name();
      }
      r.expect("(");
      std::vector<Expr> args;
      while (!r.is_punct(")")) {
        args.push_back(r.expr());
        if (r.is_punct(",")) r.next();
        else if (!r.is_punct(")")) r.fail("expected ',' or ')'");
      }
      r.next();
      in = GotoInstruction::function_call(std::move(lhs), callee, std::move(args));
    } else if (kw == "LABEL") {
      in = GotoInstruction::label(r.name());
    } else if (kw == "GOTO") {
      in = GotoInstruction::goto_(r.name());
    } else if (kw == "IF") {
      Expr c = r.expr();
      if (!r.is_word("GOTO")) r.fail("expected GOTO");
      r.next();
      in = GotoInstruction::if_(std::move(c), r.name());
    } else if (kw == "SKIP") {
      in = GotoInstruction::skip();
    } else if (kw == "RETURN") {
      std::optional<Expr> v;
      if (!r.at_end()) v = r.expr();
      in = GotoInstruction::return_(std::move(v));
    } else if (kw == "THROW") {
      in = GotoInstruction::throw_(r.expr());
    } else if (kw == "ASSERT") {
      Expr c = r.expr();
      if (r.peek().kind != Tok::Comment) r.fail("expected property comment");
      std::string comment = trim(r.next().text);
      auto colon = comment.find(':');
      std::string cls = trim(comment.substr(0, colon));
      std::string msg = colon == std::string::npos ? "" : trim(comment.substr(colon + 1));
      auto pc = property_class_from_name(cls);
      if (!pc) r.fail("unknown property class '" + cls + "'");
      in = GotoInstruction::assert_(std::move(c), *pc, msg);
    } else if (kw == "ASSUME") {
      in = GotoInstruction::assume(r.expr());
    } else if (kw == "END_FUNCTION") {
      in = GotoInstruction::end_function();
    } else {
      throw ParseError(pos(), "unknown instruction '" + kw + "'");
    }
    done();
    return in;
  }

  std::vector<std::string_view> lines_;
  std::size_t index_ = 0;
  GotoProgram program_;
  std::map<std::string, GotoType> globals_;
};

}  // namespace

std::string print_expr(const Expr& e, const std::string& function) {
  return Printer(function).expr(e);
}

std::string print_instruction(const GotoInstruction& instr, const std::string& function) {
  return Printer(function).instruction(instr);
}

std::string pretty_print(const GotoFunction& function) {
  std::ostringstream os;
  print_function(os, function);
  return os.str();
}

std::string pretty_print(const GotoProgram& program) {
  std::ostringstream os;
  Printer p({});
  for (const auto& [name, rec] : program.records) {
    os << "RECORD " << ident(name);
    if (!rec.superclass.empty()) os << " : " << ident(rec.superclass);
    os << "\n";
    for (const RecordField& f : rec.fields)
      os << "  FIELD " << ident(f.name) << ": " << p.type(f.type) << " from "
         << ident(f.declaring_class) << "\n";
    os << "END_RECORD\n";
  }
  for (const GotoGlobal& g : program.globals) {
    os << "GLOBAL " << ident(g.name) << ": " << p.type(g.type);
    if (g.initial) os << " = " << p.expr(*g.initial);
    os << "\n";
  }
  for (const std::string& u : program.unknown_calls) os << "UNKNOWN_CALL " << quote(u, '"') << "\n";
  for (const std::string& i : program.initializers) os << "INITIALIZER " << ident(i) << "\n";
  for (const auto& [name, fn] : program.functions) {
    os << "\n";
    print_function(os, fn);
  }
  return os.str();
}

GotoProgram read_program(std::string_view text) { return ProgramReader(text).run(); }

}  // namespace jimplebmc::gotoir
