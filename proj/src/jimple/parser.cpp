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

#include "jimplebmc/jimple/parser.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace jimplebmc::jimple {

namespace {

const std::set<std::string, std::less<>> kModifiers{
    "public",   "private",      "protected", "static",    "final",
    "abstract", "native",       "synchronized", "transient", "volatile",
    "strictfp", "enum",         "annotation", "synthetic"};

const std::map<std::string, BinaryOp, std::less<>> kBinaryPuncts{
    {"+", BinaryOp::Add},   {"-", BinaryOp::Sub},   {"*", BinaryOp::Mul},
    {"/", BinaryOp::Div},   {"%", BinaryOp::Rem},   {"&", BinaryOp::And},
    {"|", BinaryOp::Or},    {"^", BinaryOp::Xor},   {"<<", BinaryOp::Shl},
    {">>", BinaryOp::Shr},  {">>>", BinaryOp::Ushr}, {"==", BinaryOp::Eq},
    {"!=", BinaryOp::Ne},   {"<", BinaryOp::Lt},    {"<=", BinaryOp::Le},
    {">", BinaryOp::Gt},    {">=", BinaryOp::Ge}};

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {
    if (toks_.empty() || toks_.back().kind != TokenKind::End)
      throw ParseError({}, "token stream must end with End");
  }

  JimpleClass parse_compilation_unit() {
    JimpleClass cls = parse_class_decl();
    if (peek().kind != TokenKind::End) fail({"end of input"});
    return cls;
  }

 private:
  // ---- token helpers -----------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End
                            ? "end of input"
                            : std::string(token_kind_name(t.kind)) + " '" + t.text + "'";
    throw ParseError(t.pos, "syntax error at " + found, std::move(expected));
  }
  [[noreturn]] void unsupported(const Token& at, const std::string& what) const {
    throw UnsupportedError(at.pos, "unsupported construct: " + what);
  }

  bool accept_punct(std::string_view p) {
    if (peek().is_punct(p)) {
      next();
      return true;
    }
    return false;
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail({"'" + std::string(p) + "'"});
  }
  bool accept_keyword(std::string_view k) {
    if (peek().is_keyword(k)) {
      next();
      return true;
    }
    return false;
  }
  void expect_keyword(std::string_view k) {
    if (!accept_keyword(k)) fail({"'" + std::string(k) + "'"});
  }
  std::string expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail({"identifier"});
    return next().text;
  }

  // ---- declarations ------------------------------------------------------

  std::vector<std::string> parse_modifiers() {
    std::vector<std::string> mods;
    while ((peek().kind == TokenKind::Keyword || peek().kind == TokenKind::Identifier) &&
           kModifiers.contains(peek().text))
      mods.push_back(next().text);
    return mods;
  }

  std::string parse_qualified_name() {
    std::string name = expect_identifier();
    while (peek().is_punct(".") && peek(1).kind == TokenKind::Identifier) {
      next();
      name += "." + next().text;
    }
    return name;
  }

  JimpleType parse_type() {
    JimpleType type;
    if (peek().kind == TokenKind::Type) {
      primitive_from_keyword(next().text, type.base);
    } else if (peek().kind == TokenKind::Identifier) {
      type = JimpleType::reference(parse_qualified_name());
    } else {
      fail({"type"});
    }
    while (peek().is_punct("[") && peek(1).is_punct("]")) {
      next();
      next();
      type.dims += 1;
    }
    if (type.is_array() && type.base == JimpleType::Base::Void)
      throw SemanticError(peek().pos, "array element type cannot be void");
    return type;
  }

  JimpleClass parse_class_decl() {
    JimpleClass cls;
    cls.tag.pos = peek().pos;
    cls.modifiers = parse_modifiers();
    if (accept_keyword("interface")) {
      cls.is_interface = true;
    } else if (!accept_keyword("class")) {
      fail({"'class'", "'interface'"});
    }
    cls.name = parse_qualified_name();
    if (accept_keyword("extends")) cls.superclass = parse_qualified_name();
    if (accept_keyword("implements")) {
      cls.interfaces.push_back(parse_qualified_name());
      while (accept_punct(",")) cls.interfaces.push_back(parse_qualified_name());
    }
    expect_punct("{");
    while (!peek().is_punct("}")) {
      if (peek().kind == TokenKind::End) fail({"'}'"});
      parse_member(cls);
    }
    expect_punct("}");
    return cls;
  }

  void parse_member(JimpleClass& cls) {
    SourcePos pos = peek().pos;
    auto mods = parse_modifiers();
    JimpleType type = parse_type();
    std::string name;
    if (accept_punct("<")) {
      name = "<" + expect_identifier() + ">";
      expect_punct(">");
    } else {
      name = expect_identifier();
    }
    bool is_static = std::find(mods.begin(), mods.end(), "static") != mods.end();
    if (!peek().is_punct("(")) {
      expect_punct(";");
      if (type.is_void()) throw SemanticError(pos, "field '" + name + "' has type void");
      cls.fields.push_back(JimpleField{std::move(mods), std::move(name), type, is_static, {pos}});
      return;
    }
    JimpleMethod m;
    m.tag.pos = pos;
    m.modifiers = std::move(mods);
    m.name = std::move(name);
    m.return_type = type;
    m.kind = is_static ? MethodKind::Static : MethodKind::Virtual;
    expect_punct("(");
    if (!peek().is_punct(")")) {
      m.params.push_back(parse_type());
      while (accept_punct(",")) m.params.push_back(parse_type());
    }
    expect_punct(")");
    if (accept_keyword("throws")) {
      m.throws.push_back(parse_qualified_name());
      while (accept_punct(",")) m.throws.push_back(parse_qualified_name());
    }
    if (accept_punct(";")) {
      m.has_body = false;
    } else {
      expect_punct("{");
      parse_body(m);
      expect_punct("}");
    }
    cls.methods.push_back(std::move(m));
  }

  // Type (. Ident)* ([])* Ident (,|;) without consuming anything.
  bool looks_like_declaration() const {
    std::size_t k = 0;
    if (peek(k).kind == TokenKind::Type) {
      ++k;
    } else if (peek(k).kind == TokenKind::Identifier) {
      ++k;
      while (peek(k).is_punct(".") && peek(k + 1).kind == TokenKind::Identifier) k += 2;
    } else {
      return false;
    }
    while (peek(k).is_punct("[") && peek(k + 1).is_punct("]")) k += 2;
    if (peek(k).kind != TokenKind::Identifier) return false;
    return peek(k + 1).is_punct(",") || peek(k + 1).is_punct(";");
  }

  void parse_body(JimpleMethod& m) {
    while (looks_like_declaration()) {
      SourcePos pos = peek().pos;
      JimpleType type = parse_type();
      do {
        SourcePos name_pos = peek().pos;
        std::string local = expect_identifier();
        m.locals.push_back({local, type});
        m.body.push_back(JimpleStmt{DeclarationStmt{local, type}, {name_pos}});
      } while (accept_punct(","));
      (void)pos;
      expect_punct(";");
    }
    while (!peek().is_punct("}")) {
      if (peek().kind == TokenKind::End) fail({"'}'"});
      m.body.push_back(parse_statement());
    }
  }

  // ---- statements --------------------------------------------------------

  JimpleStmt parse_statement() {
    const Token& first = peek();
    SourcePos pos = first.pos;
    auto finish = [&](auto node) {
      expect_punct(";");
      return JimpleStmt{std::move(node), {pos}};
    };

    if (first.kind == TokenKind::Identifier && peek(1).is_punct(":=")) {
      std::string local = next().text;
      next();
      if (peek().kind != TokenKind::AtIdentifier) fail({"@this", "@parameterN"});
      const Token& src = next();
      if (src.text == "@caughtexception") unsupported(src, "@caughtexception");
      if (src.text != "@this" && src.text.rfind("@parameter", 0) != 0)
        throw ParseError(src.pos, "unknown identity source " + src.text);
      expect_punct(":");
      JimpleType type = parse_type();
      return finish(IdentityStmt{std::move(local), src.text, type});
    }
    if (first.kind == TokenKind::Identifier && peek(1).is_punct(":")) {
      std::string label = next().text;
      next();
      return JimpleStmt{LabelStmt{std::move(label)}, {pos}};
    }
    if (first.kind == TokenKind::Keyword) {
      const std::string& kw = first.text;
      if (kw == "goto") {
        next();
        return finish(GotoStmt{expect_identifier()});
      }
      if (kw == "if") {
        next();
        BinaryExpr cond = parse_binary_or_operand_condition();
        expect_keyword("goto");
        return finish(IfStmt{std::move(cond), expect_identifier()});
      }
      if (kw == "return") {
        next();
        ReturnStmt r;
        if (!peek().is_punct(";")) r.value = parse_operand();
        return finish(std::move(r));
      }
      if (kw == "throw") {
        next();
        return finish(ThrowStmt{parse_operand()});
      }
      if (kw == "breakpoint") {
        next();
        return finish(BreakpointStmt{});
      }
      if (kw == "nop") {
        next();
        return finish(NopStmt{});
      }
      if (is_invoke_keyword(kw)) return finish(InvokeStmt{std::nullopt, parse_invoke()});
      if (kw == "tableswitch" || kw == "lookupswitch" || kw == "entermonitor" ||
          kw == "exitmonitor" || kw == "catch")
        unsupported(first, kw);
    }
    if (first.kind == TokenKind::Identifier || first.is_punct("<")) {
      Place lhs = parse_place();
      expect_punct("=");
      if (peek().kind == TokenKind::Keyword && is_invoke_keyword(peek().text)) {
        const auto* local = std::get_if<LocalRef>(&lhs.value);
        if (!local) throw ParseError(pos, "invoke result must be assigned to a local");
        return finish(InvokeStmt{local->name, parse_invoke()});
      }
      Rvalue rhs = parse_rvalue();
      return finish(AssignStmt{std::move(lhs), std::move(rhs)});
    }
    fail({"statement"});
  }

  static bool is_invoke_keyword(std::string_view kw) {
    return kw == "virtualinvoke" || kw == "specialinvoke" || kw == "staticinvoke" ||
           kw == "interfaceinvoke" || kw == "dynamicinvoke";
  }

  BinaryExpr parse_binary_or_operand_condition() {
    Operand lhs = parse_operand();
    const Token& op = peek();
    auto it = kBinaryPuncts.find(op.text);
    if (op.kind != TokenKind::Punct || it == kBinaryPuncts.end() || !is_relational(it->second))
      fail({"relational operator"});
    next();
    return BinaryExpr{it->second, std::move(lhs), parse_operand()};
  }

  InvokeExpr parse_invoke() {
    const Token& kw = next();
    InvokeExpr call;
    if (kw.text == "virtualinvoke") {
      call.kind = InvokeKind::Virtual;
    } else if (kw.text == "specialinvoke") {
      call.kind = InvokeKind::Special;
    } else if (kw.text == "staticinvoke") {
      call.kind = InvokeKind::Static;
    } else {
      unsupported(kw, kw.text);
    }
    if (call.kind != InvokeKind::Static) {
      call.receiver = expect_identifier();
      expect_punct(".");
    }
    call.method = parse_method_signature();
    expect_punct("(");
    if (!peek().is_punct(")")) {
      call.args.push_back(parse_operand());
      while (accept_punct(",")) call.args.push_back(parse_operand());
    }
    expect_punct(")");
    return call;
  }

  MethodSignature parse_method_signature() {
    expect_punct("<");
    MethodSignature sig;
    sig.class_name = parse_qualified_name();
    expect_punct(":");
    sig.return_type = parse_type();
    if (accept_punct("<")) {
      sig.name = "<" + expect_identifier() + ">";
      expect_punct(">");
    } else {
      sig.name = expect_identifier();
    }
    expect_punct("(");
    if (!peek().is_punct(")")) {
      sig.params.push_back(parse_type());
      while (accept_punct(",")) sig.params.push_back(parse_type());
    }
    expect_punct(")");
    expect_punct(">");
    return sig;
  }

  FieldSignature parse_field_signature() {
    expect_punct("<");
    FieldSignature sig;
    sig.class_name = parse_qualified_name();
    expect_punct(":");
    sig.type = parse_type();
    sig.name = expect_identifier();
    expect_punct(">");
    return sig;
  }

  Place parse_place() {
    SourcePos pos = peek().pos;
    if (peek().is_punct("<")) return Place{StaticFieldRef{parse_field_signature()}, {pos}};
    std::string base = expect_identifier();
    if (accept_punct(".")) return Place{InstanceFieldRef{base, parse_field_signature()}, {pos}};
    if (accept_punct("[")) {
      Operand index = parse_operand();
      expect_punct("]");
      return Place{ArrayRef{base, std::move(index)}, {pos}};
    }
    return Place{LocalRef{base}, {pos}};
  }

  Operand parse_operand() {
    const Token& t = peek();
    Operand op;
    op.tag.pos = t.pos;
    if (t.kind == TokenKind::Identifier) {
      op.value = LocalRef{next().text};
    } else if (t.is_punct("-") && peek(1).kind == TokenKind::IntLiteral) {
      next();
      const Token& lit = next();
      op.value = IntConstant{static_cast<std::int64_t>(-static_cast<std::uint64_t>(lit.int_value)),
                             lit.long_suffix};
    } else if (t.kind == TokenKind::IntLiteral) {
      if (static_cast<std::uint64_t>(t.int_value) > std::uint64_t{std::numeric_limits<std::int64_t>::max()})
        throw ParseError(t.pos, "integer literal out of 64-bit range: " + t.text);
      const Token& lit = next();
      op.value = IntConstant{lit.int_value, lit.long_suffix};
    } else if (t.is_punct("-") && peek(1).kind == TokenKind::FloatLiteral) {
      next();
      op.value = FloatConstant{"-" + next().text};
    } else if (t.kind == TokenKind::FloatLiteral) {
      op.value = FloatConstant{next().text};
    } else if (t.is_keyword("null")) {
      next();
      op.value = NullConstant{};
    } else if (t.kind == TokenKind::StringLiteral) {
      op.value = StringConstant{next().text};
    } else if (t.is_keyword("class")) {
      unsupported(t, "class constant");
    } else {
      fail({"local", "constant"});
    }
    return op;
  }

  Rvalue parse_rvalue() {
    const Token& t = peek();
    Rvalue rv;
    rv.tag.pos = t.pos;
    if (t.is_keyword("new")) {
      next();
      rv.value = NewExpr{parse_qualified_name()};
    } else if (t.is_keyword("newarray")) {
      next();
      expect_punct("(");
      JimpleType elem = parse_type();
      if (elem.is_void()) throw SemanticError(t.pos, "array element type cannot be void");
      expect_punct(")");
      expect_punct("[");
      Operand size = parse_operand();
      expect_punct("]");
      rv.value = NewArrayExpr{elem, std::move(size)};
    } else if (t.is_keyword("newmultiarray")) {
      unsupported(t, "newmultiarray");
    } else if (t.is_keyword("lengthof")) {
      next();
      rv.value = LengthExpr{parse_operand()};
    } else if (t.is_keyword("neg")) {
      next();
      rv.value = NegExpr{parse_operand()};
    } else if (t.is_punct("(")) {
      next();
      JimpleType type = parse_type();
      expect_punct(")");
      rv.value = CastExpr{type, parse_operand()};
    } else if (t.is_punct("<")) {
      rv.value = StaticFieldRef{parse_field_signature()};
    } else if (t.kind == TokenKind::AtIdentifier) {
      unsupported(t, t.text + " outside an identity statement");
    } else if (t.kind == TokenKind::Identifier && peek(1).is_punct(".") && peek(2).is_punct("<")) {
      std::string base = next().text;
      next();
      rv.value = InstanceFieldRef{base, parse_field_signature()};
    } else if (t.kind == TokenKind::Identifier && peek(1).is_punct("[")) {
      std::string base = next().text;
      next();
      Operand index = parse_operand();
      expect_punct("]");
      rv.value = ArrayRef{base, std::move(index)};
    } else {
      Operand lhs = parse_operand();
      const Token& op = peek();
      if (op.is_keyword("cmp") || op.is_keyword("cmpl") || op.is_keyword("cmpg")) {
        next();
        BinaryOp bop = op.text == "cmp" ? BinaryOp::Cmp
                       : op.text == "cmpl" ? BinaryOp::Cmpl
                                           : BinaryOp::Cmpg;
        rv.value = BinaryExpr{bop, std::move(lhs), parse_operand()};
      } else if (op.is_keyword("instanceof")) {
        unsupported(op, "instanceof");
      } else if (op.kind == TokenKind::Punct && kBinaryPuncts.contains(op.text)) {
        BinaryOp bop = kBinaryPuncts.find(op.text)->second;
        next();
        rv.value = BinaryExpr{bop, std::move(lhs), parse_operand()};
      } else {
        rv.value = std::move(lhs);
      }
    }
    return rv;
  }

  std::span<const Token> toks_;
  std::size_t i_ = 0;
};

// ---- semantic checks -------------------------------------------------------

void check_method(const JimpleClass& cls, const JimpleMethod& m) {
  std::map<std::string, JimpleType> locals;
  std::set<std::string> labels;
  std::vector<std::pair<std::string, SourcePos>> targets;
  std::vector<std::pair<std::string, SourcePos>> uses;

  enum class Phase { Declarations, Identities, Code } phase = Phase::Declarations;
  for (const JimpleStmt& s : m.body) {
    SourcePos pos = s.pos();
    auto use = [&](const std::string& name) { uses.emplace_back(name, pos); };
    auto use_op = [&](const Operand& op) {
      if (const auto* l = op.local()) use(l->name);
    };
    auto use_place = [&](const Place& p) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LocalRef>) {
              use(v.name);
            } else if constexpr (std::is_same_v<T, InstanceFieldRef>) {
              use(v.base);
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
              use(v.base);
              use_op(v.index);
            }
          },
          p.value);
    };
    auto use_call = [&](const InvokeExpr& call) {
      if (call.receiver) use(*call.receiver);
      for (const Operand& a : call.args) use_op(a);
    };

    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, DeclarationStmt>) {
            if (phase != Phase::Declarations)
              throw SemanticError(pos, "declaration of '" + node.name + "' after code");
            if (!locals.emplace(node.name, node.type).second)
              throw SemanticError(pos, "duplicate local '" + node.name + "'");
          } else if constexpr (std::is_same_v<T, IdentityStmt>) {
            if (phase == Phase::Code)
              throw SemanticError(pos, "identity statement after code");
            phase = Phase::Identities;
            use(node.local);
            int index = node.parameter_index();
            if (node.is_this() && m.kind == MethodKind::Static)
              throw SemanticError(pos, "@this in static method " + m.name);
            if (!node.is_this() &&
                (index < 0 || static_cast<std::size_t>(index) >= m.params.size()))
              throw SemanticError(pos, "identity source " + node.source + " out of range");
          } else {
            phase = Phase::Code;
            if constexpr (std::is_same_v<T, AssignStmt>) {
              use_place(node.lhs);
              std::visit(
                  [&](const auto& rv) {
                    using R = std::decay_t<decltype(rv)>;
                    if constexpr (std::is_same_v<R, Operand>) {
                      use_op(rv);
                    } else if constexpr (std::is_same_v<R, BinaryExpr>) {
                      use_op(rv.lhs);
                      use_op(rv.rhs);
                    } else if constexpr (std::is_same_v<R, NegExpr>) {
                      use_op(rv.operand);
                    } else if constexpr (std::is_same_v<R, CastExpr>) {
                      use_op(rv.operand);
                    } else if constexpr (std::is_same_v<R, NewArrayExpr>) {
                      use_op(rv.size);
                    } else if constexpr (std::is_same_v<R, LengthExpr>) {
                      use_op(rv.array);
                    } else if constexpr (std::is_same_v<R, InstanceFieldRef>) {
                      use(rv.base);
                    } else if constexpr (std::is_same_v<R, ArrayRef>) {
                      use(rv.base);
                      use_op(rv.index);
                    }
                  },
                  node.rhs.value);
            } else if constexpr (std::is_same_v<T, LabelStmt>) {
              if (!labels.insert(node.label).second)
                throw SemanticError(pos, "duplicate label '" + node.label + "'");
            } else if constexpr (std::is_same_v<T, GotoStmt>) {
              targets.emplace_back(node.target, pos);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              use_op(node.condition.lhs);
              use_op(node.condition.rhs);
              targets.emplace_back(node.target, pos);
            } else if constexpr (std::is_same_v<T, InvokeStmt>) {
              if (node.lhs) use(*node.lhs);
              use_call(node.call);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
              if (node.value) use_op(*node.value);
            } else if constexpr (std::is_same_v<T, ThrowStmt>) {
              use_op(node.value);
            }
          }
        },
        s.node);
  }
  for (const auto& [label, pos] : targets)
    if (!labels.contains(label)) throw SemanticError(pos, "undefined label '" + label + "'");
  for (const auto& [name, pos] : uses)
    if (!locals.contains(name))
      throw SemanticError(pos, "undeclared local '" + name + "' in " + cls.name + "." + m.name);
}

}  // namespace

void check_class(const JimpleClass& cls) {
  std::set<std::string> field_names;
  for (const JimpleField& f : cls.fields)
    if (!field_names.insert(f.name).second)
      throw SemanticError(f.tag.pos, "duplicate field '" + f.name + "' in " + cls.name);
  std::set<std::pair<std::string, std::vector<std::string>>> sigs;
  for (const JimpleMethod& m : cls.methods) {
    std::vector<std::string> params;
    for (const JimpleType& p : m.params) params.push_back(p.str());
    if (!sigs.emplace(m.name, params).second)
      throw SemanticError(m.tag.pos, "duplicate method signature '" + m.name + "' in " + cls.name);
    if (m.has_body) check_method(cls, m);
  }
}

JimpleClass parse_class(std::span<const Token> tokens) {
  JimpleClass cls = Parser(tokens).parse_compilation_unit();
  check_class(cls);
  return cls;
}

JimpleClass parse_class_text(std::string_view text) {
  std::vector<Token> tokens = lex(text);
  return parse_class(tokens);
}

JimpleClass parse_class_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_class_text(buffer.str());
  } catch (const UnsupportedError& e) {
    throw UnsupportedError(path.string() + ":" + e.what());
  } catch (const SemanticError& e) {
    throw SemanticError(path.string() + ":" + e.what());
  } catch (const ParseError& e) {
    throw ParseError({}, path.string() + ":" + e.what());
  }
}

}  // namespace jimplebmc::jimple
