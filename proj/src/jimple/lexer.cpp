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

#include "jimplebmc/jimple/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "jimplebmc/jimple/types.hpp"

namespace jimplebmc::jimple {

namespace {

constexpr std::array<std::string_view, 47> kKeywords{
    "abstract",      "annotation",    "breakpoint",    "case",
    "catch",         "class",         "cmp",           "cmpg",
    "cmpl",          "default",       "dynamicinvoke", "entermonitor",
    "enum",          "exitmonitor",   "extends",       "final",
    "from",          "goto",          "if",            "implements",
    "instanceof",    "interface",     "interfaceinvoke", "lengthof",
    "lookupswitch",  "native",        "neg",           "new",
    "newarray",      "newmultiarray", "nop",           "null",
    "private",       "protected",     "public",        "return",
    "specialinvoke", "static",        "staticinvoke",  "strictfp",
    "synchronized",  "tableswitch",   "throw",         "throws",
    "transient",     "virtualinvoke", "volatile"};

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 30> kPuncts{
    ">>>", ":=", "<<", ">>", "<=", ">=", "==", "!=", "{", "}",
    "(",   ")",  "[",  "]",  ";",  ",",  ":",  "=",  ".", "<",
    ">",   "+",  "-",  "*",  "/",  "%",  "&",  "|",  "^", "!"};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token tok;
      tok.pos = here();
      if (at_end()) {
        tok.kind = TokenKind::End;
        out.push_back(tok);
        return out;
      }
      char c = peek();
      if (ident_start(c)) {
        lex_word(tok);
      } else if (c == '\'') {
        lex_quoted_identifier(tok);
      } else if (c == '@') {
        advance();
        std::size_t start = pos_;
        while (!at_end() && ident_char(peek())) advance();
        if (pos_ == start) throw ParseError(tok.pos, "expected identifier after '@'");
        tok.kind = TokenKind::AtIdentifier;
        tok.text = "@" + std::string(text_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(tok);
      } else if (c == '#') {
        // Soot spells special float constants as #Infinity, #-Infinity, #NaN.
        std::size_t start = pos_;
        advance();
        if (!at_end() && peek() == '-') advance();
        while (!at_end() && ident_char(peek())) advance();
        tok.kind = TokenKind::FloatLiteral;
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '"') {
        lex_string(tok);
      } else {
        lex_punct(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  SourcePos here() const { return {line_, column_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourcePos start = here();
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) throw ParseError(start, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_word(Token& tok) {
    std::size_t start = pos_;
    while (!at_end() && ident_char(peek())) advance();
    tok.text = std::string(text_.substr(start, pos_ - start));
    JimpleType::Base base;
    if (primitive_from_keyword(tok.text, base))
      tok.kind = TokenKind::Type;
    else if (is_jimple_keyword(tok.text))
      tok.kind = TokenKind::Keyword;
    else
      tok.kind = TokenKind::Identifier;
  }

  void lex_quoted_identifier(Token& tok) {
    advance();
    std::size_t start = pos_;
    while (!at_end() && peek() != '\'' && peek() != '\n') advance();
    if (at_end() || peek() != '\'')
      throw ParseError(tok.pos, "unterminated quoted identifier");
    tok.kind = TokenKind::Identifier;
    tok.text = std::string(text_.substr(start, pos_ - start));
    advance();
  }

  void lex_number(Token& tok) {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    bool is_float = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_float = true;
      advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if (peek() == 'E' || peek() == 'e') {
      is_float = true;
      advance();
      if (peek() == '-' || peek() == '+') advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    std::string_view digits = text_.substr(start, pos_ - start);
    if (peek() == 'F' || peek() == 'f' || peek() == 'D' || peek() == 'd') {
      is_float = true;
      advance();
    }
    tok.text = std::string(text_.substr(start, pos_ - start));
    if (is_float) {
      tok.kind = TokenKind::FloatLiteral;
      return;
    }
    tok.kind = TokenKind::IntLiteral;
    if (peek() == 'L' || peek() == 'l') {
      tok.long_suffix = true;
      advance();
      tok.text += "L";
    }
    // Parsed as unsigned so that the magnitude of Long.MIN_VALUE survives;
    // the parser applies the sign.
    std::uint64_t magnitude = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), magnitude);
    if (ec != std::errc() || magnitude > (std::uint64_t{1} << 63))
      throw ParseError(tok.pos, "integer literal out of 64-bit range: " + tok.text);
    tok.int_value = static_cast<std::int64_t>(magnitude);
  }

  void lex_string(Token& tok) {
    advance();
    std::string value;
    for (;;) {
      if (at_end() || peek() == '\n') throw ParseError(tok.pos, "unterminated string literal");
      char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) throw ParseError(tok.pos, "unterminated string literal");
        char e = peek();
        advance();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          case '0': value += '\0'; break;
          default: value += e; break;
        }
      } else {
        value += c;
      }
    }
    tok.kind = TokenKind::StringLiteral;
    tok.text = std::move(value);
  }

  void lex_punct(Token& tok) {
    for (std::string_view p : kPuncts) {
      if (text_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        tok.kind = TokenKind::Punct;
        tok.text = std::string(p);
        return;
      }
    }
    std::string shown(1, peek());
    throw ParseError(tok.pos, "illegal character '" + shown + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  unsigned line_ = 1;
  unsigned column_ = 1;
};

}  // namespace

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::AtIdentifier: return "@-identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Type: return "type";
    case TokenKind::IntLiteral: return "integer literal";
    case TokenKind::FloatLiteral: return "float literal";
    case TokenKind::StringLiteral: return "string literal";
    case TokenKind::Punct: return "punctuation";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

bool is_jimple_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

}  // namespace jimplebmc::jimple
