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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jimplebmc/error.hpp"

namespace jimplebmc::jimple {

enum class TokenKind {
  Identifier,     // r0, $i1, java, label1
  AtIdentifier,   // @this, @parameter0
  Keyword,        // return, goto, virtualinvoke, ...
  Type,           // primitive type keyword: int, boolean, ...
  IntLiteral,     // 42, 7L
  FloatLiteral,   // 1.5F, #NaN
  StringLiteral,  // "text" (unescaped value in `text`)
  Punct,          // { } ( ) [ ] ; , : := = . and operators
  End
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;
  std::int64_t int_value = 0;
  bool long_suffix = false;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

const char* token_kind_name(TokenKind kind);

/// Splits Jimple text into tokens, dropping whitespace and comments. The last
/// token is always End. Throws ParseError on an illegal character.
std::vector<Token> lex(std::string_view text);

bool is_jimple_keyword(std::string_view word);

}  // namespace jimplebmc::jimple
