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

#include <stdexcept>
#include <string>
#include <vector>

namespace jimplebmc {

/// A line/column pair into a source file. Line 0 means "no position".
struct SourcePos {
  unsigned line = 0;
  unsigned column = 0;

  bool valid() const { return line != 0; }
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Source position carried by AST and IR nodes as metadata. Always compares
/// equal so that node equality stays structural.
struct SourceTag {
  SourcePos pos;

  friend bool operator==(const SourceTag&, const SourceTag&) { return true; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntactic failure in Jimple (or GOTO dump) text.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string message,
             std::vector<std::string> expected = {})
      : Error(format(pos, message, expected)),
        pos_(pos),
        expected_(std::move(expected)) {}

  SourcePos pos() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(SourcePos pos, const std::string& message,
                            const std::vector<std::string>& expected) {
    std::string text = pos.valid() ? pos.str() + ": " + message : message;
    if (!expected.empty()) {
      text += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) text += ", ";
        text += expected[i];
      }
      text += ")";
    }
    return text;
  }

  SourcePos pos_;
  std::vector<std::string> expected_;
};

/// Well-formed input that violates a static rule (undefined label, cycle...).
class SemanticError : public Error {
 public:
  SemanticError(SourcePos pos, const std::string& message)
      : Error(pos.valid() ? pos.str() + ": " + message : message), pos_(pos) {}
  explicit SemanticError(const std::string& message) : SemanticError({}, message) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Input uses a construct outside the supported subset.
class UnsupportedError : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

/// Bad run configuration (missing solver, bad flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace jimplebmc
