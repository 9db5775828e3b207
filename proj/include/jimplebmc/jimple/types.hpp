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

#include <string>
#include <string_view>

namespace jimplebmc::jimple {

/// A Jimple type: a primitive or class base with zero or more array
/// dimensions. `int[][]` is {Int, dims=2}.
struct JimpleType {
  enum class Base {
    Int,
    Boolean,
    Byte,
    Short,
    Long,
    Char,
    Float,
    Double,
    Void,
    Reference
  };

  Base base = Base::Void;
  std::string class_name;  // only for Reference
  unsigned dims = 0;

  static JimpleType primitive(Base b) { return JimpleType{b, {}, 0}; }
  static JimpleType reference(std::string name) {
    return JimpleType{Base::Reference, std::move(name), 0};
  }
  static JimpleType array_of(JimpleType element) {
    element.dims += 1;
    return element;
  }

  bool is_array() const { return dims > 0; }
  bool is_void() const { return base == Base::Void && dims == 0; }
  bool is_reference_like() const { return dims > 0 || base == Base::Reference; }
  bool is_floating() const {
    return dims == 0 && (base == Base::Float || base == Base::Double);
  }
  JimpleType element() const {
    JimpleType e = *this;
    e.dims -= 1;
    return e;
  }

  /// Soot spelling, e.g. `int`, `java.lang.String[]`.
  std::string str() const;

  friend bool operator==(const JimpleType&, const JimpleType&) = default;
};

/// Maps a primitive keyword (`int`, `boolean`, ...) to its base; returns false
/// for anything else.
bool primitive_from_keyword(std::string_view word, JimpleType::Base& out);

/// Last dot-separated component of a qualified class name.
std::string simple_class_name(std::string_view qualified);

}  // namespace jimplebmc::jimple
