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

#include "jimplebmc/jimple/types.hpp"

#include <array>
#include <utility>

namespace jimplebmc::jimple {

namespace {

constexpr std::array<std::pair<std::string_view, JimpleType::Base>, 9>
    kPrimitiveNames{{
        {"int", JimpleType::Base::Int},
        {"boolean", JimpleType::Base::Boolean},
        {"byte", JimpleType::Base::Byte},
        {"short", JimpleType::Base::Short},
        {"long", JimpleType::Base::Long},
        {"char", JimpleType::Base::Char},
        {"float", JimpleType::Base::Float},
        {"double", JimpleType::Base::Double},
        {"void", JimpleType::Base::Void},
    }};

}  // namespace

bool primitive_from_keyword(std::string_view word, JimpleType::Base& out) {
  for (const auto& [name, base] : kPrimitiveNames) {
    if (name == word) {
      out = base;
      return true;
    }
  }
  return false;
}

std::string JimpleType::str() const {
  std::string text;
  if (base == Base::Reference) {
    text = class_name;
  } else {
    for (const auto& [name, b] : kPrimitiveNames)
      if (b == base) text = name;
  }
  for (unsigned i = 0; i < dims; ++i) text += "[]";
  return text;
}

std::string simple_class_name(std::string_view qualified) {
  auto dot = qualified.rfind('.');
  if (dot == std::string_view::npos) return std::string(qualified);
  return std::string(qualified.substr(dot + 1));
}

}  // namespace jimplebmc::jimple
