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

#include "jimplebmc/gotoir/type.hpp"

namespace jimplebmc::gotoir {

std::string GotoType::str() const {
  switch (kind_) {
    case Kind::SignedBv: return "int" + std::to_string(width_);
    case Kind::UnsignedBv: return "uint" + std::to_string(width_);
    case Kind::Bool: return "bool";
    case Kind::Void: return "void";
    case Kind::Reference: return name_ + "*";
    case Kind::Array: return element_->str() + "[]";
  }
  return "?";
}

int ClassRecord::offset_of(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == field) return static_cast<int>(i);
  return -1;
}

const RecordField* ClassRecord::find(const std::string& field) const {
  int i = offset_of(field);
  return i < 0 ? nullptr : &fields[static_cast<std::size_t>(i)];
}

}  // namespace jimplebmc::gotoir
