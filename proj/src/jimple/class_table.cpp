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

#include "jimplebmc/jimple/class_table.hpp"

#include <set>

#include "jimplebmc/error.hpp"

namespace jimplebmc::jimple {

ClassTable ClassTable::build(std::vector<JimpleClass> classes,
                             const ExternalClassPredicate& is_modeled_external) {
  ClassTable table;
  table.is_external_ = is_modeled_external;
  for (JimpleClass& cls : classes) {
    std::string name = cls.name;
    SourcePos pos = cls.tag.pos;
    if (!table.classes_.emplace(name, std::move(cls)).second)
      throw SemanticError(pos, "duplicate class " + name);
  }

  for (const auto& [name, cls] : table.classes_) {
    std::set<std::string> seen{name};
    const JimpleClass* current = &cls;
    while (current->superclass) {
      const std::string& super = *current->superclass;
      if (!seen.insert(super).second)
        throw SemanticError(cls.tag.pos, "cyclic inheritance involving " + name);
      auto it = table.classes_.find(super);
      if (it == table.classes_.end()) {
        if (!is_modeled_external || !is_modeled_external(super))
          throw SemanticError(current->tag.pos, "unresolved class " + super +
                                                    " (superclass of " + current->name +
                                                    ") has no operational model");
        break;
      }
      current = &it->second;
    }
  }

  // Superclasses first; ties broken by name for determinism.
  std::set<std::string> placed;
  std::function<void(const JimpleClass&)> place = [&](const JimpleClass& cls) {
    if (placed.contains(cls.name)) return;
    if (cls.superclass)
      if (auto it = table.classes_.find(*cls.superclass); it != table.classes_.end())
        place(it->second);
    placed.insert(cls.name);
    table.order_.push_back(&cls);
  };
  for (const auto& [name, cls] : table.classes_) place(cls);
  return table;
}

const JimpleClass* ClassTable::find(std::string_view name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : &it->second;
}

bool ClassTable::is_external(std::string_view name) const {
  return !find(name) && is_external_ && is_external_(name);
}

std::vector<const JimpleClass*> ClassTable::chain(std::string_view name) const {
  std::vector<const JimpleClass*> out;
  for (const JimpleClass* c = find(name); c; c = c->superclass ? find(*c->superclass) : nullptr)
    out.push_back(c);
  return out;
}

std::optional<ResolvedMethod> ClassTable::lookup_method(
    std::string_view cls, const std::string& name, const std::vector<JimpleType>& params) const {
  for (const JimpleClass* c : chain(cls))
    if (const JimpleMethod* m = c->find_method(name, params)) return ResolvedMethod{c, m};
  return std::nullopt;
}

std::optional<ResolvedField> ClassTable::lookup_field(std::string_view cls,
                                                      const std::string& name) const {
  for (const JimpleClass* c : chain(cls))
    if (const JimpleField* f = c->find_field(name)) return ResolvedField{c, f};
  return std::nullopt;
}

}  // namespace jimplebmc::jimple
