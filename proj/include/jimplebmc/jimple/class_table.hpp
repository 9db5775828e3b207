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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jimplebmc/jimple/ast.hpp"

namespace jimplebmc::jimple {

/// Decides whether a class absent from the input is covered by an
/// operational model (e.g. java.lang.Object).
using ExternalClassPredicate = std::function<bool(std::string_view)>;

struct ResolvedMethod {
  const JimpleClass* owner = nullptr;
  const JimpleMethod* method = nullptr;
};

struct ResolvedField {
  const JimpleClass* owner = nullptr;
  const JimpleField* field = nullptr;
};

/// All parsed classes by fully-qualified name, with inheritance resolved.
class ClassTable {
 public:
  /// Throws SemanticError on duplicate classes, cyclic inheritance, or a
  /// superclass that is neither parsed nor a modeled external.
  static ClassTable build(std::vector<JimpleClass> classes,
                          const ExternalClassPredicate& is_modeled_external);

  std::size_t size() const { return classes_.size(); }
  const JimpleClass* find(std::string_view name) const;
  bool is_external(std::string_view name) const;

  /// Classes in a stable order (superclasses before subclasses).
  const std::vector<const JimpleClass*>& ordered() const { return order_; }

  /// `name`, its superclass, ... up to the first class not in the table.
  std::vector<const JimpleClass*> chain(std::string_view name) const;

  /// Finds the declaration of name(params) starting at `cls` and walking up
  /// the superclass chain.
  std::optional<ResolvedMethod> lookup_method(std::string_view cls, const std::string& name,
                                              const std::vector<JimpleType>& params) const;
  std::optional<ResolvedField> lookup_field(std::string_view cls, const std::string& name) const;

 private:
  std::map<std::string, JimpleClass, std::less<>> classes_;
  std::vector<const JimpleClass*> order_;
  ExternalClassPredicate is_external_;
};

}  // namespace jimplebmc::jimple
