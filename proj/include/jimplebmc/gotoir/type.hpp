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

#include <memory>
#include <string>
#include <vector>

namespace jimplebmc::gotoir {

/// Type of a GOTO-level value. Integers are two's-complement bit-vectors of a
/// fixed width (char is the one unsigned type). References and arrays are
/// pointers to heap objects; class records describe object layouts.
class GotoType {
 public:
  enum class Kind { SignedBv, UnsignedBv, Bool, Reference, Array, Void };

  GotoType() = default;

  static GotoType signed_bv(unsigned width) { return GotoType(Kind::SignedBv, width); }
  static GotoType unsigned_bv(unsigned width) { return GotoType(Kind::UnsignedBv, width); }
  static GotoType boolean() { return GotoType(Kind::Bool, 0); }
  static GotoType void_type() { return GotoType(Kind::Void, 0); }
  static GotoType reference(std::string record) {
    GotoType t(Kind::Reference, 0);
    t.name_ = std::move(record);
    return t;
  }
  static GotoType array(const GotoType& element) {
    GotoType t(Kind::Array, 0);
    t.element_ = std::make_shared<const GotoType>(element);
    return t;
  }

  static GotoType int8() { return signed_bv(8); }
  static GotoType int16() { return signed_bv(16); }
  static GotoType int32() { return signed_bv(32); }
  static GotoType int64() { return signed_bv(64); }
  static GotoType char16() { return unsigned_bv(16); }

  Kind kind() const { return kind_; }
  unsigned width() const { return width_; }
  const std::string& record_name() const { return name_; }
  const GotoType& element() const { return *element_; }

  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_void() const { return kind_ == Kind::Void; }
  bool is_integer() const { return kind_ == Kind::SignedBv || kind_ == Kind::UnsignedBv; }
  bool is_signed() const { return kind_ == Kind::SignedBv; }
  bool is_reference() const { return kind_ == Kind::Reference; }
  bool is_array() const { return kind_ == Kind::Array; }
  /// Reference or array: a (possibly null) heap pointer.
  bool is_pointer() const { return is_reference() || is_array(); }

  /// Dump spelling: int32, uint16, bool, void, Foo*, int32[].
  std::string str() const;

  friend bool operator==(const GotoType& a, const GotoType& b) {
    if (a.kind_ != b.kind_ || a.width_ != b.width_ || a.name_ != b.name_) return false;
    if (a.kind_ == Kind::Array) return *a.element_ == *b.element_;
    return true;
  }

 private:
  GotoType(Kind kind, unsigned width) : kind_(kind), width_(width) {}

  Kind kind_ = Kind::Void;
  unsigned width_ = 0;
  std::string name_;
  std::shared_ptr<const GotoType> element_;
};

/// Width used for references in the heap encoding.
inline constexpr unsigned kReferenceWidth = 32;

struct RecordField {
  std::string name;
  GotoType type;
  std::string declaring_class;

  friend bool operator==(const RecordField&, const RecordField&) = default;
};

/// Object layout of a class: inherited fields first, then own virtual fields.
struct ClassRecord {
  std::string name;
  std::string superclass;  // empty when the chain leaves the program
  std::vector<RecordField> fields;

  /// Position of `field` in the layout, or -1.
  int offset_of(const std::string& field) const;
  const RecordField* find(const std::string& field) const;

  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

}  // namespace jimplebmc::gotoir
