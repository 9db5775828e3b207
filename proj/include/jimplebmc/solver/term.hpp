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
#include <memory>
#include <string>
#include <vector>

namespace jimplebmc::solver {

/// Bool, a bit-vector of 1..64 bits, or an array from bit-vectors to
/// bit-vectors.
class Sort {
 public:
  enum class Kind { Bool, BitVec, Array };

  static Sort boolean() { return Sort(Kind::Bool, 0, 0); }
  static Sort bitvec(unsigned width) { return Sort(Kind::BitVec, width, 0); }
  static Sort array(unsigned index_width, unsigned element_width) {
    return Sort(Kind::Array, element_width, index_width);
  }

  Kind kind() const { return kind_; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_bitvec() const { return kind_ == Kind::BitVec; }
  bool is_array() const { return kind_ == Kind::Array; }
  /// Bit-vector width, or the element width of an array.
  unsigned width() const { return width_; }
  unsigned index_width() const { return index_width_; }

  std::string smtlib() const;

  friend bool operator==(const Sort&, const Sort&) = default;

 private:
  Sort(Kind k, unsigned w, unsigned iw) : kind_(k), width_(w), index_width_(iw) {}

  Kind kind_;
  unsigned width_;
  unsigned index_width_;
};

enum class Op {
  BoolConst, BvConst, Symbol,
  Not, And, Or, Implies, Ite, Eq,
  BvNeg, BvNot, BvAdd, BvSub, BvMul, BvSdiv, BvSrem, BvUdiv, BvUrem,
  BvAnd, BvOr, BvXor, BvShl, BvLshr, BvAshr,
  BvSlt, BvSle, BvUlt, BvUle,
  Concat, Extract, SignExtend, ZeroExtend,
  Select, Store, ConstArray,
  // True iff the signed operation leaves the range of the operand width.
  AddOverflow, SubOverflow, MulOverflow,
};

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
  Op op;
  Sort sort;
  std::vector<Term> args;
  std::string name;        // Symbol
  std::uint64_t value = 0;  // BoolConst / BvConst (low `width` bits)
  unsigned p0 = 0;         // Extract hi, extension amount
  unsigned p1 = 0;         // Extract lo
};

std::uint64_t mask(unsigned width);
/// Two's-complement reading of the low `width` bits.
std::int64_t to_signed(std::uint64_t bits, unsigned width);

// Constructors. All of them fold constant operands and apply the obvious
// boolean simplifications; none of them changes a term's meaning.
Term mk_true();
Term mk_false();
Term mk_bool(bool v);
Term mk_bv(std::uint64_t value, unsigned width);  // value is truncated
Term mk_symbol(const std::string& name, const Sort& sort);
Term mk_not(const Term& a);
Term mk_and(std::vector<Term> args);
Term mk_and(const Term& a, const Term& b);
Term mk_or(std::vector<Term> args);
Term mk_or(const Term& a, const Term& b);
Term mk_implies(const Term& a, const Term& b);
Term mk_ite(const Term& c, const Term& t, const Term& e);
Term mk_eq(const Term& a, const Term& b);
Term mk_unary(Op op, const Term& a);                     // BvNeg, BvNot
Term mk_binary(Op op, const Term& a, const Term& b);     // bit-vector ops and predicates
Term mk_concat(const Term& hi, const Term& lo);
Term mk_extract(const Term& a, unsigned hi, unsigned lo);
Term mk_sign_extend(const Term& a, unsigned extra);
Term mk_zero_extend(const Term& a, unsigned extra);
Term mk_select(const Term& array, const Term& index);
Term mk_store(const Term& array, const Term& index, const Term& value);
Term mk_const_array(const Sort& sort, const Term& value);
/// Resizes a bit-vector by truncation or sign/zero extension.
Term mk_resize(const Term& a, unsigned width, bool is_signed);
/// Bool <-> bv1 conversions used to store booleans in heap arrays.
Term bool_to_bv1(const Term& b);
Term bv1_to_bool(const Term& v);

bool is_true(const Term& t);
bool is_false(const Term& t);
bool is_const(const Term& t);

/// Symbols occurring in `t`, sorted by name.
std::vector<Term> free_symbols(const Term& t);

/// Debug spelling (SMT-LIB syntax, no sharing).
std::string to_string(const Term& t);

}  // namespace jimplebmc::solver
