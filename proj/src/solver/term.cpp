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

#include "jimplebmc/solver/term.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "jimplebmc/solver/formula.hpp"

namespace jimplebmc::solver {

namespace {

Term make(Op op, Sort sort, std::vector<Term> args) {
  auto n = std::make_shared<Node>(Node{op, sort, std::move(args), {}, 0, 0, 0});
  return n;
}

bool all_const(const std::vector<Term>& args) {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return is_const(t); });
}

Term from_value(const Value& v) {
  if (v.sort.is_bool()) return mk_bool(v.bits != 0);
  return mk_bv(v.bits, v.sort.width());
}

// Folds a node whose operands are all constants.
Term fold(const Term& t) {
  if (t->sort.is_array() || !all_const(t->args)) return t;
  return from_value(evaluate(t, Model{}));
}

bool same(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->op != b->op || !(a->sort == b->sort)) return false;
  if (a->op == Op::BoolConst || a->op == Op::BvConst) return a->value == b->value;
  if (a->op == Op::Symbol) return a->name == b->name;
  return false;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("ill-sorted term: ") + what);
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Not: return "not";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Implies: return "=>";
    case Op::Ite: return "ite";
    case Op::Eq: return "=";
    case Op::BvNeg: return "bvneg";
    case Op::BvNot: return "bvnot";
    case Op::BvAdd: return "bvadd";
    case Op::BvSub: return "bvsub";
    case Op::BvMul: return "bvmul";
    case Op::BvSdiv: return "bvsdiv";
    case Op::BvSrem: return "bvsrem";
    case Op::BvUdiv: return "bvudiv";
    case Op::BvUrem: return "bvurem";
    case Op::BvAnd: return "bvand";
    case Op::BvOr: return "bvor";
    case Op::BvXor: return "bvxor";
    case Op::BvShl: return "bvshl";
    case Op::BvLshr: return "bvlshr";
    case Op::BvAshr: return "bvashr";
    case Op::BvSlt: return "bvslt";
    case Op::BvSle: return "bvsle";
    case Op::BvUlt: return "bvult";
    case Op::BvUle: return "bvule";
    case Op::Concat: return "concat";
    case Op::Select: return "select";
    case Op::Store: return "store";
    case Op::AddOverflow: return "add-overflow";
    case Op::SubOverflow: return "sub-overflow";
    case Op::MulOverflow: return "mul-overflow";
    default: return "?";
  }
}

}  // namespace

std::string Sort::smtlib() const {
  switch (kind_) {
    case Kind::Bool: return "Bool";
    case Kind::BitVec: return "(_ BitVec " + std::to_string(width_) + ")";
    case Kind::Array:
      return "(Array (_ BitVec " + std::to_string(index_width_) + ") (_ BitVec " +
             std::to_string(width_) + "))";
  }
  return "?";
}

std::uint64_t mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

std::int64_t to_signed(std::uint64_t bits, unsigned width) {
  bits &= mask(width);
  if (width < 64 && width > 0 && (bits >> (width - 1)) & 1) bits |= ~mask(width);
  return static_cast<std::int64_t>(bits);
}

Term mk_true() {
  static const Term t = std::make_shared<Node>(Node{Op::BoolConst, Sort::boolean(), {}, {}, 1, 0, 0});
  return t;
}

Term mk_false() {
  static const Term f = std::make_shared<Node>(Node{Op::BoolConst, Sort::boolean(), {}, {}, 0, 0, 0});
  return f;
}

Term mk_bool(bool v) { return v ? mk_true() : mk_false(); }

Term mk_bv(std::uint64_t value, unsigned width) {
  require(width >= 1 && width <= 64, "bit-vector width");
  return std::make_shared<Node>(Node{Op::BvConst, Sort::bitvec(width), {}, {}, value & mask(width), 0, 0});
}

Term mk_symbol(const std::string& name, const Sort& sort) {
  return std::make_shared<Node>(Node{Op::Symbol, sort, {}, name, 0, 0, 0});
}

bool is_true(const Term& t) { return t->op == Op::BoolConst && t->value != 0; }
bool is_false(const Term& t) { return t->op == Op::BoolConst && t->value == 0; }
bool is_const(const Term& t) { return t->op == Op::BoolConst || t->op == Op::BvConst; }

Term mk_not(const Term& a) {
  require(a->sort.is_bool(), "not");
  if (is_const(a)) return mk_bool(a->value == 0);
  if (a->op == Op::Not) return a->args[0];
  return make(Op::Not, Sort::boolean(), {a});
}

Term mk_and(std::vector<Term> args) {
  std::vector<Term> kept;
  for (Term& a : args) {
    require(a->sort.is_bool(), "and");
    if (is_false(a)) return mk_false();
    if (is_true(a)) continue;
    auto flat = a->op == Op::And ? a->args : std::vector<Term>{a};
    for (Term& f : flat)
      if (std::none_of(kept.begin(), kept.end(), [&](const Term& k) { return same(k, f); }))
        kept.push_back(f);
  }
  if (kept.empty()) return mk_true();
  if (kept.size() == 1) return kept[0];
  return make(Op::And, Sort::boolean(), std::move(kept));
}

Term mk_and(const Term& a, const Term& b) { return mk_and(std::vector<Term>{a, b}); }

Term mk_or(std::vector<Term> args) {
  std::vector<Term> kept;
  for (Term& a : args) {
    require(a->sort.is_bool(), "or");
    if (is_true(a)) return mk_true();
    if (is_false(a)) continue;
    auto flat = a->op == Op::Or ? a->args : std::vector<Term>{a};
    for (Term& f : flat)
      if (std::none_of(kept.begin(), kept.end(), [&](const Term& k) { return same(k, f); }))
        kept.push_back(f);
  }
  if (kept.empty()) return mk_false();
  if (kept.size() == 1) return kept[0];
  return make(Op::Or, Sort::boolean(), std::move(kept));
}

Term mk_or(const Term& a, const Term& b) { return mk_or(std::vector<Term>{a, b}); }

Term mk_implies(const Term& a, const Term& b) { return mk_or(mk_not(a), b); }

Term mk_ite(const Term& c, const Term& t, const Term& e) {
  require(c->sort.is_bool() && t->sort == e->sort, "ite");
  if (is_true(c)) return t;
  if (is_false(c)) return e;
  if (same(t, e)) return t;
  if (t->sort.is_bool()) {
    if (is_true(t) && is_false(e)) return c;
    if (is_false(t) && is_true(e)) return mk_not(c);
  }
  return make(Op::Ite, t->sort, {c, t, e});
}

Term mk_eq(const Term& a, const Term& b) {
  require(a->sort == b->sort, "=");
  if (same(a, b)) return mk_true();
  if (is_const(a) && is_const(b)) return mk_bool(a->value == b->value);
  if (a->sort.is_bool()) {
    if (is_true(a)) return b;
    if (is_true(b)) return a;
    if (is_false(a)) return mk_not(b);
    if (is_false(b)) return mk_not(a);
  }
  return make(Op::Eq, Sort::boolean(), {a, b});
}

Term mk_unary(Op op, const Term& a) {
  require(a->sort.is_bitvec() && (op == Op::BvNeg || op == Op::BvNot), "unary");
  return fold(make(op, a->sort, {a}));
}

Term mk_binary(Op op, const Term& a, const Term& b) {
  require(a->sort.is_bitvec() && a->sort == b->sort, op_name(op));
  Sort result = a->sort;
  switch (op) {
    case Op::BvSlt:
    case Op::BvSle:
    case Op::BvUlt:
    case Op::BvUle:
    case Op::AddOverflow:
    case Op::SubOverflow:
    case Op::MulOverflow:
      result = Sort::boolean();
      break;
    default:
      break;
  }
  Term t = fold(make(op, result, {a, b}));
  if (is_const(t)) return t;
  auto zero = [](const Term& x) { return x->op == Op::BvConst && x->value == 0; };
  auto one = [](const Term& x) { return x->op == Op::BvConst && x->value == 1; };
  switch (op) {
    case Op::BvAdd:
      if (zero(a)) return b;
      if (zero(b)) return a;
      break;
    case Op::BvSub:
      if (zero(b)) return a;
      break;
    case Op::BvMul:
      if (one(a)) return b;
      if (one(b)) return a;
      if (zero(a) || zero(b)) return mk_bv(0, a->sort.width());
      break;
    case Op::AddOverflow:
    case Op::SubOverflow:
      if (zero(b) || (op == Op::AddOverflow && zero(a))) return mk_false();
      break;
    case Op::MulOverflow:
      if (zero(a) || zero(b) || one(a) || one(b)) return mk_false();
      break;
    default:
      break;
  }
  return t;
}

Term mk_concat(const Term& hi, const Term& lo) {
  require(hi->sort.is_bitvec() && lo->sort.is_bitvec() &&
              hi->sort.width() + lo->sort.width() <= 64,
          "concat");
  return fold(make(Op::Concat, Sort::bitvec(hi->sort.width() + lo->sort.width()), {hi, lo}));
}

Term mk_extract(const Term& a, unsigned hi, unsigned lo) {
  require(a->sort.is_bitvec() && hi >= lo && hi < a->sort.width(), "extract");
  if (lo == 0 && hi + 1 == a->sort.width()) return a;
  auto n = std::make_shared<Node>(Node{Op::Extract, Sort::bitvec(hi - lo + 1), {a}, {}, 0, hi, lo});
  return fold(n);
}

Term mk_sign_extend(const Term& a, unsigned extra) {
  require(a->sort.is_bitvec() && a->sort.width() + extra <= 64, "sign_extend");
  if (extra == 0) return a;
  auto n = std::make_shared<Node>(
      Node{Op::SignExtend, Sort::bitvec(a->sort.width() + extra), {a}, {}, 0, extra, 0});
  return fold(n);
}

Term mk_zero_extend(const Term& a, unsigned extra) {
  require(a->sort.is_bitvec() && a->sort.width() + extra <= 64, "zero_extend");
  if (extra == 0) return a;
  auto n = std::make_shared<Node>(
      Node{Op::ZeroExtend, Sort::bitvec(a->sort.width() + extra), {a}, {}, 0, extra, 0});
  return fold(n);
}

Term mk_select(const Term& array, const Term& index) {
  require(array->sort.is_array() && index->sort == Sort::bitvec(array->sort.index_width()),
          "select");
  // Read-over-write with syntactically decidable indices.
  Term a = array;
  while (true) {
    if (a->op == Op::ConstArray) return a->args[0];
    if (a->op != Op::Store) break;
    const Term& i = a->args[1];
    if (same(i, index)) return a->args[2];
    if (is_const(i) && is_const(index)) {
      a = a->args[0];
      continue;
    }
    break;
  }
  return make(Op::Select, Sort::bitvec(array->sort.width()), {a, index});
}

Term mk_store(const Term& array, const Term& index, const Term& value) {
  require(array->sort.is_array() && index->sort == Sort::bitvec(array->sort.index_width()) &&
              value->sort == Sort::bitvec(array->sort.width()),
          "store");
  return make(Op::Store, array->sort, {array, index, value});
}

Term mk_const_array(const Sort& sort, const Term& value) {
  require(sort.is_array() && value->sort == Sort::bitvec(sort.width()), "const array");
  return make(Op::ConstArray, sort, {value});
}

Term mk_resize(const Term& a, unsigned width, bool is_signed) {
  unsigned w = a->sort.width();
  if (width == w) return a;
  if (width < w) return mk_extract(a, width - 1, 0);
  return is_signed ? mk_sign_extend(a, width - w) : mk_zero_extend(a, width - w);
}

Term bool_to_bv1(const Term& b) { return mk_ite(b, mk_bv(1, 1), mk_bv(0, 1)); }

Term bv1_to_bool(const Term& v) {
  if (v->op == Op::Ite && v->args[1]->op == Op::BvConst && v->args[2]->op == Op::BvConst &&
      v->args[1]->value == 1 && v->args[2]->value == 0)
    return v->args[0];
  return mk_eq(v, mk_bv(1, 1));
}

std::vector<Term> free_symbols(const Term& t) {
  std::map<std::string, Term> found;
  std::unordered_set<const Node*> seen;
  std::vector<Term> todo{t};
  while (!todo.empty()) {
    Term n = todo.back();
    todo.pop_back();
    if (!seen.insert(n.get()).second) continue;
    if (n->op == Op::Symbol) found.emplace(n->name, n);
    for (const Term& a : n->args) todo.push_back(a);
  }
  std::vector<Term> out;
  for (auto& [name, term] : found) out.push_back(term);
  return out;
}

std::string to_string(const Term& t) {
  switch (t->op) {
    case Op::BoolConst: return t->value ? "true" : "false";
    case Op::BvConst:
      return "(_ bv" + std::to_string(t->value) + " " + std::to_string(t->sort.width()) + ")";
    case Op::Symbol: return t->name;
    case Op::Extract:
      return "((_ extract " + std::to_string(t->p0) + " " + std::to_string(t->p1) + ") " +
             to_string(t->args[0]) + ")";
    case Op::SignExtend:
      return "((_ sign_extend " + std::to_string(t->p0) + ") " + to_string(t->args[0]) + ")";
    case Op::ZeroExtend:
      return "((_ zero_extend " + std::to_string(t->p0) + ") " + to_string(t->args[0]) + ")";
    case Op::ConstArray:
      return "((as const " + t->sort.smtlib() + ") " + to_string(t->args[0]) + ")";
    default: {
      std::string s = std::string("(") + op_name(t->op);
      for (const Term& a : t->args) s += " " + to_string(a);
      return s + ")";
    }
  }
}

}  // namespace jimplebmc::solver
