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

#include "jimplebmc/solver/formula.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>

namespace jimplebmc::solver {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::uint64_t udiv(std::uint64_t a, std::uint64_t b, unsigned w) {
  return b == 0 ? mask(w) : a / b;
}

std::uint64_t urem(std::uint64_t a, std::uint64_t b) { return b == 0 ? a : a % b; }

std::uint64_t neg(std::uint64_t a, unsigned w) { return (~a + 1) & mask(w); }

bool sign_bit(std::uint64_t a, unsigned w) { return (a >> (w - 1)) & 1; }

// SMT-LIB bvsdiv/bvsrem, defined through the unsigned operations on magnitudes.
std::uint64_t sdiv(std::uint64_t a, std::uint64_t b, unsigned w) {
  bool na = sign_bit(a, w), nb = sign_bit(b, w);
  std::uint64_t ma = na ? neg(a, w) : a, mb = nb ? neg(b, w) : b;
  std::uint64_t q = udiv(ma, mb, w);
  return (na != nb) ? neg(q, w) : q;
}

std::uint64_t srem(std::uint64_t a, std::uint64_t b, unsigned w) {
  bool na = sign_bit(a, w), nb = sign_bit(b, w);
  std::uint64_t ma = na ? neg(a, w) : a, mb = nb ? neg(b, w) : b;
  std::uint64_t r = urem(ma, mb);
  return na ? neg(r, w) : r;
}

bool out_of_range(i128 v, unsigned w) {
  i128 lo = -(i128{1} << (w - 1));
  i128 hi = (i128{1} << (w - 1)) - 1;
  return v < lo || v > hi;
}

bool arrays_equal(const Value& a, const Value& b) {
  unsigned iw = a.sort.index_width();
  if (iw <= 16) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << iw); ++i)
      if (a.at(i) != b.at(i)) return false;
    return true;
  }
  if (a.bits != b.bits) return false;
  std::set<std::uint64_t> keys;
  for (auto& [k, v] : a.entries) keys.insert(k);
  for (auto& [k, v] : b.entries) keys.insert(k);
  for (std::uint64_t k : keys)
    if (a.at(k) != b.at(k)) return false;
  return true;
}

class Evaluator {
 public:
  explicit Evaluator(const Model& model) : model_(model) {}

  Value eval(const Term& t) {
    auto it = memo_.find(t.get());
    if (it != memo_.end()) return it->second;
    Value v = compute(*t);
    memo_.emplace(t.get(), v);
    return v;
  }

 private:
  Value compute(const Node& n) {
    const Sort& s = n.sort;
    unsigned w = s.is_bitvec() ? s.width() : 0;
    auto arg = [&](std::size_t i) { return eval(n.args[i]); };
    auto bv = [&](std::uint64_t v) { return Value::of_bv(v, w); };
    auto pred = [&](bool b) { return Value::of_bool(b); };
    switch (n.op) {
      case Op::BoolConst: return Value::of_bool(n.value != 0);
      case Op::BvConst: return bv(n.value);
      case Op::Symbol: {
        if (const Value* v = model_.find(n.name)) return *v;
        if (s.is_bool()) return Value::of_bool(false);
        if (s.is_bitvec()) return bv(0);
        return Value::of_array(s, 0);
      }
      case Op::Not: return pred(!arg(0).as_bool());
      case Op::And:
        for (std::size_t i = 0; i < n.args.size(); ++i)
          if (!arg(i).as_bool()) return pred(false);
        return pred(true);
      case Op::Or:
        for (std::size_t i = 0; i < n.args.size(); ++i)
          if (arg(i).as_bool()) return pred(true);
        return pred(false);
      case Op::Implies: return pred(!arg(0).as_bool() || arg(1).as_bool());
      case Op::Ite: return arg(0).as_bool() ? arg(1) : arg(2);
      case Op::Eq: {
        Value a = arg(0), b = arg(1);
        if (a.sort.is_array()) return pred(arrays_equal(a, b));
        return pred(a.bits == b.bits);
      }
      case Op::BvNeg: return bv(neg(arg(0).bits, w));
      case Op::BvNot: return bv(~arg(0).bits);
      case Op::Concat: {
        Value hi = arg(0), lo = arg(1);
        return bv((hi.bits << lo.sort.width()) | lo.bits);
      }
      case Op::Extract: return bv(arg(0).bits >> n.p1);
      case Op::SignExtend: {
        Value a = arg(0);
        return bv(static_cast<std::uint64_t>(a.as_signed()));
      }
      case Op::ZeroExtend: return bv(arg(0).bits);
      case Op::Select: return Value::of_bv(arg(0).at(arg(1).bits), w);
      case Op::Store: {
        Value a = arg(0);
        a.entries[arg(1).bits] = arg(2).bits;
        return a;
      }
      case Op::ConstArray: return Value::of_array(s, arg(0).bits);
      default: break;
    }
    // Binary bit-vector operations.
    Value a = arg(0), b = arg(1);
    unsigned aw = a.sort.width();
    std::uint64_t x = a.bits, y = b.bits;
    switch (n.op) {
      case Op::BvAdd: return bv(x + y);
      case Op::BvSub: return bv(x - y);
      case Op::BvMul: return bv(static_cast<std::uint64_t>(static_cast<u128>(x) * y));
      case Op::BvUdiv: return bv(udiv(x, y, w));
      case Op::BvUrem: return bv(urem(x, y));
      case Op::BvSdiv: return bv(sdiv(x, y, w));
      case Op::BvSrem: return bv(srem(x, y, w));
      case Op::BvAnd: return bv(x & y);
      case Op::BvOr: return bv(x | y);
      case Op::BvXor: return bv(x ^ y);
      case Op::BvShl: return bv(y >= w ? 0 : x << y);
      case Op::BvLshr: return bv(y >= w ? 0 : x >> y);
      case Op::BvAshr: {
        std::int64_t sx = a.as_signed();
        return bv(static_cast<std::uint64_t>(y >= w ? (sx < 0 ? -1 : 0) : sx >> y));
      }
      case Op::BvSlt: return pred(a.as_signed() < b.as_signed());
      case Op::BvSle: return pred(a.as_signed() <= b.as_signed());
      case Op::BvUlt: return pred(x < y);
      case Op::BvUle: return pred(x <= y);
      case Op::AddOverflow:
        return pred(out_of_range(i128{a.as_signed()} + i128{b.as_signed()}, aw));
      case Op::SubOverflow:
        return pred(out_of_range(i128{a.as_signed()} - i128{b.as_signed()}, aw));
      case Op::MulOverflow:
        return pred(out_of_range(i128{a.as_signed()} * i128{b.as_signed()}, aw));
      default: break;
    }
    throw std::logic_error("evaluate: unhandled operator");
  }

  const Model& model_;
  std::unordered_map<const Node*, Value> memo_;
};

}  // namespace

Formula Formula::of(const Term& assertion) { return of(assertion, {}); }

Formula Formula::of(const Term& assertion, const std::vector<Term>& extra) {
  std::map<std::string, Sort> decls;
  for (const Term& s : free_symbols(assertion)) decls.emplace(s->name, s->sort);
  for (const Term& e : extra)
    for (const Term& s : free_symbols(e)) decls.emplace(s->name, s->sort);
  Formula f;
  f.assertion = assertion;
  for (auto& [name, sort] : decls) f.declarations.push_back({name, sort});
  return f;
}

std::uint64_t Value::at(std::uint64_t index) const {
  auto it = entries.find(index);
  return it == entries.end() ? bits : it->second;
}

std::string Value::str() const {
  if (sort.is_bool()) return bits ? "true" : "false";
  if (sort.is_bitvec()) return std::to_string(as_signed());
  std::string s = "[default " + std::to_string(bits);
  for (auto& [k, v] : entries) s += ", " + std::to_string(k) + " -> " + std::to_string(v);
  return s + "]";
}

const Value* Model::find(const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? nullptr : &it->second;
}

Value evaluate(const Term& t, const Model& model) { return Evaluator(model).eval(t); }

}  // namespace jimplebmc::solver
