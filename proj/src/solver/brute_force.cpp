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

#include "jimplebmc/solver/brute_force.hpp"

namespace jimplebmc::solver {

namespace {

constexpr unsigned kMaxTotalBits = 24;

// Number of free bits a declaration contributes to the search space.
unsigned bits_of(const Sort& s) {
  if (s.is_bool()) return 1;
  if (s.is_bitvec()) return s.width();
  return s.width() << s.index_width();
}

Value decode(const Sort& s, std::uint64_t bits) {
  if (s.is_bool()) return Value::of_bool(bits & 1);
  if (s.is_bitvec()) return Value::of_bv(bits, s.width());
  Value v = Value::of_array(s, 0);
  unsigned cells = 1u << s.index_width();
  for (unsigned i = 0; i < cells; ++i) {
    std::uint64_t cell = (bits >> (i * s.width())) & mask(s.width());
    if (cell != 0) v.entries[i] = cell;
  }
  return v;
}

}  // namespace

BruteForceResult brute_force(const Formula& formula, unsigned width_limit, unsigned symbol_limit) {
  if (formula.declarations.size() > symbol_limit)
    throw OracleLimitError("too many symbols for exhaustive search");
  unsigned total = 0;
  for (const Declaration& d : formula.declarations) {
    if (d.sort.is_bitvec() && d.sort.width() > width_limit)
      throw OracleLimitError("bit-vector '" + d.name + "' is wider than the oracle limit");
    if (d.sort.is_array() && (d.sort.index_width() > 3 || d.sort.width() > width_limit))
      throw OracleLimitError("array '" + d.name + "' is too large for the oracle");
    total += bits_of(d.sort);
  }
  if (total > kMaxTotalBits) throw OracleLimitError("search space exceeds 2^24 valuations");

  BruteForceResult result;
  const std::uint64_t count = std::uint64_t{1} << total;
  for (std::uint64_t word = 0; word < count; ++word) {
    Model m;
    // The first declaration varies slowest.
    unsigned shift = total;
    for (const Declaration& d : formula.declarations) {
      unsigned b = bits_of(d.sort);
      shift -= b;
      m.values[d.name] = decode(d.sort, (word >> shift) & mask(b));
    }
    ++result.valuations;
    if (evaluate(formula.assertion, m).as_bool()) {
      result.status = SolveStatus::Sat;
      result.model = std::move(m);
      return result;
    }
  }
  result.status = SolveStatus::Unsat;
  return result;
}

}  // namespace jimplebmc::solver
