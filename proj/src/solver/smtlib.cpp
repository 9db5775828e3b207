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

#include "jimplebmc/solver/smtlib.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "jimplebmc/error.hpp"

namespace jimplebmc::solver {

namespace {

const std::unordered_set<std::string> kReserved{
    "true", "false", "not", "and", "or", "ite", "let", "as", "assert", "par", "exists",
    "forall", "lambda", "_", "!", "=", "=>", "select", "store", "concat", "extract",
    "NUMERAL", "DECIMAL", "STRING", "BINARY", "HEXADECIMAL"};

std::string bv_literal(std::uint64_t v, unsigned w) {
  return "(_ bv" + std::to_string(v & mask(w)) + " " + std::to_string(w) + ")";
}

const char* smt_op(Op op) {
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
    default: return nullptr;
  }
}

// Emits the assertion as a sequence of define-funs for shared subterms so
// that DAG-shaped terms stay linear in size.
class Emitter {
 public:
  std::string run(const Formula& f) {
    std::ostringstream out;
    out << "(set-option :produce-models true)\n(set-logic QF_ABV)\n";
    for (const Declaration& d : f.declarations)
      out << "(declare-const " << smt_symbol(d.name) << " " << d.sort.smtlib() << ")\n";
    count(f.assertion);
    std::string body = render(f.assertion);
    out << defs_.str();
    out << "(assert " << body << ")\n(check-sat)\n";
    if (!f.declarations.empty()) {
      out << "(get-value (";
      for (std::size_t i = 0; i < f.declarations.size(); ++i)
        out << (i ? " " : "") << smt_symbol(f.declarations[i].name);
      out << "))\n";
    }
    out << "(exit)\n";
    return out.str();
  }

 private:
  void count(const Term& root) {
    std::vector<const Node*> todo{root.get()};
    while (!todo.empty()) {
      const Node* n = todo.back();
      todo.pop_back();
      if (refs_[n]++ > 0) continue;
      for (const Term& a : n->args) todo.push_back(a.get());
    }
  }

  std::string render(const Term& t) {
    const Node* n = t.get();
    auto done = names_.find(n);
    if (done != names_.end()) return done->second;
    std::string text = render_node(*n);
    if (!n->args.empty() && refs_[n] > 1) {
      std::string name = "$$d" + std::to_string(next_++);
      defs_ << "(define-fun " << name << " () " << n->sort.smtlib() << " " << text << ")\n";
      names_.emplace(n, name);
      return name;
    }
    names_.emplace(n, text);
    return text;
  }

  std::string render_node(const Node& n) {
    switch (n.op) {
      case Op::BoolConst: return n.value ? "true" : "false";
      case Op::BvConst: return bv_literal(n.value, n.sort.width());
      case Op::Symbol: return smt_symbol(n.name);
      case Op::Extract:
        return "((_ extract " + std::to_string(n.p0) + " " + std::to_string(n.p1) + ") " +
               render(n.args[0]) + ")";
      case Op::SignExtend:
        return "((_ sign_extend " + std::to_string(n.p0) + ") " + render(n.args[0]) + ")";
      case Op::ZeroExtend:
        return "((_ zero_extend " + std::to_string(n.p0) + ") " + render(n.args[0]) + ")";
      case Op::ConstArray:
        return "((as const " + n.sort.smtlib() + ") " + render(n.args[0]) + ")";
      case Op::AddOverflow:
      case Op::SubOverflow:
      case Op::MulOverflow:
        return render_overflow(n);
      default: break;
    }
    std::string s = std::string("(") + smt_op(n.op);
    for (const Term& a : n.args) s += " " + render(a);
    return s + ")";
  }

  // Signed overflow: compute exactly in a wider vector and compare with the
  // sign-extended truncation. Multiplication needs twice the width.
  std::string render_overflow(const Node& n) {
    unsigned w = n.args[0]->sort.width();
    unsigned extra = n.op == Op::MulOverflow ? w : 1;
    std::string a = render(n.args[0]), b = render(n.args[1]);
    auto ext = [&](const std::string& x) {
      return "((_ sign_extend " + std::to_string(extra) + ") " + x + ")";
    };
    const char* op = n.op == Op::AddOverflow ? "bvadd" : n.op == Op::SubOverflow ? "bvsub" : "bvmul";
    std::string wide = std::string("(") + op + " " + ext(a) + " " + ext(b) + ")";
    std::string narrow = std::string("(") + op + " " + a + " " + b + ")";
    return "(not (= " + wide + " " + ext(narrow) + "))";
  }

  std::unordered_map<const Node*, unsigned> refs_;
  std::unordered_map<const Node*, std::string> names_;
  std::ostringstream defs_;
  unsigned next_ = 0;
};

// Minimal s-expression reader for solver responses.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw std::runtime_error("unexpected end of solver output");
    SExpr e;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      e.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw std::runtime_error("unbalanced solver output");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.list.push_back(read());
      }
      return e;
    }
    if (c == ')') throw std::runtime_error("unexpected ')' in solver output");
    if (c == '|') {
      std::size_t end = text_.find('|', pos_ + 1);
      if (end == std::string_view::npos) throw std::runtime_error("unterminated |symbol|");
      e.atom = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return e;
    }
    if (c == '"') {
      std::size_t end = pos_ + 1;
      while (end < text_.size()) {
        if (text_[end] == '"') {
          if (end + 1 < text_.size() && text_[end + 1] == '"') {
            end += 2;
            continue;
          }
          break;
        }
        ++end;
      }
      e.atom = std::string(text_.substr(pos_, end + 1 - pos_));
      pos_ = end + 1;
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::uint64_t parse_bits(const SExpr& e) {
  if (!e.is_list) {
    const std::string& a = e.atom;
    if (a == "true") return 1;
    if (a == "false") return 0;
    if (a.size() > 2 && a[0] == '#' && a[1] == 'x') return std::stoull(a.substr(2), nullptr, 16);
    if (a.size() > 2 && a[0] == '#' && a[1] == 'b') return std::stoull(a.substr(2), nullptr, 2);
  } else if (e.list.size() == 3 && !e.list[0].is_list && e.list[0].atom == "_" &&
             e.list[1].atom.rfind("bv", 0) == 0) {
    return std::stoull(e.list[1].atom.substr(2));
  }
  throw std::runtime_error("unrecognised value in solver output");
}

bool head_is(const SExpr& e, const char* head) {
  return e.is_list && !e.list.empty() && !e.list[0].is_list && e.list[0].atom == head;
}

// Array values: ((as const S) v), (store a i v), or a lambda with nested
// ite over (= x k).
void parse_array(const SExpr& e, Value& out, const std::string& bound) {
  if (e.is_list && e.list.size() == 2 && head_is(e.list[0], "as")) {
    out.bits = parse_bits(e.list[1]);
    return;
  }
  if (head_is(e, "store") && e.list.size() == 4) {
    parse_array(e.list[1], out, bound);
    out.entries[parse_bits(e.list[2])] = parse_bits(e.list[3]);
    return;
  }
  if (head_is(e, "lambda") && e.list.size() == 3 && e.list[1].is_list &&
      !e.list[1].list.empty() && e.list[1].list[0].is_list && !e.list[1].list[0].list.empty()) {
    parse_array(e.list[2], out, e.list[1].list[0].list[0].atom);
    return;
  }
  if (head_is(e, "ite") && e.list.size() == 4 && head_is(e.list[1], "=") &&
      e.list[1].list.size() == 3) {
    const SExpr& lhs = e.list[1].list[1];
    const SExpr& rhs = e.list[1].list[2];
    const SExpr& key = (!lhs.is_list && lhs.atom == bound) ? rhs : lhs;
    parse_array(e.list[3], out, bound);
    out.entries[parse_bits(key)] = parse_bits(e.list[2]);
    return;
  }
  out.bits = parse_bits(e);
}

// Inlines (let ((x e) ...) body) bindings, which z3 uses for large arrays.
SExpr expand_lets(const SExpr& e, const std::map<std::string, SExpr>& env) {
  if (!e.is_list) {
    auto it = env.find(e.atom);
    return it == env.end() ? e : it->second;
  }
  if (head_is(e, "let") && e.list.size() == 3 && e.list[1].is_list) {
    std::map<std::string, SExpr> inner = env;
    for (const SExpr& b : e.list[1].list)
      if (b.is_list && b.list.size() == 2) inner[b.list[0].atom] = expand_lets(b.list[1], env);
    return expand_lets(e.list[2], inner);
  }
  SExpr out = e;
  for (SExpr& c : out.list) c = expand_lets(c, env);
  return out;
}

Value parse_value(const SExpr& raw, const Sort& sort) {
  SExpr e = expand_lets(raw, {});
  if (sort.is_bool()) return Value::of_bool(parse_bits(e) != 0);
  if (sort.is_bitvec()) return Value::of_bv(parse_bits(e), sort.width());
  Value v = Value::of_array(sort, 0);
  parse_array(e, v, "");
  // Drop entries equal to the default so equal arrays compare equal.
  for (auto it = v.entries.begin(); it != v.entries.end();)
    it = it->second == v.bits ? v.entries.erase(it) : std::next(it);
  return v;
}

bool executable(const std::string& path) {
  struct stat st {};
  return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(path.c_str(), X_OK) == 0;
}

std::optional<std::string> search_path(const std::string& name) {
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    std::string candidate = dir + "/" + name;
    if (executable(candidate)) return candidate;
  }
  return std::nullopt;
}

struct ProcessResult {
  bool timed_out = false;
  bool crashed = false;
  std::string output;
};

// Runs argv with `input` on standard input and collects stdout and stderr.
// Standard input is a socket so that a solver exiting early cannot raise
// SIGPIPE in this process.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input,
                          std::chrono::milliseconds timeout) {
  int out[2];
  int in[2];
  if (::pipe(out) != 0) throw ConfigError(std::string("pipe failed: ") + std::strerror(errno));
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, in) != 0) {
    ::close(out[0]);
    ::close(out[1]);
    throw ConfigError(std::string("socketpair failed: ") + std::strerror(errno));
  }
  pid_t pid = ::fork();
  if (pid < 0) throw ConfigError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in[1], STDIN_FILENO);
    ::dup2(out[1], STDOUT_FILENO);
    ::dup2(out[1], STDERR_FILENO);
    ::close(in[0]);
    ::close(in[1]);
    ::close(out[0]);
    ::close(out[1]);
    std::vector<char*> args;
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execv(args[0], args.data());
    ::_exit(127);
  }
  ::close(out[1]);
  ::close(in[1]);
  int writer = in[0];
  ::fcntl(writer, F_SETFL, ::fcntl(writer, F_GETFL) | O_NONBLOCK);
  std::size_t written = 0;
  if (input.empty()) {
    ::close(writer);
    writer = -1;
  }
  ProcessResult result;
  auto deadline = std::chrono::steady_clock::now() + timeout;
  std::array<char, 4096> buf{};
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      result.timed_out = true;
      ::kill(pid, SIGKILL);
      break;
    }
    std::array<pollfd, 2> fds{pollfd{out[0], POLLIN, 0}, pollfd{writer, POLLOUT, 0}};
    int r = ::poll(fds.data(), writer >= 0 ? 2 : 1,
                   static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (r < 0 && errno == EINTR) continue;
    if (r == 0) continue;
    if (writer >= 0 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t n = ::send(writer, input.data() + written, input.size() - written, MSG_NOSIGNAL);
      if (n > 0) written += static_cast<std::size_t>(n);
      if ((n < 0 && errno != EAGAIN && errno != EINTR) || written == input.size()) {
        ::shutdown(writer, SHUT_WR);
        ::close(writer);
        writer = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      ssize_t got = ::read(out[0], buf.data(), buf.size());
      if (got < 0 && errno == EINTR) continue;
      if (got <= 0) break;
      result.output.append(buf.data(), static_cast<std::size_t>(got));
    }
  }
  if (writer >= 0) ::close(writer);
  ::close(out[0]);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!result.timed_out)
    result.crashed = WIFSIGNALED(status) || (WIFEXITED(status) && WEXITSTATUS(status) == 127);
  return result;
}

}  // namespace

std::string smt_symbol(const std::string& name) {
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) &&
                name[0] != '@' && name[0] != '.' && !kReserved.count(name);
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$'))
      simple = false;
  if (simple) return name;
  std::string quoted = "|";
  for (char c : name) quoted += (c == '|' || c == '\\') ? '_' : c;
  return quoted + "|";
}

std::string emit_smtlib2(const Formula& formula) { return Emitter().run(formula); }

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

SolveResult parse_solver_output(std::string_view output, const Formula& formula) {
  SolveResult result;
  SExprReader reader(output);
  try {
    if (reader.at_end()) {
      result.reason = "solver produced no output";
      return result;
    }
    SExpr first = reader.read();
    if (first.is_list) {
      result.reason = "solver error before check-sat";
      return result;
    }
    if (first.atom == "unsat") {
      result.status = SolveStatus::Unsat;
      return result;
    }
    if (first.atom != "sat") {
      result.reason = "solver answered '" + first.atom + "'";
      return result;
    }
    std::unordered_map<std::string, const Sort*> sorts;
    for (const Declaration& d : formula.declarations) sorts.emplace(d.name, &d.sort);
    while (!reader.at_end()) {
      SExpr e = reader.read();
      if (head_is(e, "error")) continue;
      if (!e.is_list) continue;
      for (const SExpr& pair : e.list) {
        if (!pair.is_list || pair.list.size() != 2 || pair.list[0].is_list) continue;
        auto it = sorts.find(pair.list[0].atom);
        if (it == sorts.end()) continue;
        result.model.values[it->first] = parse_value(pair.list[1], *it->second);
      }
    }
    for (const Declaration& d : formula.declarations)
      if (!result.model.has(d.name)) {
        result.reason = "model lacks a value for '" + d.name + "'";
        result.model.values.clear();
        return result;
      }
    result.status = SolveStatus::Sat;
  } catch (const std::exception& ex) {
    result.status = SolveStatus::Unknown;
    result.model.values.clear();
    result.reason = std::string("could not parse solver output: ") + ex.what();
  }
  return result;
}

SolverConfig find_solver(const std::optional<std::string>& explicit_path,
                         std::chrono::milliseconds timeout) {
  SolverConfig config;
  config.timeout = timeout;
  if (explicit_path) {
    std::string p = *explicit_path;
    if (p.find('/') == std::string::npos)
      if (auto found = search_path(p)) p = *found;
    if (!executable(p)) throw ConfigError("solver '" + *explicit_path + "' is not an executable");
    config.path = p;
    return config;
  }
  if (const char* env = std::getenv("JIMPLE_BMC_SOLVER"); env && *env) {
    if (!executable(env))
      throw ConfigError(std::string("JIMPLE_BMC_SOLVER='") + env + "' is not an executable");
    config.path = env;
    return config;
  }
  for (const char* name : {"z3", "cvc5"})
    if (auto found = search_path(name)) {
      config.path = *found;
      return config;
    }
  throw ConfigError("no SMT solver found: install z3 or cvc5, or pass --smt-solver PATH");
}

SolveResult solve(const Formula& formula, const SolverConfig& config) {
  std::vector<std::string> argv{config.path};
  std::string base = std::filesystem::path(config.path).filename().string();
  if (base.find("cvc5") != std::string::npos) {
    argv.push_back("--lang=smt2");
    argv.push_back("--produce-models");
  } else {
    argv.push_back("-in");
  }
  ProcessResult proc = run_process(argv, emit_smtlib2(formula), config.timeout);
  if (proc.timed_out) return {SolveStatus::Unknown, {}, "solver timed out"};
  if (proc.crashed) return {SolveStatus::Unknown, {}, "solver process failed to run"};
  return parse_solver_output(proc.output, formula);
}

}  // namespace jimplebmc::solver
