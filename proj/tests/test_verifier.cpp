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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "support.hpp"

using namespace jimplebmc;
using verifier::VerdictKind;

namespace {

symex::CheckSet with_overflow() {
  auto c = symex::default_checks();
  c.insert(gotoir::PropertyClass::Overflow);
  return c;
}

std::string loop_program(int trips, int expected) {
  return R"(public class L extends java.lang.Object
{
    public static void main()
    {
        int i0, i1;

        i0 = 0;
        i1 = 0;

     label1:
        if i0 >= )" + std::to_string(trips) + R"( goto label2;
        i1 = i1 + 2;
        i0 = i0 + 1;
        goto label1;

     label2:
        if i1 == )" + std::to_string(expected) + R"( goto label3;
        staticinvoke <Verifier: void assert(boolean)>(0);

     label3:
        return;
    }
}
)";
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(JIMPLE_BMC_EXE) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  while (std::size_t n = fread(buf.data(), 1, buf.size(), f)) out.append(buf.data(), n);
  int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& rel) { return testsupport::fixture(rel).string(); }

}  // namespace

TEST_CASE("bmc: a three-trip loop is reported by kind of failure") {
  auto p = testsupport::load_text({loop_program(3, 6)});
  auto e = verifier::resolve_entry(p, std::nullopt);
  auto ua = testsupport::options(symex::default_checks(), true);
  auto low = verifier::run_bmc(p, e, 2, ua);
  CHECK(low.kind == VerdictKind::Failed);
  CHECK(low.unwinding_failure);
  CHECK(verifier::report_text(low).find("unwinding assertion") != std::string::npos);

  auto no_ua = verifier::run_bmc(p, e, 2, testsupport::options(symex::default_checks(), false));
  CHECK(no_ua.kind == VerdictKind::SafeWithinBound);
  CHECK(verifier::exit_code(no_ua) == 0);

  auto enough = verifier::run_bmc(p, e, 3, ua);
  CHECK(enough.kind == VerdictKind::Successful);
}

TEST_CASE("incremental: stops at the first sufficient bound") {
  auto p = testsupport::load_text({loop_program(3, 6)});
  auto e = verifier::resolve_entry(p, std::nullopt);
  auto v = verifier::run_incremental(p, e, 10, testsupport::options(symex::default_checks(), true));
  CHECK(v.kind == VerdictKind::Successful);
  CHECK(v.bound == 3);

  auto bad = testsupport::load_text({loop_program(3, 7)});
  auto f = verifier::run_incremental(bad, e, 10, testsupport::options(symex::default_checks(), true));
  CHECK(f.kind == VerdictKind::Failed);
  CHECK_FALSE(f.unwinding_failure);
  CHECK(f.bound == 3);
  REQUIRE(f.replay);
  CHECK(symex::replay_confirms(*f.replay, *f.counterexample));
}

TEST_CASE("k-induction: proves the inductive fixture and is never wrong on the other") {
  auto good = testsupport::load("kind/NondetBound.jimple");
  auto e = verifier::resolve_entry(good, std::nullopt);
  auto v = verifier::run_kinduction(good, e, 10, testsupport::options(symex::default_checks()));
  CHECK(v.kind == VerdictKind::Successful);
  CHECK(v.seconds < 5.0);

  auto other = testsupport::load("kind/NonInductive.jimple");
  auto u = verifier::run_kinduction(other, verifier::resolve_entry(other, std::nullopt), 10,
                                    testsupport::options(symex::default_checks()));
  CHECK(u.kind == VerdictKind::Unknown);
  CHECK(verifier::exit_code(u) == 2);
}

TEST_CASE("strategies agree on every definite verdict") {
  for (const auto& e : std::filesystem::directory_iterator(testsupport::fixture("benchmarks"))) {
    if (e.path().extension() == ".json") continue;
    std::string item = "benchmarks/" + e.path().filename().string();
    CAPTURE(item);
    auto p = testsupport::load(item);
    auto entry = verifier::resolve_entry(p, std::nullopt);
    auto opts = testsupport::options(with_overflow());
    auto b = verifier::run_bmc(p, entry, 10, opts);
    auto i = verifier::run_incremental(p, entry, 10, opts);
    auto k = verifier::run_kinduction(p, entry, 10, opts);
    if (b.kind == VerdictKind::Failed) {
      CHECK(i.kind == VerdictKind::Failed);
      CHECK(k.kind == VerdictKind::Failed);
      CHECK(verifier::property_label(*i.counterexample) == verifier::property_label(*b.counterexample));
    } else {
      CHECK(i.kind != VerdictKind::Failed);
      CHECK(k.kind != VerdictKind::Failed);
    }
  }
}

TEST_CASE("report: failures list inputs and the JSON form mirrors the text") {
  auto p = testsupport::load("misc/Foo.jimple");
  auto v = verifier::run_bmc(p, "Foo::increment_int_int", 10, testsupport::options(with_overflow()));
  REQUIRE(v.kind == VerdictKind::Failed);
  CHECK(verifier::exit_code(v) == 1);
  auto text = verifier::report_text(v);
  CHECK(text.find("Inputs:") != std::string::npos);
  CHECK(text.find("VERIFICATION FAILED") != std::string::npos);
  CHECK(text.find("arithmetic overflow") != std::string::npos);
  auto j = nlohmann::json::parse(verifier::report_json(v));
  CHECK(j["verdict"] == "VerificationFailed");
  CHECK(j["exit_code"] == 1);
  CHECK(j["counterexample"]["replay_confirmed"] == true);
  CHECK(j["counterexample"]["inputs"].size() == 2);
  CHECK(j["counterexample"]["property"] == "overflow");
}

TEST_CASE("cli: exit codes and options") {
  auto fail = cli("--overflow-check --function Foo.increment " + fx("misc/Foo.jimple"));
  CHECK(fail.code == 1);
  CHECK(fail.out.find("VERIFICATION FAILED") != std::string::npos);

  auto safe = cli("--function Foo.increment " + fx("misc/Foo.jimple"));
  CHECK(safe.code == 0);

  auto kind = cli("--k-induction " + fx("kind/NondetBound.jimple"));
  CHECK(kind.code == 0);
  CHECK(kind.out.find("VERIFICATION SUCCESSFUL") != std::string::npos);

  auto unknown = cli("--k-induction --k-max 4 " + fx("kind/NonInductive.jimple"));
  CHECK(unknown.code == 2);

  auto clash = cli("--k-induction --incremental-bmc " + fx("kind/NondetBound.jimple"));
  CHECK(clash.code != 0);
  CHECK(clash.code != 1);

  auto missing = cli("/nonexistent/X.jimple");
  CHECK(missing.code == 2);

  auto js = cli("--json-output --overflow-check --function Foo.increment " + fx("misc/Foo.jimple"));
  CHECK(js.code == 1);
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["verdict"] == "VerificationFailed");

  auto listing = cli("--goto-functions-only --function Foo.increment " + fx("misc/Foo.jimple"));
  CHECK(listing.code == 0);
  CHECK(listing.out.find("ASSIGN $i2 = $i1 + i0") != std::string::npos);

  auto formula_path = std::filesystem::temp_directory_path() / "jimplebmc_vc.smt2";
  std::filesystem::remove(formula_path);
  auto dump = cli("--overflow-check --function Foo.increment --smt-formula " + formula_path.string() +
                  " " + fx("misc/Foo.jimple"));
  CHECK(dump.code == 1);
  std::ifstream in(formula_path);
  std::string smt((std::istreambuf_iterator<char>(in)), {});
  CHECK(smt.find("(check-sat)") != std::string::npos);
  CHECK(smt.find("bvadd") != std::string::npos);
}
