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

// Helpers shared by the test binaries.

#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "jimplebmc/jimple/parser.hpp"
#include "jimplebmc/verifier/verifier.hpp"

namespace testsupport {

inline std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(FIXTURES_DIR) / relative;
}

inline jimplebmc::verifier::VerifyOptions options(
    jimplebmc::symex::CheckSet checks = jimplebmc::symex::default_checks(),
    bool unwinding_assertions = false) {
  jimplebmc::verifier::VerifyOptions o;
  o.checks = std::move(checks);
  o.unwinding_assertions = unwinding_assertions;
  o.solver = jimplebmc::solver::find_solver(std::nullopt, std::chrono::milliseconds(60000));
  return o;
}

inline jimplebmc::gotoir::GotoProgram load(const std::string& relative) {
  return jimplebmc::verifier::load_program({fixture(relative)});
}

/// Loads a program from Jimple source text (one class per string).
inline jimplebmc::gotoir::GotoProgram load_text(const std::vector<std::string>& classes) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("jimplebmc-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::ofstream out(dir / ("C" + std::to_string(i) + ".jimple"));
    out << classes[i];
  }
  auto program = jimplebmc::verifier::load_program({dir});
  std::filesystem::remove_all(dir);
  return program;
}

}  // namespace testsupport
