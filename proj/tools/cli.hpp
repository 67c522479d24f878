// Copyright 2026 The Platoon Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PLATOON_TOOLS_CLI_HPP_
#define PLATOON_TOOLS_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "platoon/scenario.hpp"

namespace platoon::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kConfigError = 2;

/// A scenario argument is either a path to a JSON file or the name of a
/// bundled scenario (`lane_change_pp` resolves to <scenario dir>/lane_change_pp.json).
std::filesystem::path resolve_scenario(const std::string & name_or_path);

/// Entry point shared by the binary and the tests.
int main(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace platoon::cli

#endif  // PLATOON_TOOLS_CLI_HPP_
