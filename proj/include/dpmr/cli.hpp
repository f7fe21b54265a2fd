//
// Copyright 2026 The dpmedreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPMR_CLI_HPP_
#define DPMR_CLI_HPP_

// Entry point of the `dpmr` command line tool, callable in-process.

#include <ostream>
#include <string>
#include <vector>

namespace dpmr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kVersion = "0.1.0";

// `args` excludes the program name. Results go to `out`, diagnostics and
// progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dpmr::cli

#endif  // DPMR_CLI_HPP_
