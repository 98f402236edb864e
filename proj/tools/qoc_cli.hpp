// Copyright 2026 The QOC Workbench Authors
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

#ifndef QOC_TOOLS_QOC_CLI_HPP
#define QOC_TOOLS_QOC_CLI_HPP

#include <ostream>

namespace qoc::cli {

/// Exit codes of the `qoc` command.
enum ExitCode : int {
    exit_ok = 0,
    exit_verdict_failed = 1,
    exit_bad_input = 2,
    exit_capacity = 3,
};

/// Runs one `qoc` invocation. Reports go to `out`, diagnostics and timing to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qoc::cli

#endif
