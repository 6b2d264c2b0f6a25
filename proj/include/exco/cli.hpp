/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#ifndef EXCO_CLI_HPP
#define EXCO_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace exco::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2, kResourceError = 3 };

/// Runs one command; `args` excludes the program name. The JSON report goes
/// to `out`, the summary and timing to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exco::cli

#endif  // EXCO_CLI_HPP
