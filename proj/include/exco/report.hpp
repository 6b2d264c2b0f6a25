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

#ifndef EXCO_REPORT_HPP
#define EXCO_REPORT_HPP

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace exco {

/// Malformed or ill-shaped input (dangling ids, missing products, foreign
/// elements). Distinct from a law violation, which is reported as a value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration exceeded its budget. Never silently truncated.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of a law checker. An empty report (ok() == true) means every
/// checked instance held; otherwise `law` names the violated law and
/// `counterexample` carries the first violating witnesses in fixture order.
struct Report {
  std::string law;
  std::string message;
  nlohmann::json counterexample;
  bool failed = false;

  [[nodiscard]] bool ok() const { return !failed; }
  explicit operator bool() const { return ok(); }

  static Report pass() { return {}; }
  static Report fail(std::string law, std::string message,
                     nlohmann::json counterexample = nlohmann::json::object()) {
    Report r;
    r.law = std::move(law);
    r.message = std::move(message);
    r.counterexample = std::move(counterexample);
    r.failed = true;
    return r;
  }

  [[nodiscard]] nlohmann::json to_json() const {
    if (ok()) return {{"status", "pass"}};
    return {{"status", "fail"},
            {"law", law},
            {"message", message},
            {"counterexample", counterexample}};
  }
};

}  // namespace exco

#endif  // EXCO_REPORT_HPP
