// Copyright 2026 The secgame Authors
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

#ifndef SECGAME_CHECK_H_
#define SECGAME_CHECK_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace secgame {

// Thrown when an operation's precondition is violated.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace internal {
[[noreturn]] inline void CheckFailed(const char* expr, const char* file,
                                     int line, const std::string& msg) {
  std::ostringstream oss;
  oss << file << ":" << line << ": check failed: " << expr;
  if (!msg.empty()) oss << " (" << msg << ")";
  throw ContractError(oss.str());
}
}  // namespace internal

}  // namespace secgame

#define SECGAME_CHECK(cond)                                              \
  do {                                                                   \
    if (!(cond))                                                         \
      ::secgame::internal::CheckFailed(#cond, __FILE__, __LINE__, "");   \
  } while (false)

#define SECGAME_CHECK_MSG(cond, msg)                                     \
  do {                                                                   \
    if (!(cond)) {                                                       \
      std::ostringstream secgame_check_oss;                              \
      secgame_check_oss << msg;                                          \
      ::secgame::internal::CheckFailed(#cond, __FILE__, __LINE__,        \
                                       secgame_check_oss.str());         \
    }                                                                    \
  } while (false)

#endif  // SECGAME_CHECK_H_
