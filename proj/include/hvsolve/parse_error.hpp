// Copyright 2026 The hvsolve Authors
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

#ifndef HVSOLVE_PARSE_ERROR_HPP_
#define HVSOLVE_PARSE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hvsolve {

// Input error with its position: a 1-based line (0 when unknown) and the
// element or statement being read.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string context, const std::string& msg)
      : std::runtime_error(format(line, context, msg)),
        line_(line),
        context_(std::move(context)),
        message_(msg) {}

  std::size_t line() const { return line_; }
  const std::string& context() const { return context_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(std::size_t line, const std::string& context,
                            const std::string& msg) {
    std::string out;
    if (line) out += "line " + std::to_string(line) + ": ";
    if (!context.empty()) out += context + ": ";
    return out + msg;
  }

  std::size_t line_;
  std::string context_;
  std::string message_;
};

}  // namespace hvsolve

#endif  // HVSOLVE_PARSE_ERROR_HPP_
