// Copyright 2026 The fpmul Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPMUL_ERROR_HPP
#define FPMUL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fpmul {

enum class ErrorCode : int {
  kOk = 0,
  kNotPrime = 1,
  kNoInverse = 2,
  kContextMismatch = 3,
  kParameter = 4,
  kDivisibility = 5,
  kSearchExhausted = 6,
  kParse = 7,
  kLengthMismatch = 8,
  kUnsupported = 9,
  kInternal = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fpmul

#endif  // FPMUL_ERROR_HPP
