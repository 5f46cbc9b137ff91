// Copyright 2026 The fedrec Authors
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

#ifndef FEDREC_COMMON_ERROR_H_
#define FEDREC_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace fedrec {

enum class ErrorCode {
  kInput,     // malformed or out-of-range caller input
  kProtocol,  // a party violated the message protocol or a session aborted
  kConfig,    // invalid run configuration
  kIo,        // filesystem failure
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& m) : Error(ErrorCode::kInput, m) {}
};

class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& m)
      : Error(ErrorCode::kProtocol, m) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error(ErrorCode::kConfig, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorCode::kIo, m) {}
};

}  // namespace fedrec

#endif  // FEDREC_COMMON_ERROR_H_
