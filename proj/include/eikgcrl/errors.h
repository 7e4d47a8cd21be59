// Copyright 2026 The EikGCRL Authors
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

#ifndef EIKGCRL_ERRORS_H_
#define EIKGCRL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace eikgcrl {

// Bad user input: malformed config, unknown maze, wrong dimensions.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

// A file on disk that does not parse (bad magic, truncation, version).
class CorruptArtifact : public std::runtime_error {
 public:
  explicit CorruptArtifact(const std::string& what)
      : std::runtime_error(what) {}
};

// NaN/Inf encountered during training or evaluation.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

// A graph node whose derivative rule is not available.
class UnsupportedPrimitive : public std::logic_error {
 public:
  explicit UnsupportedPrimitive(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace eikgcrl

#endif  // EIKGCRL_ERRORS_H_
