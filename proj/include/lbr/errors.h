// Copyright 2026 The lbr-bench Authors.
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

#ifndef LBR_ERRORS_H_
#define LBR_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lbr {

// Malformed text input (cards, state strings, wire messages, CLI specs).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position = 0)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A precondition on the domain of an operation was violated.
class DomainError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An action outside the legal action space of the state it was applied to.
class IllegalActionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Bayesian conditioning removed all probability mass.
class DegenerateRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transport failure or malformed response from a strategy oracle.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Preflop table missing, unreadable or corrupt.
class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lbr

#endif  // LBR_ERRORS_H_
