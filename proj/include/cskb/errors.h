// Copyright 2026 The cskb Authors.
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

#ifndef CSKB_ERRORS_H_
#define CSKB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cskb {

// Malformed textual input (relation lines, export lines, config files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a domain contract (unknown vocabulary, bad arguments).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A referenced entity (statement, game, session, activity) does not exist.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation is not allowed in the current lifecycle state.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem or persistence failure.
class StorageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cskb

#endif  // CSKB_ERRORS_H_
