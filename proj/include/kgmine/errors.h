// Copyright 2026 The kgmine Authors.
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

#ifndef KGMINE_ERRORS_H_
#define KGMINE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace kgmine {

// Malformed or inconsistent input data. Maps to exit code 1 in the CLI.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written. Maps to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant violated (e.g. inconsistent pattern lengths).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kgmine

#endif  // KGMINE_ERRORS_H_
