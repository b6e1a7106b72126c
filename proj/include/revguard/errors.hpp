// Copyright 2026 The revguard Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace revguard {

/// Malformed or out-of-contract input (bad file, width mismatch, cap exceeded).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant did not hold; indicates a bug rather than bad input.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when every output of a circuit is leaked garbage.
class degenerate_circuit : public input_error {
 public:
  using input_error::input_error;
};

}  // namespace revguard
