// Copyright 2026 The Authors.
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

#ifndef VCG_LAB_ERRORS_HPP_
#define VCG_LAB_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace vcg_lab {

// Invalid argument: out-of-range item, bad distribution parameter, dependent
// set where an independent one is required, and so on.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// No structure (basis) of finite cost exists under the requested edits.
class NoFiniteBasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An integral over [0, inf) does not converge because of a bridge.
class DivergentIntegralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation was refused: enumeration guard exceeded, acceptance rate
// too small, memory cap, ...
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The matroid has ground-set bridges, so every VCG total is infinite.
class BridgedMatroidError : public RefusalError {
 public:
  explicit BridgedMatroidError(std::vector<int> bridges);

  const std::vector<int>& bridges() const { return bridges_; }

 private:
  std::vector<int> bridges_;
};

// Not enough data to form a statistic.
class StatisticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vcg_lab

#endif  // VCG_LAB_ERRORS_HPP_
