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

#include "vcg_lab/errors.hpp"

#include <sstream>
#include <utility>

namespace vcg_lab {

namespace {

std::string describe_bridges(const std::vector<int>& bridges) {
  std::ostringstream out;
  out << "matroid has " << bridges.size() << " bridge(s):";
  for (int b : bridges) out << ' ' << b;
  out << "; VCG payments to bridges are infinite";
  return out.str();
}

}  // namespace

BridgedMatroidError::BridgedMatroidError(std::vector<int> bridges)
    : RefusalError(describe_bridges(bridges)), bridges_(std::move(bridges)) {}

}  // namespace vcg_lab
