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

#include "vcg_lab/replicate.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

int resolve_threads(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw DomainError("thread count must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("VCG_LAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("bad VCG_LAB_THREADS value '") + env + "'");
  }
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

}  // namespace vcg_lab
