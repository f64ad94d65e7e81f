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

#ifndef VCG_LAB_REPLICATE_HPP_
#define VCG_LAB_REPLICATE_HPP_

#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vcg_lab {

// Worker count: the explicit request if given, else VCG_LAB_THREADS, else the
// OpenMP default. Always >= 1.
int resolve_threads(std::optional<int> requested = std::nullopt);

// Reference kernel: out[r] = fn(r) for r = 0..reps-1, in order.
template <typename T, typename Fn>
std::vector<T> replicate_serial(std::uint64_t reps, Fn&& fn) {
  std::vector<T> out;
  out.reserve(reps);
  for (std::uint64_t r = 0; r < reps; ++r) out.push_back(fn(r));
  return out;
}

// Parallel kernel with the same result as replicate_serial for any thread
// count: every replication writes only its own slot, and fn must be a pure
// function of r. The first exception thrown by any worker is rethrown.
template <typename T, typename Fn>
std::vector<T> replicate_parallel(std::uint64_t reps, int threads, Fn&& fn) {
  std::vector<T> out(reps);
  std::exception_ptr failure;
  const auto n = static_cast<long long>(reps);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (long long r = 0; r < n; ++r) {
    try {
      out[r] = fn(static_cast<std::uint64_t>(r));
    } catch (...) {
#pragma omp critical(vcg_lab_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <typename T, typename Fn>
std::vector<T> replicate(std::uint64_t reps, int threads, Fn&& fn) {
  if (threads <= 1) return replicate_serial<T>(reps, fn);
  return replicate_parallel<T>(reps, threads, fn);
}

}  // namespace vcg_lab

#endif  // VCG_LAB_REPLICATE_HPP_
