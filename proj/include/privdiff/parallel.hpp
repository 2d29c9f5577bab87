// Copyright 2026 The privdiff Authors
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

#ifndef PRIVDIFF_PARALLEL_HPP_
#define PRIVDIFF_PARALLEL_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace privdiff {

// Worker count: PRIVDIFF_THREADS caps hardware concurrency when set.
inline int thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("PRIVDIFF_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<long>(hw, cap);
  }
  return hw;
}

// Runs fn(i) for i in [begin, end), split into contiguous chunks per worker.
// Chunk boundaries depend only on (begin, end, workers), never on timing, so
// any writes indexed by i land identically run to run.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn fn,
                  int max_workers = 0) {
  const std::int64_t count = end - begin;
  if (count <= 0) return;
  int workers = max_workers > 0 ? std::min(max_workers, thread_count())
                                : thread_count();
  workers = static_cast<int>(std::min<std::int64_t>(workers, count));
  if (workers <= 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = begin + w * chunk;
    const std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace privdiff

#endif  // PRIVDIFF_PARALLEL_HPP_
