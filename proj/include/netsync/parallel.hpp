#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/partitioner.h>
#include <tbb/task_arena.h>

#include "netsync/linalg.hpp"

namespace netsync {

/// Worker cap from NETSYNC_THREADS; falls back to hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("NETSYNC_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs body(i) for i in [0, n). Each index must write a disjoint output slice,
/// which makes the result independent of the worker count.
template <class Body>
void parallel_for_each_index(Index n, Body&& body) {
  const int threads = thread_count();
  if (threads <= 1 || n < 64) {
    for (Index i = 0; i < n; ++i) body(i);
    return;
  }
  thread_local std::unique_ptr<tbb::task_arena> arena;
  thread_local int arena_threads = 0;
  if (!arena || arena_threads != threads) {
    arena = std::make_unique<tbb::task_arena>(threads);
    arena_threads = threads;
  }
  arena->execute([&] {
    tbb::parallel_for(
        tbb::blocked_range<Index>(0, n, 16),
        [&](const tbb::blocked_range<Index>& r) {
          for (Index i = r.begin(); i != r.end(); ++i) body(i);
        },
        tbb::static_partitioner{});
  });
}

}  // namespace netsync
