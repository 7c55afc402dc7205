/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_PARALLEL_HPP_
#define PRICESHAP_PARALLEL_HPP_

#include <cstddef>
#include <thread>
#include <vector>

namespace priceshap {

// Static block partition of [0, count) over `threads` workers. Each index is
// processed exactly once and workers write only to their own indices, so the
// result is identical for every thread count.
template <typename Fn>
void parallel_for(size_t count, int threads, Fn&& fn) {
  if (threads < 1) threads = 1;
  if (threads == 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const size_t workers = std::min<size_t>(static_cast<size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      const size_t lo = count * w / workers;
      const size_t hi = count * (w + 1) / workers;
      for (size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace priceshap

#endif  // PRICESHAP_PARALLEL_HPP_
