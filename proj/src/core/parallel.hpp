#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lrs {

/// Number of workers used when a caller passes 0.
inline int default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Runs body(begin, end) over contiguous partitions of [0, n).
///
/// Every index is handled by exactly one call, so kernels that write only
/// their own outputs produce results independent of the worker count.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body,
                  std::size_t min_chunk = 1) {
  if (workers <= 0) workers = default_workers();
  std::size_t parts = std::min<std::size_t>(
      static_cast<std::size_t>(workers), (n + min_chunk - 1) / std::max<std::size_t>(min_chunk, 1));
  if (parts <= 1) {
    if (n > 0) body(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(parts - 1);
  std::size_t step = n / parts, rem = n % parts, begin = 0;
  std::size_t first_end = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    std::size_t end = begin + step + (p < rem ? 1 : 0);
    if (p == 0) {
      first_end = end;
    } else {
      pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    begin = end;
  }
  body(std::size_t{0}, first_end);
}

/// Deterministic sum of f(i) over [0, n): fixed-size blocks are reduced
/// independently, then the block partials are combined pairwise in a fixed
/// tree. The result does not depend on the worker count.
template <class T, class F>
T tree_reduce(std::size_t n, int workers, F&& f, std::size_t block = 4096) {
  std::size_t nblocks = (n + block - 1) / block;
  if (nblocks == 0) return T{};
  std::vector<T> partial(nblocks);
  parallel_for(nblocks, workers, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      T acc{};
      std::size_t end = std::min(n, (b + 1) * block);
      for (std::size_t i = b * block; i < end; ++i) acc += f(i);
      partial[b] = acc;
    }
  });
  for (std::size_t width = 1; width < nblocks; width *= 2)
    for (std::size_t i = 0; i + width < nblocks; i += 2 * width)
      partial[i] += partial[i + width];
  return partial[0];
}

}  // namespace lrs
