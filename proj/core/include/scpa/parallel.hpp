#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace scpa {

// Splits [0, rows) into contiguous bands and runs fn(begin, end) on each band.
// threads <= 1 runs inline on the caller. Bands never overlap, so callers that
// write only rows [begin, end) of a fresh output need no synchronization.
template <typename Fn>
void parallel_rows(int rows, int threads, Fn&& fn) {
  if (threads <= 1 || rows < 2) {
    fn(0, rows);
    return;
  }
  const int bands = std::min(threads, rows);
  std::vector<std::jthread> pool;
  pool.reserve(bands - 1);
  const int base = rows / bands;
  const int extra = rows % bands;
  int begin = 0;
  for (int b = 0; b < bands; ++b) {
    const int end = begin + base + (b < extra ? 1 : 0);
    if (b + 1 == bands) {
      fn(begin, end);
    } else {
      pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    begin = end;
  }
}

}  // namespace scpa
