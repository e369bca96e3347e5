#include "scpa/median_bench.hpp"

#include <chrono>
#include <cstdio>

#include "scpa/error.hpp"
#include "scpa/median.hpp"
#include "scpa/noise.hpp"
#include "scpa/synth.hpp"

namespace scpa {

std::vector<BenchRow> run_median_bench(std::span<const int> sizes,
                                       int repetitions, std::uint64_t seed) {
  if (repetitions < 1) {
    throw Error(Errc::invalid_argument, "repetitions must be at least 1");
  }
  if (sizes.empty()) {
    throw Error(Errc::invalid_argument, "no benchmark sizes given");
  }
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (const int size : sizes) {
    if (size <= 0) {
      throw Error(Errc::invalid_argument, "benchmark sizes must be positive");
    }
    BenchRow row;
    row.size = size;
    row.identical = true;
    double naive = 0.0;
    double wide = 0.0;
    for (int rep = 0; rep < repetitions; ++rep) {
      const Image img =
          random_image(size, size, 1, seed ^ (static_cast<std::uint64_t>(size) << 32 | rep));
      const auto t0 = clock::now();
      const Image a = median_filter(img, MedianKernel::naive);
      const auto t1 = clock::now();
      const Image b = median_filter(img, MedianKernel::widereg);
      const auto t2 = clock::now();
      naive += std::chrono::duration<double, std::milli>(t1 - t0).count();
      wide += std::chrono::duration<double, std::milli>(t2 - t1).count();
      row.identical = row.identical && a == b;
    }
    row.naive_ms = naive / repetitions;
    row.widereg_ms = wide / repetitions;
    row.speedup = row.widereg_ms > 0.0 ? row.naive_ms / row.widereg_ms : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string format_bench(std::span<const BenchRow> rows) {
  std::string out = "size    naive_ms    widereg_ms  speedup  identical\n";
  char line[128];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-6d  %-10.3f  %-10.3f  %-7.2f  %s\n",
                  r.size, r.naive_ms, r.widereg_ms, r.speedup,
                  r.identical ? "yes" : "NO");
    out += line;
  }
  return out;
}

}  // namespace scpa
