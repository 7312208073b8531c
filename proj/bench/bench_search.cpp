// Serial reference vs OpenMP search, written as CSV to stdout.
// usage: bench_search [repeats]

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <omp.h>

#include "redlab/oracle.hpp"

using namespace redlab;

namespace {

template <typename F>
double best_seconds(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  const int threads = omp_get_max_threads();
  fmt::print("q,n,p_num,instances,serial_s,omp_s,threads,speedup,identical\n");
  for (int q : {32, 48, 64}) {
    const int n = 7;
    const int p_num = q / 5;
    SearchReport serial, parallel;
    const double ts = best_seconds(repeats, [&] {
      serial = search_extremal_serial(p_num, q, n, SearchMode::Min, Constraint::ContainsP);
    });
    SearchOptions opts;
    opts.workers = threads;
    const double tp = best_seconds(repeats, [&] {
      parallel = search_extremal(p_num, q, n, SearchMode::Min, Constraint::ContainsP, opts);
    });
    fmt::print("{},{},{},{},{:.6f},{:.6f},{},{:.2f},{}\n", q, n, p_num, serial.instances, ts, tp,
               threads, ts / tp, serial == parallel ? "yes" : "no");
  }
}
