#include "stripack/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace stripack {

std::vector<BenchRow> RunBench(const std::vector<NamedInstance>& instances,
                               const BenchOptions& options) {
  std::vector<const NamedInstance*> sorted;
  for (const NamedInstance& ni : instances) sorted.push_back(&ni);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const NamedInstance* a, const NamedInstance* b) { return a->first < b->first; });
  std::vector<BenchRow> rows;
  for (const NamedInstance* ni : sorted) {
    const Instance& instance = ni->second;
    for (Algorithm algo : options.algorithms) {
      SolverConfig config = options.config;
      config.algorithm = algo;
      const auto start = std::chrono::steady_clock::now();
      Packing packing;
      try {
        packing = Solve(instance, config);
      } catch (const LimitExceededError& e) {
        packing = e.incumbent();
      }
      const auto stop = std::chrono::steady_clock::now();
      BenchRow row;
      row.instance = ni->first;
      row.algo = std::string(AlgorithmName(algo));
      row.height = packing.height;
      row.lb = AreaLowerBound(instance);
      row.ratio = row.lb > 0 ? static_cast<double>(row.height) / row.lb : 1.0;
      row.ms = options.record_time
                   ? std::chrono::duration<double, std::milli>(stop - start).count()
                   : 0.0;
      row.valid = ValidatePacking(instance, packing).ok();
      rows.push_back(row);
    }
  }
  return rows;
}

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::string out = "instance,algo,height,lb,ratio,ms,valid\n";
  char buf[64];
  for (const BenchRow& r : rows) {
    out += r.instance + "," + r.algo + "," + std::to_string(r.height) + "," +
           std::to_string(r.lb) + ",";
    std::snprintf(buf, sizeof buf, "%.4f,%.3f,", r.ratio, r.ms);
    out += buf;
    out += r.valid ? "true\n" : "false\n";
  }
  return out;
}

}  // namespace stripack
