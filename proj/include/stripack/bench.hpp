#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stripack/solvers.hpp"

namespace stripack {

struct BenchRow {
  std::string instance;
  std::string algo;
  Coord height = 0;
  Coord lb = 0;
  double ratio = 0;
  double ms = 0;
  bool valid = false;
};

struct BenchOptions {
  std::vector<Algorithm> algorithms{Algorithm::kNfdh, Algorithm::kFfdh};
  SolverConfig config;
  bool record_time = true;  // false writes 0 ms, for reproducible output
};

using NamedInstance = std::pair<std::string, Instance>;

/// One row per (instance, algorithm), sorted by instance name then by the
/// order of options.algorithms. An exact run that hits its limits reports
/// its incumbent.
std::vector<BenchRow> RunBench(const std::vector<NamedInstance>& instances,
                               const BenchOptions& options);

/// CSV with header instance,algo,height,lb,ratio,ms,valid.
std::string BenchCsv(const std::vector<BenchRow>& rows);

}  // namespace stripack
