#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "stripack/bench.hpp"
#include "stripack/error.hpp"
#include "stripack/json_io.hpp"
#include "stripack/reduction.hpp"
#include "stripack/render.hpp"
#include "stripack/repack.hpp"
#include "stripack/solvers.hpp"

namespace fs = std::filesystem;
using namespace stripack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitLimit = 3;

std::vector<Algorithm> ParseAlgorithms(const std::string& list) {
  std::vector<Algorithm> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string name = list.substr(start, comma - start);
    const auto algo = ParseAlgorithm(name);
    if (!algo) throw Error(ErrorCode::kInvalidInput, "unknown algorithm '" + name + "'");
    out.push_back(*algo);
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strip packing toolkit: 3-Partition gadget, solvers and repacking"};
  app.require_subcommand(1);

  std::string in, out, params_out, cover_in, packing_out;
  auto* reduce = app.add_subcommand("reduce", "Build the strip packing instance of a 3-Partition file");
  reduce->add_option("--in", in, "3-Partition file")->required();
  reduce->add_option("--out", out, "instance file to write")->required();
  reduce->add_option("--params", params_out, "reduction parameters file to write");
  reduce->add_option("--cover", cover_in, "triple cover, to emit the canonical packing");
  reduce->add_option("--packing", packing_out, "canonical packing file to write (needs --cover)");

  int gen_n = 1;
  std::int64_t gen_range = 5;
  std::uint64_t seed = 1;
  bool no_instance = false;
  std::string gen_cover_out;
  auto* gen = app.add_subcommand("gen3p", "Generate a random 3-Partition instance");
  gen->add_option("--n", gen_n, "number of triples")->check(CLI::PositiveNumber);
  gen->add_option("--range", gen_range, "values lie in [-range, range]")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "random seed");
  gen->add_flag("--no-instance", no_instance, "generate an instance without a cover");
  gen->add_option("--out", out, "3-Partition file to write")->required();
  gen->add_option("--cover-out", gen_cover_out, "write the planted cover here");

  std::string algo_name = "exact", instance_in, packing_in;
  std::int64_t node_limit = 0, time_limit = 0;
  auto* solve = app.add_subcommand("solve", "Pack an instance");
  solve->add_option("--algo", algo_name, "exact | nfdh | ffdh | bl");
  solve->add_option("--instance", instance_in, "instance file")->required();
  solve->add_option("--out", out, "packing file to write")->required();
  solve->add_option("--node-limit", node_limit, "exact search node cap");
  solve->add_option("--time-limit-ms", time_limit, "exact search time cap");

  auto* validate = app.add_subcommand("validate", "Check a packing; exit 0 iff valid");
  validate->add_option("--instance", instance_in, "instance file")->required();
  validate->add_option("--packing", packing_in, "packing file")->required();

  std::string params_in;
  auto* extract = app.add_subcommand("extract", "Recover a triple cover from a height-11 packing");
  extract->add_option("--instance", instance_in, "reduction instance file")->required();
  extract->add_option("--params", params_in, "reduction parameters file")->required();
  extract->add_option("--packing", packing_in, "packing file")->required();
  extract->add_option("--out", out, "cover file to write");

  std::string epsilon_text = "1/4", delta_text, mu_text, partition_out, rounded_out,
      classes_out;
  std::int64_t opt_guess = 0;
  auto* repack = app.add_subcommand("repack", "Second-level repacking of a reference packing");
  repack->add_option("--instance", instance_in, "instance file")->required();
  repack->add_option("--reference", packing_in, "reference packing file")->required();
  repack->add_option("--epsilon", epsilon_text, "epsilon, e.g. 1/4 or 0.25");
  repack->add_option("--delta", delta_text, "delta (with --mu)");
  repack->add_option("--mu", mu_text, "mu (with --delta)");
  repack->add_option("--opt", opt_guess, "OPT guess (default: reference height)");
  repack->add_option("--out", out, "packing of the scaled, rounded instance")->required();
  repack->add_option("--rounded", rounded_out, "scaled, rounded instance file to write");
  repack->add_option("--partition", partition_out, "box partition file to write");
  repack->add_option("--classes", classes_out, "item classification file to write");

  std::string classes_in;
  auto* render = app.add_subcommand("render", "Draw a packing as SVG");
  render->add_option("--instance", instance_in, "instance file")->required();
  render->add_option("--packing", packing_in, "packing file")->required();
  render->add_option("--out", out, "SVG file to write")->required();
  render->add_option("--classes", classes_in, "classification file for colouring");

  std::string dir, algos = "nfdh,ffdh", csv;
  bool no_time = false;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a directory of instances");
  bench->add_option("--dir", dir, "directory of instance files")->required();
  bench->add_option("--algos", algos, "comma-separated algorithms");
  bench->add_option("--csv", csv, "CSV file to write (default stdout)");
  bench->add_flag("--no-time", no_time, "write 0 for timings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reduce) {
      const ThreePartitionInstance tp = ThreePartitionFromJson(ReadJsonFile(in));
      const ReductionResult r = BuildInstance(tp);
      WriteJsonFile(out, InstanceToJson(r.instance));
      if (!params_out.empty()) WriteJsonFile(params_out, ReductionParamsToJson(r.params));
      if (!packing_out.empty()) {
        if (cover_in.empty()) throw Error(ErrorCode::kInvalidInput, "--packing needs --cover");
        const TripleCover cover = CoverFromJson(ReadJsonFile(cover_in));
        if (!IsValidCover(tp, cover)) {
          throw Error(ErrorCode::kInvalidCover, "cover does not partition S into zero-sum triples");
        }
        WriteJsonFile(packing_out, PackingToJson(CanonicalPacking(r.instance, r.params, cover)));
      }
      std::cout << "W=" << r.params.W << " a=" << r.params.a << " b=" << r.params.b
                << " items=" << r.instance.items.size() << "\n";
    } else if (*gen) {
      std::mt19937_64 rng(seed);
      const GeneratedThreePartition g =
          no_instance ? RandomNoInstance(gen_n, gen_range, rng) : RandomYesInstance(gen_n, gen_range, rng);
      WriteJsonFile(out, ThreePartitionToJson(g.tp));
      if (!gen_cover_out.empty()) {
        if (!g.cover) throw Error(ErrorCode::kInvalidInput, "a no-instance has no cover");
        WriteJsonFile(gen_cover_out, CoverToJson(*g.cover));
      }
    } else if (*solve) {
      const Instance instance = InstanceFromJson(ReadJsonFile(instance_in));
      const auto algo = ParseAlgorithm(algo_name);
      if (!algo) throw Error(ErrorCode::kInvalidInput, "unknown algorithm '" + algo_name + "'");
      SolverConfig config = WithEnvironmentOverrides({});
      config.algorithm = *algo;
      if (node_limit > 0) config.node_limit = node_limit;
      if (time_limit > 0) config.time_limit_ms = time_limit;
      try {
        const Packing packing = Solve(instance, config);
        WriteJsonFile(out, PackingToJson(packing));
        std::cout << "height " << packing.height << "\n";
      } catch (const LimitExceededError& e) {
        WriteJsonFile(out, PackingToJson(e.incumbent()));
        std::cerr << e.what() << " (incumbent height " << e.incumbent().height << ")\n";
        return kExitLimit;
      }
    } else if (*validate) {
      const Instance instance = InstanceFromJson(ReadJsonFile(instance_in));
      const Packing packing = PackingFromJson(ReadJsonFile(packing_in));
      const ValidationReport report = ValidatePacking(instance, packing);
      std::cout << report.ToString() << "\n";
      return report.ok() ? kExitOk : kExitFailed;
    } else if (*extract) {
      const Instance instance = InstanceFromJson(ReadJsonFile(instance_in));
      const ReductionParams params = ReductionParamsFromJson(ReadJsonFile(params_in));
      const Packing packing = PackingFromJson(ReadJsonFile(packing_in));
      const TripleCover cover = ExtractPartition(instance, params, packing);
      const Json j = CoverToJson(cover);
      if (out.empty()) {
        std::cout << j.dump() << "\n";
      } else {
        WriteJsonFile(out, j);
      }
    } else if (*repack) {
      const Instance instance = InstanceFromJson(ReadJsonFile(instance_in));
      const Packing reference = PackingFromJson(ReadJsonFile(packing_in));
      std::optional<std::pair<Rational, Rational>> dm;
      if (!delta_text.empty() || !mu_text.empty()) {
        if (delta_text.empty() || mu_text.empty()) {
          throw Error(ErrorCode::kInvalidInput, "--delta and --mu go together");
        }
        dm = std::make_pair(ParseRational(delta_text), ParseRational(mu_text));
      }
      const RepackOutcome r =
          Repack(instance, reference, ParseRational(epsilon_text),
                 opt_guess > 0 ? std::optional<Coord>(opt_guess) : std::nullopt, dm);
      WriteJsonFile(out, PackingToJson(r.level2.packing));
      if (!rounded_out.empty()) WriteJsonFile(rounded_out, InstanceToJson(r.rounded.instance));
      if (!partition_out.empty()) WriteJsonFile(partition_out, PartitionToJson(r.level2.partition));
      if (!classes_out.empty()) WriteJsonFile(classes_out, ClassificationToJson(r.classification));
      const double ratio = static_cast<double>(r.level2.packing.height) / r.params.opt;
      std::cout << "scale kx=" << r.scaling.kx << " ky=" << r.scaling.ky
                << " delta=" << FormatRational(r.params.delta)
                << " mu=" << FormatRational(r.params.mu) << "\n"
                << "height " << r.level2.packing.height << " opt " << r.params.opt
                << " ratio " << ratio << " boxes " << r.level2.partition.boxes.size() << "\n";
    } else if (*render) {
      const Instance instance = InstanceFromJson(ReadJsonFile(instance_in));
      const Packing packing = PackingFromJson(ReadJsonFile(packing_in));
      std::optional<ItemClassification> classes;
      if (!classes_in.empty()) classes = ClassificationFromJson(ReadJsonFile(classes_in));
      WriteTextFile(out, RenderSvg(instance, packing, classes ? &*classes : nullptr));
    } else if (*bench) {
      std::vector<NamedInstance> instances;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const fs::path& f : files) {
        instances.emplace_back(f.stem().string(), InstanceFromJson(ReadJsonFile(f)));
      }
      BenchOptions options;
      options.algorithms = ParseAlgorithms(algos);
      options.config = WithEnvironmentOverrides(options.config);
      options.record_time = !no_time;
      const std::string text = BenchCsv(RunBench(instances, options));
      if (csv.empty()) {
        std::cout << text;
      } else {
        WriteTextFile(csv, text);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kLimitExceeded: return kExitLimit;
      case ErrorCode::kNotTightlyPacked:
      case ErrorCode::kBadRun: return kExitFailed;
      default: return kExitBadInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
