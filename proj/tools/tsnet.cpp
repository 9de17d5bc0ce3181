// tsnet: cluster time series through community detection on nearest-neighbor networks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsnet/experiment.hpp"

namespace fs = std::filesystem;
using namespace tsnet;

namespace {

struct Flags {
  std::string config;
  std::vector<std::string> data;
  std::vector<std::string> generate;
  std::vector<std::string> measure;
  std::vector<std::string> method;
  std::vector<std::string> algo;
  std::optional<std::size_t> k;
  std::optional<double> eps;
  std::optional<std::size_t> clusters;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::string out;
  std::string cache;
  bool force = false;
};

std::map<std::string, std::string> read_flat(const std::string& path) {
  std::map<std::string, std::string> kv;
  if (path.empty()) return kv;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    kv[detail::trim(text.substr(0, eq))] = detail::trim(text.substr(eq + 1));
  }
  return kv;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

/// Config file values, then command-line flags on top.
std::map<std::string, std::string> merged_settings(const Flags& f) {
  auto kv = read_flat(f.config);
  auto alias = [&](std::initializer_list<const char*> names, const std::string& canon) {
    for (const char* n : names) {
      auto it = kv.find(n);
      if (it != kv.end() && n != canon) {
        kv[canon] = it->second;
        kv.erase(it);
      }
    }
  };
  alias({"datasets"}, "dataset");
  alias({"measures"}, "measure");
  alias({"methods"}, "method");
  alias({"algos", "algorithms"}, "algo");
  if (!f.data.empty() || !f.generate.empty()) {
    kv.erase("dataset");
    kv.erase("generate");
  }
  if (!f.data.empty()) kv["dataset"] = join(f.data);
  if (!f.generate.empty()) kv["generate"] = join(f.generate);
  if (!f.measure.empty()) kv["measure"] = join(f.measure);
  if (!f.method.empty()) kv["method"] = join(f.method);
  if (!f.algo.empty()) kv["algo"] = join(f.algo);
  if (f.k) kv["k"] = std::to_string(*f.k);
  if (f.eps) kv["eps"] = detail::format_number(*f.eps);
  if (f.clusters) kv["clusters"] = std::to_string(*f.clusters);
  if (f.seed) kv["seed"] = std::to_string(*f.seed);
  if (f.jobs) kv["jobs"] = std::to_string(*f.jobs);
  if (!f.out.empty()) kv["out"] = f.out;
  if (!f.cache.empty()) kv["cache"] = f.cache;
  if (f.force) kv["force"] = "1";
  return kv;
}

std::string single(const std::map<std::string, std::string>& kv, const std::string& key,
                   const std::string& fallback = "") {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const auto items = detail::split_list(it->second);
  if (items.size() != 1) throw ConfigError("'" + key + "' takes exactly one value here");
  return items.front();
}

DatasetSource one_dataset(const std::map<std::string, std::string>& kv) {
  const auto d = kv.count("dataset") ? detail::split_list(kv.at("dataset")) : std::vector<std::string>{};
  const auto g = kv.count("generate") ? detail::split_list(kv.at("generate")) : std::vector<std::string>{};
  if (d.size() + g.size() != 1) throw ConfigError("give exactly one --data or --generate");
  return d.empty() ? DatasetSource::generator(g.front()) : DatasetSource::file(d.front());
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("key '" + key + "' does not apply to this command");
  }
}

ClusterOptions cluster_options(const std::map<std::string, std::string>& kv) {
  ClusterOptions opt;
  opt.dataset = one_dataset(kv);
  opt.measure = DistanceMeasure::parse(single(kv, "measure", "ed"));
  opt.method = parse_method(single(kv, "method", "knn"));
  opt.algorithm = AlgorithmChoice::parse(single(kv, "algo", "ml"));
  if (kv.count("k")) opt.k = detail::parse_u64("k", single(kv, "k"));
  if (kv.count("eps")) {
    const auto s = single(kv, "eps");
    try {
      std::size_t used = 0;
      opt.eps = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::logic_error&) {
      throw ConfigError("'eps' expects a number, got '" + s + "'");
    }
  }
  if (kv.count("clusters")) opt.clusters = detail::parse_u64("clusters", single(kv, "clusters"));
  opt.seed = detail::parse_u64("seed", single(kv, "seed", "1"));
  opt.jobs = static_cast<unsigned>(detail::parse_u64("jobs", single(kv, "jobs", "1")));
  if (opt.jobs == 0) throw ConfigError("jobs must be >= 1");
  return opt;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "flat key = value file; flags override it");
  cmd->add_option("--data", f.data, "UCR-format file (label first, then values)");
  cmd->add_option("--generate", f.generate, "synthetic data, e.g. cbf:10:128:7");
  cmd->add_option("--measure", f.measure, "l1 ed linf dtw sts dissim cid dwt[:level] cor intper")
      ->delimiter(',');
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--jobs", f.jobs, "worker threads");
  cmd->add_option("--out", f.out, "output path");
}

int run_cluster(const Flags& f) {
  const auto kv = merged_settings(f);
  reject_unknown(kv, {"dataset", "generate", "measure", "method", "algo", "k", "eps", "clusters",
                      "seed", "jobs", "out"});
  const auto opt = cluster_options(kv);
  const auto result = tsnet::run_cluster(opt);
  const auto out = single(kv, "out");
  if (out.empty()) {
    write_partition(std::cout, result.partition);
  } else {
    std::ofstream os(out);
    if (!os) throw IoError("cannot write " + out);
    write_partition(os, result.partition);
  }
  std::cerr << "communities " << result.partition.community_count();
  if (result.rand_index) std::cerr << " rand_index " << detail::format_number(*result.rand_index);
  std::cerr << '\n';
  return kExitOk;
}

int run_sweep(const Flags& f) {
  const auto kv = merged_settings(f);
  ExperimentConfig cfg;
  cfg.measures = {DistanceMeasure{MeasureKind::ED, {}}};
  cfg.methods = {NetworkMethod::KNN, NetworkMethod::EpsNN};
  for (auto a : kAllCommunityAlgorithms) cfg.algorithms.push_back(AlgorithmChoice::parse(to_string(a)));
  for (const auto& [key, value] : kv) cfg.set(key, value);
  const auto report = tsnet::run_sweep(cfg, std::cerr);
  std::cerr << "computed " << report.computed << ", skipped " << report.skipped << ", failed "
            << report.failures.size() << '\n';
  return report.failures.empty() ? kExitOk : kExitCompute;
}

int run_generate(const Flags& f, const std::string& family, std::size_t per_class,
                 std::size_t length) {
  if (f.out.empty()) throw ConfigError("generate needs --out");
  const std::uint64_t seed = f.seed.value_or(1);
  const auto spec = family + ":" + std::to_string(per_class) + ":" + std::to_string(length) + ":" +
                    std::to_string(seed);
  save_ucr(f.out, DatasetSource::generator(spec).load());
  return kExitOk;
}

int run_export_graph(const Flags& f, const std::string& partition_out) {
  const auto kv = merged_settings(f);
  reject_unknown(kv, {"dataset", "generate", "measure", "method", "algo", "k", "eps", "seed",
                      "jobs", "out"});
  auto opt = cluster_options(kv);
  const Dataset raw = opt.dataset.load();
  const DistanceMatrix d = distance_matrix(normalize_dataset(raw), opt.measure, opt.jobs);
  Graph g;
  if (opt.method == NetworkMethod::KNN) {
    if (!opt.k) throw ConfigError("k-NN needs --k");
    g = knn_graph(d, *opt.k);
  } else {
    if (!opt.eps) throw ConfigError("epsilon-NN needs --eps");
    g = eps_graph(d, *opt.eps);
  }
  const auto out = single(kv, "out");
  if (out.empty()) {
    write_edge_list(std::cout, g);
  } else {
    std::ofstream os(out);
    if (!os) throw IoError("cannot write " + out);
    write_edge_list(os, g);
  }
  if (!partition_out.empty()) {
    if (opt.algorithm.is_baseline) throw ConfigError("export-graph partitions need a community algorithm");
    const RngSeed seed =
        experiment_seed(opt.seed, opt.dataset.name, opt.measure.name(), opt.algorithm.name());
    std::ofstream os(partition_out);
    if (!os) throw IoError("cannot write " + partition_out);
    write_partition(os, detect(g, opt.algorithm.community, seed));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-series clustering by community detection on k-NN and epsilon-NN networks"};
  app.require_subcommand(1);
  Flags f;

  auto* cluster = app.add_subcommand("cluster", "cluster one dataset and write `vertex community` lines");
  add_common(cluster, f);
  cluster->add_option("--method", f.method, "knn or eps");
  cluster->add_option("--algo", f.algo, "fg ml wt im lp, or pam single complete average median centroid diana");
  cluster->add_option("--k", f.k, "neighbors for knn");
  cluster->add_option("--eps", f.eps, "radius for eps");
  cluster->add_option("--clusters", f.clusters, "cluster count for baseline algorithms");

  auto* sweep = app.add_subcommand("sweep", "best-RI parameter sweeps over datasets x measures x methods x algorithms");
  add_common(sweep, f);
  sweep->add_option("--method", f.method, "knn, eps")->delimiter(',');
  sweep->add_option("--algo", f.algo, "community and baseline algorithms")->delimiter(',');
  sweep->add_option("--cache", f.cache, "distance matrix cache directory (default <out>/cache)");
  sweep->add_flag("--force", f.force, "recompute combinations that already have output");

  std::string family = "cbf";
  std::size_t per_class = 10, length = 128;
  auto* generate = app.add_subcommand("generate", "write a synthetic labelled dataset in UCR format");
  generate->add_option("family", family, "cbf or two_patterns")->check(CLI::IsMember({"cbf", "two_patterns"}));
  generate->add_option("--per-class", per_class, "series per class");
  generate->add_option("--length", length, "series length");
  generate->add_option("--seed", f.seed, "generator seed");
  generate->add_option("--out", f.out, "output file")->required();

  std::string partition_out;
  auto* export_graph = app.add_subcommand("export-graph", "write the network as `u v` lines");
  add_common(export_graph, f);
  export_graph->add_option("--method", f.method, "knn or eps");
  export_graph->add_option("--k", f.k, "neighbors for knn");
  export_graph->add_option("--eps", f.eps, "radius for eps");
  export_graph->add_option("--algo", f.algo, "community algorithm for --partition-out");
  export_graph->add_option("--partition-out", partition_out, "also write detected communities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*cluster) return run_cluster(f);
    if (*sweep) return run_sweep(f);
    if (*generate) return run_generate(f, family, per_class, length);
    if (*export_graph) return run_export_graph(f, partition_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitConfig;
}
