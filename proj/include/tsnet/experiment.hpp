#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tsnet/tsnet.hpp"

namespace tsnet {

/// Bad configuration or command-line values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitIo = 3, kExitCompute = 4 };

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Shortest representation that reads back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + value + "'");
  }
  return v;
}

}  // namespace detail

/// A dataset read from a UCR file or drawn from a synthetic generator.
struct DatasetSource {
  std::string name;
  std::filesystem::path path;  // empty for generated data
  std::string family;          // "cbf" or "two_patterns" when generated
  std::size_t per_class = 0;
  std::size_t length = 128;
  std::uint64_t seed = 0;

  /// "cbf:<per_class>[:<t>[:<seed>]]" or "two_patterns:...".
  static DatasetSource generator(std::string_view spec) {
    const auto parts = [&] {
      std::vector<std::string> out;
      std::size_t start = 0;
      for (;;) {
        const auto c = spec.find(':', start);
        out.push_back(detail::trim(spec.substr(start, c == spec.npos ? spec.npos : c - start)));
        if (c == spec.npos) break;
        start = c + 1;
      }
      return out;
    }();
    DatasetSource s;
    s.family = parts[0];
    if (s.family != "cbf" && s.family != "two_patterns") {
      throw ConfigError("unknown generator family '" + s.family + "'");
    }
    if (parts.size() < 2 || parts.size() > 4) {
      throw ConfigError("generator spec is family:per_class[:length[:seed]], got '" +
                        std::string(spec) + "'");
    }
    s.per_class = detail::parse_u64("per_class", parts[1]);
    if (parts.size() > 2) s.length = detail::parse_u64("length", parts[2]);
    if (parts.size() > 3) s.seed = detail::parse_u64("seed", parts[3]);
    s.name = s.family + "_" + std::to_string(s.per_class) + "_" + std::to_string(s.length) + "_s" +
             std::to_string(s.seed);
    return s;
  }

  static DatasetSource file(const std::filesystem::path& p) {
    DatasetSource s;
    s.path = p;
    s.name = p.stem().string();
    return s;
  }

  [[nodiscard]] Dataset load() const {
    if (!path.empty()) return load_ucr(path);
    if (family == "cbf") return generate_cbf(per_class, length, RngSeed{seed});
    return generate_two_patterns(per_class, length, RngSeed{seed});
  }
};

/// One algorithm of the harness: a community detector on a graph, or a rival on the matrix.
struct AlgorithmChoice {
  bool is_baseline = false;
  CommunityAlgorithm community{};
  BaselineAlgorithm baseline{};

  static AlgorithmChoice parse(std::string_view name) {
    AlgorithmChoice a;
    if (try_parse_community_algorithm(name, a.community)) return a;
    if (try_parse_baseline(name, a.baseline)) {
      a.is_baseline = true;
      return a;
    }
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
  }

  [[nodiscard]] std::string name() const {
    return std::string(is_baseline ? to_string(baseline) : to_string(community));
  }
};

enum class NetworkMethod { KNN, EpsNN };

inline NetworkMethod parse_method(std::string_view s) {
  if (s == "knn") return NetworkMethod::KNN;
  if (s == "eps") return NetworkMethod::EpsNN;
  throw ConfigError("unknown network method '" + std::string(s) + "' (knn or eps)");
}

inline std::string_view to_string(NetworkMethod m) { return m == NetworkMethod::KNN ? "knn" : "eps"; }

struct ExperimentConfig {
  std::vector<DatasetSource> datasets;
  std::vector<DistanceMeasure> measures;
  std::vector<NetworkMethod> methods;
  std::vector<AlgorithmChoice> algorithms;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "results";
  std::filesystem::path cache_dir;  // defaults to <out>/cache
  unsigned jobs = 1;
  bool force = false;

  void validate() const {
    if (datasets.empty()) throw ConfigError("config lists no datasets");
    if (measures.empty()) throw ConfigError("config lists no measures");
    if (methods.empty()) throw ConfigError("config lists no network methods");
    if (algorithms.empty()) throw ConfigError("config lists no algorithms");
    if (jobs == 0) throw ConfigError("jobs must be >= 1");
  }

  /// Applies one `key = value` setting; list values are comma separated.
  void set(const std::string& key, const std::string& value) {
    try {
      if (key == "dataset" || key == "datasets") {
        for (const auto& p : detail::split_list(value)) datasets.push_back(DatasetSource::file(p));
      } else if (key == "generate") {
        for (const auto& g : detail::split_list(value))
          datasets.push_back(DatasetSource::generator(g));
      } else if (key == "measure" || key == "measures") {
        measures.clear();
        for (const auto& m : detail::split_list(value)) measures.push_back(DistanceMeasure::parse(m));
      } else if (key == "method" || key == "methods") {
        methods.clear();
        for (const auto& m : detail::split_list(value)) methods.push_back(parse_method(m));
      } else if (key == "algo" || key == "algos" || key == "algorithms") {
        algorithms.clear();
        for (const auto& a : detail::split_list(value)) algorithms.push_back(AlgorithmChoice::parse(a));
      } else if (key == "seed") {
        seed = detail::parse_u64(key, value);
      } else if (key == "out") {
        out_dir = value;
      } else if (key == "cache") {
        cache_dir = value;
      } else if (key == "jobs") {
        jobs = static_cast<unsigned>(detail::parse_u64(key, value));
      } else if (key == "force") {
        force = value == "1" || value == "true" || value == "yes";
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }
};

/// Flat `key = value` lines; `#` starts a comment.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {}) {
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
    base.set(detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)));
  }
  return base;
}

inline ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_config(in, std::move(base));
}

/// Distance matrix of the normalized dataset, read from or written to the cache directory.
inline DistanceMatrix cached_distance_matrix(const Dataset& normalized, const DistanceMeasure& m,
                                             const std::filesystem::path& cache_dir,
                                             unsigned jobs) {
  if (cache_dir.empty()) return distance_matrix(normalized, m, jobs);
  const auto file = cache_dir / matrix_cache_name(dataset_hash(normalized), m);
  if (std::filesystem::exists(file)) {
    auto d = load_matrix(file);
    if (d.size() == normalized.size() && d.measure() == m) return d;
  }
  auto d = distance_matrix(normalized, m, jobs);
  std::filesystem::create_directories(cache_dir);
  const auto tmp = file.string() + ".tmp";
  save_matrix(tmp, d);
  std::filesystem::rename(tmp, file);
  return d;
}

// ---------------------------------------------------------------------------------------------
// cluster

struct ClusterOptions {
  DatasetSource dataset;
  DistanceMeasure measure{MeasureKind::ED, {}};
  NetworkMethod method = NetworkMethod::KNN;
  std::optional<std::size_t> k;
  std::optional<double> eps;
  std::optional<std::size_t> clusters;  // baselines only
  AlgorithmChoice algorithm = AlgorithmChoice::parse("ml");
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

struct ClusterOutcome {
  Partition partition;
  std::optional<double> rand_index;
  std::size_t edges = 0;
};

/// Normalize, distance matrix, network, communities: one pass of the pipeline.
inline ClusterOutcome run_cluster(const ClusterOptions& opt) {
  const Dataset raw = opt.dataset.load();
  const Dataset ds = normalize_dataset(raw);
  const DistanceMatrix d = distance_matrix(ds, opt.measure, opt.jobs);
  ClusterOutcome out;
  const RngSeed seed =
      experiment_seed(opt.seed, opt.dataset.name, opt.measure.name(), opt.algorithm.name());
  if (opt.algorithm.is_baseline) {
    if (!opt.clusters) throw ConfigError("baseline algorithms need --clusters");
    if (opt.algorithm.baseline == BaselineAlgorithm::Pam) {
      out.partition = pam(d, *opt.clusters);
    } else {
      out.partition = cut(hierarchy(d, opt.algorithm.baseline), *opt.clusters);
    }
  } else {
    Graph g;
    if (opt.method == NetworkMethod::KNN) {
      if (!opt.k) throw ConfigError("k-NN needs --k");
      g = knn_graph(d, *opt.k);
    } else {
      if (!opt.eps) throw ConfigError("epsilon-NN needs --eps");
      g = eps_graph(d, *opt.eps);
    }
    out.edges = g.edge_count();
    out.partition = detect(g, opt.algorithm.community, seed);
  }
  if (raw.has_labels()) out.rand_index = rand_index(out.partition, Partition(*raw.labels()));
  return out;
}

// ---------------------------------------------------------------------------------------------
// sweep

inline const char* kSweepCsvHeader = "dataset,measure,method,algo,param,communities,rand_index\n";

struct CombinationKey {
  std::string dataset, measure, method, algo;

  [[nodiscard]] std::string stem() const { return dataset + "__" + measure + "__" + method + "__" + algo; }
};

inline void write_sweep_csv(std::ostream& out, const CombinationKey& key, const SweepResult& r) {
  out << kSweepCsvHeader;
  for (const auto& rec : r.records) {
    out << key.dataset << ',' << key.measure << ',' << key.method << ',' << key.algo << ','
        << detail::format_number(rec.param) << ',' << rec.communities << ','
        << detail::format_number(rec.rand_index) << '\n';
  }
}

inline nlohmann::ordered_json sweep_json(const CombinationKey& key, const SweepResult& r) {
  nlohmann::ordered_json j;
  j["dataset"] = key.dataset;
  j["measure"] = key.measure;
  j["method"] = key.method;
  j["algo"] = key.algo;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) {
    j["records"].push_back(
        {{"param", rec.param}, {"communities", rec.communities}, {"rand_index", rec.rand_index}});
  }
  const auto& b = r.best_record();
  j["best"] = {{"param", b.param}, {"communities", b.communities}, {"rand_index", b.rand_index}};
  return j;
}

/// Best row of a per-combination CSV: highest RI, first (smallest parameter) on ties.
inline std::optional<BestResult> read_best_row(const std::filesystem::path& csv,
                                               double* best_param = nullptr,
                                               std::size_t* best_communities = nullptr) {
  std::ifstream in(csv);
  if (!in) return std::nullopt;
  std::string line;
  std::getline(in, line);
  std::optional<BestResult> best;
  while (std::getline(in, line)) {
    const auto cells = detail::split_list(line);
    if (cells.size() != 7) continue;
    const double ri = std::stod(cells[6]);
    if (!best || ri > best->rand_index) {
      best = BestResult{cells[0], cells[1], cells[2], cells[3], ri};
      if (best_param) *best_param = std::stod(cells[4]);
      if (best_communities) *best_communities = std::stoul(cells[5]);
    }
  }
  return best;
}

inline void write_text_atomically(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp);
    out << text;
    if (!out) throw IoError("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

struct SweepReport {
  std::size_t computed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;
};

/// Runs every (dataset, measure, method, algorithm) combination. Each combination writes
/// <stem>.csv and <stem>.json; combinations whose CSV already exists are skipped unless `force`.
/// best.csv and summary.csv (+ JSON mirrors) are rebuilt from the per-combination files, so an
/// interrupted run that is restarted ends with the same outputs.
inline SweepReport run_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out_dir);
  const auto cache = cfg.cache_dir.empty() ? cfg.out_dir / "cache" : cfg.cache_dir;
  SweepReport report;
  std::vector<CombinationKey> all;

  for (const auto& src : cfg.datasets) {
    std::optional<Dataset> normalized;
    std::optional<Partition> truth;
    auto ensure_loaded = [&] {
      if (normalized) return;
      const Dataset raw = src.load();
      if (!raw.has_labels()) throw ConfigError(src.name + ": sweeps need labelled data");
      truth = Partition(*raw.labels());
      normalized = normalize_dataset(raw);
    };
    for (const auto& m : cfg.measures) {
      std::optional<DistanceMatrix> d;
      for (const auto& algo : cfg.algorithms) {
        std::vector<std::string> methods;
        if (algo.is_baseline) {
          methods.push_back("cut");
        } else {
          for (auto nm : cfg.methods) methods.emplace_back(to_string(nm));
        }
        for (const auto& method : methods) {
          const CombinationKey key{src.name, m.name(), method, algo.name()};
          all.push_back(key);
          const auto csv = cfg.out_dir / (key.stem() + ".csv");
          if (!cfg.force && std::filesystem::exists(csv)) {
            ++report.skipped;
            continue;
          }
          try {
            ensure_loaded();
            if (!d) d = cached_distance_matrix(*normalized, m, cache, cfg.jobs);
            const RngSeed seed = experiment_seed(cfg.seed, key.dataset, key.measure,
                                                 key.method + "/" + key.algo);
            SweepResult r;
            if (algo.is_baseline) {
              r = sweep_baseline(*d, algo.baseline, *truth, cfg.jobs);
            } else if (method == "knn") {
              r = sweep_k(*d, algo.community, seed, *truth, cfg.jobs);
            } else {
              r = sweep_eps(*d, algo.community, seed, *truth, cfg.jobs);
            }
            std::ostringstream os;
            write_sweep_csv(os, key, r);
            write_text_atomically(cfg.out_dir / (key.stem() + ".json"), sweep_json(key, r).dump(2) + "\n");
            write_text_atomically(csv, os.str());
            ++report.computed;
            log << key.stem() << ": best RI " << detail::format_number(r.best_record().rand_index)
                << " at " << detail::format_number(r.best_record().param) << '\n';
          } catch (const IoError&) {
            throw;
          } catch (const Error& e) {
            report.failures.push_back(key.stem() + ": " + e.what());
            log << key.stem() << ": FAILED " << e.what() << '\n';
          }
        }
      }
    }
  }

  // best.csv / summary.csv from whatever per-combination files exist
  std::vector<BestResult> bests;
  std::ostringstream best_csv;
  nlohmann::ordered_json best_json = nlohmann::ordered_json::array();
  best_csv << kSweepCsvHeader;
  for (const auto& key : all) {
    double param = 0.0;
    std::size_t communities = 0;
    const auto b = read_best_row(cfg.out_dir / (key.stem() + ".csv"), &param, &communities);
    if (!b) continue;
    bests.push_back(*b);
    best_csv << b->dataset << ',' << b->measure << ',' << b->method << ',' << b->algorithm << ','
             << detail::format_number(param) << ',' << communities << ','
             << detail::format_number(b->rand_index) << '\n';
    best_json.push_back({{"dataset", b->dataset}, {"measure", b->measure}, {"method", b->method},
                         {"algo", b->algorithm}, {"param", param}, {"communities", communities},
                         {"rand_index", b->rand_index}});
  }
  write_text_atomically(cfg.out_dir / "best.csv", best_csv.str());
  write_text_atomically(cfg.out_dir / "best.json", best_json.dump(2) + "\n");

  std::ostringstream summary_csv;
  nlohmann::ordered_json summary_json = nlohmann::ordered_json::array();
  summary_csv << "measure,method,algo,datasets,median,mean,std\n";
  for (const auto& row : summarize(bests)) {
    summary_csv << row.measure << ',' << row.method << ',' << row.algorithm << ',' << row.count
                << ',' << detail::format_number(row.median) << ','
                << detail::format_number(row.mean) << ',' << detail::format_number(row.std) << '\n';
    summary_json.push_back({{"measure", row.measure}, {"method", row.method},
                            {"algo", row.algorithm}, {"datasets", row.count},
                            {"median", row.median}, {"mean", row.mean}, {"std", row.std},
                            {"degenerate", row.degenerate}});
  }
  write_text_atomically(cfg.out_dir / "summary.csv", summary_csv.str());
  write_text_atomically(cfg.out_dir / "summary.json", summary_json.dump(2) + "\n");
  return report;
}

}  // namespace tsnet
