// Experiment harness for balanced graph cut minimization.
//
// Subcommands:
//   run                 c-sweep of multi-initialization solves, CSV/JSON report
//   compare-extensions  Lovász vs scaled-mean extension on shared inits
//   oracle              exact optimum by enumeration (n <= 24)

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bck/graph.hpp"
#include "bck/objective.hpp"
#include "bck/oracle.hpp"
#include "bck/outer.hpp"
#include "bck/setfn.hpp"
#include "bck/spectral.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bck::GraphFormat parse_format(const std::string& name) {
  if (name == "metis") return bck::GraphFormat::Metis;
  if (name == "matrix-market") return bck::GraphFormat::MatrixMarket;
  if (name == "edge-list") return bck::GraphFormat::EdgeList;
  throw CLI::ValidationError("--format", "unknown format '" + name + "'");
}

// --graph is a file path or a generator spec "two-moons:n=2000,k=10[,noise=..,sigma=..,seed=..]"
bck::Graph load_graph(const std::string& source, const std::string& format,
                      std::uint64_t default_seed) {
  if (source.rfind("two-moons", 0) == 0) {
    int n = 2000, k = 10;
    double noise = 0.1, sigma = -1.0;
    std::uint64_t seed = default_seed;
    auto colon = source.find(':');
    if (colon != std::string::npos) {
      std::stringstream args(source.substr(colon + 1));
      std::string kv;
      while (std::getline(args, kv, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw CLI::ValidationError("--graph", "bad generator field '" + kv + "'");
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "n") n = std::stoi(val);
        else if (key == "k") k = std::stoi(val);
        else if (key == "noise") noise = std::stod(val);
        else if (key == "sigma") sigma = std::stod(val);
        else if (key == "seed") seed = std::stoull(val);
        else
          throw CLI::ValidationError("--graph",
                                     "unknown generator field '" + key + "'");
      }
    }
    return bck::two_moons_graph(n, k, sigma, noise, seed).graph;
  }
  std::ifstream in(source);
  if (!in) throw IoError("cannot open graph file: " + source);
  try {
    return bck::parse_graph(in, parse_format(format));
  } catch (const CLI::ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(source + ": " + e.what());
  }
}

bck::BalanceFunction make_balance(const std::string& name, int n) {
  if (name == "ratio-cut") return bck::BalanceFunction::ratio_cut(n);
  if (name == "cheeger") return bck::BalanceFunction::ratio_cheeger(n);
  throw CLI::ValidationError("--balance", "unknown balance '" + name + "'");
}

bck::Extension make_extension(const std::string& name,
                              const bck::BalanceFunction& b) {
  if (name == "lovasz") return bck::Extension(b, bck::ExtensionKind::Lovasz);
  if (name == "mean") return bck::Extension(b, bck::ExtensionKind::ScaledMean);
  if (name == "median") return bck::Extension(b, bck::ExtensionKind::Median);
  throw CLI::ValidationError("--extension", "unknown extension '" + name + "'");
}

std::vector<double> parse_sweep(const std::string& sweep) {
  std::vector<double> out;
  std::stringstream ss(sweep);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty())
    throw CLI::ValidationError("--c-sweep", "sweep must be nonempty");
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::vector<bck::Vec> build_init_pool(const bck::Graph& g,
                                      const bck::RatioObjective& obj,
                                      const bck::SolverConfig& cfg,
                                      int n_random, bool use_spectral,
                                      std::optional<int>& spectral_index) {
  std::vector<bck::Vec> inits;
  for (int i = 0; i < n_random; ++i) {
    std::uint64_t z = cfg.seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    inits.push_back(bck::random_initialization(obj, cfg.constraint,
                                               g.num_vertices(), z ^ (z >> 31)));
  }
  if (use_spectral) {
    spectral_index = static_cast<int>(inits.size());
    inits.push_back(cfg.constraint.normalize(bck::second_eigenvector(g)));
  }
  return inits;
}

struct CommonOpts {
  std::string graph, format = "edge-list", balance = "ratio-cut";
  std::string extension = "lovasz", mode = "standard";
  std::string out, out_format = "csv";
  std::string c_sweep = "0";
  int n_random = 10;
  bool spectral = false;
  std::uint64_t seed = 1;
  int max_outer = 100;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--graph", o.graph, "graph file path or generator spec")
      ->required();
  cmd->add_option("--format", o.format,
                  "input format: metis|matrix-market|edge-list");
  cmd->add_option("--balance", o.balance, "ratio-cut|cheeger");
  cmd->add_option("--seed", o.seed, "experiment seed");
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--out-format", o.out_format, "csv|json");
}

int cmd_run(const CommonOpts& o) {
  bck::Graph g = load_graph(o.graph, o.format, o.seed);
  bck::BalanceFunction b = make_balance(o.balance, g.num_vertices());
  bck::RatioObjective obj =
      bck::RatioObjective::balanced_cut(g, make_extension(o.extension, b));

  bck::SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.max_outer = o.max_outer;
  if (o.mode == "cut-monotone")
    cfg.mode = bck::SolverMode::CutMonotone;
  else if (o.mode != "standard")
    throw CLI::ValidationError("--mode", "unknown mode '" + o.mode + "'");

  std::vector<double> sweep = parse_sweep(o.c_sweep);
  std::optional<int> spectral_index;
  auto inits =
      build_init_pool(g, obj, cfg, o.n_random, o.spectral, spectral_index);

  std::string csv = "c,avg,top10_avg,best,best_set_size\n";
  nlohmann::json jrows = nlohmann::json::array();
  for (double c : sweep) {
    bck::SolverConfig run_cfg = cfg;
    run_cfg.cR = 0.0;
    run_cfg.cS = c;  // c^k = c·λ^k
    bck::RunReport rep =
        bck::multi_init_run_with(g, obj, b, run_cfg, inits, spectral_index);
    csv += bck::format_shortest(c) + "," + bck::format_shortest(rep.avg) + "," +
           bck::format_shortest(rep.top10_avg) + "," +
           bck::format_shortest(rep.best) + "," +
           std::to_string(rep.best_set.count()) + "\n";
    jrows.push_back({{"c", c}, {"report", nlohmann::json::parse(rep.to_json())}});
  }
  write_output(o.out, o.out_format == "json" ? nlohmann::json(jrows).dump(2) + "\n"
                                             : csv);
  return 0;
}

int cmd_compare_extensions(const CommonOpts& o) {
  bck::Graph g = load_graph(o.graph, o.format, o.seed);
  bck::BalanceFunction b = bck::BalanceFunction::ratio_cut(g.num_vertices());
  bck::RatioObjective lovasz = bck::RatioObjective::balanced_cut(
      g, bck::Extension(b, bck::ExtensionKind::Lovasz));
  bck::RatioObjective mean = bck::RatioObjective::balanced_cut(
      g, bck::Extension(b, bck::ExtensionKind::ScaledMean));

  bck::SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.max_outer = o.max_outer;

  std::optional<int> spectral_index;
  auto inits =
      build_init_pool(g, lovasz, cfg, o.n_random, o.spectral, spectral_index);

  bck::RunReport rl =
      bck::multi_init_run_with(g, lovasz, b, cfg, inits, spectral_index);
  bck::RunReport rm =
      bck::multi_init_run_with(g, mean, b, cfg, inits, spectral_index);

  int better = 0, equal = 0, worse = 0;
  for (size_t i = 0; i < inits.size(); ++i) {
    double dl = rl.runs[i].best_ratio, dm = rm.runs[i].best_ratio;
    if (std::abs(dl - dm) <= 1e-10)
      ++equal;
    else if (dl < dm)
      ++better;
    else
      ++worse;
  }
  double best_cut_ratio = rl.best / rm.best;

  if (o.out_format == "json") {
    nlohmann::json j{{"better", better},
                     {"equal", equal},
                     {"worse", worse},
                     {"best_lovasz", rl.best},
                     {"best_mean", rm.best},
                     {"best_cut_ratio", best_cut_ratio}};
    write_output(o.out, j.dump(2) + "\n");
  } else {
    std::string csv =
        "better,equal,worse,best_lovasz,best_mean,best_cut_ratio\n";
    csv += std::to_string(better) + "," + std::to_string(equal) + "," +
           std::to_string(worse) + "," + bck::format_shortest(rl.best) + "," +
           bck::format_shortest(rm.best) + "," +
           bck::format_shortest(best_cut_ratio) + "\n";
    write_output(o.out, csv);
  }
  return 0;
}

int cmd_oracle(const CommonOpts& o) {
  bck::Graph g = load_graph(o.graph, o.format, o.seed);
  if (g.num_vertices() > 24) {
    std::cerr << "oracle: graph has " << g.num_vertices()
              << " vertices, enumeration is capped at 24\n";
    return kExitUsage;
  }
  bck::BalanceFunction b = make_balance(o.balance, g.num_vertices());
  bck::OracleResult res = bck::brute_force_optimum(g, b);
  std::string out = bck::format_shortest(res.best_ratio) + " {";
  bool first = true;
  for (int i = 0; i < res.best_set.size(); ++i) {
    if (!res.best_set.contains(i)) continue;
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  out += "}\n";
  write_output(o.out, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balanced graph cut minimization via ratio d.c. descent"};
  app.require_subcommand(1);

  CommonOpts run_o, cmp_o, orc_o;

  CLI::App* run = app.add_subcommand("run", "c-sweep experiment");
  add_common(run, run_o);
  run->add_option("--extension", run_o.extension, "lovasz|mean|median");
  run->add_option("--c-sweep", run_o.c_sweep, "comma-separated c values");
  run->add_option("--random-inits", run_o.n_random, "random initializations");
  run->add_flag("--spectral", run_o.spectral, "add the spectral initialization");
  run->add_option("--mode", run_o.mode, "standard|cut-monotone");
  run->add_option("--max-outer", run_o.max_outer, "outer iteration cap");

  CLI::App* cmp = app.add_subcommand("compare-extensions",
                                     "Lovász vs scaled-mean on shared inits");
  add_common(cmp, cmp_o);
  cmp->add_option("--random-inits", cmp_o.n_random, "random initializations");
  cmp->add_flag("--spectral", cmp_o.spectral, "add the spectral initialization");
  cmp->add_option("--max-outer", cmp_o.max_outer, "outer iteration cap");

  CLI::App* orc = app.add_subcommand("oracle", "exact optimum (n <= 24)");
  add_common(orc, orc_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_o);
    if (cmp->parsed()) return cmd_compare_extensions(cmp_o);
    if (orc->parsed()) return cmd_oracle(orc_o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
