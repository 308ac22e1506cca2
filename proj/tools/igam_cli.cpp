// igam: generate, fit, rank and plot core-periphery graphs.
//
// Exit codes: 0 ok, 1 I/O or parse error, 2 model or fit rejection,
// 3 invalid arguments.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "igam/datasets.hpp"
#include "igam/domination.hpp"
#include "igam/edge_list.hpp"
#include "igam/errors.hpp"
#include "igam/fitting.hpp"
#include "igam/graph.hpp"
#include "igam/models.hpp"
#include "igam/pipeline.hpp"
#include "igam/report.hpp"
#include "igam/rng.hpp"
#include "igam/sampler.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kIoError = 1, kRejected = 2, kBadArgs = 3 };

struct InputArgs {
  std::string edges;
  std::string dataset;
  std::string data_dir = "data";
  std::string labels;
  std::string coords;
  bool preprocess = false;
  bool iterate_filter = false;
  std::size_t nodes = 0;
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("edges,--edges", in.edges, "Edge-list file");
  cmd->add_option("--dataset", in.dataset, "Registry dataset instead of a file");
  cmd->add_option("--data-dir", in.data_dir, "Directory holding <dataset>/edges.txt")->envname("IGAM_DATA_DIR");
  cmd->add_option("--labels", in.labels, "CSV node_id,label");
  cmd->add_option("--coords", in.coords, "CSV node_id,x,y[,z]");
  cmd->add_flag("--preprocess", in.preprocess, "Symmetrize and drop nodes of degree <= 4");
  cmd->add_flag("--iterate-filter", in.iterate_filter, "Repeat the degree filter until stable");
  cmd->add_option("--nodes", in.nodes, "Minimum node count (isolated nodes)");
}

igam::LoadedGraph load_input(const InputArgs& in) {
  igam::LoadedGraph g;
  if (!in.dataset.empty()) {
    g = igam::load_dataset(igam::find_dataset(in.dataset), in.data_dir, in.iterate_filter);
  } else {
    if (in.edges.empty()) throw igam::InvalidParameter("no input: give an edge-list file or --dataset");
    igam::LoadOptions opt;
    opt.iterate_filter = in.iterate_filter;
    if (!in.labels.empty()) opt.labels = in.labels;
    if (!in.coords.empty()) opt.coordinates = in.coords;
    g = in.preprocess ? igam::load_graph_file(in.edges, false, opt) : igam::load_raw_graph_file(in.edges, opt, in.nodes);
  }
  for (const auto& w : g.warnings) std::cerr << "warning: " << w << '\n';
  return g;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir.empty() ? "." : dir);
  fs::create_directories(p);
  return p;
}

void write_json(const fs::path& path, const json& j) { igam::write_text(path, j.dump(2) + "\n"); }

// generate

struct GenerateArgs {
  std::string variant = "igam";
  int b = 3;
  double c = 2.0;
  double c1 = 1.5;
  double c2 = 2.5;
  int H0 = 2;
  int H = 4;
  std::size_t n = 1000;
  double delta = 0.0;
  CLI::Option* delta_opt = nullptr;
  std::uint64_t seed = igam::kDefaultSeed;
  bool no_plot = false;
};

json level_stats(const igam::Graph& g, std::span<const int> levels) {
  int top = 0;
  for (int h : levels) top = std::max(top, h);
  std::vector<std::size_t> nodes(static_cast<std::size_t>(top) + 1, 0), degree(nodes.size(), 0);
  for (igam::node_t v = 0; v < static_cast<igam::node_t>(g.node_count()); ++v) {
    ++nodes[levels[v]];
    degree[levels[v]] += g.degree(v);
  }
  json out = json::array();
  for (std::size_t h = 0; h < nodes.size(); ++h) {
    const double mean = nodes[h] ? static_cast<double>(degree[h]) / static_cast<double>(nodes[h]) : 0.0;
    out.push_back({{"level", h}, {"nodes", nodes[h]}, {"total_degree", degree[h]}, {"mean_degree", mean}});
  }
  return out;
}

int run_generate(const GenerateArgs& a, const fs::path& out) {
  igam::Graph graph;
  std::vector<int> levels;
  std::vector<double> real_heights;
  json params;
  json stats;
  if (a.variant == "igam") {
    igam::IgamParams p{a.b, a.c, a.H};
    auto s = igam::sample_igam(p, a.seed);
    graph = std::move(s.graph);
    levels.assign(s.heights.heights().begin(), s.heights.heights().end());
    params = {{"b", a.b}, {"c", a.c}, {"H", a.H}};
    stats["expected_edges"] = igam::expected_edges(p);
  } else if (a.variant == "igam2") {
    igam::Igam2Params p{a.b, a.c1, a.c2, a.H0, a.H};
    auto s = igam::sample_igam2(p, a.seed);
    graph = std::move(s.graph);
    levels.assign(s.heights.heights().begin(), s.heights.heights().end());
    params = {{"b", a.b}, {"c1", a.c1}, {"c2", a.c2}, {"H0", a.H0}, {"H", a.H}};
  } else if (a.variant == "directed") {
    igam::IgamParams p{a.b, a.c, a.H};
    auto s = igam::sample_directed_igam(p, a.seed);
    graph = std::move(s.graph);
    levels.assign(s.heights.heights().begin(), s.heights.heights().end());
    params = {{"b", a.b}, {"c", a.c}, {"H", a.H}};
  } else if (a.variant == "continuous") {
    igam::IgamParams p{a.b, a.c, a.H};
    std::optional<double> delta;
    if (a.delta_opt && a.delta_opt->count() > 0) delta = a.delta;
    auto s = igam::sample_continuous_igam(p, a.n, a.seed, delta);
    graph = std::move(s.graph);
    real_heights = std::move(s.heights);
    for (double h : real_heights) levels.push_back(static_cast<int>(std::floor(h)));
    params = {{"b", a.b}, {"c", a.c}, {"H", a.H}, {"n", a.n}};
    if (delta) params["delta"] = *delta;
  } else {
    throw igam::InvalidParameter("unknown variant '" + a.variant + "'");
  }

  igam::write_edge_list(out / "edges.txt", graph);
  if (real_heights.empty())
    igam::write_heights(out / "heights.txt", std::span<const int>(levels));
  else
    igam::write_heights(out / "heights.txt", std::span<const double>(real_heights));

  const igam::Graph sym = graph.as_undirected();
  stats["variant"] = a.variant;
  stats["seed"] = a.seed;
  stats["params"] = params;
  stats["n"] = graph.node_count();
  stats["m"] = graph.edge_count();
  stats["directed"] = graph.directed();
  stats["levels"] = level_stats(sym, levels);
  stats["gcc"] = igam::gcc(sym);
  if (sym.node_count() > 0) {
    const auto giant = igam::giant_component(sym);
    stats["giant_component"] = {{"n", giant.graph.node_count()},
                                {"m", giant.graph.edge_count()},
                                {"diameter", igam::diameter(giant.graph)}};
  }
  write_json(out / "stats.json", stats);
  if (!a.no_plot) igam::write_text(out / "adjacency.svg", igam::svg_adjacency(sym, levels));
  std::cout << "n = " << graph.node_count() << ", m = " << graph.edge_count() << '\n';
  return kOk;
}

// fit

struct FitArgs {
  InputArgs in;
  std::string scorer = "exact";
  int b_min = 0;
  int b_max = 0;
  bool full_sweep = false;
  bool swaps = false;
  bool no_plot = false;
  int depth = 3;
};

igam::FitOptions fit_options(const FitArgs& a) {
  igam::FitOptions opt;
  opt.scorer = a.scorer == "approx" ? igam::Scorer::Approx : igam::Scorer::Exact;
  if (a.b_min > 0) opt.b_min = a.b_min;
  if (a.b_max > 0) opt.b_max = a.b_max;
  opt.full_sweep = a.full_sweep;
  opt.swaps = a.swaps;
  return opt;
}

int run_fit(const FitArgs& a, const fs::path& out) {
  const auto loaded = load_input(a.in);
  const auto& g = loaded.graph;
  igam::FitResult r;
  try {
    r = igam::fit(g, fit_options(a));
  } catch (const igam::FitFailed& e) {
    std::cerr << "fit failed: " << e.what() << '\n';
    for (const auto& line : e.rejection_log()) std::cerr << "  " << line << '\n';
    return kRejected;
  }
  json levels = json::array();
  for (const auto& [h, y] : r.level_log_degrees) levels.push_back({h, y});
  json core = json::array();
  for (const auto& l : igam::core_labels_report(g, r.heights, a.depth)) core.push_back({{"level", l.level}, {"labels", l.labels}});
  json j = {{"n", g.node_count()},
            {"m", g.edge_count()},
            {"b", r.b_star},
            {"c", r.c_star},
            {"slope", r.slope},
            {"intercept", r.intercept},
            {"r_squared", r.r_squared},
            {"loglik_exact", r.loglik_exact},
            {"loglik_approx", r.loglik_approx},
            {"swaps", r.swaps},
            {"level_log_degrees", levels},
            {"rejections", r.rejections},
            {"core_labels", core}};
  write_json(out / "fit.json", j);
  igam::write_heights(out / "fitted_heights.txt", r.heights.heights());
  if (!a.no_plot)
    igam::write_text(out / "fit.svg", igam::svg_fit_scatter(r.level_log_degrees, r.slope, r.intercept, r.r_squared,
                                                             r.b_star, r.c_star));
  std::cout << "b = " << r.b_star << ", c = " << igam::format_number(r.c_star)
            << ", R2 = " << igam::format_number(r.r_squared) << '\n';
  return kOk;
}

// dominate

struct DominateArgs {
  InputArgs in;
  FitArgs fit;
  std::string strategy = "greedy";
  double kappa = 0.8;
  std::string heights;
  bool joint = false;
  std::string semantics = "standard";
  std::vector<double> epsilon_grid;
  bool no_plot = false;
};

json exponent_json(const igam::AdsExponent& e, double kappa) {
  return {{"kappa", kappa}, {"reached", e.reached}, {"prefix", e.prefix}, {"p", e.p}, {"max_coverage", e.max_coverage}};
}

int run_dominate(const DominateArgs& a, const fs::path& out) {
  const auto loaded = load_input(a.in);
  const auto& g = loaded.graph;
  const auto strategy = igam::parse_strategy(a.strategy);
  const auto semantics = a.semantics == "total" ? igam::Domination::Total : igam::Domination::Standard;
  if (!(a.kappa > 0 && a.kappa <= 1)) throw igam::InvalidParameter("kappa must lie in (0, 1]");

  igam::RankingOptions opt;
  opt.fit = fit_options(a.fit);
  opt.epsilon_grid = a.epsilon_grid;
  if (!a.heights.empty()) opt.heights = igam::read_heights(a.heights, g.node_count());
  auto ranked = igam::rank_nodes(g, strategy, opt);
  const auto curve = igam::domination_curve(g, ranked.ranking, semantics);
  const auto exponent = igam::ads_exponent(curve, a.kappa);

  json j = exponent_json(exponent, a.kappa);
  j["strategy"] = igam::to_string(strategy);
  j["semantics"] = a.semantics;
  j["n"] = g.node_count();
  j["m"] = g.edge_count();
  if (ranked.epsilon) j["epsilon"] = *ranked.epsilon;
  if (ranked.fit) j["fit"] = {{"b", ranked.fit->b_star}, {"c", ranked.fit->c_star}, {"r_squared", ranked.fit->r_squared}};

  igam::write_curve_csv(out / "curve.csv", curve);
  if (!ranked.scores.empty()) igam::write_scores_csv(out / "scores.csv", ranked.scores);
  std::vector<igam::NamedCurve> curves{{igam::to_string(strategy), curve}};
  if (a.joint) {
    const auto greedy = igam::greedy_max_coverage(g);
    const auto gcurve = igam::domination_curve(g, greedy.ranking, semantics);
    const auto fit = igam::coverage_loglog_fit(gcurve, curve);
    j["joint"] = {{"gamma", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}, {"points", fit.points}};
    if (!a.no_plot)
      igam::write_text(out / "joint.svg", igam::svg_joint_coverage({"greedy", gcurve}, curves.front(), fit));
    if (strategy != igam::RankingStrategy::Greedy) curves.push_back({"greedy", gcurve});
  }
  write_json(out / "exponent.json", j);
  if (!a.no_plot) igam::write_text(out / "domination.svg", igam::svg_domination_loglog(curves, "domination curve"));
  std::cout << igam::to_string(strategy) << ": p = " << igam::format_number(exponent.p) << " (prefix "
            << exponent.prefix << " of " << g.node_count() << ")\n";
  return kOk;
}

// compare

struct CompareArgs {
  std::vector<std::string> datasets;
  std::string data_dir = "data";
  std::vector<std::string> strategies{"prestige", "greedy", "logistic", "th"};
  double kappa = 0.8;
  bool iterate_filter = false;
};

int run_compare(const CompareArgs& a, const fs::path& out) {
  std::vector<std::string> names = a.datasets;
  if (names.empty())
    for (const auto& s : igam::dataset_registry()) names.push_back(s.name);
  json rows = json::array();
  std::string csv = "dataset,n,m,strategy,prefix,p,status\n";
  std::size_t loaded_any = 0;
  for (const auto& name : names) {
    const auto& spec = igam::find_dataset(name);
    igam::LoadedGraph loaded;
    try {
      loaded = igam::load_dataset(spec, a.data_dir, a.iterate_filter);
    } catch (const igam::IoError& e) {
      std::cerr << name << ": " << e.what() << '\n';
      rows.push_back({{"dataset", name}, {"status", "missing"}});
      csv += name + ",,,,,,missing\n";
      continue;
    }
    ++loaded_any;
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    const auto& g = loaded.graph;
    for (const auto& sname : a.strategies) {
      const auto strategy = sname == "logistic" ? igam::logistic_strategy_for(g) : igam::parse_strategy(sname);
      json row = {{"dataset", name}, {"n", g.node_count()}, {"m", g.edge_count()}, {"strategy", igam::to_string(strategy)}};
      std::string status = "ok";
      try {
        const auto ranked = igam::rank_nodes(g, strategy);
        const auto e = igam::ads_exponent(igam::domination_curve(g, ranked.ranking), a.kappa);
        row["prefix"] = e.prefix;
        row["p"] = e.p;
        csv += name + "," + std::to_string(g.node_count()) + "," + std::to_string(g.edge_count()) + "," +
               igam::to_string(strategy) + "," + std::to_string(e.prefix) + "," + igam::format_number(e.p) + ",ok\n";
      } catch (const igam::Error& e) {
        status = e.what();
        csv += name + "," + std::to_string(g.node_count()) + "," + std::to_string(g.edge_count()) + "," +
               igam::to_string(strategy) + ",,,failed\n";
      }
      row["status"] = status;
      rows.push_back(row);
      std::cout << name << '\t' << igam::to_string(strategy) << '\t'
                << (row.contains("p") ? igam::format_number(row["p"].get<double>()) : status) << '\n';
    }
  }
  igam::write_text(out / "compare.csv", csv);
  write_json(out / "compare.json", {{"kappa", a.kappa}, {"rows", rows}});
  return loaded_any > 0 ? kOk : kIoError;
}

// visualize

struct VisualizeArgs {
  InputArgs in;
  FitArgs fit;
  std::string heights;
};

int run_visualize(const VisualizeArgs& a, const fs::path& out) {
  const auto loaded = load_input(a.in);
  const auto& g = loaded.graph;
  std::vector<int> heights;
  if (!a.heights.empty()) {
    heights = igam::read_heights(a.heights, g.node_count());
  } else {
    const auto r = igam::fit(g, fit_options(a.fit));
    heights.assign(r.heights.heights().begin(), r.heights.heights().end());
  }
  igam::write_text(out / "layers.svg", igam::svg_layered(g, heights));
  igam::write_text(out / "adjacency.svg", igam::svg_adjacency(g, heights));
  return kOk;
}

/// Turns a JSON config object into trailing "--key=value" arguments. Options
/// keep their last value, so the config wins over the command line.
std::vector<std::string> config_arguments(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw igam::IoError("cannot read config " + path.string());
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw igam::MalformedInput("config " + path.string() + ": " + e.what());
  }
  if (!cfg.is_object()) throw igam::MalformedInput("config must be a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : cfg.items()) {
    if (value.is_array()) {
      args.push_back("--" + key);
      for (const auto& v : value) args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else if (value.is_string()) {
      args.push_back("--" + key + "=" + value.get<std::string>());
    } else {
      args.push_back("--" + key + "=" + value.dump());
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influencer-guided attachment toolkit"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir = ".";
  std::string config;
  app.add_option("-o,--out", out_dir, "Output directory")->envname("IGAM_OUT_DIR");
  app.add_option("--config", config, "JSON file whose keys override flags");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample a graph");
  generate->add_option("--variant", gen.variant)->check(CLI::IsMember({"igam", "igam2", "directed", "continuous"}));
  generate->add_option("--b", gen.b, "Fanout");
  generate->add_option("--c", gen.c, "Scale");
  generate->add_option("--c1", gen.c1, "Core scale (igam2)");
  generate->add_option("--c2", gen.c2, "Periphery scale (igam2)");
  generate->add_option("--H0", gen.H0, "Core threshold level (igam2)");
  generate->add_option("--H", gen.H, "Height");
  generate->add_option("--n", gen.n, "Node count (continuous)");
  gen.delta_opt = generate->add_option("--delta", gen.delta, "Power-mean order (continuous)");
  generate->add_option("--seed", gen.seed);
  generate->add_flag("--no-plot", gen.no_plot);

  FitArgs fit;
  auto add_fit_options = [](CLI::App* cmd, FitArgs& f) {
    cmd->add_option("--scorer", f.scorer)->check(CLI::IsMember({"exact", "approx"}));
    cmd->add_option("--b-min", f.b_min);
    cmd->add_option("--b-max", f.b_max);
    cmd->add_flag("--full-sweep", f.full_sweep);
    cmd->add_flag("--swaps", f.swaps, "Refine heights by likelihood-increasing swaps");
  };
  auto* fit_cmd = app.add_subcommand("fit", "Fit fanout and scale to an edge list");
  add_input_options(fit_cmd, fit.in);
  add_fit_options(fit_cmd, fit);
  fit_cmd->add_option("--depth", fit.depth, "Levels in the core label report");
  fit_cmd->add_flag("--no-plot", fit.no_plot);

  DominateArgs dom;
  auto* dominate = app.add_subcommand("dominate", "Domination curve and ADS exponent of a ranking");
  add_input_options(dominate, dom.in);
  add_fit_options(dominate, dom.fit);
  dominate->add_option("--strategy", dom.strategy, "greedy|prestige|cp|jb|th");
  dominate->add_option("--kappa", dom.kappa);
  dominate->add_option("--heights", dom.heights, "Heights file for prestige (skips fitting)");
  dominate->add_flag("--joint", dom.joint, "Also fit greedy-vs-strategy coverage on log-log axes");
  dominate->add_option("--semantics", dom.semantics)->check(CLI::IsMember({"standard", "total"}));
  dominate->add_option("--epsilon", dom.epsilon_grid, "Kernel exponent grid for jb");
  dominate->add_flag("--no-plot", dom.no_plot);

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Exponent table over registry datasets");
  compare->add_option("--datasets", cmp.datasets);
  compare->add_option("--data-dir", cmp.data_dir)->envname("IGAM_DATA_DIR");
  compare->add_option("--strategies", cmp.strategies, "prestige|greedy|logistic|cp|jb|th");
  compare->add_option("--kappa", cmp.kappa);
  compare->add_flag("--iterate-filter", cmp.iterate_filter);

  VisualizeArgs vis;
  auto* visualize = app.add_subcommand("visualize", "Layered drawing and adjacency map");
  add_input_options(visualize, vis.in);
  add_fit_options(visualize, vis.fit);
  visualize->add_option("--heights", vis.heights);

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        auto extra = config_arguments(args[i + 1]);
        args.insert(args.end(), extra.begin(), extra.end());
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        auto extra = config_arguments(args[i].substr(9));
        args.insert(args.end(), extra.begin(), extra.end());
        break;
      }
    }
  } catch (const igam::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArgs;
  }

  try {
    const auto out = prepare_dir(out_dir);
    if (*generate) return run_generate(gen, out);
    if (*fit_cmd) return run_fit(fit, out);
    if (*dominate) return run_dominate(dom, out);
    if (*compare) return run_compare(cmp, out);
    if (*visualize) return run_visualize(vis, out);
  } catch (const igam::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const igam::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const igam::MalformedInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const igam::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRejected;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kBadArgs;
}
