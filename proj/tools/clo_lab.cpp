// Lab driver: generates instance files, runs single searches and Monte
// Carlo experiments, certifies coverings, prints bound formulas, applies
// the instance reductions, and cross-checks the exact oracle.
// Exit codes: 0 pass, 2 bound-check failure, 1 any error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "clo/covering.hpp"
#include "clo/engine.hpp"
#include "clo/experiment.hpp"
#include "clo/generators.hpp"
#include "clo/io.hpp"
#include "clo/oracle.hpp"
#include "clo/reductions.hpp"

namespace {

using namespace clo;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

PivotKind parse_pivot(const std::string& s) {
  if (s == "first") return PivotKind::first_improvement;
  if (s == "random") return PivotKind::random_improvement;
  return PivotKind::best_improvement;
}

games::CostModel parse_model(const std::string& s) {
  if (s == "polynomial") return games::CostModel::polynomial;
  if (s == "step") return games::CostModel::step;
  return games::CostModel::general;
}

struct GenOptions {
  std::string family;
  std::string out;
  std::uint64_t seed = 1;
  double phi = 0.0;
  std::uint64_t smooth_seed = 0;
  bool smooth_seed_set = false;
  int n = -1;
  int m = -1;
  int k = -1;
  int players = 3;
  std::string model = "general";
  int blocks = 2;
  bool nonnegative = false;
  bool directed = false;
  int alphabet = 2;
  int arity = 2;
  int occurrence = 2;
  int max_size = -1;
  int p = 1;
  int q = 0;
};

int defaulted(int value, int fallback) { return value >= 0 ? value : fallback; }

io::FamilyInstance generate(const GenOptions& o) {
  const auto model = parse_model(o.model);
  if (o.family == "congestion")
    return gen::random_congestion(o.seed, defaulted(o.n, 3), defaulted(o.m, 4),
                                  defaulted(o.k, 3), model);
  if (o.family == "network")
    return gen::random_network(o.seed, defaulted(o.n, 5), defaulted(o.m, 3),
                               o.players, model);
  if (o.family == "coordination")
    return gen::random_coordination(o.seed, defaulted(o.n, 4),
                                    defaulted(o.k, 3));
  if (o.family == "tour")
    return gen::random_tour(o.seed, defaulted(o.n, 6), defaulted(o.k, 2),
                            o.directed);
  if (o.family == "maxsat")
    return gen::random_maxsat(o.seed, defaulted(o.n, 4), defaulted(o.m, 6),
                              defaulted(o.k, 1));
  if (o.family == "maxcut")
    return gen::random_maxcut(o.seed, defaulted(o.n, 5), !o.nonnegative,
                              o.blocks);
  if (o.family == "matching")
    return gen::random_matching(o.seed, defaulted(o.n, 3), o.p, o.q);
  if (o.family == "exact_cover")
    return gen::random_exact_cover(o.seed, defaulted(o.n, 3),
                                   defaulted(o.m, 4), defaulted(o.k, 2));
  if (o.family == "set_cover")
    return gen::random_set_cover(o.seed, defaulted(o.n, 6), defaulted(o.m, 5),
                                 defaulted(o.k, 1));
  if (o.family == "hitting_set")
    return gen::random_hitting_set(
        o.seed, defaulted(o.n, 6), defaulted(o.m, 5),
        defaulted(o.max_size, defaulted(o.n, 6)), defaulted(o.k, 1));
  if (o.family == "mca")
    return gen::random_mca(o.seed, defaulted(o.n, 5), o.alphabet, o.arity,
                           o.occurrence, defaulted(o.m, 4));
  throw std::invalid_argument("gen: unknown family '" + o.family + "'");
}

int cmd_gen(const GenOptions& o) {
  io::InstanceFile file{generate(o), std::nullopt};
  if (o.phi > 0.0)
    file.smoothing = io::SmoothingSpec{
        o.smooth_seed_set ? o.smooth_seed : o.seed, o.phi, {}};
  io::write_instance_file(o.out, file);
  std::cout << "wrote " << io::family_tag(file.instance) << " instance to "
            << o.out;
  if (file.smoothing) std::cout << " (phi=" << fmt(o.phi) << ")";
  std::cout << "\n";
  return 0;
}

struct RunOptions {
  std::string instance;
  std::string pivot = "best";
  std::uint64_t seed = 0;
  std::uint64_t max_iters = 0;
};

int cmd_run(const RunOptions& o) {
  const auto file = io::read_instance_file(o.instance);
  const auto handle = io::encode_any(file.instance);
  PivotRule rule{parse_pivot(o.pivot), o.seed};
  const std::uint64_t cap =
      o.max_iters ? o.max_iters : default_max_iters(handle.instance);
  const auto trace = run_search(handle.instance, handle.sense,
                                handle.instance.start, rule, cap);
  std::cout << "family " << io::family_tag(file.instance) << ", start cost "
            << fmt(cost(handle.instance, handle.instance.start))
            << " -> terminal cost " << fmt(cost(handle.instance, trace.terminal))
            << " in " << trace.iterations() << " steps, "
            << (trace.status == SearchStatus::converged ? "converged"
                                                        : "iteration-capped")
            << "\n";
  std::cout << "terminal: " << handle.describe(trace.terminal) << "\n";
  return 0;
}

struct ExperimentOptions {
  std::string instance;
  int replicas = 20;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string pivot = "best";
  std::string mode = "engine";
  std::vector<double> phis;
  std::uint64_t max_iters = 0;
  int threads = 0;
  bool attach_bound = false;
  std::string out;
  std::string svg;
};

std::string suffixed_path(const std::string& path, const std::string& tag) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
    return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

int cmd_experiment(const ExperimentOptions& o) {
  const auto file = io::read_instance_file(o.instance);
  const auto handle = io::encode_any(file.instance);

  io::SmoothingSpec base =
      file.smoothing.value_or(io::SmoothingSpec{0, 1.0, {}});
  if (o.seed_set) base.seed = o.seed;
  // phi 0 keeps the file's explicit density list instead of a shared window
  std::vector<double> phis = o.phis;
  if (phis.empty())
    phis.push_back(base.densities.empty()
                       ? (base.shared_phi > 0.0 ? base.shared_phi : 1.0)
                       : 0.0);
  const bool multi = phis.size() > 1;

  std::optional<Covering> covering;
  if (o.attach_bound)
    covering = expand_covering(handle.instance, handle.covering);

  bool all_pass = true;
  std::vector<std::pair<double, double>> mean_points, bound_points;
  for (double phi : phis) {
    io::SmoothingSpec spec = base;
    if (phi > 0.0) {
      spec.shared_phi = phi;
      spec.densities.clear();
    }
    ExperimentSpec ex;
    ex.instance = handle.instance;
    ex.sense = handle.sense;
    ex.smoothing = io::resolve_smoothing(spec, handle.instance);
    ex.pivot = PivotRule{parse_pivot(o.pivot), 0};
    ex.mode = o.mode == "oracle" ? MeasureMode::oracle_longest_path
                                 : MeasureMode::engine_iterations;
    ex.replicas = o.replicas;
    ex.max_iters = o.max_iters;
    ex.covering = covering;
    ex.threads = o.threads;
    const auto res = run_experiment(ex);

    io::CsvTable table;
    table.columns = {"replica", "seed", "iterations", "terminal_cost",
                     "wall_ms"};
    for (const auto& row : res.rows)
      table.rows.push_back({std::to_string(row.replica),
                            std::to_string(row.seed),
                            std::to_string(row.iterations),
                            fmt(row.terminal_cost), fmt(row.wall_ms)});
    const double shown_phi = ex.smoothing.max_phi();
    if (!o.out.empty()) {
      const std::string path =
          multi ? suffixed_path(o.out, "_phi" + fmt(shown_phi)) : o.out;
      std::ofstream csv(path);
      if (!csv) throw std::runtime_error(path + ": cannot open file");
      io::write_csv(csv, table);
    } else {
      io::write_csv(std::cout, table);
    }

    std::cout << "phi=" << fmt(shown_phi) << " replicas=" << o.replicas
              << " mean=" << fmt(res.mean) << " stderr=" << fmt(res.stderr_);
    if (res.bound) std::cout << " bound=" << fmt(*res.bound);
    std::cout << " pass=" << (res.pass ? "yes" : "no") << "\n";
    all_pass = all_pass && res.pass;
    mean_points.emplace_back(shown_phi, res.mean);
    if (res.bound) bound_points.emplace_back(shown_phi, *res.bound);

    if (!o.svg.empty() && !multi) {
      std::vector<io::PlotSeries> series;
      io::PlotSeries scatter{"iterations", {}, false};
      for (const auto& row : res.rows)
        scatter.points.emplace_back(row.replica, row.iterations);
      series.push_back(std::move(scatter));
      io::PlotSeries mean_line{"mean", {}, true};
      mean_line.points.emplace_back(0.0, res.mean);
      mean_line.points.emplace_back(o.replicas - 1.0, res.mean);
      series.push_back(std::move(mean_line));
      if (res.bound) {
        io::PlotSeries bound_line{"bound", {}, true};
        bound_line.points.emplace_back(0.0, *res.bound);
        bound_line.points.emplace_back(o.replicas - 1.0, *res.bound);
        series.push_back(std::move(bound_line));
      }
      std::ofstream svg(o.svg);
      if (!svg) throw std::runtime_error(o.svg + ": cannot open file");
      svg << io::svg_plot(io::family_tag(file.instance) + " smoothed search",
                          "replica", "iterations", series);
    }
  }

  if (!o.svg.empty() && multi) {
    std::vector<io::PlotSeries> series;
    series.push_back({"mean iterations", mean_points, true});
    if (!bound_points.empty()) series.push_back({"bound", bound_points, true});
    std::ofstream svg(o.svg);
    if (!svg) throw std::runtime_error(o.svg + ": cannot open file");
    svg << io::svg_plot(io::family_tag(file.instance) + " smoothed search",
                        "phi", "iterations", series);
  }
  return all_pass ? 0 : 2;
}

struct PathPhiOptions {
  std::string instance;
  double phi = 1.0;
};

int cmd_certify(const PathPhiOptions& o) {
  const auto file = io::read_instance_file(o.instance);
  const auto handle = io::encode_any(file.instance);
  const Covering cov = expand_covering(handle.instance, handle.covering);
  const CertifyResult res = certify(handle.instance, cov);
  if (!res.ok) {
    std::cout << "rejected: " << res.violation << "\n";
    return 1;
  }
  const double factor =
      std::pow(static_cast<double>(res.params.mu),
               static_cast<double>(res.params.beta)) *
      static_cast<double>(res.params.lambda);
  std::cout << "certified: lambda=" << res.params.lambda
            << " beta=" << res.params.beta << " mu=" << res.params.mu
            << " mu^beta*lambda=" << fmt(factor) << "\n";
  std::cout << "expected steps bound (phi=" << fmt(o.phi) << "): "
            << fmt(expected_steps_bound(res.params, handle.instance.dims.nu,
                                        handle.instance.dims.m_cap, o.phi))
            << "\n";
  return 0;
}

int cmd_bound(const PathPhiOptions& o) {
  const auto file = io::read_instance_file(o.instance);
  const auto handle = io::encode_any(file.instance);
  const Covering cov = expand_covering(handle.instance, handle.covering);
  const CertifyResult res = certify(handle.instance, cov);
  if (!res.ok) {
    std::cout << "rejected: " << res.violation << "\n";
    return 1;
  }
  std::cout << "covering bound (phi=" << fmt(o.phi) << "): "
            << fmt(expected_steps_bound(res.params, handle.instance.dims.nu,
                                        handle.instance.dims.m_cap, o.phi))
            << "\n";

  const games::CongestionGame* game = nullptr;
  games::CongestionGame explicit_copy;
  if (const auto* g = std::get_if<games::CongestionGame>(&file.instance)) {
    game = g;
  } else if (const auto* net =
                 std::get_if<games::NetworkCongestionGame>(&file.instance)) {
    explicit_copy = games::explicit_game(*net).game;
    game = &explicit_copy;
  }
  if (game) {
    const auto forms = games::restrained_step_bounds(*game, o.phi);
    std::cout << "restrained closed forms (phi=" << fmt(o.phi)
              << "): general=" << fmt(forms.general)
              << " polynomial=" << fmt(forms.polynomial)
              << " step=" << fmt(forms.step) << "\n";
  }
  return 0;
}

struct ReduceOptions {
  std::string instance;
  std::string target;
  std::string variant = "step";
  int blocks = 3;
  std::string out;
};

int cmd_reduce(const ReduceOptions& o) {
  const auto file = io::read_instance_file(o.instance);
  io::InstanceFile produced;
  if (o.target == "congestion" || o.target == "network" ||
      o.target == "multiway") {
    const auto* cut = std::get_if<problems::CutProblem>(&file.instance);
    if (!cut)
      throw std::invalid_argument("reduce: target '" + o.target +
                                  "' needs a maxcut source");
    if (o.target == "congestion") {
      const auto variant = o.variant == "affine"
                               ? reductions::CongestionVariant::affine
                               : reductions::CongestionVariant::step;
      produced.instance = reductions::maxcut_to_congestion(*cut, variant).produced;
    } else if (o.target == "network") {
      produced.instance = reductions::maxcut_to_network_congestion(*cut).produced;
    } else {
      produced.instance = reductions::maxcut_to_maxkcut(*cut, o.blocks).produced;
    }
  } else if (o.target == "hitting") {
    const auto* cnf = std::get_if<problems::CnfProblem>(&file.instance);
    if (!cnf)
      throw std::invalid_argument("reduce: target 'hitting' needs a maxsat source");
    produced.instance = reductions::maxsat_to_hittingset(*cnf).produced;
  } else {
    throw std::invalid_argument("reduce: unknown target '" + o.target + "'");
  }
  produced.smoothing = file.smoothing;
  io::write_instance_file(o.out, produced);
  std::cout << "wrote " << io::family_tag(produced.instance)
            << " instance to " << o.out << "\n";
  return 0;
}

struct VerifyOptions {
  std::string instance;
};

int cmd_oracle_verify(const VerifyOptions& o) {
  const auto file = io::read_instance_file(o.instance);
  const auto handle = io::encode_any(file.instance);
  const TransitionGraph graph =
      build_transition_graph(handle.instance, handle.sense);
  const SinkReport report = verify_sinks(handle.instance, graph);
  std::size_t sinks = 0, edges = 0;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (graph.is_sink(static_cast<int>(i))) ++sinks;
    edges += graph.edges[i].size();
  }
  std::cout << "nodes=" << graph.nodes.size() << " improving_edges=" << edges
            << " sinks=" << sinks
            << " longest_path=" << longest_improving_path(handle.instance, graph)
            << " sinks_match=" << (report.ok ? "yes" : "no") << "\n";
  if (!report.ok) {
    std::cout << report.mismatch << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial local optimization lab"};
  app.require_subcommand(1);

  static const std::vector<std::string> families = {
      "congestion", "network",     "coordination", "tour",
      "maxsat",     "maxcut",      "matching",     "exact_cover",
      "set_cover",  "hitting_set", "mca"};

  GenOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance file");
  gen_cmd->add_option("--family", gen_opts.family, "instance family")
      ->required()
      ->check(CLI::IsMember(families));
  gen_cmd->add_option("--out", gen_opts.out, "output path")->required();
  gen_cmd->add_option("--seed", gen_opts.seed, "generator seed");
  auto* phi_opt =
      gen_cmd->add_option("--phi", gen_opts.phi, "attach a shared-phi block");
  gen_cmd->add_option("--smooth-seed", gen_opts.smooth_seed,
                      "seed of the smoothing block (defaults to --seed)")
      ->needs(phi_opt);
  gen_cmd->add_option("--n", gen_opts.n, "primary size parameter");
  gen_cmd->add_option("--m", gen_opts.m, "secondary count parameter");
  gen_cmd->add_option("--k", gen_opts.k, "move/neighborhood parameter");
  gen_cmd->add_option("--players", gen_opts.players, "players (network)");
  gen_cmd->add_option("--model", gen_opts.model, "cost model")
      ->check(CLI::IsMember({"general", "polynomial", "step"}));
  gen_cmd->add_option("--blocks", gen_opts.blocks, "blocks (maxcut)");
  gen_cmd->add_flag("--nonnegative", gen_opts.nonnegative,
                    "maxcut weights in [0,1] instead of [-1,1]");
  gen_cmd->add_flag("--directed", gen_opts.directed, "directed tour");
  gen_cmd->add_option("--alphabet", gen_opts.alphabet, "alphabet (mca)");
  gen_cmd->add_option("--arity", gen_opts.arity, "max arity (mca)");
  gen_cmd->add_option("--occurrence", gen_opts.occurrence,
                      "max occurrence (mca)");
  gen_cmd->add_option("--max-size", gen_opts.max_size,
                      "selection cap (hitting_set)");
  gen_cmd->add_option("--p", gen_opts.p, "replaced triples cap (matching)");
  gen_cmd->add_option("--q", gen_opts.q, "double-reassignment cap (matching)");

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "run one local search");
  run_cmd->add_option("--instance", run_opts.instance, "instance file")
      ->required();
  run_cmd->add_option("--pivot", run_opts.pivot, "pivot rule")
      ->check(CLI::IsMember({"first", "best", "random"}));
  run_cmd->add_option("--seed", run_opts.seed, "pivot seed");
  run_cmd->add_option("--max-iters", run_opts.max_iters, "iteration cap");

  ExperimentOptions ex_opts;
  auto* ex_cmd =
      app.add_subcommand("experiment", "Monte Carlo smoothed experiment");
  ex_cmd->add_option("--instance", ex_opts.instance, "instance file")
      ->required();
  ex_cmd->add_option("--replicas", ex_opts.replicas, "replica count")
      ->check(CLI::PositiveNumber);
  ex_cmd->add_option("--seed", ex_opts.seed, "master seed")
      ->each([&](const std::string&) { ex_opts.seed_set = true; });
  ex_cmd->add_option("--pivot", ex_opts.pivot, "pivot rule")
      ->check(CLI::IsMember({"first", "best", "random"}));
  ex_cmd->add_option("--mode", ex_opts.mode, "measurement mode")
      ->check(CLI::IsMember({"engine", "oracle"}));
  ex_cmd->add_option("--phi", ex_opts.phis, "phi values (repeat for a sweep)")
      ->delimiter(',');
  ex_cmd->add_option("--max-iters", ex_opts.max_iters, "iteration cap");
  ex_cmd->add_option("--threads", ex_opts.threads, "worker threads");
  ex_cmd->add_flag("--bound", ex_opts.attach_bound,
                   "certify the prescribed covering and compare the mean");
  ex_cmd->add_option("--out", ex_opts.out, "CSV output path");
  ex_cmd->add_option("--svg", ex_opts.svg, "SVG plot path");

  PathPhiOptions cert_opts;
  auto* cert_cmd =
      app.add_subcommand("certify", "certify the prescribed covering");
  cert_cmd->add_option("--instance", cert_opts.instance, "instance file")
      ->required();
  cert_cmd->add_option("--phi", cert_opts.phi, "phi for the printed bound");

  PathPhiOptions bound_opts;
  auto* bound_cmd = app.add_subcommand("bound", "print bound formula values");
  bound_cmd->add_option("--instance", bound_opts.instance, "instance file")
      ->required();
  bound_cmd->add_option("--phi", bound_opts.phi, "phi for the bounds");

  ReduceOptions red_opts;
  auto* red_cmd = app.add_subcommand("reduce", "apply an instance reduction");
  red_cmd->add_option("--instance", red_opts.instance, "source instance file")
      ->required();
  red_cmd->add_option("--target", red_opts.target, "produced family")
      ->required()
      ->check(CLI::IsMember({"congestion", "network", "multiway", "hitting"}));
  red_cmd->add_option("--variant", red_opts.variant,
                      "congestion cost variant")
      ->check(CLI::IsMember({"step", "affine"}));
  red_cmd->add_option("--blocks", red_opts.blocks, "blocks (multiway)");
  red_cmd->add_option("--out", red_opts.out, "output path")->required();

  VerifyOptions ver_opts;
  auto* ver_cmd =
      app.add_subcommand("oracle-verify", "exact sink/longest-path checks");
  ver_cmd->add_option("--instance", ver_opts.instance, "instance file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(gen_cmd)) return cmd_gen(gen_opts);
    if (app.got_subcommand(run_cmd)) return cmd_run(run_opts);
    if (app.got_subcommand(ex_cmd)) return cmd_experiment(ex_opts);
    if (app.got_subcommand(cert_cmd)) return cmd_certify(cert_opts);
    if (app.got_subcommand(bound_cmd)) return cmd_bound(bound_opts);
    if (app.got_subcommand(red_cmd)) return cmd_reduce(red_opts);
    if (app.got_subcommand(ver_cmd)) return cmd_oracle_verify(ver_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
