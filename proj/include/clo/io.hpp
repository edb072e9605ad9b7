#pragma once

// File formats of the lab tool: JSON instance files carrying a top-level
// "family" tag plus an optional "smoothing" block, JSON covering files,
// CSV tables, and self-contained SVG plots.  Field names are an external
// contract; see README for the documented schema.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "clo/core.hpp"
#include "clo/covering.hpp"
#include "clo/games/congestion.hpp"
#include "clo/games/coordination.hpp"
#include "clo/games/network.hpp"
#include "clo/problems/cut.hpp"
#include "clo/problems/maxsat.hpp"
#include "clo/problems/mca.hpp"
#include "clo/problems/setsystem.hpp"
#include "clo/problems/tour.hpp"
#include "clo/smoothing.hpp"

namespace clo::io {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw std::invalid_argument(std::string("instance file: missing field '") +
                                name + "'");
  return j.at(name);
}

template <class T>
T get(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance file: field '") + name +
                                "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* name, T fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  return get<T>(j, name);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? " " : "") + std::to_string(static_cast<long long>(v[i]));
  return out + "]";
}

}  // namespace detail

// --- resource cost models ----------------------------------------------

inline json costs_to_json(const games::ResourceCosts& c) {
  json j;
  switch (c.model) {
    case games::CostModel::general:
      j["model"] = "general";
      j["table"] = c.table;
      break;
    case games::CostModel::polynomial:
      j["model"] = "polynomial";
      j["coeffs"] = c.coeffs;
      break;
    case games::CostModel::step:
      j["model"] = "step";
      j["breakpoints"] = c.breakpoints;
      j["jumps"] = c.jumps;
      break;
  }
  return j;
}

inline games::ResourceCosts costs_from_json(const json& j) {
  games::ResourceCosts c;
  const auto model = detail::get<std::string>(j, "model");
  if (model == "general") {
    c.model = games::CostModel::general;
    c.table = detail::get<std::vector<std::vector<double>>>(j, "table");
  } else if (model == "polynomial") {
    c.model = games::CostModel::polynomial;
    c.coeffs = detail::get<std::vector<std::vector<double>>>(j, "coeffs");
  } else if (model == "step") {
    c.model = games::CostModel::step;
    c.breakpoints = detail::get<std::vector<std::vector<int>>>(j, "breakpoints");
    c.jumps = detail::get<std::vector<std::vector<double>>>(j, "jumps");
  } else {
    throw std::invalid_argument("instance file: unknown cost model '" + model +
                                "'");
  }
  return c;
}

// --- per-family instance schemas ----------------------------------------

inline json instance_json(const games::CongestionGame& g) {
  return {{"family", "congestion"},
          {"players", g.num_players},
          {"resources", g.num_resources},
          {"strategies", g.strategies},
          {"costs", costs_to_json(g.costs)}};
}

inline games::CongestionGame parse_congestion(const json& j) {
  games::CongestionGame g;
  g.num_players = detail::get<int>(j, "players");
  g.num_resources = detail::get<int>(j, "resources");
  g.strategies =
      detail::get<std::vector<std::vector<std::vector<int>>>>(j, "strategies");
  g.costs = costs_from_json(detail::field(j, "costs"));
  games::validate(g);
  return g;
}

inline json instance_json(const games::NetworkCongestionGame& g) {
  return {{"family", "network"},
          {"nodes", g.num_nodes},
          {"arcs", g.arcs},
          {"terminals", g.terminals},
          {"costs", costs_to_json(g.costs)}};
}

inline games::NetworkCongestionGame parse_network(const json& j) {
  games::NetworkCongestionGame g;
  g.num_nodes = detail::get<int>(j, "nodes");
  g.arcs = detail::get<std::vector<std::pair<int, int>>>(j, "arcs");
  g.terminals = detail::get<std::vector<std::pair<int, int>>>(j, "terminals");
  g.costs = costs_from_json(detail::field(j, "costs"));
  games::validate(g);
  return g;
}

inline json instance_json(const games::CoordinationGame& g) {
  return {{"family", "coordination"},
          {"players", g.num_players},
          {"actions", g.num_actions},
          {"edges", g.edges},
          {"payoffs", g.payoffs}};
}

inline games::CoordinationGame parse_coordination(const json& j) {
  games::CoordinationGame g;
  g.num_players = detail::get<int>(j, "players");
  g.num_actions = detail::get<int>(j, "actions");
  g.edges = detail::get<std::vector<std::pair<int, int>>>(j, "edges");
  g.payoffs = detail::get<std::vector<std::vector<double>>>(j, "payoffs");
  games::validate(g);
  return g;
}

inline json instance_json(const problems::TourProblem& t) {
  return {{"family", "tour"},    {"vertices", t.num_vertices},
          {"directed", t.directed}, {"edges", t.edges},
          {"weights", t.weights},  {"tour", t.tour},
          {"k", t.k}};
}

inline problems::TourProblem parse_tour(const json& j) {
  problems::TourProblem t;
  t.num_vertices = detail::get<int>(j, "vertices");
  t.directed = detail::get<bool>(j, "directed");
  t.edges = detail::get<std::vector<std::pair<int, int>>>(j, "edges");
  t.weights = detail::get<std::vector<double>>(j, "weights");
  t.tour = detail::get<problems::Tour>(j, "tour");
  t.k = detail::get<int>(j, "k");
  problems::validate(t);
  return t;
}

inline json instance_json(const problems::CnfProblem& f) {
  return {{"family", "maxsat"},     {"variables", f.num_variables},
          {"clauses", f.clauses},   {"weights", f.weights},
          {"assignment", f.assignment}, {"k", f.k}};
}

inline problems::CnfProblem parse_maxsat(const json& j) {
  problems::CnfProblem f;
  f.num_variables = detail::get<int>(j, "variables");
  f.clauses = detail::get<std::vector<std::vector<int>>>(j, "clauses");
  f.weights = detail::get<std::vector<double>>(j, "weights");
  f.assignment = detail::get<problems::TruthAssignment>(j, "assignment");
  f.k = detail::get<int>(j, "k");
  problems::validate(f);
  return f;
}

inline json instance_json(const problems::CutProblem& g) {
  return {{"family", "maxcut"},  {"vertices", g.num_vertices},
          {"blocks", g.num_blocks}, {"edges", g.edges},
          {"weights", g.weights},  {"assignment", g.assignment}};
}

inline problems::CutProblem parse_maxcut(const json& j) {
  problems::CutProblem g;
  g.num_vertices = detail::get<int>(j, "vertices");
  g.num_blocks = detail::get<int>(j, "blocks");
  g.edges = detail::get<std::vector<std::pair<int, int>>>(j, "edges");
  g.weights = detail::get<std::vector<double>>(j, "weights");
  g.assignment = detail::get<problems::BlockAssignment>(j, "assignment");
  problems::validate(g);
  return g;
}

inline json instance_json(const problems::MatchingProblem& m) {
  return {{"family", "matching"}, {"n", m.n}, {"weights", m.weights},
          {"p", m.p},             {"q", m.q}, {"matching", m.matching}};
}

inline problems::MatchingProblem parse_matching(const json& j) {
  problems::MatchingProblem m;
  m.n = detail::get<int>(j, "n");
  m.weights = detail::get<std::vector<double>>(j, "weights");
  m.p = detail::get<int>(j, "p");
  m.q = detail::get<int>(j, "q");
  m.matching = detail::get<problems::Matching>(j, "matching");
  problems::validate(m);
  return m;
}

inline json instance_json(const problems::ExactCoverProblem& x) {
  return {{"family", "exact_cover"}, {"elements", x.num_elements},
          {"sets", x.sets},          {"weights", x.weights},
          {"k", x.k},                {"cover", x.cover}};
}

inline problems::ExactCoverProblem parse_exact_cover(const json& j) {
  problems::ExactCoverProblem x;
  x.num_elements = detail::get<int>(j, "elements");
  x.sets = detail::get<std::vector<std::vector<int>>>(j, "sets");
  x.weights = detail::get<std::vector<double>>(j, "weights");
  x.k = detail::get<int>(j, "k");
  x.cover = detail::get<problems::SetSelection>(j, "cover");
  problems::validate(x);
  return x;
}

inline json instance_json(const problems::SetCoverProblem& sc) {
  return {{"family", "set_cover"}, {"elements", sc.num_elements},
          {"sets", sc.sets},       {"weights", sc.weights},
          {"k", sc.k},             {"cover", sc.cover}};
}

inline problems::SetCoverProblem parse_set_cover(const json& j) {
  problems::SetCoverProblem sc;
  sc.num_elements = detail::get<int>(j, "elements");
  sc.sets = detail::get<std::vector<std::vector<int>>>(j, "sets");
  sc.weights = detail::get<std::vector<double>>(j, "weights");
  sc.k = detail::get<int>(j, "k");
  sc.cover = detail::get<problems::SetSelection>(j, "cover");
  problems::validate(sc);
  return sc;
}

inline json instance_json(const problems::HittingSetProblem& hs) {
  return {{"family", "hitting_set"}, {"ground", hs.num_ground},
          {"sets", hs.sets},         {"weights", hs.weights},
          {"max_size", hs.max_size}, {"k", hs.k},
          {"selection", hs.selection}};
}

inline problems::HittingSetProblem parse_hitting_set(const json& j) {
  problems::HittingSetProblem hs;
  hs.num_ground = detail::get<int>(j, "ground");
  hs.sets = detail::get<std::vector<std::vector<int>>>(j, "sets");
  hs.weights = detail::get<std::vector<double>>(j, "weights");
  hs.max_size = detail::get<int>(j, "max_size");
  hs.k = detail::get<int>(j, "k");
  hs.selection = detail::get<problems::GroundSelection>(j, "selection");
  problems::validate(hs);
  return hs;
}

inline json instance_json(const problems::McaProblem& m) {
  return {{"family", "mca"},
          {"variables", m.num_variables},
          {"alphabet", m.alphabet},
          {"max_arity", m.max_arity},
          {"max_occurrence", m.max_occurrence},
          {"scopes", m.scopes},
          {"tables", m.tables},
          {"assignment", m.assignment}};
}

inline problems::McaProblem parse_mca(const json& j) {
  problems::McaProblem m;
  m.num_variables = detail::get<int>(j, "variables");
  m.alphabet = detail::get<int>(j, "alphabet");
  m.max_arity = detail::get<int>(j, "max_arity");
  m.max_occurrence = detail::get<int>(j, "max_occurrence");
  m.scopes = detail::get<std::vector<std::vector<int>>>(j, "scopes");
  m.tables = detail::get<std::vector<std::vector<double>>>(j, "tables");
  m.assignment = detail::get<problems::IntAssignment>(j, "assignment");
  problems::validate(m);
  return m;
}

// --- the tagged union and its dispatch -----------------------------------

using FamilyInstance =
    std::variant<games::CongestionGame, games::NetworkCongestionGame,
                 games::CoordinationGame, problems::TourProblem,
                 problems::CnfProblem, problems::CutProblem,
                 problems::MatchingProblem, problems::ExactCoverProblem,
                 problems::SetCoverProblem, problems::HittingSetProblem,
                 problems::McaProblem>;

inline json instance_to_json(const FamilyInstance& inst) {
  return std::visit([](const auto& g) { return instance_json(g); }, inst);
}

inline std::string family_tag(const FamilyInstance& inst) {
  return instance_to_json(inst).at("family").get<std::string>();
}

inline FamilyInstance instance_from_json(const json& j) {
  const auto family = detail::get<std::string>(j, "family");
  if (family == "congestion") return parse_congestion(j);
  if (family == "network") return parse_network(j);
  if (family == "coordination") return parse_coordination(j);
  if (family == "tour") return parse_tour(j);
  if (family == "maxsat") return parse_maxsat(j);
  if (family == "maxcut") return parse_maxcut(j);
  if (family == "matching") return parse_matching(j);
  if (family == "exact_cover") return parse_exact_cover(j);
  if (family == "set_cover") return parse_set_cover(j);
  if (family == "hitting_set") return parse_hitting_set(j);
  if (family == "mca") return parse_mca(j);
  throw std::invalid_argument("instance file: unknown family '" + family + "'");
}

// --- smoothing block ------------------------------------------------------

/// Either one shared phi applied window-wise around every nominal cost
/// coefficient of the encoded instance, or explicit per-coordinate densities.
struct SmoothingSpec {
  std::uint64_t seed = 0;
  double shared_phi = 0.0;            // > 0 selects the shared form
  std::vector<PhiDensity> densities;  // non-empty selects the explicit form
};

inline json smoothing_to_json(const SmoothingSpec& s) {
  json j;
  j["seed"] = s.seed;
  if (!s.densities.empty()) {
    json ds = json::array();
    for (const auto& d : s.densities)
      ds.push_back({{"kind", d.kind == DensityKind::uniform_full
                                 ? "uniform_full"
                                 : "uniform_window"},
                    {"support", std::pair{d.support.lo, d.support.hi}},
                    {"nominal", d.nominal},
                    {"phi", d.phi}});
    j["densities"] = std::move(ds);
  } else {
    j["phi"] = s.shared_phi;
  }
  return j;
}

inline SmoothingSpec smoothing_from_json(const json& j) {
  SmoothingSpec s;
  s.seed = detail::get_or<std::uint64_t>(j, "seed", 0);
  if (j.contains("densities")) {
    for (const auto& dj : detail::field(j, "densities")) {
      PhiDensity d;
      const auto kind = detail::get<std::string>(dj, "kind");
      if (kind == "uniform_window")
        d.kind = DensityKind::uniform_window;
      else if (kind == "uniform_full")
        d.kind = DensityKind::uniform_full;
      else
        throw std::invalid_argument("instance file: unknown density kind '" +
                                    kind + "'");
      const auto sup = detail::get<std::pair<double, double>>(dj, "support");
      d.support = {sup.first, sup.second};
      d.nominal = detail::get<double>(dj, "nominal");
      d.phi = detail::get<double>(dj, "phi");
      s.densities.push_back(d);
    }
    if (s.densities.empty())
      throw std::invalid_argument("instance file: empty density list");
  } else {
    s.shared_phi = detail::get<double>(j, "phi");
    if (!(s.shared_phi > 0.0))
      throw std::invalid_argument("instance file: phi must be positive");
  }
  return s;
}

/// Materializes a spec against an encoded instance.  The shared form puts a
/// width-1/phi window around each nominal coefficient inside the scaled
/// coefficient range.
inline SmoothedCostModel resolve_smoothing(const SmoothingSpec& s,
                                           const Instance& inst) {
  SmoothedCostModel m;
  m.seed = s.seed;
  if (!s.densities.empty()) {
    if (static_cast<int>(s.densities.size()) != inst.dims.nu)
      throw std::invalid_argument(
          "smoothing: need one density per cost coordinate");
    m.densities = s.densities;
  } else {
    bool has_negative = false;
    for (double c : inst.costs.coeffs)
      if (c < 0.0) has_negative = true;
    const Interval support{has_negative ? -inst.cost_scale : 0.0,
                           inst.cost_scale};
    for (double c : inst.costs.coeffs) {
      PhiDensity d;
      d.kind = DensityKind::uniform_window;
      d.support = support;
      d.nominal = c;
      d.phi = std::max(s.shared_phi, 1.0 / support.width());
      m.densities.push_back(d);
    }
  }
  validate(m);
  return m;
}

// --- instance files -------------------------------------------------------

struct InstanceFile {
  FamilyInstance instance;
  std::optional<SmoothingSpec> smoothing;
};

inline json instance_file_to_json(const InstanceFile& f) {
  json j = instance_to_json(f.instance);
  if (f.smoothing) j["smoothing"] = smoothing_to_json(*f.smoothing);
  return j;
}

inline InstanceFile instance_file_from_json(const json& j) {
  InstanceFile f{instance_from_json(j), std::nullopt};
  if (j.contains("smoothing"))
    f.smoothing = smoothing_from_json(j.at("smoothing"));
  return f;
}

inline json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline InstanceFile read_instance_file(const std::string& path) {
  return instance_file_from_json(parse_json_file(path));
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << j.dump(2) << '\n';
}

inline void write_instance_file(const std::string& path,
                                const InstanceFile& f) {
  write_json_file(path, instance_file_to_json(f));
}

// --- type-erased encoding, for the CLI ------------------------------------

struct EncodedHandle {
  Instance instance;
  Sense sense = Sense::minimize;
  CoveringScheme covering;
  std::function<std::string(const Configuration&)> describe;
};

namespace detail {

template <class Sol, class Fmt>
EncodedHandle make_handle(EncodedProblem<Sol> enc, Fmt fmt) {
  EncodedHandle h;
  h.instance = std::move(enc.instance);
  h.sense = enc.sense;
  h.covering = std::move(enc.covering);
  h.describe = [decode = std::move(enc.decode_solution),
                fmt](const Configuration& c) { return fmt(decode(c)); };
  return h;
}

}  // namespace detail

inline EncodedHandle encode_any(const FamilyInstance& inst) {
  using detail::join;
  return std::visit(
      [](const auto& g) -> EncodedHandle {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, games::CongestionGame>) {
          return detail::make_handle(
              games::encode_clo(g),
              [](const games::Profile& p) { return "profile " + join(p); });
        } else if constexpr (std::is_same_v<T, games::NetworkCongestionGame>) {
          return detail::make_handle(
              games::encode_clo(games::explicit_game(g).game),
              [](const games::Profile& p) {
                return "path choices " + join(p);
              });
        } else if constexpr (std::is_same_v<T, games::CoordinationGame>) {
          return detail::make_handle(
              games::encode_clo(g), [](const games::ActionProfile& p) {
                return "actions " + join(p);
              });
        } else if constexpr (std::is_same_v<T, problems::TourProblem>) {
          return detail::make_handle(
              problems::encode_clo(g),
              [](const problems::Tour& t) { return "tour " + join(t); });
        } else if constexpr (std::is_same_v<T, problems::CnfProblem>) {
          return detail::make_handle(
              problems::encode_clo(g), [](const problems::TruthAssignment& a) {
                return "assignment " + join(a);
              });
        } else if constexpr (std::is_same_v<T, problems::CutProblem>) {
          return detail::make_handle(
              problems::encode_clo(g), [](const problems::BlockAssignment& a) {
                return "blocks " + join(a);
              });
        } else if constexpr (std::is_same_v<T, problems::MatchingProblem>) {
          return detail::make_handle(
              problems::encode_clo(g), [](const problems::Matching& m) {
                std::string out = "triples";
                for (const auto& [b, gg, h] : m)
                  out += " (" + std::to_string(b) + "," + std::to_string(gg) +
                         "," + std::to_string(h) + ")";
                return out;
              });
        } else if constexpr (std::is_same_v<T, problems::ExactCoverProblem> ||
                             std::is_same_v<T, problems::SetCoverProblem>) {
          return detail::make_handle(
              problems::encode_clo(g), [](const problems::SetSelection& s) {
                return "cover " + join(s);
              });
        } else if constexpr (std::is_same_v<T, problems::HittingSetProblem>) {
          return detail::make_handle(
              problems::encode_clo(g), [](const problems::GroundSelection& s) {
                return "selection " + join(s);
              });
        } else {
          static_assert(std::is_same_v<T, problems::McaProblem>);
          return detail::make_handle(
              problems::encode_clo(g), [](const problems::IntAssignment& a) {
                return "values " + join(a);
              });
        }
      },
      inst);
}

// --- covering files ---------------------------------------------------------

inline json configuration_to_json(const Configuration& c) {
  std::vector<int> bits(c.noncost_part.begin(), c.noncost_part.end());
  return {{"cost", c.cost_part}, {"bits", bits}};
}

inline Configuration configuration_from_json(const json& j) {
  Configuration c;
  c.cost_part = detail::get<std::vector<std::int64_t>>(j, "cost");
  const auto bits = detail::get<std::vector<int>>(j, "bits");
  c.noncost_part.assign(bits.begin(), bits.end());
  return c;
}

inline json covering_to_json(const Covering& cov) {
  json coord = json::array();
  for (const auto& cc : cov.coordinate_clusters) coord.push_back(cc.indices);
  json trans = json::array();
  for (const auto& tc : cov.transition_clusters) {
    json moves = json::array();
    for (const auto& [s, t] : tc.transitions)
      moves.push_back({configuration_to_json(s), configuration_to_json(t)});
    trans.push_back({{"key", tc.key},
                     {"witness", tc.witness},
                     {"transitions", std::move(moves)}});
  }
  return {{"coordinate_clusters", std::move(coord)},
          {"transition_clusters", std::move(trans)}};
}

inline Covering covering_from_json(const json& j) {
  Covering cov;
  for (const auto& idx : detail::field(j, "coordinate_clusters"))
    cov.coordinate_clusters.push_back({idx.get<std::vector<int>>()});
  for (const auto& tj : detail::field(j, "transition_clusters")) {
    TransitionCluster tc;
    tc.key = detail::get<std::string>(tj, "key");
    tc.witness = detail::get<std::vector<int>>(tj, "witness");
    for (const auto& mv : detail::field(tj, "transitions")) {
      if (!mv.is_array() || mv.size() != 2)
        throw std::invalid_argument(
            "covering file: transition must be a pair of configurations");
      tc.transitions.push_back(
          {configuration_from_json(mv[0]), configuration_from_json(mv[1])});
    }
    cov.transition_clusters.push_back(std::move(tc));
  }
  return cov;
}

// --- CSV --------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
  const auto cell = [](const std::string& s) -> std::string {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  };
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << cell(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw std::invalid_argument("csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << cell(row[i]);
    os << '\n';
  }
}

inline std::string csv_string(const CsvTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

// --- SVG plots ---------------------------------------------------------------

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool draw_line = true;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace detail

/// Scatter/line plot with axes, ticks and a legend; returns a complete
/// standalone SVG document.
inline std::string svg_plot(const std::string& title,
                            const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series,
                            int width = 720, int height = 480) {
  using detail::num;
  using detail::xml_escape;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  const double ml = 70, mr = 20, mt = 40, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  const auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  const auto Y = [&](double y) {
    return mt + ph - (y - ymin) / (ymax - ymin) * ph;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2.0 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(title)
      << "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    svg << "<line x1=\"" << num(X(fx)) << "\" y1=\"" << num(mt) << "\" x2=\""
        << num(X(fx)) << "\" y2=\"" << num(mt + ph)
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<line x1=\"" << num(ml) << "\" y1=\"" << num(Y(fy)) << "\" x2=\""
        << num(ml + pw) << "\" y2=\"" << num(Y(fy))
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << num(X(fx)) << "\" y=\"" << num(mt + ph + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << num(fx) << "</text>\n";
    svg << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(Y(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << num(fy) << "</text>\n";
  }
  svg << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\""
      << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(height - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">" << xml_escape(x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << num(mt + ph / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << num(mt + ph / 2)
      << ")\">" << xml_escape(y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = palette[si % 6];
    const auto& s = series[si];
    if (s.draw_line && s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points)
        svg << num(X(x)) << "," << num(Y(y)) << " ";
      svg << "\"/>\n";
    }
    for (const auto& [x, y] : s.points)
      svg << "<circle cx=\"" << num(X(x)) << "\" cy=\"" << num(Y(y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    svg << "<rect x=\"" << num(ml + pw - 150) << "\" y=\""
        << num(mt + 10 + 18.0 * si) << "\" width=\"10\" height=\"10\" fill=\""
        << color << "\"/>\n";
    svg << "<text x=\"" << num(ml + pw - 135) << "\" y=\""
        << num(mt + 19 + 18.0 * si)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace clo::io
