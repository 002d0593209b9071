#include "plateau/experiments.hpp"

#include "plateau/barycenter.hpp"
#include "plateau/minimizer.hpp"
#include "plateau/poisson.hpp"
#include "plateau/spectral.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/crc.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace plateau {

// ---- parameters -------------------------------------------------------------

std::string ParamSet::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing field " + path(key));
  return it->second;
}

std::string ParamSet::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

namespace {

double to_real(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + text + "'");
  }
}

long to_integer(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<std::string> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

}  // namespace

double ParamSet::real(const std::string& key) const { return to_real(str(key), path(key)); }
double ParamSet::real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }
long ParamSet::integer(const std::string& key) const { return to_integer(str(key), path(key)); }
long ParamSet::integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

bool ParamSet::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = boost::to_lower_copy(str(key));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(path(key) + ": expected a boolean, got '" + v + "'");
}

std::vector<double> ParamSet::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& p : split_list(str(key))) out.push_back(to_real(p, path(key)));
  if (out.empty()) throw ConfigError(path(key) + ": empty list");
  return out;
}

std::vector<double> ParamSet::reals(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? reals(key) : fallback;
}

std::vector<long> ParamSet::integers(const std::string& key) const {
  std::vector<long> out;
  for (const auto& p : split_list(str(key))) out.push_back(to_integer(p, path(key)));
  if (out.empty()) throw ConfigError(path(key) + ": empty list");
  return out;
}

std::vector<long> ParamSet::integers(const std::string& key, std::vector<long> fallback) const {
  return has(key) ? integers(key) : fallback;
}

std::vector<std::string> ParamSet::strings(const std::string& key) const { return split_list(str(key)); }

std::map<std::string, ParamSet> parse_ini(std::istream& is, const std::string& origin) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  std::map<std::string, ParamSet> out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(origin + ": key '" + section + "' outside a section");
    std::map<std::string, std::string> values;
    for (const auto& [key, value] : body) values[key] = boost::trim_copy(value.data());
    out[section] = ParamSet(section, std::move(values));
  }
  return out;
}

std::map<std::string, ParamSet> read_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_ini(in, path);
}

// ---- experiment configs -------------------------------------------------------

namespace {

const std::vector<std::pair<ExperimentKind, const char*>> kKindNames = {
    {ExperimentKind::SurfacePoisson, "surface-poisson"},
    {ExperimentKind::Minimize, "minimize"},
    {ExperimentKind::BarycenterVerify, "barycenter-verify"},
    {ExperimentKind::Kazhdan, "kazhdan"},
    {ExperimentKind::AmenableCollapse, "amenable-collapse"},
    {ExperimentKind::ThicknessScan, "thickness-scan"},
    {ExperimentKind::MargulisCheck, "margulis-check"},
};

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  throw ConfigError("experiment.kind: unknown experiment '" + name + "'");
}

const char* to_string(ExperimentKind k) {
  for (const auto& [kk, n] : kKindNames) {
    if (kk == k) return n;
  }
  return "?";
}

ExperimentConfig ExperimentConfig::from_sections(const std::map<std::string, ParamSet>& sections) {
  auto it = sections.find("experiment");
  if (it == sections.end()) throw ConfigError("missing section [experiment]");
  const ParamSet& ex = it->second;
  ExperimentConfig c;
  c.kind = parse_experiment_kind(ex.str("kind"));
  c.group = ex.str("group", "");
  const long seed = ex.integer("seed");
  if (seed < 0) throw ConfigError("experiment.seed: must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.out_dir = ex.str("out", ".");
  c.threads = static_cast<int>(ex.integer("threads", 0));
  c.quadrature_order = static_cast<int>(ex.integer("quadrature_order", 0));
  auto p = sections.find("params");
  c.params = p == sections.end() ? ParamSet("params", {}) : p->second;
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) { return from_sections(read_ini(path)); }

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "kind=" << to_string(kind) << "\ngroup=" << group << "\nseed=" << seed
     << "\nquadrature_order=" << quadrature_order << '\n';
  for (const auto& [k, v] : params.values()) os << "params." << k << '=' << v << '\n';
  return os.str();
}

std::uint32_t ExperimentConfig::hash() const {
  boost::crc_32_type crc;
  const std::string text = canonical();
  crc.process_bytes(text.data(), text.size());
  return crc.checksum();
}

// ---- tables ---------------------------------------------------------------

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row has " + std::to_string(row.size()) + " cells, table has " +
                           std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column(const std::string& n) const {
  auto it = std::find(columns.begin(), columns.end(), n);
  if (it == columns.end()) throw std::out_of_range("no column " + n);
  return static_cast<std::size_t>(it - columns.begin());
}

double ResultTable::real(std::size_t row, const std::string& col) const {
  const Cell& c = rows.at(row).at(column(col));
  if (auto d = std::get_if<double>(&c)) return *d;
  if (auto i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw std::invalid_argument("column " + col + " is not numeric");
}

namespace {

std::string format_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (auto i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::json cell_json(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (auto i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string hex(std::uint32_t h) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", h);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const ResultTable& t) {
  os << "# name=" << t.name << "\n# config_hash=" << hex(t.config_hash) << "\n# version=" << t.version << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

std::string to_json(const ResultTable& t) {
  nlohmann::json j;
  j["name"] = t.name;
  j["version"] = t.version;
  j["config_hash"] = hex(t.config_hash);
  j["columns"] = t.columns;
  j["rows"] = t.rows.size();
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [k, v] : t.summary) summary[k] = cell_json(v);
  j["summary"] = summary;
  nlohmann::json agg = nlohmann::json::object();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : t.rows) {
      double v;
      if (auto d = std::get_if<double>(&row[c])) {
        v = *d;
      } else if (auto i = std::get_if<std::int64_t>(&row[c])) {
        v = static_cast<double>(*i);
      } else {
        continue;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      ++count;
    }
    if (count == 0) continue;
    agg[t.columns[c]] = {{"min", cell_json(lo)}, {"max", cell_json(hi)}, {"mean", cell_json(sum / count)}};
  }
  j["aggregates"] = agg;
  return j.dump(2);
}

void write_outputs(const ResultTable& t, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto put = [&](const std::string& ext, const std::string& text) {
    const fs::path final_path = fs::path(out_dir) / (t.name + ext);
    const fs::path tmp = fs::path(out_dir) / (t.name + ext + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      out << text;
    }
    fs::rename(tmp, final_path);
  };
  std::ostringstream csv;
  write_csv(csv, t);
  put(".csv", csv.str());
  put(".json", to_json(t) + "\n");
}

// ---- pipelines -------------------------------------------------------------

namespace {

using I64 = std::int64_t;

int quad_order(const ExperimentConfig& c, int fallback) { return c.quadrature_order > 0 ? c.quadrature_order : fallback; }

GroupPtr config_group(const ExperimentConfig& c, const std::string& fallback) {
  const std::string d = c.group.empty() ? fallback : c.group;
  try {
    return Group::parse(d);
  } catch (const GroupError& e) {
    throw ConfigError(std::string("experiment.group: ") + e.what());
  }
}

std::vector<Element> parse_elements(const Group& g, const std::vector<std::string>& words, const std::string& field) {
  std::vector<Element> out;
  for (const auto& w : words) {
    try {
      out.push_back(g.parse_element(w));
    } catch (const GroupError& e) {
      throw ConfigError("params." + field + ": " + e.what());
    }
  }
  return out;
}

std::string join_words(const Group& g, const std::vector<Element>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + g.to_string(xs[i]);
  return s;
}

ResultTable surface_poisson(const ExperimentConfig& cfg) {
  const ParamSet& p = cfg.params;
  const int genus = static_cast<int>(p.integer("genus", 2));
  const FuchsianGroup f = fundamental_polygon(genus);
  PoissonParams pp;
  pp.radius = static_cast<int>(p.integer("radius", 4));
  pp.mesh_level = static_cast<int>(p.integer("mesh_level", 3));
  const std::string trunc = p.str("truncation", "tapered");
  if (trunc == "tapered") {
    pp.truncation = Truncation::Tapered;
  } else if (trunc == "word-ball") {
    pp.truncation = Truncation::WordBall;
  } else {
    throw ConfigError("params.truncation: expected tapered or word-ball, got '" + trunc + "'");
  }
  const int q = quad_order(cfg, 4);
  ResultTable t;
  t.columns = {"c", "pullback", "analytic", "cycle_mass", "tail"};
  const HPoint o = lorentz::origin(2);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  v(1) = 1.0;
  const PolygonMesh mesh = polygon_mesh(f, pp.mesh_level);
  for (double c : p.reals("c", {1.2, 1.5, 2.0})) {
    pp.c = c;
    const PoissonCycle pc = poisson_cycle(f, pp, mesh);
    t.add_row({c, poisson_pullback(c, o, v, 2), c * c / 8.0, mass(pc.cycle, q).total, pc.max_tail});
  }
  t.summary["limit_constant"] = 0.125;
  t.summary["target_spherevol"] = std::numbers::pi / 2.0;
  return t;
}

ResultTable minimize_pipeline(const ExperimentConfig& cfg) {
  const ParamSet& p = cfg.params;
  const std::string fixture = p.str("fixture", "torus");
  SimplicialCycle start;
  DescentConfig dc;
  dc.max_iters = static_cast<int>(p.integer("max_iters", 100));
  dc.step0 = p.real("step0", 0.1);
  dc.grad_tol = p.real("grad_tol", 1e-8);
  dc.delta_min = p.real("delta_min", 1e-3);
  dc.quadrature_order = quad_order(cfg, 8);
  dc.smooth_every = static_cast<int>(p.integer("smooth_every", 0));
  if (dc.smooth_every > 0) {
    const GroupPtr g = fixture == "poisson" ? fundamental_polygon(2).group : config_group(cfg, "abelian(2)");
    dc.smoothing = Weights::exponential(*g, static_cast<int>(p.integer("smooth_radius", 1)), p.real("smooth_decay", 2.0));
  }
  // Unrestricted gradients widen the supports every step, and the displacement search grows with them.
  if (fixture == "torus") {
    const int side = static_cast<int>(p.integer("side", 4));
    start = amenable_cycle(config_group(cfg, "abelian(2)"), side);
    dc.support_radius = static_cast<int>(p.integer("support_radius", 2 * side));
  } else if (fixture == "poisson") {
    const FuchsianGroup f = fundamental_polygon(static_cast<int>(p.integer("genus", 2)));
    PoissonParams pp;
    pp.c = p.real("c", 1.5);
    pp.radius = static_cast<int>(p.integer("radius", 4));
    pp.mesh_level = static_cast<int>(p.integer("mesh_level", 1));
    start = poisson_cycle(f, pp).cycle;
    dc.support_radius = pp.radius;
  } else if (fixture == "loop") {
    const GroupPtr g = config_group(cfg, "free(2)");
    std::mt19937_64 rng(cfg.seed);
    const auto pool = g->ball(static_cast<int>(p.integer("support_radius", 2)));
    std::vector<SphereVector> pts;
    for (long k = 0; k < p.integer("vertices", 5); ++k) pts.push_back(random_sphere_vector(g, pool, 1, rng, true));
    start = polygon_loop(g, pts);
    dc.support_radius = static_cast<int>(p.integer("restrict_radius", p.integer("support_radius", 2) + 1));
  } else {
    throw ConfigError("params.fixture: expected torus, poisson or loop, got '" + fixture + "'");
  }
  dc.displacement_radius = static_cast<int>(p.integer("displacement_radius", -1));
  dc.prune_below = p.real("prune_below", 0.0);
  dc.validate();
  const DescentResult r = descend(start, dc);
  ResultTable t;
  t.columns = {"iteration", "mass", "grad_norm", "min_displacement", "step", "smoothing"};
  for (const auto& row : r.trace) {
    t.add_row({I64(row.iteration), row.mass, row.grad_norm, row.min_displacement, row.step, I64(row.smoothing)});
  }
  t.summary["initial_mass"] = r.initial_mass;
  t.summary["final_mass"] = r.final_mass;
  t.summary["converged"] = I64(r.converged);
  t.summary["collapsed"] = I64(r.collapsed);
  t.summary["stop_reason"] = r.stop_reason;
  return t;
}

ResultTable barycenter_pipeline(const ExperimentConfig& cfg) {
  const ParamSet& p = cfg.params;
  const GroupPtr g = config_group(cfg, "surface(2)");
  const ReferenceMeasure mu = reference_measure(g, static_cast<int>(p.integer("radius", 4)), p.real("beta", 3.0));
  BarycenterBatch b;
  b.samples = static_cast<int>(p.integer("samples", 100));
  b.support_radius = static_cast<int>(p.integer("support_radius", 2));
  b.support_size = static_cast<int>(p.integer("support_size", 12));
  b.min_atom_distance = p.real("min_atom_distance", 0.5);
  b.h_step = p.real("h_step", 1e-5);
  b.entropy = p.real("entropy", -1.0);
  b.seed = cfg.seed;
  const auto rows = barycenter_batch(mu, b);
  ResultTable t;
  t.columns = {"sample", "n", "residual", "trace_h", "min_eig_k_minus_i_minus_h", "lhs", "rhs",
               "numeric_jacobian", "equivariance_error", "min_atom_distance"};
  double max_lhs = 0, max_jac = 0, max_eq = 0;
  I64 over = 0;
  for (const auto& r : rows) {
    t.add_row({I64(r.id), I64(r.n), r.residual, r.trace_h, r.min_eig, r.lhs, r.rhs, r.numeric_jacobian,
               r.equivariance_error, r.min_atom_distance});
    max_lhs = std::max(max_lhs, r.lhs);
    max_jac = std::max(max_jac, r.numeric_jacobian);
    max_eq = std::max(max_eq, r.equivariance_error);
    over += r.lhs > r.rhs;
  }
  t.summary["max_lhs"] = max_lhs;
  t.summary["max_numeric_jacobian"] = max_jac;
  t.summary["max_equivariance_error"] = max_eq;
  t.summary["samples_over_bound"] = over;
  if (!rows.empty()) t.summary["rhs"] = rows.front().rhs;
  return t;
}

ResultTable kazhdan_pipeline(const ExperimentConfig& cfg) {
  const ParamSet& p = cfg.params;
  const GroupPtr g = config_group(cfg, "cyclic(6)");
  SpectralOptions opt;
  opt.seed = cfg.seed;
  opt.restarts = static_cast<int>(p.integer("restarts", 32));
  std::vector<Element> S;
  if (p.has("S")) {
    S = parse_elements(*g, p.strings("S"), "S");
  } else {
    for (int i = 0; i < g->rank(); ++i) S.push_back(g->generator(i));
  }
  const std::string sub = p.str("subspace", "non-invariant");
  Subspace subspace;
  if (sub == "non-invariant") {
    subspace = Subspace::NonInvariant;
  } else if (sub == "full") {
    subspace = Subspace::Full;
  } else {
    throw ConfigError("params.subspace: expected full or non-invariant, got '" + sub + "'");
  }
  ResultTable t;
  if (g->order() > 0 && p.has("subgroup")) {
    const auto gens = parse_elements(*g, p.strings("subgroup"), "subgroup");
    const RestrictionReport r = restriction_check(g, gens, S, subspace, opt);
    t.columns = {"S", "K_F", "K_G", "abs_difference", "coset_norm_error", "coset_displacement_excess"};
    t.add_row({join_words(*g, S), r.k_subgroup, r.k_group, r.difference, r.max_norm_error, r.max_displacement_excess});
  } else if (g->order() > 0) {
    const SandwichReport r = sandwich_check(g, S, subspace, opt);
    const KazhdanEstimate k = kazhdan_exact(g, S, subspace, opt);
    t.columns = {"S", "lambda1", "K", "dual_bound", "lower", "upper"};
    t.add_row({join_words(*g, S), r.lambda1, r.kazhdan, k.dual_bound, r.lower, r.upper});
  } else {
    t.columns = {"S", "kind", "radius", "value", "dual_bound", "kesten_floor"};
    const double floor = g->kind() == GroupKind::Free && g->rank() >= 2 ? kesten_floor(g->rank()) : 0.0;
    for (long R : p.integers("radii", {1, 2, 3})) {
      const KazhdanEstimate k = kazhdan_truncated(g, S, static_cast<int>(R), opt);
      t.add_row({join_words(*g, S), std::string(to_string(k.kind)), I64(R), k.value, k.dual_bound, floor});
    }
  }
  return t;
}

ResultTable amenable_pipeline(const ExperimentConfig& cfg) {
  const GroupPtr g = config_group(cfg, "abelian(2)");
  const int q = quad_order(cfg, 8);
  ResultTable t;
  t.columns = {"side", "mass", "ratio", "boundary_residual"};
  std::vector<double> xs, ys;
  double prev = 0.0;
  for (long L : cfg.params.integers("sides", {4, 8, 16})) {
    const SimplicialCycle c = amenable_cycle(g, static_cast<int>(L));
    const double m = mass(c, q).total;
    t.add_row({I64(L), m, prev > 0.0 ? m / prev : 0.0, boundary_check(c, q)});
    xs.push_back(static_cast<double>(L));
    ys.push_back(m);
    prev = m;
  }
  if (xs.size() >= 2) t.summary["power_law_exponent"] = fit_power_law(xs, ys).exponent;
  return t;
}

ResultTable thickness_pipeline(const ExperimentConfig& cfg) {
  const GroupPtr g = config_group(cfg, "abelian(2)");
  const ParamSet& p = cfg.params;
  const auto deltas = p.reals("deltas", {0.0, 0.5, 1.0, 1.5});
  const int radius = static_cast<int>(p.integer("radius", 2));
  const int q = quad_order(cfg, 4);
  ResultTable t;
  t.columns = {"side", "delta", "thick_mass", "total_mass"};
  for (long L : p.integers("sides", {4, 8, 16})) {
    const SimplicialCycle c = amenable_cycle(g, static_cast<int>(L));
    const double total = mass(c, q).total;
    for (const auto& [d, m] : thick_mass_profile(c, deltas, radius, q)) t.add_row({I64(L), d, m, total});
  }
  return t;
}

ResultTable margulis_pipeline(const ExperimentConfig& cfg) {
  const GroupPtr g = config_group(cfg, "free(2)");
  const ParamSet& p = cfg.params;
  MargulisChain chain;
  chain.elements = parse_elements(*g, p.strings("chain"), "chain");
  const double alpha = p.real("alpha");
  const int L = static_cast<int>(p.integer("witness_length", 64));
  // Witness along the maximal cyclic subgroup of the first element.
  const Element r = primitive_root(*g, chain.elements.front()).root;
  std::vector<Element> line;
  Element x = g->identity();
  for (int i = 0; i < L; ++i) {
    line.push_back(x);
    x = g->mul(x, r);
  }
  const SphereVector w = SphereVector::uniform(g, line);
  for (std::size_t j = 0; j + 1 < chain.elements.size(); ++j) chain.witnesses.push_back(w);
  ResultTable t;
  t.columns = {"pair", "first", "second", "displacement", "alpha"};
  for (std::size_t j = 0; j + 1 < chain.elements.size(); ++j) {
    const double d = std::max(chordal_distance(act(chain.elements[j], w), w),
                              chordal_distance(act(chain.elements[j + 1], w), w));
    t.add_row({I64(j), g->to_string(chain.elements[j]), g->to_string(chain.elements[j + 1]), d, alpha});
  }
  try {
    const MargulisVerdict v = margulis_chain_check(g, chain, alpha);
    t.summary["verdict"] = std::string(v.common_cyclic ? "common-cyclic" : "violation");
    if (v.root) t.summary["root"] = g->to_string(*v.root);
  } catch (const InvalidWitness& e) {
    t.summary["verdict"] = std::string("invalid-witness");
    t.summary["reason"] = std::string(e.what());
  }
  return t;
}

}  // namespace

ResultTable run(const ExperimentConfig& config) {
  if (config.threads > 0) set_kernel_threads(config.threads);
  ResultTable t;
  switch (config.kind) {
    case ExperimentKind::SurfacePoisson: t = surface_poisson(config); break;
    case ExperimentKind::Minimize: t = minimize_pipeline(config); break;
    case ExperimentKind::BarycenterVerify: t = barycenter_pipeline(config); break;
    case ExperimentKind::Kazhdan: t = kazhdan_pipeline(config); break;
    case ExperimentKind::AmenableCollapse: t = amenable_pipeline(config); break;
    case ExperimentKind::ThicknessScan: t = thickness_pipeline(config); break;
    case ExperimentKind::MargulisCheck: t = margulis_pipeline(config); break;
  }
  t.name = to_string(config.kind);
  t.config_hash = config.hash();
  t.summary["seed"] = static_cast<std::int64_t>(config.seed);
  return t;
}

}  // namespace plateau
