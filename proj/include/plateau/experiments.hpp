#pragma once

// Declarative experiment configs, result tables and the pipelines behind the CLI.

#include "plateau/group.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace plateau {

inline constexpr const char* kToolVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key/value sections. Accessors throw ConfigError naming the field path.
class ParamSet {
 public:
  ParamSet() = default;
  ParamSet(std::string section, std::map<std::string, std::string> values)
      : section_(std::move(section)), values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  /// Comma-separated lists.
  std::vector<double> reals(const std::string& key) const;
  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;
  std::vector<long> integers(const std::string& key) const;
  std::vector<long> integers(const std::string& key, std::vector<long> fallback) const;
  std::vector<std::string> strings(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }
  const std::string& section() const { return section_; }

 private:
  std::string path(const std::string& key) const { return section_ + "." + key; }
  std::string section_;
  std::map<std::string, std::string> values_;
};

/// INI file: section name -> parameters.
std::map<std::string, ParamSet> read_ini(const std::string& path);
std::map<std::string, ParamSet> parse_ini(std::istream& is, const std::string& origin);

enum class ExperimentKind {
  SurfacePoisson,
  Minimize,
  BarycenterVerify,
  Kazhdan,
  AmenableCollapse,
  ThicknessScan,
  MargulisCheck,
};

ExperimentKind parse_experiment_kind(const std::string& name);
const char* to_string(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SurfacePoisson;
  std::string group;
  std::uint64_t seed = 0;
  ParamSet params;
  std::string out_dir = ".";
  int threads = 0;
  int quadrature_order = 0;  // 0: pipeline default

  /// [experiment] kind, group, seed (mandatory), optional out, threads, quadrature_order; [params] free-form.
  static ExperimentConfig from_sections(const std::map<std::string, ParamSet>& sections);
  static ExperimentConfig load(const std::string& path);
  /// Canonical text (sorted keys) used for the config hash.
  std::string canonical() const;
  std::uint32_t hash() const;
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, Cell> summary;  // aggregates mirrored in the JSON file
  std::uint32_t config_hash = 0;
  std::string version = kToolVersion;

  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
  double real(std::size_t row, const std::string& col) const;
};

/// Header comment lines ("# config_hash=...", "# version=..."), then the CSV with %.17g floats.
void write_csv(std::ostream& os, const ResultTable& t);
std::string to_json(const ResultTable& t);

/// Dispatches to the named pipeline; deterministic for a fixed seed.
ResultTable run(const ExperimentConfig& config);
/// Writes <out>/<name>.csv and <out>/<name>.json via temporary files and renames.
void write_outputs(const ResultTable& t, const std::string& out_dir);

}  // namespace plateau
