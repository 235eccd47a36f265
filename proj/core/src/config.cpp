#include "rcp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rcp/rng.hpp"

namespace rcp {

using nlohmann::json;

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file) {
  std::ifstream f(file, std::ios::binary);
  if (!f) throw std::runtime_error("config: cannot open " + file.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_string(ss.str(), file.string());
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text,
                                               const std::string& label) {
  ExperimentConfig cfg;
  cfg.raw = text;
  cfg.path = label;
  try {
    cfg.j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + label + ": " + e.what());
  }
  if (!cfg.j.is_object())
    throw std::runtime_error("config " + label + ": top level must be an object");
  return cfg;
}

std::string ExperimentConfig::kind() const { return str("kind"); }

std::uint64_t ExperimentConfig::seed() const {
  if (!has("seed")) throw std::runtime_error("config field 'seed': required");
  return j.at("seed").get<std::uint64_t>();
}

namespace {

const json* walk(const json& root, const std::string& dotted) {
  const json* cur = &root;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    std::size_t dot = dotted.find('.', start);
    std::string key = dotted.substr(start, dot == std::string::npos
                                               ? std::string::npos
                                               : dot - start);
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &cur->at(key);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return cur;
}

}  // namespace

const json& ExperimentConfig::at(const std::string& dotted) const {
  const json* f = walk(j, dotted);
  if (!f) throw std::runtime_error("config field '" + dotted + "': missing");
  return *f;
}

bool ExperimentConfig::has(const std::string& dotted) const {
  return walk(j, dotted) != nullptr;
}

double ExperimentConfig::number(const std::string& dotted) const {
  const json& f = at(dotted);
  if (!f.is_number())
    throw std::runtime_error("config field '" + dotted + "': expected number");
  return f.get<double>();
}

double ExperimentConfig::number_or(const std::string& dotted, double fallback) const {
  return has(dotted) ? number(dotted) : fallback;
}

std::string ExperimentConfig::str(const std::string& dotted) const {
  const json& f = at(dotted);
  if (!f.is_string())
    throw std::runtime_error("config field '" + dotted + "': expected string");
  return f.get<std::string>();
}

std::string ExperimentConfig::str_or(const std::string& dotted,
                                     const std::string& fallback) const {
  return has(dotted) ? str(dotted) : fallback;
}

std::int64_t ExperimentConfig::integer_or(const std::string& dotted,
                                          std::int64_t fallback) const {
  if (!has(dotted)) return fallback;
  const json& f = at(dotted);
  if (!f.is_number_integer())
    throw std::runtime_error("config field '" + dotted + "': expected integer");
  return f.get<std::int64_t>();
}

void write_manifest(const ExperimentConfig& cfg,
                    const std::filesystem::path& out_dir,
                    const std::string& experiment_name) {
  json m;
  m["experiment"] = experiment_name;
  m["tool_version"] = kToolVersion;
  m["config_path"] = cfg.path;
  m["config_hash_fnv1a64"] = fnv1a64(cfg.raw);
  if (cfg.has("seed")) m["seed"] = cfg.j.at("seed");
  m["config"] = cfg.j;
  std::filesystem::path p = out_dir / (experiment_name + ".manifest.json");
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  f << m.dump(2) << "\n";
}

}  // namespace rcp
