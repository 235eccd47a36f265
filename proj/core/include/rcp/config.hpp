#pragma once

// Experiment configuration: one JSON file per run. Thin typed accessors with
// field-path error messages, plus the run manifest written next to outputs.

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace rcp {

struct ExperimentConfig {
  nlohmann::json j;
  std::string raw;   // file bytes, hashed into the manifest
  std::string path;

  static ExperimentConfig load(const std::filesystem::path& file);
  static ExperimentConfig from_string(const std::string& text,
                                      const std::string& label = "<inline>");

  std::string kind() const;
  std::uint64_t seed() const;

  // Nested lookup by dotted path; throws with the path on missing/mistyped.
  const nlohmann::json& at(const std::string& dotted) const;
  bool has(const std::string& dotted) const;

  double number(const std::string& dotted) const;
  double number_or(const std::string& dotted, double fallback) const;
  std::string str(const std::string& dotted) const;
  std::string str_or(const std::string& dotted, const std::string& fallback) const;
  std::int64_t integer_or(const std::string& dotted, std::int64_t fallback) const;
};

// config echo + FNV-1a hash of the config bytes + seed + tool version.
void write_manifest(const ExperimentConfig& cfg,
                    const std::filesystem::path& out_dir,
                    const std::string& experiment_name);

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace rcp
