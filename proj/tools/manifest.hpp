#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "omnideblur/solver_config.hpp"

namespace omnideblur::cli {

/// FNV-1a 64-bit hash of a file's bytes, as "fnv1a64:<hex>".
std::string hash_file(const std::string& path);

/// Resolved configuration as JSON (solver, pyramid, Gabor, non-blind).
nlohmann::json config_json(const SolverConfig& config);

/// Strips a known image/text extension so output siblings can be derived:
/// "out.png" -> "out" -> "out.kernel.txt", "out.trace.json", ...
std::string output_base(const std::string& path);

/// Every run writes exactly one manifest describing what it did.
class ManifestWriter {
 public:
  ManifestWriter(std::string subcommand, std::uint64_t seed);

  void add_input(const std::string& role, const std::string& path);
  void add_output(const std::string& role, const std::string& path);
  void set_config(nlohmann::json config);
  void set_extra(const std::string& key, nlohmann::json value);

  /// Hashes all outputs, stamps the wall clock and writes `path`.
  void write(const std::string& path, double wall_clock_sec);

  /// Same document as a JSON object (for reports printed to stdout).
  nlohmann::json document(double wall_clock_sec) const;

 private:
  nlohmann::json doc_;
};

}  // namespace omnideblur::cli
