#include "manifest.hpp"

#include <fstream>
#include <vector>

#include "omnideblur/errors.hpp"
#include "omnideblur/gabor.hpp"

namespace omnideblur::cli {

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("hash_file: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= (unsigned char)buf[i];
      h *= 0x100000001b3ull;
    }
  }
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)h);
  return std::string("fnv1a64:") + hex;
}

nlohmann::json config_json(const SolverConfig& c) {
  nlohmann::json j;
  j["alpha"] = c.alpha;
  j["zeta"] = c.zeta;
  j["step_t"] = c.step_t;
  j["fista_iters"] = c.fista_iters;
  j["irls_outer"] = c.irls_outer;
  j["cg_inner"] = c.cg_inner;
  j["em_iters"] = c.outer_em_iters;
  j["kernel_size"] = c.kernel_size;
  j["min_kernel"] = c.min_kernel;
  j["scale_ratio"] = c.scale_ratio;
  j["thetas"] = c.thetas;
  j["gabor"] = {{"lambda", c.gabor.lambda},
                {"psi", c.gabor.psi},
                {"sigma", c.gabor.sigma},
                {"gamma", c.gabor.gamma},
                {"support", c.gabor.support != 0
                                ? c.gabor.support
                                : gabor_auto_support(c.gabor.sigma)},
                {"effective_lambda", effective_wavelength(c.gabor)}};
  j["nonblind"] = {{"method", to_string(c.nonblind.method)},
                   {"reg_weight", c.nonblind.reg_weight},
                   {"inner_iters", c.nonblind.inner_iters}};
  return j;
}

std::string output_base(const std::string& path) {
  for (const char* ext : {".png", ".pgm", ".txt", ".json"}) {
    const std::string suffix(ext);
    if (path.size() > suffix.size() &&
        path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return path.substr(0, path.size() - suffix.size());
    }
  }
  return path;
}

ManifestWriter::ManifestWriter(std::string subcommand, std::uint64_t seed) {
  doc_["subcommand"] = std::move(subcommand);
  doc_["seed"] = seed;
  doc_["inputs"] = nlohmann::json::object();
  doc_["outputs"] = nlohmann::json::object();
}

void ManifestWriter::add_input(const std::string& role, const std::string& path) {
  doc_["inputs"][role] = path;
}

void ManifestWriter::add_output(const std::string& role, const std::string& path) {
  doc_["outputs"][role] = path;
}

void ManifestWriter::set_config(nlohmann::json config) {
  doc_["config"] = std::move(config);
}

void ManifestWriter::set_extra(const std::string& key, nlohmann::json value) {
  doc_[key] = std::move(value);
}

nlohmann::json ManifestWriter::document(double wall_clock_sec) const {
  nlohmann::json j = doc_;
  j["wall_clock_sec"] = wall_clock_sec;
  j["artifact_hashes"] = nlohmann::json::object();
  for (const auto& [role, path] : doc_["outputs"].items()) {
    j["artifact_hashes"][path.get<std::string>()] =
        hash_file(path.get<std::string>());
  }
  return j;
}

void ManifestWriter::write(const std::string& path, double wall_clock_sec) {
  std::ofstream out(path);
  if (!out) throw IoError("manifest: cannot open " + path);
  out << document(wall_clock_sec).dump(2) << "\n";
  if (!out) throw IoError("manifest: write failed: " + path);
}

}  // namespace omnideblur::cli
