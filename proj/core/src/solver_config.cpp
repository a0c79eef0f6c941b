#include "omnideblur/solver_config.hpp"

#include <string>

namespace omnideblur {

void SolverConfig::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("config: alpha must be positive");
  if (!(zeta > 0.0)) throw ConfigError("config: zeta must be positive");
  if (!(step_t > 0.0)) throw ConfigError("config: step-t must be positive");
  if (fista_iters < 1) throw ConfigError("config: fista-iters must be >= 1");
  if (irls_outer < 1) throw ConfigError("config: irls-outer must be >= 1");
  if (cg_inner < 1) throw ConfigError("config: cg-inner must be >= 1");
  if (outer_em_iters < 1) throw ConfigError("config: em-iters must be >= 1");
  if (kernel_size < 3 || kernel_size % 2 == 0) {
    throw ConfigError("config: kernel-size must be odd and >= 3, got " +
                      std::to_string(kernel_size));
  }
  if (min_kernel < 3 || min_kernel % 2 == 0) {
    throw ConfigError("config: min-kernel must be odd and >= 3");
  }
  if (kernel_size < min_kernel) {
    throw ConfigError("config: kernel-size smaller than min-kernel");
  }
  if (!(scale_ratio > 1.0)) {
    throw ConfigError("config: scale ratio must exceed 1");
  }
  if (thetas.empty()) throw ConfigError("config: theta set is empty");
  gabor.validate();
  nonblind.validate();
}

}  // namespace omnideblur
