#include <cstdlib>
#include <string>

#include "qmc1d/errors.hpp"
#include "qmc1d/kernels.hpp"

namespace qmc1d::kernels {

const Backend& active_backend() {
  static const Backend& chosen = []() -> const Backend& {
    const char* env = std::getenv("QMC1D_KERNELS");
    if (env != nullptr && *env != '\0') {
      const std::string want(env);
      if (want == "scalar") return scalar_backend();
      const Backend* s = simd_backend();
      if (s != nullptr && want == s->name) return *s;
      throw ValidationError("QMC1D_KERNELS: backend '" + want +
                            "' is not available on this machine");
    }
    const Backend* s = simd_backend();
    return s != nullptr ? *s : scalar_backend();
  }();
  return chosen;
}

}  // namespace qmc1d::kernels
