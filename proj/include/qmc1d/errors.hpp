#pragma once

#include <stdexcept>
#include <string>

namespace qmc1d {

// Bad arguments or a config that fails validation. CLI maps this to exit 2.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numerical routine failed to converge or left its supported domain.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// A sampler detected an unrecoverable runtime condition (population collapse,
// too many non-finite local energies). CLI maps this to exit 3.
class SamplerAbort : public std::runtime_error {
public:
  explicit SamplerAbort(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qmc1d
