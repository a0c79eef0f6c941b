#pragma once

#include <stdexcept>
#include <string>

namespace omnideblur {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched or unusable shapes (kernel larger than image, zero-sized output).
struct DimensionError : Error {
  using Error::Error;
};

// Invalid parameter values (even kernel side, duplicate filter angles, ...).
struct ConfigError : Error {
  using Error::Error;
};

// File reading/writing failures; the message carries the offending path.
struct IoError : Error {
  using Error::Error;
};

// Non-finite values produced by an iterative solver.
struct NumericError : Error {
  using Error::Error;
};

// Inputs that make a solve meaningless (e.g. an all-zero latent stack).
struct DegenerateInputError : Error {
  using Error::Error;
};

}  // namespace omnideblur
