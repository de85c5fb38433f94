#pragma once

#include <stdexcept>
#include <string>

namespace ome {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fock expansion cut off before the requested normalization was reached.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achieved_norm)
      : Error(what), achieved_norm_(achieved_norm) {}
  double achieved_norm() const noexcept { return achieved_norm_; }

 private:
  double achieved_norm_;
};

class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Operation refused because its physical precondition does not hold.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ome
