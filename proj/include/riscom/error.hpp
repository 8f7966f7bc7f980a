#pragma once

#include <stdexcept>
#include <string>

namespace riscom {

/// Base for every error raised by the library. Callers that only need a
/// message can catch this; the subclasses carry the typed failure modes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class NonPSDCovariance : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Sensing constraint cannot be met: P_max * lambda_max(A) < gamma_th.
class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, double bound, double threshold)
      : Error(what), bound_(bound), threshold_(threshold) {}
  double bound() const noexcept { return bound_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double bound_;
  double threshold_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NoFeasibleRankOne : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidSweepValue : public Error {
 public:
  using Error::Error;
};

class DuplicateKey : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace riscom
