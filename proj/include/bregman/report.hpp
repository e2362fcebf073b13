#pragma once

#include <map>
#include <string>
#include <vector>

namespace bregman {

// Per-identity residual summary.
struct VerificationReport {
  std::string identity;
  double sup_error = 0.0;
  double witness_x = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> metadata;  // h, lambda, alpha, ...

  static VerificationReport make(std::string identity, double sup_error,
                                 double witness_x, double tolerance,
                                 std::map<std::string, double> metadata = {}) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.sup_error = sup_error;
    r.witness_x = witness_x;
    r.tolerance = tolerance;
    r.pass = sup_error <= tolerance;
    r.metadata = std::move(metadata);
    return r;
  }
};

// Running sup-residual tracker.
struct SupError {
  double value = 0.0;
  double witness = 0.0;
  void feed(double err, double x) {
    if (err > value) {
      value = err;
      witness = x;
    }
  }
};

}  // namespace bregman
