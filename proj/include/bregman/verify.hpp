#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bregman/report.hpp"

namespace bregman {
namespace verify {

struct Options {
  bool use_oracle = false;    // reroute through the brute-force paths
  std::uint64_t rng_seed = 42;
  std::string kernel_filter;  // restricts the kernel-parametrized families
};

// One named golden/property check bundling its sub-reports.
struct Criterion {
  std::string name;
  std::vector<VerificationReport> reports;
  bool pass() const {
    for (const auto& r : reports)
      if (!r.pass) return false;
    return true;
  }
};

// Suites: kernels | grid | core | average | all.
std::vector<std::string> suite_names();
std::vector<Criterion> run_suite(const std::string& suite,
                                 const Options& options = {});

}  // namespace verify
}  // namespace bregman
