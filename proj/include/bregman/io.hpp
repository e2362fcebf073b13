#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bregman/bregman_core.hpp"
#include "bregman/report.hpp"
#include "bregman/sampled_function.hpp"

namespace bregman {

// CSV with header "x,value"; infinity spelled "inf".
std::string to_csv(const SampledFunction& f);
SampledFunction from_csv(std::istream& in, const std::string& label = "csv");
SampledFunction load_csv(const std::string& path);
void save_csv(const SampledFunction& f, const std::string& path);

// JSON mirrors of the CSV fields and of reports/prox sets.
std::string to_json(const SampledFunction& f);
std::string to_json(const ProxSet& set);
std::string to_json(const ThresholdEstimate& est);
std::string to_json(const VerificationReport& report);
std::string to_json(const std::vector<VerificationReport>& reports);

}  // namespace bregman
