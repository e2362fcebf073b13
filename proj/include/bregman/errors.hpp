#pragma once

#include <stdexcept>
#include <string>

namespace bregman {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BREGMAN_DEFINE_ERROR(Name)                                  \
  struct Name : Error {                                             \
    explicit Name(const std::string& what = #Name) : Error(what) {} \
  }

BREGMAN_DEFINE_ERROR(UnknownKernel);
BREGMAN_DEFINE_ERROR(RegionOutsideDomain);
BREGMAN_DEFINE_ERROR(MappingUndefined);
BREGMAN_DEFINE_ERROR(ImproperFunction);
BREGMAN_DEFINE_ERROR(BadGrid);
BREGMAN_DEFINE_ERROR(ZeroNotInGrid);
BREGMAN_DEFINE_ERROR(EmptyCommonDomain);
BREGMAN_DEFINE_ERROR(NonPositiveLambda);
BREGMAN_DEFINE_ERROR(BasePointOutsideU);
BREGMAN_DEFINE_ERROR(PointOutsideSumDomain);
BREGMAN_DEFINE_ERROR(EmptySet);
BREGMAN_DEFINE_ERROR(NonconvexInput);
BREGMAN_DEFINE_ERROR(NonconvexInputForAnisotropicForm);
BREGMAN_DEFINE_ERROR(ThresholdViolated);

#undef BREGMAN_DEFINE_ERROR

}  // namespace bregman
