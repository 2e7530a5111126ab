#ifndef PINFOLD_ERRORS_HPP
#define PINFOLD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pinfold {

#define PINFOLD_DEFINE_ERROR(Name)                          \
  struct Name : std::runtime_error {                        \
    explicit Name(const std::string& msg)                   \
        : std::runtime_error(std::string(#Name ": ") + msg) \
    {}                                                      \
  }

PINFOLD_DEFINE_ERROR(DimensionMismatch);
PINFOLD_DEFINE_ERROR(OverlapError);
PINFOLD_DEFINE_ERROR(IndexOutOfRange);
PINFOLD_DEFINE_ERROR(NotTouching);
PINFOLD_DEFINE_ERROR(DisconnectedGraph);
PINFOLD_DEFINE_ERROR(ScheduleEdgeNotInGraph);
PINFOLD_DEFINE_ERROR(InvalidArgument);
PINFOLD_DEFINE_ERROR(TooManyEdges);
PINFOLD_DEFINE_ERROR(InfeasibleStar);
PINFOLD_DEFINE_ERROR(PlacementFailure);
PINFOLD_DEFINE_ERROR(InfeasibleBudget);

#undef PINFOLD_DEFINE_ERROR

}  // namespace pinfold

#endif
