#pragma once

// Always-on internal invariant checks. These guard algorithm state the
// embedders rely on (feasibility accounting, placement discipline); a failure
// means an implementation bug, not bad input.

#include <sstream>
#include <stdexcept>

#define SPANTREE_CHECK(cond, msg)                                  \
  do {                                                             \
    if (!(cond)) {                                                 \
      std::ostringstream oss_;                                     \
      oss_ << "invariant violated at " << __FILE__ << ":"          \
           << __LINE__ << ": " << msg;                             \
      throw std::logic_error(oss_.str());                          \
    }                                                              \
  } while (0)
