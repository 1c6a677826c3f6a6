#pragma once

#include <cstdio>
#include <string>

namespace fracwave {

// Shortest round-trippable decimal rendering used by every text artifact the
// toolkit writes, so outputs are byte-stable across runs.
inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace fracwave
