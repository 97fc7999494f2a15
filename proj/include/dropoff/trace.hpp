#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dropoff/geometry.hpp"

namespace dropoff {

// Sentinel values for TraceStep::moved.
inline constexpr int kMovedInit = -1;  // initial snapshot, no car moved
inline constexpr int kMovedAll = -2;   // synchronous round, every car moved

struct TraceStep {
  std::size_t n = 0;
  int moved = kMovedInit;  // 0-based car index unless a sentinel
  std::vector<Point> positions;
  double social_cost = 0.0;
};

struct Trace {
  std::vector<TraceStep> steps;
  bool terminal = false;
};

bool operator==(const TraceStep& a, const TraceStep& b);
bool operator==(const Trace& a, const Trace& b);

// CSV layout: header "n,moved_car,car_id,x,y,social_cost", one row per car per
// recorded step, doubles at 17 significant digits, then a "# terminal 0|1"
// footer. moved_car serializes as "-" for the initial row, "all" for
// synchronous rounds, and a 1-based car id otherwise; car_id is 1-based.
void write_trace_csv(const Trace& trace, std::ostream& out);
void write_trace_csv(const Trace& trace, const std::string& path);
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv(const std::string& path);

}  // namespace dropoff
