// Shadows two constant targets in the full 2-shift under increasingly
// forgiving mistake budgets and prints the point found for each.
#include <iostream>

#include "aspec/aspec.hpp"

using namespace aspec;

int main() {
  SystemSpec sys = make_full_shift(2);
  std::vector<Segment> segs{
      {make_point({}, {0}), 3, Rat(1, 2)},
      {make_point({}, {1}), 3, Rat(1, 2)},
  };
  GapFunction kg = GapFunction::constant(1);
  for (long long c = 0; c <= 3; ++c) {
    MistakeFunction g = MistakeFunction::constant(c);
    std::optional<Point> z = trace_point(sys, segs, g, kg);
    std::cout << "g == " << c << ": ";
    if (!z) {
      std::cout << "no tracing point\n";
      continue;
    }
    std::cout << format_point_for(sys, *z)
              << " (verified: " << (verify_trace(sys, *z, segs, g) ? "yes" : "no") << ")\n";
  }
  return 0;
}
