// Prints separated-set growth for the golden mean shift and compares the
// fitted slope against the transfer matrix value.
#include <cstdio>

#include "aspec/aspec.hpp"

using namespace aspec;

int main() {
  SystemSpec sys = make_sft(2, {{1, 1}, {1, 0}});
  std::vector<long long> ns;
  for (long long n = 4; n <= 16; ++n) ns.push_back(n);
  EntropyProfile prof = entropy_profile(sys, ns, {Rat(1, 2)}, std::nullopt, true);
  std::printf("%4s %8s %12s\n", "n", "count", "log/n");
  for (const EntropyRow& row : prof.rows)
    std::printf("%4lld %8lld %12.6f\n", row.n, row.count, row.log_count_over_n);
  if (prof.has_slope)
    std::printf("fitted slope  %.6f\nmatrix value  %.6f\n", prof.slope,
                transfer_matrix_entropy(sys));
  return 0;
}
