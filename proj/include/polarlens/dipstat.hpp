#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polarlens {

struct DipResult {
    double d = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::size_t n_boot = 0;
    std::uint64_t seed = 0;
    bool degenerate = false; // all-equal sample, D pinned to 1/(2n)
};

// Hartigan-Hartigan dip statistic: the sup-distance between the empirical CDF
// and the nearest unimodal CDF (convex below the mode, concave above, with at
// most one atom, at the mode). Non-finite values are removed first; fewer
// than 2 remaining values is an error. All-equal samples return the lower
// bound 1/(2n) with a warning.
double dip_statistic(const std::vector<double>& sample);

// True iff some unimodal CDF stays within sup-distance d of the empirical CDF
// of the sorted sample. Exposed for the bootstrap fast path and for tests.
bool dip_feasible(const std::vector<double>& sorted_sample, double d);

// Monte-Carlo p-value against the uniform null:
//   p = (1 + #{dip of n uniforms >= d}) / (n_boot + 1).
// Replicate r draws from an RNG stream derived from (seed, r), so the result
// does not depend on evaluation order. n_boot must be >= 100.
double dip_pvalue(double d, std::size_t n, std::size_t n_boot, std::uint64_t seed);

DipResult dip_test(const std::vector<double>& sample, std::size_t n_boot, std::uint64_t seed);

// Report JSON: {D, p_value, n, n_boot, seed}.
std::string dip_report_json(const DipResult& r);

} // namespace polarlens
