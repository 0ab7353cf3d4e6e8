#pragma once

#include <cstddef>
#include <vector>

#include "plbea/graph.hpp"

namespace plbea {

// Parameters of the power-law bounded (PLB-U) degree condition.
struct PlbParams {
  double beta = 3.0;  // power-law exponent, > 1 (> 2 for the ratio bounds)
  double t = 0.0;     // shift, >= 0
  double c1 = 1.0;    // universal constant, > 0
};

struct PlbConstants {
  double a = 0.0;
  double b = 0.0;
  // b with (beta - 2) in the inner denominator, as the bound derivation
  // produces it; b itself uses (beta - 1).
  double b_alt = 0.0;
};

// Approximation factors for each (problem, algorithm) pair, exactly as the
// corresponding guarantees state them.
struct RatioBounds {
  double mds_ea = 0.0;     // 2ab + 1
  double mds_gsemo = 0.0;  // ln(2ab + 1)
  double mvc_ea = 0.0;     // 2ab
  double mvc_gsemo = 0.0;  // ln(2ab) + 1
  double cds_ea = 0.0;     // 2ab
  double cds_gsemo = 0.0;  // ln(2eab + e)
  double mis_ea = 0.0;     // ab + 1/2
  double mis_gsemo = 0.0;  // 2 c1 (beta + t - 1) / ((beta - 1)(beta - 2)) + 1
};

struct BucketCount {
  int d = 0;  // degrees in [2^d, 2^(d+1))
  std::size_t count = 0;
};

struct BucketReport {
  int d = 0;
  std::size_t count = 0;
  double bound = 0.0;
  double margin = 0.0;  // bound - count
};

struct PlbCheck {
  bool holds = false;
  std::vector<BucketReport> buckets;
};

struct DegreeSumBound {
  double finite_sum = 0.0;    // 2 c1 n (t+1)^(beta-1) sum_{i=1}^{max_deg} i (i+t)^-beta
  double integral_cap = 0.0;  // 2 c1 n (beta + t - 1) / ((beta - 1)(beta - 2)); NaN if beta <= 2
};

struct DomsetRatio {
  double ratio = 0.0;  // sum_{v in D} (deg(v) + 1) / |D|
  bool within_bound = false;
  double bound = 0.0;  // 2ab + 1
};

// Relative slack used when comparing a bucket count against its bound.
inline constexpr double kPlbTolerance = 1e-12;

// Buckets d = 0 .. ceil(log2(max(max_degree, 1))); degree-0 vertices are in
// no bucket.
std::vector<BucketCount> bucket_counts(const Graph& g);

// sum_{i=2^d}^{2^(d+1)-1} (i + t)^-beta, summed in ascending i.
double bucket_power_sum(int d, double beta, double t);

// c1 n (t+1)^(beta-1) * bucket_power_sum(d, beta, t).
double plb_bucket_bound(int d, const PlbParams& params, std::size_t n);

PlbCheck check_plb(const Graph& g, const PlbParams& params);

// Smallest c1 for which check_plb holds. Throws UsageError on edgeless graphs.
double fit_c1(const Graph& g, double beta, double t);

// Throws DomainError when beta <= 2.
PlbConstants constants_ab(const PlbParams& params);
RatioBounds ratio_bounds(const PlbParams& params);

DegreeSumBound degree_sum_bound(const PlbParams& params, std::size_t n,
                                std::size_t max_deg);

// Throws UsageError when d is not a dominating set of g.
DomsetRatio verify_domset_ratio(const Graph& g, const PlbParams& params,
                                const Solution& d);

}  // namespace plbea
