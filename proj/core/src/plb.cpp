#include "plbea/plb.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "plbea/errors.hpp"

namespace plbea {
namespace {

void ValidateShape(double beta, double t) {
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw UsageError("beta must be a finite value > 1, got " + std::to_string(beta));
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw UsageError("t must be a finite value >= 0, got " + std::to_string(t));
  }
}

void Validate(const PlbParams& p) {
  ValidateShape(p.beta, p.t);
  if (!(p.c1 >= 0.0) || !std::isfinite(p.c1)) {
    throw UsageError("c1 must be a finite value >= 0, got " + std::to_string(p.c1));
  }
}

void RequireBetaAboveTwo(const PlbParams& p) {
  Validate(p);
  if (!(p.beta > 2.0)) {
    throw DomainError("bound requires beta > 2, got " + std::to_string(p.beta));
  }
}

// n (t+1)^(beta-1) * bucket_power_sum, i.e. the bucket bound per unit c1.
double UnitBound(int d, double beta, double t, std::size_t n) {
  return static_cast<double>(n) * std::pow(t + 1.0, beta - 1.0) *
         bucket_power_sum(d, beta, t);
}

}  // namespace

std::vector<BucketCount> bucket_counts(const Graph& g) {
  const std::size_t max_deg = std::max<std::size_t>(g.max_degree(), 1);
  // ceil(log2(max_deg))
  const int top = static_cast<int>(std::bit_width(max_deg - 1));
  std::vector<BucketCount> buckets(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) buckets[static_cast<std::size_t>(d)].d = d;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const std::size_t k = g.degree(v);
    if (k == 0) continue;
    const auto d = static_cast<std::size_t>(std::bit_width(k) - 1);
    ++buckets[d].count;
  }
  return buckets;
}

double bucket_power_sum(int d, double beta, double t) {
  if (d < 0 || d > 62) throw UsageError("bucket index out of range: " + std::to_string(d));
  ValidateShape(beta, t);
  const std::uint64_t lo = std::uint64_t{1} << d;
  const std::uint64_t hi = (std::uint64_t{1} << (d + 1)) - 1;
  double sum = 0.0;
  for (std::uint64_t i = lo; i <= hi; ++i) {
    sum += std::pow(static_cast<double>(i) + t, -beta);
  }
  return sum;
}

double plb_bucket_bound(int d, const PlbParams& params, std::size_t n) {
  Validate(params);
  if (n == 0) throw UsageError("plb_bucket_bound requires n >= 1");
  return params.c1 * UnitBound(d, params.beta, params.t, n);
}

PlbCheck check_plb(const Graph& g, const PlbParams& params) {
  Validate(params);
  PlbCheck result;
  result.holds = true;
  for (const auto& bucket : bucket_counts(g)) {
    BucketReport row;
    row.d = bucket.d;
    row.count = bucket.count;
    row.bound = g.num_vertices() == 0 ? 0.0
                                      : plb_bucket_bound(bucket.d, params, g.num_vertices());
    row.margin = row.bound - static_cast<double>(row.count);
    if (static_cast<double>(row.count) > row.bound * (1.0 + kPlbTolerance)) {
      result.holds = false;
    }
    result.buckets.push_back(row);
  }
  return result;
}

double fit_c1(const Graph& g, double beta, double t) {
  ValidateShape(beta, t);
  if (g.num_edges() == 0) {
    throw UsageError("fit_c1 needs at least one edge; an edgeless graph has no constraint");
  }
  double c1 = 0.0;
  for (const auto& bucket : bucket_counts(g)) {
    if (bucket.count == 0) continue;
    c1 = std::max(c1, static_cast<double>(bucket.count) /
                          UnitBound(bucket.d, beta, t, g.num_vertices()));
  }
  return c1;
}

PlbConstants constants_ab(const PlbParams& params) {
  RequireBetaAboveTwo(params);
  const double beta = params.beta;
  const double t = params.t;
  const double ratio_term = std::pow((t + 2.0) / (t + 1.0), 1.0 - beta);
  PlbConstants k;
  k.a = (beta - 1.0) / (beta - 2.0) / (1.0 - ratio_term);
  const double scale = 4.0 * params.c1 * std::pow(t + 1.0, beta - 1.0);
  k.b = std::pow(scale / (beta - 1.0), 1.0 / (beta - 2.0));
  k.b_alt = std::pow(scale / (beta - 2.0), 1.0 / (beta - 2.0));
  return k;
}

RatioBounds ratio_bounds(const PlbParams& params) {
  const PlbConstants k = constants_ab(params);
  const double ab = k.a * k.b;
  constexpr double e = std::numbers::e;
  RatioBounds r;
  r.mds_ea = 2.0 * ab + 1.0;
  r.mds_gsemo = std::log(2.0 * ab + 1.0);
  r.mvc_ea = 2.0 * ab;
  r.mvc_gsemo = std::log(2.0 * ab) + 1.0;
  r.cds_ea = 2.0 * ab;
  r.cds_gsemo = std::log(2.0 * e * ab + e);
  r.mis_ea = ab + 0.5;
  r.mis_gsemo = 2.0 * params.c1 * (params.beta + params.t - 1.0) /
                    ((params.beta - 1.0) * (params.beta - 2.0)) +
                1.0;
  return r;
}

DegreeSumBound degree_sum_bound(const PlbParams& params, std::size_t n,
                                std::size_t max_deg) {
  Validate(params);
  const double beta = params.beta;
  const double t = params.t;
  double sum = 0.0;
  for (std::size_t i = 1; i <= max_deg; ++i) {
    const auto di = static_cast<double>(i);
    sum += di * std::pow(di + t, -beta);
  }
  const double scale = 2.0 * params.c1 * static_cast<double>(n);
  DegreeSumBound out;
  out.finite_sum = scale * std::pow(t + 1.0, beta - 1.0) * sum;
  out.integral_cap = beta > 2.0
                         ? scale * (beta + t - 1.0) / ((beta - 1.0) * (beta - 2.0))
                         : std::numeric_limits<double>::quiet_NaN();
  return out;
}

DomsetRatio verify_domset_ratio(const Graph& g, const PlbParams& params,
                                const Solution& d) {
  CheckLength(g, d);
  if (d.ones() == 0 || undominated_count(g, d) != 0) {
    throw UsageError("verify_domset_ratio requires a non-empty dominating set");
  }
  std::size_t volume = 0;
  for (Vertex v : d.selected()) volume += g.degree(v) + 1;
  DomsetRatio out;
  out.ratio = static_cast<double>(volume) / static_cast<double>(d.ones());
  out.bound = ratio_bounds(params).mds_ea;
  out.within_bound = out.ratio <= out.bound;
  return out;
}

}  // namespace plbea
