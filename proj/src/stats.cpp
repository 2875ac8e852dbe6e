#include "nstars/stats.hpp"

#include <cmath>

#include "nstars/errors.hpp"

namespace nstars::stats {
namespace {

struct BinSums {
  std::uint64_t count = 0;
  unsigned __int128 first = 0;
  unsigned __int128 second = 0;
};

double to_double(unsigned __int128 v) {
  return static_cast<double>(static_cast<long double>(v));
}

}  // namespace

EmpiricalJoint empirical_joint(std::span<const VertexStats> vertices) {
  EmpiricalJoint joint;
  for (const auto& v : vertices) ++joint.counts[{v.w1, v.w2}];
  joint.total_vertices = vertices.size();
  return joint;
}

EmpiricalJoint empirical_joint(const GraphState& state) {
  return empirical_joint(state.vertices());
}

EmpiricalJoint transpose(const EmpiricalJoint& joint) {
  EmpiricalJoint out;
  out.total_vertices = joint.total_vertices;
  for (const auto& [key, count] : joint.counts) {
    out.counts[{key.second, key.first}] = count;
  }
  return out;
}

std::vector<EmpiricalMomentRow> conditional_moments(const EmpiricalJoint& joint,
                                                    Axis axis,
                                                    std::uint64_t min_count) {
  if (min_count < 1) throw InvalidParams("min_count must be at least 1");
  std::map<std::uint64_t, BinSums> bins;
  for (const auto& [key, count] : joint.counts) {
    const auto [fixed, free] = axis == Axis::kFixW1
                                   ? key
                                   : std::pair{key.second, key.first};
    BinSums& b = bins[fixed];
    const auto f = static_cast<unsigned __int128>(free);
    b.count += count;
    b.first += f * count;
    b.second += f * f * count;
  }

  std::vector<EmpiricalMomentRow> rows;
  for (const auto& [fixed, b] : bins) {
    if (b.count < min_count) continue;
    EmpiricalMomentRow row;
    row.fixed = fixed;
    row.count = b.count;
    row.marginal = static_cast<double>(b.count) /
                   static_cast<double>(joint.total_vertices);
    const auto n = static_cast<double>(b.count);
    row.mean = to_double(b.first) / n;
    row.second_moment = to_double(b.second) / n;
    // The integer sums satisfy second * count >= first^2; only rounding can
    // break it in floating point.
    if (row.second_moment < row.mean * row.mean) {
      row.second_moment = row.mean * row.mean;
    }
    rows.push_back(row);
  }
  return rows;
}

TaylorFit loglog_fit(std::span<const EmpiricalMomentRow> rows,
                     std::uint64_t min_count) {
  TaylorFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> ws;
  for (const auto& row : rows) {
    if (row.count < min_count) continue;
    if (!(row.mean > 0.0) || !(row.second_moment > 0.0)) {
      ++fit.rows_nonpositive;
      continue;
    }
    xs.push_back(std::log10(row.mean));
    ys.push_back(std::log10(row.second_moment));
    ws.push_back(static_cast<double>(row.count));
  }
  if (xs.size() < 2) {
    throw InsufficientData("log-log fit needs at least two usable rows");
  }

  double wsum = 0;
  double xbar = 0;
  double ybar = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    wsum += ws[i];
    xbar += ws[i] * xs[i];
    ybar += ws[i] * ys[i];
  }
  xbar /= wsum;
  ybar /= wsum;
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - xbar;
    const double dy = ys[i] - ybar;
    sxx += ws[i] * dx * dx;
    sxy += ws[i] * dx * dy;
    syy += ws[i] * dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw InsufficientData("log-log fit needs at least two distinct means");
  }
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += ws[i] * e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.points_used = xs.size();
  return fit;
}

}  // namespace nstars::stats
