#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nstars/simulator.hpp"

namespace nstars::stats {

/// Vertex counts per (w1, w2) pair.
struct EmpiricalJoint {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
  std::uint64_t total_vertices = 0;
};

enum class Axis { kFixW1, kFixW2 };

/// Conditional moments of the free coordinate within one bin of the fixed
/// coordinate.
struct EmpiricalMomentRow {
  std::uint64_t fixed = 0;
  std::uint64_t count = 0;
  double marginal = 0;       // count / total_vertices
  double mean = 0;
  double second_moment = 0;  // raw, not centered
};

struct TaylorFit {
  double slope = 0;
  double intercept = 0;  // log10 scale
  double r_squared = 0;
  std::size_t points_used = 0;
  std::size_t rows_nonpositive = 0;  // dropped because a log was undefined
  std::optional<double> theoretical_C;
};

EmpiricalJoint empirical_joint(std::span<const VertexStats> vertices);
EmpiricalJoint empirical_joint(const GraphState& state);

EmpiricalJoint transpose(const EmpiricalJoint& joint);

/// One row per value of the fixed coordinate holding at least `min_count`
/// vertices, in increasing order of that value.
std::vector<EmpiricalMomentRow> conditional_moments(const EmpiricalJoint& joint,
                                                    Axis axis,
                                                    std::uint64_t min_count);

/// Count-weighted least squares of log10(second_moment) on log10(mean) over
/// rows with count >= min_count and positive mean and second moment.
/// Throws InsufficientData with fewer than two usable rows or no spread in
/// the means.
TaylorFit loglog_fit(std::span<const EmpiricalMomentRow> rows,
                     std::uint64_t min_count);

}  // namespace nstars::stats
