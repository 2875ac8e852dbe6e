#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nstars/params.hpp"
#include "nstars/random.hpp"
#include "nstars/star_registry.hpp"

namespace nstars {

/// The four ways one evolution step can go.
enum class StepKind : std::uint8_t {
  kNewPeripheral = 0,     // new vertex joins a weight-sampled (N-1)-star
  kNewCenter = 1,         // new vertex becomes center of N-1 uniform old vertices
  kPreferentialStar = 2,  // weight-sampled N-star is activated again
  kUniformStar = 3,       // N uniform old vertices, uniform center
};

const char* step_kind_name(StepKind kind);

struct VertexStats {
  std::uint64_t w1 = 0;  // times the vertex was a center
  std::uint64_t w2 = 0;  // times the vertex was a peripheral
};

/// Directed edge from a peripheral to the center of an interaction.
struct Edge {
  VertexId from;
  VertexId to;
};

struct SimConfig {
  ModelParams params;
  std::uint64_t steps = 0;
  std::uint64_t seed = 1;
  bool record_edges = false;
  /// Check the conservation identities after every step (slow).
  bool audit_every_step = false;
};

/// Evolving multigraph. Holds the per-vertex weights, the N-star and
/// (N-1)-star registries and the generator state; owned by one thread.
class GraphState {
 public:
  /// Starting configuration: vertex 0 is the center of one N-star over
  /// vertices 0..N-1, counted as one activation. `expected_steps` only
  /// pre-sizes storage.
  static GraphState init(const ModelParams& params, std::uint64_t seed,
                         bool record_edges = false,
                         std::uint64_t expected_steps = 0);

  StepKind step();

  const ModelParams& params() const { return params_; }
  int star_size() const { return params_.N; }
  std::uint64_t steps() const { return steps_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::span<const VertexStats> vertices() const { return vertices_; }
  const StarRegistry& nstars() const { return nstars_; }
  const StarRegistry& n1stars() const { return n1stars_; }
  const std::array<std::uint64_t, 4>& branch_counts() const {
    return branch_counts_;
  }
  bool records_edges() const { return record_edges_; }
  std::span<const Edge> edges() const { return edges_; }

  /// 64-bit FNV-1a digest of vertex weights, star keys and star weights.
  std::uint64_t digest() const;

  /// Verifies the four conservation identities (registry totals, vertex
  /// weight sums) and that each sampler total equals the sum of its weights.
  /// Throws InvariantViolation.
  void audit() const;

  /// Verifies that every (N-1)-star weight equals the summed weight of the
  /// N-stars containing it, and the edge-log degrees when edges are recorded.
  /// O(stars * N); meant for small runs.
  void audit_structure() const;

 private:
  GraphState(const ModelParams& params, std::uint64_t seed, bool record_edges);

  void interact(VertexId center, std::span<const VertexId> sorted_peripherals);
  void draw_distinct(std::size_t count, std::vector<VertexId>& out);
  VertexId add_vertex();

  ModelParams params_;
  Rng rng_;
  bool record_edges_;
  std::uint64_t steps_ = 0;
  std::array<std::uint64_t, 4> branch_counts_{};
  std::vector<VertexStats> vertices_;
  StarRegistry nstars_;
  StarRegistry n1stars_;
  std::vector<Edge> edges_;
  // Scratch buffers reused across steps.
  std::vector<VertexId> key_;
  std::vector<VertexId> sub_key_;
  std::vector<VertexId> chosen_;
};

struct RunSummary {
  std::array<std::uint64_t, 4> branch_counts{};
  std::uint64_t steps = 0;
  std::size_t vertices = 0;
  std::size_t nstar_count = 0;
  std::size_t n1star_count = 0;
  double wall_seconds = 0;
  std::uint64_t digest = 0;
};

struct RunResult {
  GraphState state;
  RunSummary summary;
};

/// Runs config.steps steps from the initial star and audits the final state.
RunResult run(const SimConfig& config);

RunSummary summarize(const GraphState& state, double wall_seconds);

}  // namespace nstars
