#include "nstars/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "nstars/errors.hpp"

namespace nstars {
namespace {

class Fnv1a {
 public:
  void add(std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (word >> (8 * i)) & 0xffU;
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

void expect_equal(std::uint64_t actual, std::uint64_t expected,
                  const char* what) {
  if (actual != expected) {
    throw InvariantViolation(std::string(what) + ": expected " +
                             std::to_string(expected) + ", found " +
                             std::to_string(actual));
  }
}

// Upper estimate of the number of distinct N-stars after `steps` steps:
// every new-vertex step and (almost) every uniform step creates one.
std::size_t expected_nstars(const ModelParams& params, std::uint64_t steps) {
  const double creating = params.p + (1.0 - params.p) * (1.0 - params.q);
  const double mean = creating * static_cast<double>(steps);
  return static_cast<std::size_t>(mean + 6.0 * std::sqrt(mean)) + 1024;
}

}  // namespace

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::kNewPeripheral:
      return "new_peripheral";
    case StepKind::kNewCenter:
      return "new_center";
    case StepKind::kPreferentialStar:
      return "preferential_star";
    case StepKind::kUniformStar:
      return "uniform_star";
  }
  return "unknown";
}

GraphState::GraphState(const ModelParams& params, std::uint64_t seed,
                       bool record_edges)
    : params_(params),
      rng_(seed),
      record_edges_(record_edges),
      nstars_(static_cast<std::size_t>(params.N)),
      n1stars_(static_cast<std::size_t>(params.N - 1)) {}

GraphState GraphState::init(const ModelParams& params, std::uint64_t seed,
                            bool record_edges, std::uint64_t expected_steps) {
  validate_for_simulation(params);
  GraphState state(params, seed, record_edges);
  const auto n = static_cast<std::size_t>(params.N);
  if (expected_steps > 0) {
    const std::size_t stars = expected_nstars(params, expected_steps);
    state.nstars_.reserve(stars);
    state.n1stars_.reserve(stars * (n - 1));
    state.vertices_.reserve(
        static_cast<std::size_t>(params.p * static_cast<double>(expected_steps) * 1.01) + n + 1024);
  }
  state.key_.reserve(n);
  state.sub_key_.reserve(n);
  state.chosen_.reserve(n);

  for (std::size_t v = 0; v < n; ++v) state.add_vertex();
  std::vector<VertexId> peripherals;
  for (std::size_t v = 1; v < n; ++v) peripherals.push_back(static_cast<VertexId>(v));
  state.interact(0, peripherals);
  return state;
}

VertexId GraphState::add_vertex() {
  vertices_.push_back({});
  return static_cast<VertexId>(vertices_.size() - 1);
}

void GraphState::draw_distinct(std::size_t count, std::vector<VertexId>& out) {
  out.clear();
  const std::uint64_t pool = vertices_.size();
  while (out.size() < count) {
    const auto v = static_cast<VertexId>(rng_.uniform_index(pool));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
}

void GraphState::interact(VertexId center,
                          std::span<const VertexId> sorted_peripherals) {
  // sorted_peripherals may alias key_ or chosen_; copy before touching them.
  sub_key_.assign(sorted_peripherals.begin(), sorted_peripherals.end());
  key_.clear();
  key_.push_back(center);
  key_.insert(key_.end(), sub_key_.begin(), sub_key_.end());
  nstars_.activate(key_);

  // Each (N-1)-sub-star drops one peripheral; order stays sorted.
  for (std::size_t drop = 1; drop < key_.size(); ++drop) {
    sub_key_.clear();
    for (std::size_t j = 0; j < key_.size(); ++j) {
      if (j != drop) sub_key_.push_back(key_[j]);
    }
    n1stars_.activate(sub_key_);
  }

  vertices_[center].w1 += 1;
  for (std::size_t j = 1; j < key_.size(); ++j) {
    vertices_[key_[j]].w2 += 1;
    if (record_edges_) edges_.push_back({key_[j], center});
  }
}

StepKind GraphState::step() {
  const auto n = static_cast<std::size_t>(params_.N);
  StepKind kind;
  if (rng_.bernoulli(params_.p)) {
    if (rng_.bernoulli(params_.r)) {
      kind = StepKind::kNewPeripheral;
      const std::size_t picked = n1stars_.sample(rng_);
      const auto base = n1stars_.key(picked);
      chosen_.assign(base.begin() + 1, base.end());
      const VertexId center = base.front();
      chosen_.push_back(add_vertex());  // newest id sorts last
      interact(center, chosen_);
    } else {
      kind = StepKind::kNewCenter;
      draw_distinct(n - 1, chosen_);
      std::sort(chosen_.begin(), chosen_.end());
      interact(add_vertex(), chosen_);
    }
  } else {
    if (rng_.bernoulli(params_.q)) {
      kind = StepKind::kPreferentialStar;
      const std::size_t picked = nstars_.sample(rng_);
      const auto base = nstars_.key(picked);
      chosen_.assign(base.begin() + 1, base.end());
      interact(base.front(), chosen_);
    } else {
      kind = StepKind::kUniformStar;
      draw_distinct(n, chosen_);
      const auto at = static_cast<std::ptrdiff_t>(rng_.uniform_index(n));
      const VertexId center = chosen_[static_cast<std::size_t>(at)];
      chosen_.erase(chosen_.begin() + at);
      std::sort(chosen_.begin(), chosen_.end());
      interact(center, chosen_);
    }
  }
  ++steps_;
  ++branch_counts_[static_cast<std::size_t>(kind)];
  return kind;
}

std::uint64_t GraphState::digest() const {
  Fnv1a h;
  h.add(static_cast<std::uint64_t>(params_.N));
  h.add(steps_);
  h.add(vertices_.size());
  for (const auto& v : vertices_) {
    h.add(v.w1);
    h.add(v.w2);
  }
  for (const StarRegistry* reg : {&nstars_, &n1stars_}) {
    h.add(reg->size());
    for (std::size_t i = 0; i < reg->size(); ++i) {
      for (VertexId id : reg->key(i)) h.add(id);
      h.add(reg->weight(i));
    }
  }
  return h.value();
}

void GraphState::audit() const {
  const std::uint64_t activations = steps_ + 1;
  const auto peripherals = static_cast<std::uint64_t>(params_.N - 1);
  expect_equal(nstars_.total_weight(), activations, "N-star total weight");
  expect_equal(n1stars_.total_weight(), peripherals * activations,
               "(N-1)-star total weight");

  std::uint64_t sum_w1 = 0;
  std::uint64_t sum_w2 = 0;
  for (const auto& v : vertices_) {
    sum_w1 += v.w1;
    sum_w2 += v.w2;
  }
  expect_equal(sum_w1, activations, "sum of central weights");
  expect_equal(sum_w2, peripherals * activations, "sum of peripheral weights");

  for (const StarRegistry* reg : {&nstars_, &n1stars_}) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < reg->size(); ++i) sum += reg->weight(i);
    expect_equal(sum, reg->total_weight(), "sampler total vs weights");
    expect_equal(reg->sampler().prefix_sum(reg->size()), reg->total_weight(),
                 "sampler tree vs total");
  }
  std::uint64_t new_vertex_steps = branch_counts_[0] + branch_counts_[1];
  expect_equal(vertices_.size(), static_cast<std::uint64_t>(params_.N) + new_vertex_steps,
               "vertex count");
}

void GraphState::audit_structure() const {
  std::vector<std::uint64_t> expected(n1stars_.size(), 0);
  std::vector<VertexId> sub;
  for (std::size_t i = 0; i < nstars_.size(); ++i) {
    const auto key = nstars_.key(i);
    for (std::size_t drop = 1; drop < key.size(); ++drop) {
      sub.clear();
      for (std::size_t j = 0; j < key.size(); ++j) {
        if (j != drop) sub.push_back(key[j]);
      }
      const auto found = n1stars_.find(sub);
      if (found < 0) throw InvariantViolation("missing (N-1)-sub-star");
      expected[static_cast<std::size_t>(found)] += nstars_.weight(i);
    }
  }
  for (std::size_t i = 0; i < n1stars_.size(); ++i) {
    expect_equal(n1stars_.weight(i), expected[i],
                 "(N-1)-star weight vs containing N-stars");
  }

  if (!record_edges_) return;
  const auto peripherals = static_cast<std::uint64_t>(params_.N - 1);
  expect_equal(edges_.size(), peripherals * (steps_ + 1), "edge count");
  std::vector<std::uint64_t> in(vertices_.size(), 0);
  std::vector<std::uint64_t> out(vertices_.size(), 0);
  for (const Edge& e : edges_) {
    ++out[e.from];
    ++in[e.to];
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    expect_equal(in[v], peripherals * vertices_[v].w1, "in-degree");
    expect_equal(out[v], vertices_[v].w2, "out-degree");
  }
}

RunSummary summarize(const GraphState& state, double wall_seconds) {
  RunSummary s;
  s.branch_counts = state.branch_counts();
  s.steps = state.steps();
  s.vertices = state.vertex_count();
  s.nstar_count = state.nstars().size();
  s.n1star_count = state.n1stars().size();
  s.wall_seconds = wall_seconds;
  s.digest = state.digest();
  return s;
}

RunResult run(const SimConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  GraphState state = GraphState::init(config.params, config.seed,
                                      config.record_edges, config.steps);
  if (config.audit_every_step) state.audit();
  for (std::uint64_t i = 0; i < config.steps; ++i) {
    state.step();
    if (config.audit_every_step) state.audit();
  }
  state.audit();
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  RunSummary summary = summarize(state, elapsed.count());
  return {std::move(state), summary};
}

}  // namespace nstars
