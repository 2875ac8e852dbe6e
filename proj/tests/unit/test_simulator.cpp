#include <doctest.h>

#include <random>

#include "nstars/errors.hpp"
#include "nstars/simulator.hpp"
#include "nstars/stats.hpp"

using namespace nstars;

namespace {
const ModelParams kExp1{4, 0.4, 0.4, 0.4};
}

TEST_CASE("initial state") {
  const GraphState s = GraphState::init(kExp1, 1, true);
  CHECK(s.vertex_count() == 4);
  CHECK(s.nstars().size() == 1);
  CHECK(s.n1stars().size() == 3);
  CHECK(s.vertices()[0].w1 == 1);
  CHECK(s.vertices()[0].w2 == 0);
  for (int v = 1; v < 4; ++v) {
    CHECK(s.vertices()[v].w1 == 0);
    CHECK(s.vertices()[v].w2 == 1);
  }
  CHECK(s.edges().size() == 3);
  s.audit();
  s.audit_structure();
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(run({{2, 0.4, 0.4, 0.4}, 10}), InvalidParams);
  CHECK_THROWS_AS(run({{4, 0.0, 0.4, 0.4}, 10}), InvalidParams);
}

TEST_CASE("runs are deterministic per seed") {
  const auto a = run({kExp1, 20000, 42});
  const auto b = run({kExp1, 20000, 42});
  const auto c = run({kExp1, 20000, 43});
  CHECK(a.summary.digest == b.summary.digest);
  CHECK(a.summary.branch_counts == b.summary.branch_counts);
  CHECK(a.summary.digest != c.summary.digest);
}

TEST_CASE("conservation holds at every step on random configurations") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> n_dist(3, 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const ModelParams m{n_dist(gen), 0.05 + 0.95 * unit(gen), unit(gen), unit(gen)};
    SimConfig config{m, 2000, gen(), true, true};
    const RunResult result = run(config);
    result.state.audit_structure();
    std::uint64_t total = 0;
    for (auto c : result.summary.branch_counts) total += c;
    CHECK(total == 2000);
  }
}

TEST_CASE("boundary parameters") {
  // p = 1: only new vertices; r = 1: always a new peripheral.
  auto a = run({{4, 1.0, 0.5, 1.0}, 500, 3, true});
  CHECK(a.summary.branch_counts[0] == 500);
  CHECK(a.summary.vertices == 504);
  a.state.audit_structure();
  // r = 0: always a new center.
  auto b = run({{4, 1.0, 0.5, 0.0}, 500, 3, true});
  CHECK(b.summary.branch_counts[1] == 500);
  b.state.audit_structure();
  // q = 1 and q = 0 with p < 1.
  auto c = run({{5, 0.5, 1.0, 0.5}, 2000, 3, true});
  CHECK(c.summary.branch_counts[3] == 0);
  c.state.audit_structure();
  auto d = run({{5, 0.5, 0.0, 0.5}, 2000, 3, true});
  CHECK(d.summary.branch_counts[2] == 0);
  d.state.audit_structure();
}

TEST_CASE("branch frequencies follow p, q, r") {
  const auto r = run({kExp1, 200000, 9});
  const auto& b = r.summary.branch_counts;
  const double n = 200000.0;
  CHECK((b[0] + b[1]) / n == doctest::Approx(0.4).epsilon(0.02));
  CHECK(b[0] / static_cast<double>(b[0] + b[1]) == doctest::Approx(0.4).epsilon(0.02));
  CHECK(b[2] / static_cast<double>(b[2] + b[3]) == doctest::Approx(0.4).epsilon(0.02));
}

TEST_CASE("step kind names") {
  CHECK(std::string(step_kind_name(StepKind::kNewPeripheral)) == "new_peripheral");
  CHECK(std::string(step_kind_name(StepKind::kUniformStar)) == "uniform_star");
}
