#include <doctest.h>

#include <map>
#include <sstream>

#include "../test_dirs.hpp"
#include "nstars/cli.hpp"
#include "nstars/io.hpp"

using namespace nstars;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "nstars");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> exp1_flags() {
  return {"--N", "4", "--p", "0.4", "--q", "0.4", "--r", "0.4"};
}

std::vector<std::string> with(std::vector<std::string> head,
                              const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::istringstream in(testing::slurp(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("derive") {
  const auto r = invoke(with({"derive"}, exp1_flags()));
  CHECK(r.code == 0);
  CHECK(r.out.find("beta1=0.9\n") != std::string::npos);
  CHECK(r.out.find("m_finite=true\n") != std::string::npos);
  const auto r6 = invoke({"derive", "--N", "5", "--p", "0.9", "--q", "0.5", "--r", "0.9"});
  CHECK(r6.code == 0);
  CHECK(r6.out.find("m_finite=false\n") != std::string::npos);
  CHECK(invoke({"derive", "--N", "2", "--p", "0.4", "--q", "0.4", "--r", "0.4"}).code == 2);
  CHECK(invoke({"derive", "--N", "4", "--p", "0.4", "--q", "0.4", "--r", "0.4", "--N", "5"}).code == 2);
  CHECK(invoke({"derive", "--N", "4"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--version"}).out == "0.1.0\n");
}

TEST_CASE("analytic") {
  const auto dir = testing::scratch_dir("cli_analytic");
  const auto r = invoke(with({"analytic", "--w1max", "8", "--w2max", "16", "--out", dir.string()},
                             exp1_flags()));
  REQUIRE(r.code == 0);
  const auto joint = read_csv(dir / "joint.csv");
  CHECK(joint[0] == std::vector<std::string>{"w1", "w2", "x"});
  CHECK(joint[1] == std::vector<std::string>{"0", "0", "0"});
  CHECK(joint.size() == 1 + 9 * 17);
  const auto moments = read_csv(dir / "moments.csv");
  CHECK(moments[0] == std::vector<std::string>{"w1", "marginal", "E", "M"});
  CHECK(std::stod(moments[1][1]) == doctest::Approx(0.2105263).epsilon(1e-7));
  CHECK(read_csv(dir / "tails.csv")[0] == std::vector<std::string>{"index", "A", "C"});
  const auto manifest = io::read_key_values(dir / "manifest.txt");
  std::map<std::string, std::string> m(manifest.begin(), manifest.end());
  CHECK(std::stod(m.at("taylor_C")) == doctest::Approx(1.3207527723959973));

  const auto dir6 = testing::scratch_dir("cli_analytic6");
  const auto r6 = invoke({"analytic", "--N", "5", "--p", "0.9", "--q", "0.5", "--r", "0.9",
                          "--w1max", "6", "--w2max", "6", "--out", dir6.string()});
  REQUIRE(r6.code == 0);
  const auto m6 = read_csv(dir6 / "moments.csv");
  for (std::size_t i = 1; i < m6.size(); ++i) CHECK(m6[i][3] == "div");
  CHECK(invoke(with({"analytic", "--out", dir.string()},
                    {"--N", "4", "--p", "1", "--q", "0.4", "--r", "0.4"})).code == 2);
}

TEST_CASE("simulate") {
  const auto zero = testing::scratch_dir("cli_sim0");
  REQUIRE(invoke(with({"simulate", "--steps", "0", "--seed", "1", "--out", zero.string()},
                      exp1_flags())).code == 0);
  const auto joint0 = read_csv(zero / "empirical_joint.csv");
  CHECK(joint0.size() == 3);  // header plus two rows

  const auto a = testing::scratch_dir("cli_sim_a");
  const auto b = testing::scratch_dir("cli_sim_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(invoke(with({"simulate", "--steps", "1000000", "--seed", "5", "--out", dir.string()},
                        exp1_flags())).code == 0);
  }
  for (const char* name : {"empirical_joint.csv", "moments_w1.csv", "moments_w2.csv", "manifest.txt"}) {
    CHECK(testing::slurp(a / name) == testing::slurp(b / name));
  }
  std::uint64_t sum_w1 = 0;
  const auto joint = read_csv(a / "empirical_joint.csv");
  for (std::size_t i = 1; i < joint.size(); ++i) {
    sum_w1 += std::stoull(joint[i][0]) * std::stoull(joint[i][2]);
  }
  CHECK(sum_w1 == 1000001);

  const auto batch = testing::scratch_dir("cli_sim_batch");
  const auto r = invoke(with({"simulate", "--steps", "2000", "--seed", "10", "--seeds", "3",
                              "--jobs", "2", "--out", batch.string()},
                             exp1_flags()));
  REQUIRE(r.code == 0);
  for (int s = 10; s < 13; ++s) {
    CHECK(std::filesystem::exists(batch / ("seed_" + std::to_string(s)) / "manifest.txt"));
  }
  const auto single = testing::scratch_dir("cli_sim_single");
  REQUIRE(invoke(with({"simulate", "--steps", "2000", "--seed", "11", "--out", single.string()},
                      exp1_flags())).code == 0);
  CHECK(testing::slurp(single / "empirical_joint.csv") ==
        testing::slurp(batch / "seed_11" / "empirical_joint.csv"));
  CHECK(invoke(with({"simulate", "--steps", "10", "--out", single.string()}, exp1_flags())).code == 2);
}

TEST_CASE("fit") {
  const auto dir = testing::scratch_dir("cli_fit");
  std::vector<stats::EmpiricalMomentRow> rows;
  for (int i = 1; i <= 5; ++i) rows.push_back({static_cast<std::uint64_t>(i), 100, 0.1, 1.0 * i, 10.0 * i * i});
  io::write_moment_rows(dir / "m.csv", stats::Axis::kFixW1, rows);
  const auto r = invoke({"fit", "--moments", (dir / "m.csv").string(), "--min-count", "30"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("slope=2\n") != std::string::npos);
  CHECK(r.out.find("intercept=1\n") != std::string::npos);
  CHECK(r.out.find("theoretical_C") == std::string::npos);
  CHECK(invoke({"fit", "--moments", (dir / "m.csv").string(), "--min-count", "1000"}).code == 3);
  CHECK(invoke({"fit", "--moments", (dir / "missing.csv").string()}).code == 2);

  const auto r6 = invoke({"fit", "--moments", (dir / "m.csv").string(), "--N", "5", "--p", "0.9",
                          "--q", "0.5", "--r", "0.9"});
  REQUIRE(r6.code == 0);
  CHECK(r6.out.find("theoretical_C=div\n") != std::string::npos);
}

TEST_CASE("compare") {
  const auto dir = testing::scratch_dir("cli_compare");
  const auto r = invoke(with({"compare", "--steps", "1000000", "--seed", "3", "--min-count", "100",
                              "--out", dir.string()},
                             exp1_flags()));
  REQUIRE(r.code == 0);
  const auto rows = read_csv(dir / "compare.csv");
  CHECK(rows[0] == std::vector<std::string>{"w1", "analytic_marginal", "empirical_marginal",
                                            "rel_err", "analytic_E", "empirical_E", "rel_err_E",
                                            "analytic_M", "empirical_M", "rel_err_M"});
  CHECK(rows[1][0] == "0");
  CHECK(std::stod(rows[1][3]) <= 0.02);

  const auto dir6 = testing::scratch_dir("cli_compare6");
  const auto r6 = invoke({"compare", "--N", "5", "--p", "0.9", "--q", "0.5", "--r", "0.9",
                          "--steps", "20000", "--seed", "3", "--min-count", "10", "--out",
                          dir6.string()});
  REQUIRE(r6.code == 0);
  const auto rows6 = read_csv(dir6 / "compare.csv");
  for (std::size_t i = 1; i < rows6.size(); ++i) {
    REQUIRE(rows6[i].size() == 10);
    CHECK(rows6[i][7] == "div");
    CHECK(rows6[i][9].empty());
  }
  CHECK(invoke(with({"compare", "--steps", "10", "--seed", "1", "--min-count", "100000",
                     "--out", dir6.string()}, exp1_flags())).code == 3);
}

TEST_CASE("config file") {
  const auto dir = testing::scratch_dir("cli_config");
  {
    io::TextFile f(dir / "exp.cfg");
    f.key_value("N", "5");
    f.key_value("p", "0.9");
    f.key_value("q", "0.5");
    f.key_value("r", "0.9");
    f.close();
  }
  const auto r = invoke({"derive", "--config", (dir / "exp.cfg").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("m_finite=false\n") != std::string::npos);
  const auto over = invoke({"derive", "--config", (dir / "exp.cfg").string(), "--N", "4", "--p",
                            "0.4", "--q", "0.4", "--r", "0.4"});
  REQUIRE(over.code == 0);
  CHECK(over.out.find("beta1=0.9\n") != std::string::npos);
}
