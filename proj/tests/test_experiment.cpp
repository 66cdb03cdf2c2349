#include <doctest.h>

#include <cmath>

#include "rootmax/experiment.hpp"

using namespace rootmax;

TEST_CASE("config serialization round-trips") {
  ExperimentConfig c;
  c.command = "ldp";
  c.seed = 77;
  c.format = "json";
  c.params = {{"n", "8"}, {"y", "0.6"}, {"samples", "500"}};
  ExperimentConfig back = ExperimentConfig::deserialize(c.serialize());
  CHECK(back.command == c.command);
  CHECK(back.seed == c.seed);
  CHECK(back.format == c.format);
  CHECK(back.params == c.params);
}

TEST_CASE("unknown keys are rejected") {
  ExperimentConfig c;
  c.command = "ldp";
  c.params = {{"n", "8"}, {"y", "0.6"}, {"samples", "500"},
              {"bogus", "1"}};
  CHECK_THROWS_AS(run(c), std::invalid_argument);

  CHECK_THROWS_AS(ExperimentConfig::deserialize("command=ldp\nwhat=1\n"),
                  std::invalid_argument);

  ExperimentConfig missing;
  missing.command = "ldp";
  CHECK_THROWS_AS(run(missing), std::invalid_argument);

  ExperimentConfig unknown;
  unknown.command = "no-such-thing";
  CHECK_THROWS_AS(run(unknown), std::invalid_argument);
}

TEST_CASE("complex parsing") {
  CHECK(parse_complex("1.5") == cplx(1.5, 0.0));
  CHECK(parse_complex("1.5i") == cplx(0.0, 1.5));
  CHECK(parse_complex("1.5+0.5i") == cplx(1.5, 0.5));
  CHECK(parse_complex("-1.5-0.5i") == cplx(-1.5, -0.5));
  CHECK(parse_complex("1.42857+0i") == cplx(1.42857, 0.0));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("2e-3+1e-2i") == cplx(0.002, 0.01));
  CHECK_THROWS_AS(parse_complex("xyz"), std::invalid_argument);
}

TEST_CASE("grid parsing stays on the integer lattice") {
  auto g = parse_grid("1.05:3:0.05");
  REQUIRE(g.size() == 40);
  CHECK(g.front() == doctest::Approx(1.05));
  CHECK(g.back() == doctest::Approx(3.0).epsilon(1e-12));
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(g[i] - g[i - 1] == doctest::Approx(0.05).epsilon(1e-9));
  }
  auto single = parse_grid("2.5");
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 2.5);
}

TEST_CASE("identical configs produce identical bytes") {
  ExperimentConfig c;
  c.command = "ldp";
  c.seed = 7;
  c.params = {{"n", "4"}, {"y", "0.6"}, {"samples", "2000"},
              {"sampler", "dpp"}};
  std::string a = render(run(c), "csv");
  std::string b = render(run(c), "csv");
  CHECK(a == b);
  std::string ja = render(run(c), "json");
  std::string jb = render(run(c), "json");
  CHECK(ja == jb);
}

TEST_CASE("csv schema for cdf-fluctuations") {
  ExperimentConfig c;
  c.command = "cdf-fluctuations";
  c.seed = 3;
  c.params = {{"n", "8"}, {"samples", "200"}, {"grid", "1.1:1.5:0.2"}};
  std::string text = render_csv(run(c));
  CHECK(text.find("# version=") != std::string::npos);
  CHECK(text.find("# command=cdf-fluctuations") != std::string::npos);
  CHECK(text.find("# seed=3") != std::string::npos);
  CHECK(text.find("y,empirical,limit,abs_diff\n") != std::string::npos);
}

TEST_CASE("the config echo reproduces the run") {
  ExperimentConfig c;
  c.command = "eval-limit-cdf";
  c.seed = 11;
  c.params = {{"grid", "1.2:2:0.4"}};
  ResultTable t = run(c);
  // Rebuild the config from the echo and re-run.
  ExperimentConfig back;
  for (const auto& [k, v] : t.meta) {
    if (k == "command") back.command = v;
    if (k == "seed") back.seed = std::stoull(v);
    if (k == "format") back.format = v;
    if (k.starts_with("param.")) back.params[k.substr(6)] = v;
  }
  CHECK(render_csv(run(back)) == render_csv(t));
}

TEST_CASE("doubles render with 17 significant digits and round-trip") {
  std::string s = format_double(0.1);
  double back = std::stod(s);
  CHECK(back == 0.1);
  CHECK(format_double(1.0) == "1");
  std::string pi = format_double(3.141592653589793);
  CHECK(std::stod(pi) == 3.141592653589793);
}

TEST_CASE("json output carries meta, columns and rows") {
  ExperimentConfig c;
  c.command = "quadrature-J";
  c.format = "json";
  c.params = {{"k", "2"}, {"y", "0.5"}};
  std::string text = render_json(run(c));
  CHECK(text.find("\"meta\"") != std::string::npos);
  CHECK(text.find("\"columns\"") != std::string::npos);
  CHECK(text.find("\"rows\"") != std::string::npos);
  CHECK(text.find("\"command\": \"quadrature-J\"") != std::string::npos);
}

TEST_CASE("moments command emits formula, mc, std_error, z_score") {
  ExperimentConfig c;
  c.command = "moments";
  c.seed = 5;
  c.params = {{"n", "2"}, {"u", "1.42857+0i"}, {"samples", "2000"}};
  ResultTable t = run(c);
  REQUIRE(t.columns ==
          std::vector<std::string>{"formula", "mc", "std_error", "z_score"});
  REQUIRE(t.rows.size() == 1);
  double z = std::abs(std::get<double>(t.rows[0][3]));
  CHECK(z <= 5.0);  // sanity: the two estimates are compatible
}
