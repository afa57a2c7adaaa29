#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "subfrac/report.hpp"
#include "subfrac/version.hpp"

using namespace subfrac;

namespace {

RunConfig demo_config() {
  RunConfig c;
  c.command = "density";
  c.params = {{"beta", "0.5"}, {"u-max", "4"}};
  c.seed = 42;
  c.output_path = "out.csv";
  return c;
}

}  // namespace

TEST_CASE("run config validation", "[report]") {
  RunConfig c = demo_config();
  REQUIRE_NOTHROW(c.validate());
  c.format = "xml";
  REQUIRE_THROWS_AS(c.validate(), parameter_error);
  c = demo_config();
  c.command.clear();
  REQUIRE_THROWS_AS(c.validate(), parameter_error);
}

TEST_CASE("report envelope JSON round trip", "[report]") {
  ReportEnvelope e;
  e.config_echo = demo_config();
  e.results = {{"checks", {{{"name", "mass"}, {"value", 1.0}, {"pass", true}}}}};
  e.wall_time_ms = 1234;

  const std::string text = to_json_string(e);
  const ReportEnvelope back = envelope_from_json(text);
  REQUIRE(back == e);

  // The envelope pins the library version.
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.at("version").get<std::string>() == std::string(kVersion));
  REQUIRE(j.at("config").at("seed").get<std::uint64_t>() == 42);
}

TEST_CASE("CSV artifacts echo their configuration", "[report]") {
  std::ostringstream os;
  write_csv(os, demo_config(), {"u", "g"}, {{0.5, 0.25}, {1.0, 0.125}});
  const std::string text = os.str();

  std::istringstream is(text);
  std::string first;
  std::getline(is, first);
  REQUIRE(first == std::string("# subfrac ") + std::string(kVersion));
  REQUIRE(text.find("# command: density") != std::string::npos);
  REQUIRE(text.find("# seed: 42") != std::string::npos);
  REQUIRE(text.find("# param beta: 0.5") != std::string::npos);
  REQUIRE(text.find("# param u-max: 4") != std::string::npos);
  REQUIRE(text.find("u,g\n") != std::string::npos);
}

TEST_CASE("CSV round trip is exact", "[report]") {
  const std::vector<std::vector<double>> rows{{3.141592653589793, 1.0 / 3.0, 1e-300},
                                              {-0.0, 2.2250738585072014e-308, 1.7976931348623157e308}};
  std::ostringstream os;
  write_csv(os, demo_config(), {"a", "b", "c"}, rows);
  std::istringstream is(os.str());
  const CsvTable table = read_csv(is);

  REQUIRE(table.columns == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(table.rows.size() == rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) REQUIRE(table.rows[r][c] == rows[r][c]);
  REQUIRE(table.comments.front() == std::string("subfrac ") + std::string(kVersion));
}

TEST_CASE("CSV reader rejects malformed input", "[report]") {
  {
    std::istringstream is("a,b\n1.0,zzz\n");
    REQUIRE_THROWS_AS(read_csv(is), parameter_error);
  }
  {
    std::istringstream is("a,b\n1.0\n");
    REQUIRE_THROWS_AS(read_csv(is), parameter_error);
  }
  {
    std::istringstream is("# only comments\n");
    REQUIRE_THROWS_AS(read_csv(is), parameter_error);
  }
  std::ostringstream os;
  REQUIRE_THROWS_AS(write_csv(os, demo_config(), {}, {}), parameter_error);
  REQUIRE_THROWS_AS(write_csv(os, demo_config(), {"a"}, {{1.0, 2.0}}), parameter_error);
}
