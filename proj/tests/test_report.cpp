#include "hadamard/error.hpp"
#include "hadamard/radial_metric.hpp"
#include "hadamard/report.hpp"

#include <doctest.h>

using namespace hadamard;

TEST_CASE("numbers print round-trippably") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_number(kInfinity) == "inf");
  CHECK(format_number(-kInfinity) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(json_number(2.5).is_number());
  CHECK(json_number(kInfinity) == "inf");
}

TEST_CASE("CSV quoting") {
  CsvTable t;
  t.header = {"a", "b"};
  t.add({"1", "x,y"});
  t.add({"say \"hi\"", ""});
  CHECK(t.str() == "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",\n");
}

TEST_CASE("radius specifications") {
  CHECK(parse_radii("0.5:1.5:3") == std::vector<double>{0.5, 1.0, 1.5});
  CHECK(parse_radii("0.5, 1, 1.5") == std::vector<double>{0.5, 1.0, 1.5});
  const auto lg = parse_radii("1:100:3:log");
  REQUIRE(lg.size() == 3);
  CHECK(lg[1] == doctest::Approx(10.0));
  CHECK(lg.back() == 100.0);
  for (const char* bad : {"1:2", "1:2:0", "1:2:2.5", "1:2:3:cubic", "a,b", "1:2:3:lin:x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_radii(bad), LabError);
  }
}

TEST_CASE("grids hit their end points") {
  const auto g = log_grid(1e-3, 1e3, 7);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1e3);
  CHECK(g[3] == doctest::Approx(1.0));
  const auto l = lin_grid(0.0, 1.0, 5);
  CHECK(l[2] == 0.5);
  CHECK(l.back() == 1.0);
}
