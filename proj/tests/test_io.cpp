#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include "cshrink/io.hpp"
#include "fixtures.hpp"

using namespace cshrink;
using fixtures::unit_square;

namespace {

std::string csv_of(const EvolutionTrace& tr) {
  std::ostringstream os;
  write_trace_csv(os, tr);
  return os.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-2.5), "-2.5");
  EXPECT_EQ(format_number(1e-20), "9.9999999999999995e-21");
  EXPECT_EQ(format_number(0.5e-3), "0.00050000000000000001");
  for (double v : {kPi, 1.0 / 3.0, 6.02214076e23, -1e-300}) EXPECT_EQ(std::strtod(format_number(v).c_str(), nullptr), v);
}

TEST(GeometryJson, RoundTrip) {
  for (const auto& s : {unit_square(0.25), RoundedSet::ball({1.5, -2}, 0.3), RoundedSet::stadium({0, 0}, {1, 2}, 0.1)}) {
    const auto back = geometry_from_json(json::parse(geometry_to_json(s).dump()));
    EXPECT_EQ(back.radius(), s.radius());
    EXPECT_EQ(back.kernel().vertices(), s.kernel().vertices());
  }
  const auto j = geometry_to_json(RoundedSet::ball({1, 2}, 3));
  EXPECT_EQ(j.dump(), R"({"kernel":[[1.0,2.0]],"radius":3.0})");
  // radius defaults to zero
  EXPECT_EQ(geometry_from_json(json::parse(R"({"kernel":[[0,0],[1,0],[0,1]]})")).radius(), 0.0);
}

TEST(GeometryJson, RejectsMalformedInput) {
  for (const char* text : {R"([1,2])", R"({"radius":1})", R"({"kernel":[]})", R"({"kernel":[[0]]})",
                           R"({"kernel":[["a",0]]})", R"({"kernel":[[0,0]],"radius":"x"})",
                           R"({"kernel":[[0,0]],"radius":-1})", R"({"kernel":[[0,0],[2,0],[1,0.2],[2,2],[0,2]]})"}) {
    try {
      geometry_from_json(json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidGeometry) << text;
    }
  }
}

TEST(TraceCsv, HeaderRowsAndEvents) {
  const auto tr = simulate(unit_square(), 4.0, 2.0, 1e-2);
  const auto ls = lines(csv_of(tr));
  ASSERT_GE(ls.size(), 4u);
  EXPECT_EQ(ls[0], "t,a,perimeter,regime,rho");
  EXPECT_EQ(ls[1], "0,1,4,Opening,0");
  EXPECT_EQ(ls[ls.size() - 2], "# T_star=" + format_number(*tr.t_star));
  EXPECT_EQ(ls.back(), "# T_dagger=" + format_number(*tr.t_dagger));
  EXPECT_EQ(ls.size(), tr.samples.size() + 3);
  for (std::size_t k = 1; k <= tr.samples.size(); ++k) {
    std::istringstream row(ls[k]);
    std::string t, a;
    std::getline(row, t, ',');
    std::getline(row, a, ',');
    EXPECT_EQ(std::strtod(t.c_str(), nullptr), tr.samples[k - 1].t);
    EXPECT_EQ(std::strtod(a.c_str(), nullptr), tr.samples[k - 1].a);
  }
}

TEST(TraceCsv, NoEventsWithoutExtinction) {
  std::ostringstream os;
  write_trace_csv(os, simulate(unit_square(), 0.0, 0.1, 1e-2), {"J=1"});
  const auto s = os.str();
  EXPECT_EQ(s.find("T_star"), std::string::npos);
  EXPECT_EQ(s.find("T_dagger"), std::string::npos);
  EXPECT_EQ(lines(s).back(), "# J=1");
}

TEST(TraceCsv, Deterministic) {
  const auto dom = fixtures::triangle();
  EXPECT_EQ(csv_of(simulate(dom, 5.0, 3.0, 1e-3)), csv_of(simulate(dom, 5.0, 3.0, 1e-3)));
}

TEST(Reports, SolutionAndThresholdJson) {
  const auto sol = solve_tilde(unit_square(), 0.5);
  const auto j = solution_to_json(sol);
  EXPECT_EQ(j.at("regime"), "Ball");
  EXPECT_NEAR(j.at("perimeter").get<double>(), 2.0 * std::sqrt(kPi * 0.5), 1e-14);
  EXPECT_NEAR(j.at("kappa").get<double>(), 1.0 / std::sqrt(0.5 / kPi), 1e-12);
  EXPECT_EQ(j.at("geometry").at("kernel").size(), 1u);

  // the full square has corners, so its curvature is unbounded
  EXPECT_TRUE(solution_to_json(solve_tilde(unit_square(), 1.0)).at("kappa").is_null());

  ThresholdReport rep;
  rep.m0 = 3.5;
  rep.lo = 3.4;
  rep.hi = 3.6;
  rep.iterations = 7;
  EXPECT_EQ(threshold_to_json(rep).dump(), R"({"M0":3.5,"T_dagger":null,"bracket":[3.4,3.6],"iterations":7})");
  rep.t_dagger = 0.25;
  EXPECT_EQ(threshold_to_json(rep).at("T_dagger"), 0.25);
}

TEST(Svg, OutlinesAndFrames) {
  std::ostringstream os;
  write_svg(os, unit_square(), {{0.0, unit_square()}, {0.5, opening(unit_square(), 0.3)}, {1.0, RoundedSet{}}});
  const auto s = os.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_NE(s.find("<title>t=0.5</title>"), std::string::npos);
  EXPECT_EQ(s.find("<title>t=1</title>"), std::string::npos);
  // the rounded opening carries four corner arcs
  const auto p = svg_path(opening(unit_square(), 0.3));
  EXPECT_EQ(std::count(p.begin(), p.end(), 'A'), 4);
  const auto ball = svg_path(RoundedSet::ball({0, 0}, 1));
  EXPECT_EQ(std::count(ball.begin(), ball.end(), 'A'), 2);
}

TEST(Validation, DefaultSuitePasses) {
  ValidationOptions opt;
  opt.threads = 2;
  const auto checks = run_validation(opt);
  EXPECT_GE(checks.size(), 10u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " worst " << c.worst << " bound " << c.bound;
}

TEST(Validation, InjectedFaultFails) {
  ValidationOptions opt;
  opt.invariants = false;
  opt.fault = 0.05;
  const auto checks = run_validation(opt);
  ASSERT_FALSE(checks.empty());
  EXPECT_FALSE(std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; }));
}

TEST(Validation, EmptySelectionIsANoOp) {
  ValidationOptions opt;
  opt.raster = false;
  opt.invariants = false;
  EXPECT_TRUE(run_validation(opt).empty());
}

TEST(Validation, ThreadCountDoesNotChangeResults) {
  ValidationOptions a, b;
  a.invariants = b.invariants = false;
  b.threads = 4;
  EXPECT_EQ(validation_to_json(run_validation(a)), validation_to_json(run_validation(b)));
}
