#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "squidmodes/circuit.hpp"
#include "squidmodes/errors.hpp"
#include "squidmodes/roots.hpp"

using namespace squidmodes;
using namespace squidmodes::testing;

TEST(Circuit, DerivedConstantsFromDefinitions) {
  const CircuitParams p = long_resonator();
  const DriveTone tone = strong_tone(p);
  const DerivedConstants c = derive_constants(p, std::span<const DriveTone>(&tone, 1));
  const double L_T = 50.0 / 1.2e8;
  const double C_T = 1.0 / (50.0 * 1.2e8);
  const double phase = 2.067833848e-15 / (2.0 * M_PI);
  const double L_J = phase * phase / (1.054571817e-34 * 2.0 * M_PI * 715e9);
  EXPECT_NEAR(c.L_T / L_T, 1.0, 1e-14);
  EXPECT_NEAR(c.C_T / C_T, 1.0, 1e-14);
  EXPECT_NEAR(c.L_J / L_J, 1.0, 1e-12);
  EXPECT_NEAR(c.gamma, 2.0 * L_T * 0.012 / L_J, 1e-10);
  EXPECT_NEAR(c.gamma, 43.7, 0.05);
  ASSERT_EQ(c.gamma_d.size(), 1u);
  EXPECT_NEAR(c.gamma_d[0] / c.gamma, 0.2, 1e-14);
  EXPECT_NEAR(std::sqrt(c.L_T / c.C_T), 50.0, 1e-10);
}

TEST(Circuit, GammaDIsOddInModulation) {
  const CircuitParams p = long_resonator();
  const double up = gamma_d_of(p, {1e9, 0.3 * p.E_J0});
  const double down = gamma_d_of(p, {1e9, -0.3 * p.E_J0});
  EXPECT_EQ(up, -down);
  EXPECT_NEAR(drive_kd(p, {ghz_to_rad(2.0), 0.0}), ghz_to_rad(2.0) * 0.012 / 1.2e8, 1e-15);
}

TEST(Circuit, ValidationReportsEveryField) {
  CircuitParams bad{-1.0, 0.0, -5.0, 0.0, -1e-15};
  const DriveTone tone{1e9, 1.0};
  const auto issues = validate(bad, std::span<const DriveTone>(&tone, 1));
  std::set<std::string> fields;
  for (const auto& i : issues)
    if (i.severity == Issue::Severity::kError) fields.insert(i.field);
  for (const char* f : {"d", "v", "Z", "E_J0", "C"}) EXPECT_TRUE(fields.count(f)) << f;
  EXPECT_THROW(require_valid(bad), ParameterError);
}

TEST(Circuit, ModulationMustStayBelowStaticEnergy) {
  const CircuitParams p = long_resonator();
  const DriveTone too_big{1e9, 1.0 * p.E_J0};
  EXPECT_TRUE(has_errors(validate(p, std::span<const DriveTone>(&too_big, 1))));
  try {
    require_valid(p, std::span<const DriveTone>(&too_big, 1));
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("exceeds"), std::string::npos);
  }
  const DriveTone ok{1e9, -0.99 * p.E_J0};
  EXPECT_FALSE(has_errors(validate(p, std::span<const DriveTone>(&ok, 1))));
}

TEST(Circuit, LargeCapacitanceWarns) {
  CircuitParams p = long_resonator();
  EXPECT_TRUE(validate(p).empty());
  p.C = 1e-15;
  EXPECT_TRUE(validate(p).empty());
  p.C = 1e-11;
  const auto issues = validate(p);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues.front().severity, Issue::Severity::kWarning);
  EXPECT_FALSE(has_errors(issues));
}

TEST(Roots, BisectSecantFindsKnownRoots) {
  EXPECT_NEAR(bisect_secant([](double x) { return std::cos(x) - x; }, 0.0, 1.0, 1e-14), 0.7390851332151607, 1e-13);
  EXPECT_NEAR(bisect_secant([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14), std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(bisect_secant([](double x) { return std::pow(x - 1.0, 3); }, 0.0, 3.0, 1e-12), 1.0, 1e-4);
}

TEST(Roots, NoSignChangeIsABracketFailure) {
  try {
    bisect_secant([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverErrorKind::kBracketFailure);
  }
}

TEST(Roots, NearestRootPrefersTheSeedSide) {
  auto f = [](double x) { return std::sin(x); };
  const auto r = nearest_root(f, 3.0, 0.2, 0.5, 20.0, 1e-13);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, M_PI, 1e-12);
  const auto r2 = nearest_root(f, 6.0, 0.2, 0.5, 20.0, 1e-13);
  EXPECT_NEAR(*r2, 2.0 * M_PI, 1e-12);
  EXPECT_FALSE(nearest_root([](double) { return 1.0; }, 1.0, 0.2, 0.0, 2.0, 1e-12).has_value());
}
