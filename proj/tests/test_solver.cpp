#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gaitfd/reference_tables.hpp"
#include "gaitfd/solver.hpp"

using namespace gaitfd;

namespace {

constexpr double pi = std::numbers::pi;

SmoothFunction<double> sine() {
  return {[](double t) { return std::sin(pi * t); }, [](double t) { return pi * std::cos(pi * t); },
          [](double t) { return -pi * pi * std::sin(pi * t); }};
}

GaitProblem<double> sine_problem(double eps, bool damped = false) {
  return manufacture<double>(
      sine(), eps, [damped](double t) { return damped ? 1.0 + t : 0.0; },
      [](double) { return 2.0; }, 1.0);
}

GaitProblem<double> zero_problem(double eps) {
  return make_problem<double>(
      eps, [](double) { return 0.0; }, [](double) { return -1.0; }, 0.0, 0.0, 0.0, 1.0);
}

double value_near(const SolutionProfile<double>& prof, double t) {
  return prof.samples[nearest_sample(prof, t)].z;
}

GaitProblem<double> table_preset(Example e, double eps) {
  return preset<double>({e, Variant::TableConsistent}, eps);
}

SolutionProfile<double> default_solve(Example e, double eps) {
  const auto p = table_preset(e, eps);
  return solve(p, build_decomposition(p, preset_default_split(e)));
}

}  // namespace

TEST_CASE("example 2 matches the published value at 0.2844") {
  const auto prof = default_solve(Example::Two, 0.001);
  const double z = value_near(prof, 0.2844);
  CHECK(std::abs(z - 0.0345) / 0.0345 <= 0.05);
}

TEST_CASE("example 1 boundary values are exact") {
  const auto prof = default_solve(Example::One, 0.001);
  CHECK(prof.samples.front().t == 0.0);
  CHECK(prof.samples.front().z == 4.0);
  CHECK(prof.samples.back().t == 1.0);
  CHECK(prof.samples.back().z == 2.0);
}

TEST_CASE("zero data gives the zero solution") {
  const auto p = zero_problem(0.05);
  for (const auto& s : solve(p, build_decomposition(p, 0.1, 10, 40)).samples) CHECK(s.z == 0.0);
  for (const auto& s : solve_monolithic(p, 50).samples) CHECK(s.z == 0.0);
}

TEST_CASE("monolithic error drops fourfold when the grid is halved") {
  const auto p = sine_problem(0.5);
  const double e64 = max_error(solve_monolithic(p, 64), sine().value);
  const double e128 = max_error(solve_monolithic(p, 128), sine().value);
  CHECK(e64 > 0.0);
  CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("reduced limit at tiny epsilon") {
  const auto p = table_preset(Example::Two, 1e-6);
  const auto prof = solve_monolithic(p, 101);
  for (std::size_t i = 1; i + 1 < prof.samples.size(); ++i) {
    const auto& s = prof.samples[i];
    const double closed = 0.01 / s.t;
    REQUIRE(std::abs(s.z - closed) <= 1e-4 * closed);
  }
}

TEST_CASE("reduced-limit property holds on the decomposed outer region") {
  const auto p = table_preset(Example::Three, 1e-6);
  const auto prof = solve(p, build_decomposition(p, 0.01, 10, 100));
  for (std::size_t i = 0; i + 1 < prof.samples.size(); ++i) {
    const auto& s = prof.samples[i];
    if (s.region != RegionKind::Outer || s.t == 0.01) continue;
    const double r = reduced_solution(p, s.t);
    CHECK(std::abs(s.z - r) <= 1e-4 * std::max(std::abs(r), 1.0));
  }
}

TEST_CASE("max_error") {
  auto prof = solve_monolithic(sine_problem(0.5), 16);
  SUBCASE("identical profile") {
    std::vector<double> z;
    for (const auto& s : prof.samples) z.push_back(s.z);
    const auto self = [&](double t) { return z[nearest_sample(prof, t)]; };
    CHECK(max_error(prof, self) == 0.0);
  }
  SUBCASE("constant one against zero") {
    for (auto& s : prof.samples) s.z = 1.0;
    CHECK(max_error(prof, [](double) { return 0.0; }) == 1.0);
  }
}

TEST_CASE("convergence studies") {
  SUBCASE("monolithic sine is second order") {
    StudyOptions<double> opt;
    opt.mode = Mode::Monolithic;
    const auto rep = convergence_study(sine_problem(0.5), sine().value, 32, 4, opt);
    REQUIRE(rep.rows.size() == 4);
    CHECK_FALSE(rep.rows[0].observed_order.has_value());
    for (std::size_t j = 1; j < 4; ++j) {
      REQUIRE(rep.rows[j].observed_order.has_value());
      CHECK(*rep.rows[j].observed_order >= 1.9);
      CHECK(*rep.rows[j].observed_order <= 2.1);
      CHECK(rep.rows[j].k == doctest::Approx(rep.rows[j - 1].k / 2));
      CHECK(*rep.rows[j].observed_order ==
            doctest::Approx(std::log2(rep.rows[j - 1].max_error / rep.rows[j].max_error)));
    }
  }
  SUBCASE("decomposed damped sine is second order") {
    const auto rep = convergence_study(sine_problem(0.5, true), sine().value, 32, 4);
    for (std::size_t j = 1; j < 4; ++j) {
      CHECK(*rep.rows[j].observed_order >= 1.9);
      CHECK(*rep.rows[j].observed_order <= 2.1);
    }
  }
  SUBCASE("zero errors leave the order absent") {
    const auto rep = convergence_study(zero_problem(0.5), [](double) { return 0.0; }, 8, 3);
    for (const auto& row : rep.rows) {
      CHECK(row.max_error == 0.0);
      CHECK_FALSE(row.observed_order.has_value());
    }
  }
  SUBCASE("self-referenced example 3 errors decrease") {
    StudyOptions<double> opt;
    opt.split = 0.01;
    const auto rep = convergence_study(table_preset(Example::Three, 0.01), {}, 50, 3, opt);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].max_error > rep.rows[1].max_error);
    CHECK(rep.rows[1].max_error > rep.rows[2].max_error);
    CHECK(rep.reference.find("finest") != std::string::npos);
  }
  SUBCASE("serial and parallel runs agree exactly") {
    StudyOptions<double> serial;
    serial.parallel = false;
    const auto a = convergence_study(sine_problem(0.3, true), sine().value, 16, 3);
    const auto b = convergence_study(sine_problem(0.3, true), sine().value, 16, 3, serial);
    for (std::size_t j = 0; j < 3; ++j) CHECK(a.rows[j].max_error == b.rows[j].max_error);
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS((void)convergence_study(sine_problem(0.5), sine().value, 32, 1), InvalidGrid);
    CHECK_THROWS_AS((void)convergence_study(sine_problem(0.5), sine().value, 1, 3), InvalidGrid);
  }
}

TEST_CASE("table comparison") {
  SUBCASE("example 1 published boundary rows are exact") {
    const auto prof = default_solve(Example::One, 0.001);
    const TablePoint rows[] = {{0.0, 4.0}, {1.0, 2.0}};
    for (const auto& c : table_compare(prof, rows)) CHECK(c.deviation == 0.0);
  }
  SUBCASE("example 2 published late row") {
    const auto prof = default_solve(Example::Two, 0.001);
    const TablePoint rows[] = {{0.9802, 0.0100}};
    const auto c = table_compare(prof, rows);
    CHECK(c[0].deviation <= 0.05);
    CHECK(c[0].matched_t == doctest::Approx(0.9802).epsilon(1e-3));
  }
  SUBCASE("example 3 published interior row at the smallest epsilon") {
    const auto prof = default_solve(Example::Three, 0.0009);
    const TablePoint rows[] = {{0.6078, 5.3420}};
    CHECK(table_compare(prof, rows)[0].deviation <= 0.05);
  }
}

TEST_CASE("profile invariants") {
  for (int e = 1; e <= 3; ++e) {
    for (double eps : kTabulatedEpsilons) {
      const auto prof = default_solve(Example(e), eps);
      const auto& p = prof.problem;
      REQUIRE(prof.plan.has_value());
      CHECK(prof.samples.front().z == p.f1);
      CHECK(prof.samples.back().z == p.f2);
      for (std::size_t i = 1; i < prof.samples.size(); ++i)
        REQUIRE(prof.samples[i].t > prof.samples[i - 1].t);
      const std::size_t n_in = prof.plan->inner.intervals();
      CHECK(prof.samples.size() == n_in + prof.plan->outer.intervals() + 1);
      CHECK(prof.samples[n_in].t == prof.plan->split);
      CHECK(prof.samples[n_in].region == RegionKind::Outer);
      CHECK(prof.samples[n_in - 1].region == RegionKind::Inner);
      for (const auto& s : prof.samples) REQUIRE(std::isfinite(s.z));
    }
  }
}

TEST_CASE("as-written presets still solve and carry a warning") {
  for (int e = 1; e <= 3; ++e) {
    const auto p = preset<double>({Example(e), Variant::AsWritten});
    const auto prof = solve(p, build_decomposition(p, preset_default_split(Example(e))));
    CHECK_FALSE(prof.stable());
    CHECK_FALSE(prof.warnings.empty());
    CHECK(prof.samples.back().z == p.f2);
  }
}

TEST_CASE("reduced-seed coupling pins the interface at the reduced solution") {
  const auto p = table_preset(Example::Two, 0.001);
  const auto plan = build_decomposition(p, 0.01);
  const auto prof = solve(p, plan, Coupling::ReducedSeed);
  CHECK(prof.samples[plan.inner.intervals()].z == reduced_solution(p, 0.01));
  const auto zero_v = make_problem<double>(
      0.01, [](double) { return 0.0; }, [](double t) { return t - 0.5; }, 1.0, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS((void)solve(zero_v, build_decomposition(zero_v, 0.5, 4, 4), Coupling::ReducedSeed),
                  ZeroStiffness);
}

TEST_CASE("mismatched plans are rejected") {
  const auto p = table_preset(Example::One, 0.001);
  const auto plan = build_decomposition(p.with_epsilon(0.01), 0.02);
  CHECK_THROWS_AS((void)solve(p, plan), InvalidSplit);
  CHECK_THROWS_AS((void)solve_monolithic(p, UniformGrid<double>(0.0, 2.0, 10)), InvalidGrid);
}

TEST_CASE("zero pivots surface as solver breakdowns") {
  // v = 2/h^2 on a 10-interval grid makes the first pivot exactly zero
  const auto p = make_problem<double>(
      1e-30, [](double) { return 0.0; }, [](double) { return 2.0 * (1.0 / (0.1 * 0.1)); }, 0.0, 1.0,
      1.0, 1.0);
  try {
    (void)solve_monolithic(p, 10);
    FAIL("expected a breakdown");
  } catch (const SolverBreakdown& e) {
    CHECK(e.region() == "outer");
    CHECK(e.node() == 1);
  }
  StudyOptions<double> opt;
  opt.mode = Mode::Monolithic;
  try {
    (void)convergence_study(p, {}, 10, 2, opt);
    FAIL("expected a level failure");
  } catch (const LevelFailure& e) {
    CHECK(e.level() == 0);
  }
}

TEST_CASE("decomposed and monolithic agree for smooth problems") {
  for (double eps : {0.1, 0.5, 1.0}) {
    const auto p = sine_problem(eps, true);
    const auto mono = solve_monolithic(p, 64);
    const auto deco = solve(p, build_decomposition(p, 0.25, 16, 48));
    const double k = 1.0 / 64;
    double worst = 0.0;
    for (const auto& s : deco.samples) {
      const auto& m = mono.samples[nearest_sample(mono, s.t)];
      REQUIRE(std::abs(m.t - s.t) <= 1e-12);
      worst = std::max(worst, std::abs(m.z - s.z));
    }
    CHECK(worst <= 10 * k * k);
  }
}

TEST_CASE("example 1 interior is insensitive to epsilon") {
  std::vector<double> z;
  for (double eps : kTabulatedEpsilons) z.push_back(value_near(default_solve(Example::One, eps), 0.3432));
  for (double a : z)
    for (double b : z) CHECK(std::abs(a - b) <= 5e-3);
}

TEST_CASE("long double instantiation") {
  const auto p = preset<long double>({Example::Three, Variant::TableConsistent}, 0.01L);
  const auto prof = solve(p, build_decomposition<long double>(p, 0.01L, 10, 101));
  CHECK(prof.samples.front().z == p.f1);
  CHECK(prof.samples.back().z == p.f2);
  CHECK(std::isfinite(static_cast<double>(prof.samples[40].z)));
}
