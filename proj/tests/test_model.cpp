#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaitfd/model.hpp"
#include "gaitfd/reference_tables.hpp"

using namespace gaitfd;

TEST_CASE("presets carry the published boundary data") {
  SUBCASE("example 1 as written") {
    const auto p = preset<double>({Example::One, Variant::AsWritten});
    CHECK(p.f1 == 4.0);
    CHECK(p.f2 == 2.0);
    CHECK(p.gravity == 9.8);
    CHECK(p.frame == Frame::Stretched);
  }
  SUBCASE("example 3 as written has no damping") {
    const auto p = preset<double>({Example::Three, Variant::AsWritten});
    CHECK(p.f1 == 9.6);
    CHECK(p.f2 == 3.0);
    for (double T : {0.0, 0.25, 0.5, 1.0}) CHECK(p.damping(T) == 0.0);
  }
  SUBCASE("example 2 table-consistent ends at 0.01") {
    CHECK(preset<double>({Example::Two, Variant::TableConsistent}).f2 == 0.01);
    CHECK(preset<double>({Example::Two, Variant::AsWritten}).f2 == 0.1);
  }
}

TEST_CASE("every preset maps to one fully populated problem") {
  const double boundaries[3][2] = {{4.0, 2.0}, {1.0, 0.01}, {9.6, 3.0}};
  const double gravity[3] = {9.8, 10.0, 10.0};
  for (int e = 1; e <= 3; ++e) {
    for (Variant v : {Variant::AsWritten, Variant::TableConsistent}) {
      const auto p = preset<double>({Example(e), v}, 0.009);
      CHECK(p.epsilon == 0.009);
      CHECK(p.t_final == 1.0);
      CHECK(p.f1 == boundaries[e - 1][0]);
      if (!(e == 2 && v == Variant::AsWritten)) CHECK(p.f2 == boundaries[e - 1][1]);
      CHECK(p.gravity == gravity[e - 1]);
      for (double T : {0.0, 0.3, 1.0}) CHECK(p.forcing(T) == -p.gravity);
      CHECK_FALSE(preset_discrepancy({Example(e), v}).empty());
    }
  }
}

TEST_CASE("example 1 variants differ only in the stiffness exponent sign") {
  const auto written = preset<double>({Example::One, Variant::AsWritten});
  const auto fixed = preset<double>({Example::One, Variant::TableConsistent});
  CHECK(written.stiffness(0.5) == doctest::Approx(-2.0 * std::exp(-0.5)));
  CHECK(fixed.stiffness(0.5) == doctest::Approx(-2.0 * std::exp(0.5)));
  CHECK(written.damping(0.5) == fixed.damping(0.5));
}

TEST_CASE("reduced solution") {
  SUBCASE("example 2 at 0.2844") {
    const auto p = preset<double>({Example::Two, Variant::TableConsistent});
    const double z = reduced_solution(p, 0.2844);
    CHECK(z == doctest::Approx(10.0 / (1000.0 * 0.2844)).epsilon(1e-15));
    // published value 0.0345 sits about 2% lower
    CHECK(std::abs(z - 0.0345) / 0.0345 < 0.025);
  }
  SUBCASE("example 1 table-consistent tracks 4.9 e^{-T}") {
    const auto p = preset<double>({Example::One, Variant::TableConsistent});
    const double z = reduced_solution(p, 0.9704);
    CHECK(z == doctest::Approx(4.9 * std::exp(-0.9704)).epsilon(1e-14));
    CHECK(z == doctest::Approx(1.857).epsilon(1e-3));
  }
  SUBCASE("zero forcing gives zero") {
    const auto p = make_problem<double>(
        0.1, [](double) { return 0.0; }, [](double) { return 1.0; }, 0.0, 0.0, 0.0, 1.0,
        [](double) { return 0.0; });
    CHECK(reduced_solution(p, 0.37) == 0.0);
  }
  SUBCASE("zero stiffness is reported") {
    const auto p = preset<double>({Example::Two, Variant::TableConsistent});
    CHECK_THROWS_AS((void)reduced_solution(p, 0.0), ZeroStiffness);
  }
  SUBCASE("satisfies v * z = f wherever v is nonzero") {
    for (int e = 1; e <= 3; ++e) {
      const auto p = preset<double>({Example(e), Variant::TableConsistent});
      for (int i = 1; i <= 100; ++i) {
        const double t = i / 100.0;
        CHECK(p.stiffness(t) * reduced_solution(p, t) ==
              doctest::Approx(p.forcing(t)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("manufactured problems") {
  const double pi = std::numbers::pi;
  auto constant = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };

  SUBCASE("constant solution") {
    const SmoothFunction<double> c{[](double) { return 3.5; }, zero, zero};
    const auto p = manufacture<double>(c, 0.2, zero, constant, 2.0);
    CHECK(p.forcing(0.7) == 3.5);
    CHECK(p.f1 == 3.5);
    CHECK(p.f2 == 3.5);
  }
  SUBCASE("linear solution") {
    const SmoothFunction<double> lin{[](double t) { return t; }, constant, zero};
    const auto p = manufacture<double>(lin, 0.5, constant, zero, 1.5);
    for (double t : {0.0, 0.4, 1.5}) CHECK(p.forcing(t) == 0.5);
    CHECK(p.f1 == 0.0);
    CHECK(p.f2 == 1.5);
  }
  SUBCASE("sine solution") {
    const SmoothFunction<double> s{[=](double t) { return std::sin(pi * t); },
                                   [=](double t) { return pi * std::cos(pi * t); },
                                   [=](double t) { return -pi * pi * std::sin(pi * t); }};
    const auto p = manufacture<double>(s, 0.5, zero, [](double) { return 2.0; }, 1.0);
    CHECK(p.forcing(0.5) == doctest::Approx(2.0 - pi * pi).epsilon(1e-15));
  }
  SUBCASE("the supplied function solves the returned problem") {
    const SmoothFunction<double> s{[](double t) { return std::exp(-t) * std::cos(3 * t); },
                                   [](double t) {
                                     return -std::exp(-t) * (std::cos(3 * t) + 3 * std::sin(3 * t));
                                   },
                                   [](double t) {
                                     return std::exp(-t) * (-8 * std::cos(3 * t) + 6 * std::sin(3 * t));
                                   }};
    const auto p = manufacture<double>(
        s, 0.3, [](double t) { return 1 + t * t; }, [](double t) { return -2 - std::sin(t); }, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = 2.0 * i / 999.0;
      const double r =
          apply_operator(p, t, s.value(t), s.first(t), s.second(t)) - p.forcing(t);
      worst = std::max(worst, std::abs(r));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("problem validation") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(make_problem<double>(0.0, one, one, 9.8, 0, 0, 1), InvalidProblem);
  CHECK_THROWS_AS(make_problem<double>(0.1, one, one, 9.8, 0, 0, -1), InvalidProblem);
  const auto p = make_problem<double>(0.1, one, one, 9.8, 0, 0, 1);
  CHECK(p.forcing(0.3) == -9.8);
  CHECK(p.with_epsilon(0.2).epsilon == 0.2);
  CHECK_THROWS_AS((void)p.with_epsilon(-1.0), InvalidProblem);
}

TEST_CASE("reference tables are consistent with the table-consistent presets") {
  for (int e = 1; e <= 3; ++e) {
    const auto& table = reference_table(Example(e));
    const auto p = preset<double>({Example(e), Variant::TableConsistent});
    CHECK(table.rows.front().t == 0.0);
    CHECK(table.rows.back().t == 1.0);
    for (double v : table.rows.front().values) CHECK(v == p.f1);
    for (double v : table.rows.back().values) CHECK(v == p.f2);
    for (std::size_t i = 1; i < table.rows.size(); ++i) CHECK(table.rows[i].t > table.rows[i - 1].t);
    CHECK(table.column(0.001) == 2);
    CHECK(table.column(0.5) == -1);
  }
}
