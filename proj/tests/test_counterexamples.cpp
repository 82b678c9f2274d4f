#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orlicz/counterexamples.hpp"

using namespace orlicz;

TEST_CASE("prop34 witnesses for exp(sqrt t) against gamma = t^0.6") {
  auto phi = DefiningFunction::exp_pow(0.5);
  auto gamma = GammaFunction::power(1.0, 0.6);
  auto rep = prop34_build(phi, gamma, 10);
  REQUIRE(rep.levels.size() == 10);
  // the level-10 witness sits near 4.2e6 (ratio exponent ~ t^0.1 / 2)
  CHECK(rep.levels[9].t_n > 3e6);
  CHECK(rep.levels[9].t_n < 6e6);
  for (const auto& row : rep.levels) {
    // product term at least 1/n, abscissas increasing
    CHECK(row.product_term_log >= -std::log(double(row.n)) - 1e-9);
  }
  for (size_t i = 0; i + 1 < rep.levels.size(); ++i)
    CHECK(rep.levels[i].t_n <= rep.levels[i + 1].t_n);
  CHECK(!rep.modular_product.finite);
}

TEST_CASE("prop34 modulars at N = 10^4") {
  auto rep = prop34_build(DefiningFunction::exp_pow(0.5), GammaFunction::power(1.0, 0.6), 10000);
  double h2 = 0, h1 = 0;
  for (int n = 1; n <= 10000; ++n) {
    h2 += 1.0 / (double(n) * n);
    h1 += 1.0 / n;
  }
  const double pi2_6 = 1.6449340668482264;
  double jf = rep.modular_f.value.value();
  CHECK(jf >= h2 - 1e-9);
  CHECK(jf <= pi2_6);
  CHECK(pi2_6 - jf <= 1e-4);  // tail bound 1/N
  CHECK(rep.modular_f.verdict.bound <= 1e-4);
  // g shares the exact same value
  CHECK(rep.modular_g.value.log_value == rep.modular_f.value.log_value);
  // product diverges with the harmonic lower bound
  CHECK(rep.modular_product.verdict.kind == SeriesVerdict::Kind::DivergentWithLowerBound);
  CHECK(rep.modular_product.verdict.bound >= 9.78);
  CHECK(rep.modular_product.value.log_value >= std::log(h1) - 1e-9);
}

TEST_CASE("prop34 lower bound grows with the truncation") {
  auto phi = DefiningFunction::exp_pow(0.5);
  auto gamma = GammaFunction::power(1.0, 0.6);
  double b20 = prop34_build(phi, gamma, 20).modular_product.verdict.bound;
  double b40 = prop34_build(phi, gamma, 40).modular_product.verdict.bound;
  CHECK(b40 > b20);
}

TEST_CASE("prop34 rejects admissible pairs") {
  CHECK_THROWS_AS(
      prop34_build(DefiningFunction::exp_pow(0.5), GammaFunction::power(1.0, 0.5), 10),
      std::invalid_argument);
}

TEST_CASE("thm43 staircase refutation at K = 100") {
  auto stair = build_staircase_phi(1.5, 500);
  auto rep = thm43_refute(stair, 100);
  double h1 = 0, h2 = 0;
  for (int k = 1; k <= 100; ++k) {
    h1 += 1.0 / k;
    h2 += 1.0 / (double(k) * k);
  }
  CHECK(rep.modular_product.verdict.bound == doctest::Approx(h1).epsilon(1e-12));
  CHECK(rep.modular_product.verdict.bound >= 5.18);
  CHECK(rep.modular_product.value.log_value >= std::log(h1) - 1e-9);
  CHECK(rep.modular_f.value.value() == doctest::Approx(h2).epsilon(1e-8));
  CHECK(rep.modular_g.finite);
  // per-level terms are at least 1/k
  for (const auto& row : rep.levels)
    CHECK(row.product_term_log >= -std::log(double(row.n)) - 1e-9);
}

TEST_CASE("thm43 degenerate and exhaustion cases") {
  auto stair = build_staircase_phi(1.5, 500);
  auto one = thm43_refute(stair, 1);
  CHECK(one.modular_product.verdict.bound == doctest::Approx(1.0));
  auto tiny = build_staircase_phi(1.5, 4);
  CHECK_THROWS_AS(thm43_refute(tiny, 100), std::runtime_error);
}

TEST_CASE("thm42 tower inclusion check") {
  auto rep = thm42_inclusion_check(2, {4, 5, 6});
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    CHECK(row.inclusion_holds);
    CHECK(row.exponent > 0.45 * row.n);
    CHECK(row.exponent <= 0.5 * row.n + 1e-12);
  }
  CHECK(rep.n0 == 4);
  // the inequality genuinely fails at the bottom of the tower
  auto low = thm42_inclusion_check(2, {1, 4});
  CHECK(!low.rows[0].inclusion_holds);
  CHECK(low.rows[1].inclusion_holds);
  CHECK(low.n0 == 4);
  CHECK_THROWS_AS(thm42_inclusion_check(1, {4}), std::invalid_argument);
  CHECK_THROWS_AS(thm42_inclusion_check(2, {9}), std::invalid_argument);
}

TEST_CASE("thm32 envelope closed form and candidate checks") {
  auto phi = DefiningFunction::exp_pow(0.5);
  auto env = thm32_envelope(phi, 0.1);
  double t = 1e-6;
  double le = 1.0 - std::log(t);  // ln(e/t)
  double lw = thm32_log_w(t, 0.1);
  CHECK(env.eval_log(t) == doctest::Approx(le * le - lw * lw).epsilon(1e-9));

  auto one = StepFunction::measure_theoretic({{LogScalar::one(), 0.0}});
  CHECK(envelope_check(one, env).compliant);

  double e_half = env.eval_log(0.5);
  CHECK(e_half > 0);
  auto bad = StepFunction::measure_theoretic({{LogScalar::from_value(0.5), 2 * e_half}});
  auto chk = envelope_check(bad, env);
  CHECK(!chk.compliant);
  CHECK(chk.violating_arc == 0);
  CHECK(chk.log_g == doctest::Approx(2 * e_half));
}
