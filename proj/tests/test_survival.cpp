#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>
#include <numbers>
#include <random>

#include "epdyn/survival.hpp"

using namespace epdyn;

namespace {

double max_diff(const SurvivalSeries& a, const SurvivalSeries& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.amplitude[i] - b.amplitude[i]));
  return m;
}

const double vb01 = ep_locations_m2(0.1).ep2b.V_bar;
const double vb075 = ep_locations_m2(0.75).ep2b.V_bar;

}  // namespace

TEST_CASE("method tags") {
  for (auto m : {Method::ContourExact, Method::FiniteChainOracle, Method::Zeno, Method::Ep2aPole, Method::Ep2aNearThreshold,
                 Method::Ep2aLongTime, Method::Ep2bPole, Method::Ep2bLongTime})
    CHECK(method_from_string(to_string(m)) == m);
  CHECK(is_exact(Method::ContourExact));
  CHECK_FALSE(is_exact(Method::Zeno));
  CHECK_THROWS_AS(method_from_string("nope"), Error);
}

TEST_CASE("A(0) = 1 and unitarity of the contour amplitude") {
  const auto grid = linear_grid(0.0, 60.0, 121);
  const double eb = ep_location(0.5).eps_bar;
  for (ModelOneParams p : {ModelOneParams{0.5, -1.7321}, ModelOneParams{0.5, eb}, ModelOneParams{0.6, 1.0},
                           ModelOneParams{0.6, 1.7}, ModelOneParams{0.9, -0.87}, ModelOneParams{0.1, -1.989974}}) {
    const auto s = amplitude_contour_m1(p, grid);
    CHECK(std::fabs(s.probability[0] - 1.0) < 1e-10);
    CHECK(s.max_probability() <= 1.0 + 1e-8);
    CHECK(s.failed_points() == 0);
  }
  for (ModelTwoParams p : {ModelTwoParams{0.1, 0.00501260}, ModelTwoParams{0.1, vb01}, ModelTwoParams{0.75, 0.3385622},
                           ModelTwoParams{0.75, vb075}, ModelTwoParams{0.5, 2.5}}) {
    const auto s = amplitude_contour_m2(p, grid);
    CHECK(std::fabs(s.probability[0] - 1.0) < 1e-10);
    CHECK(s.max_probability() <= 1.0 + 1e-8);
  }
}

TEST_CASE("decoupled impurity") {
  const auto grid = linear_grid(0.0, 20.0, 41);
  const auto s = amplitude_contour_m1({0.0, 1.0}, grid);
  for (size_t i = 0; i < grid.size(); ++i) CHECK(s.probability[i] == doctest::Approx(1.0).epsilon(1e-14));
  const auto c = amplitude_finite_chain(ModelOneParams{0.0, 1.0}, 100, grid);
  for (size_t i = 0; i < grid.size(); ++i) CHECK(c.probability[i] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("finite chain against a matrix exponential (closed 4-site system)") {
  const std::vector<double> ts{0.0, 0.3, 1.7, 5.0, 12.5};
  for (ModelParams p : {ModelParams{ModelOneParams{0.6, 1.0}}, ModelParams{ModelTwoParams{0.75, 0.34}}}) {
    const auto [d, e] = chain_hamiltonian(p, 4);
    const int n = int(d.size());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) H(i, i) = d[i];
    for (int i = 0; i + 1 < n; ++i) H(i, i + 1) = H(i + 1, i) = e[i];
    const auto s = amplitude_finite_chain(p, 4, ts, false);
    for (size_t k = 0; k < ts.size(); ++k) {
      Eigen::MatrixXcd U = (Complex(0, -ts[k]) * H).exp();
      CHECK(std::abs(s.amplitude[k] - U(0, 0)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(amplitude_finite_chain(ModelOneParams{0.5, 0.0}, 100, {0.0, 100.0}), Error);
}

TEST_CASE("contour against the finite-chain oracle, both models") {
  const auto grid = linear_grid(0.0, 150.0, 151);
  const int n = 2 * 150 + kLightConeMargin;
  for (ModelParams p : {ModelParams{ModelOneParams{0.5, -1.7321}}, ModelParams{ModelOneParams{0.6, 1.7}},
                        ModelParams{ModelOneParams{0.5, ep_location(0.5).eps_bar}}, ModelParams{ModelTwoParams{0.75, vb075}},
                        ModelParams{ModelTwoParams{0.1, 0.00501260}}}) {
    const auto chain = amplitude_finite_chain(p, n, grid);
    const auto contour = std::holds_alternative<ModelOneParams>(p)
                             ? amplitude_contour_m1(std::get<ModelOneParams>(p), grid)
                             : amplitude_contour_m2(std::get<ModelTwoParams>(p), grid);
    CHECK(max_diff(chain, contour) < 1e-6);
  }
}

TEST_CASE("time-domain representation agrees with the contour") {
  const auto grid = linear_grid(5.0, 200.0, 40);
  SurvivalOptions td;
  td.force_time_domain = true;
  for (ModelOneParams p : {ModelOneParams{0.5, -1.7321}, ModelOneParams{0.6, 1.0}, ModelOneParams{0.5, ep_location(0.5).eps_bar}}) {
    const auto a = amplitude_contour_m1(p, grid), b = amplitude_contour_m1(p, grid, td);
    CHECK(max_diff(a, b) < 1e-9);
    CHECK((b.flags[3] & kFlagTimeDomain) != 0);
  }
  for (ModelTwoParams p : {ModelTwoParams{0.75, vb075}, ModelTwoParams{0.5, 2.5}}) {
    const auto a = amplitude_contour_m2(p, grid), b = amplitude_contour_m2(p, grid, td);
    CHECK(max_diff(a, b) < 1e-9);
  }
}

TEST_CASE("integrand factor: pole sum equals the rational form") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.2, 0.95), a(0, 2 * std::numbers::pi);
  for (int k = 0; k < 100; ++k) {
    const Complex l = std::polar(u(rng), a(rng));
    const ModelOneParams p1{0.6, 1.0};
    CHECK(std::abs(pole_sum_factor_m1(p1, l) - integrand_factor_m1(p1, l)) < 1e-10);
    const ModelTwoParams p2{0.75, 0.34};
    CHECK(std::abs(pole_sum_factor_m2(p2, l) - integrand_factor_m2(p2, l)) < 1e-10);
  }
  CHECK_THROWS_AS(pole_sum_factor_m1({0.5, ep_location(0.5).eps_bar}, Complex(0.3, 0.1)), Error);
}

TEST_CASE("Zeno law") {
  CHECK(zeno(ModelOneParams{0.9, -0.87}, 0.0) == 1.0);
  CHECK(zeno(ModelOneParams{0.9, -0.87}, 0.5) == doctest::Approx(0.7975));
  CHECK(zeno(ModelTwoParams{0.1, 0.00501260}, 10.0) == doctest::Approx(1.0 - 0.00501260 * 0.00501260 * 100.0));
  const auto ex = amplitude_contour_m1({0.9, -0.87}, {0.5});
  CHECK(std::fabs(ex.probability[0] - 0.7975) < 0.03);

  // (1 - P)/t^2 -> g^2 (model I) or V^2 (model II) at t = 0.01 T_Z
  for (ModelOneParams p : {ModelOneParams{0.9, -0.87}, ModelOneParams{0.5, ep_location(0.5).eps_bar}, ModelOneParams{0.6, 1.7}}) {
    const double t = 0.01 * timescales(p).t_zeno;
    const double P = amplitude_contour_m1(p, {t}).probability[0];
    CHECK((1 - P) / (t * t) == doctest::Approx(p.g * p.g).epsilon(0.01));
  }
  for (ModelTwoParams p : {ModelTwoParams{0.75, vb075}, ModelTwoParams{0.5, 2.5}, ModelTwoParams{0.3, 0.8}}) {
    const double t = 0.01 * timescales(p).t_zeno;
    const double P = amplitude_contour_m2(p, {t}).probability[0];
    CHECK((1 - P) / (t * t) == doctest::Approx(p.V * p.V).epsilon(0.01));
  }
}

TEST_CASE("EP2A pole approximation is non-unitary") {
  for (int k = 1; k <= 99; ++k) {
    const double g = k / 100.0, lb = ep_location(g).lambda_bar;
    const double p0 = std::norm(ep2a_pole(g, 0.0));
    CHECK(p0 > 1.0);
    CHECK(p0 == doctest::Approx(std::pow((1 + lb * lb) / 2, 2)));
  }
  const double p100 = std::norm(ep2a_pole(0.1, 100.0)), p200 = std::norm(ep2a_pole(0.1, 200.0));
  CHECK(p100 > 1.0);
  CHECK(p200 > p100);
  // small-g line differs from the exact line at O(g^4)
  auto rel = [](double g) { return std::abs(ep2a_pole_small_g(g, 50.0) / ep2a_pole(g, 50.0) - 1.0); };
  CHECK(rel(0.1) < 2 * std::pow(0.1, 4));
  CHECK(rel(0.1) / rel(0.05) == doctest::Approx(16.0).epsilon(0.1));
  const auto s = approximation_series(Method::Ep2aPole, ModelOneParams{0.1, ep_location(0.1).eps_bar}, {0.0, 1.0});
  CHECK((s.flags[0] & kFlagNonUnitary) != 0);
}

TEST_CASE("EP2A near-threshold law") {
  CHECK(ep2a_near_threshold(0.1, 0.0).probability == 1.0);
  const auto ex = amplitude_contour_m1({0.1, -1.989974}, {100.0, 300.0, 1000.0});
  // measured agreement: 0.9%, 0.6%, 2.1%
  for (size_t i = 0; i < 3; ++i) {
    const double pd = ep2a_near_threshold(0.1, ex.times[i]).probability;
    CHECK(std::fabs(pd / ex.probability[i] - 1.0) < 0.025);
  }
  // probability is |A_Delta|^2 truncated at first order in t|Delta|: the dropped part is O((t|Delta|)^{3/2})
  auto dropped = [](double t) {
    const auto r = ep2a_near_threshold(0.1, t);
    return std::norm(r.amplitude) - r.probability;
  };
  CHECK(dropped(16.0) / dropped(4.0) == doctest::Approx(8.0).epsilon(0.02));
  CHECK(std::fabs(dropped(100.0)) < 10 * std::pow(100.0 * delta_ep(0.1), 1.5));
  // far from the band edge it fails
  const double p1 = amplitude_contour_m1({0.9, -0.87}, {1.0}).probability[0];
  CHECK(std::fabs(ep2a_near_threshold(0.9, 1.0).probability - p1) > 0.3);
}

TEST_CASE("EP2A long-time law") {
  CHECK(ep2a_longtime(0.5, 1000.0) / ep2a_longtime(0.5, 2000.0) == doctest::Approx(8.0).epsilon(1e-14));
  const double pref = 0.0625 / (4 * std::numbers::pi * std::pow(1 - std::sqrt(0.75), 8));
  CHECK(ep2a_longtime(0.5, 1000.0) == doctest::Approx(pref * 1e-9));
  CHECK(ep2a_longtime(0.5, 1000.0) == doctest::Approx(5e-5).epsilon(0.05));
  const auto ex = amplitude_contour_m1({0.5, -1.7321}, {1000.0});
  CHECK(std::fabs(ep2a_longtime(0.5, 1000.0) / ex.probability[0] - 1.0) < 0.25);
  // t^-3 slope of the exact series
  const auto s = amplitude_contour_m1({0.5, -1.7321}, log_grid(1e3, 1e4, 40));
  CHECK(loglog_slope(s, 1e3, 1e4) == doctest::Approx(-3.0).epsilon(0.05));
}

TEST_CASE("EP2B pole law") {
  CHECK(ep2b_pole(0.1, 0.0).probability == 1.0);
  CHECK(ep2b_pole(0.75, 3.0).amplitude.imag() == 0.0);
  for (double g : {0.1, 0.5, 0.75})
    for (double t : {0.0, 1.0, 10.0, 100.0}) {
      const double c = ep2b_pole_slope(g), G = ep_locations_m2(g).ep2b.gamma_bar;
      CHECK(ep2b_pole(g, t).probability * std::exp(G * t) == doctest::Approx((1 + c * t) * (1 + c * t)).epsilon(1e-12));
    }
  const auto a = amplitude_contour_m2({0.1, 0.00501260}, {200.0});
  CHECK(std::fabs(a.probability[0] - ep2b_pole(0.1, 200.0).probability) < 1e-3);
  const auto b = amplitude_contour_m2({0.75, 0.3385622}, {5.0});
  CHECK(std::fabs(b.probability[0] - ep2b_pole(0.75, 5.0).probability) < 1e-3);
}

TEST_CASE("EP2B long-time law") {
  const double r = std::abs(ep2b_longtime_coefficient(0.1) / ep2b_longtime_coefficient(0.2));
  CHECK(r == doctest::Approx(std::pow(2.0, -6)).epsilon(0.1));
  const auto ex = amplitude_contour_m2({0.75, vb075}, {100.0});
  const Complex lt = ep2b_longtime(0.75, 100.0);
  CHECK(std::abs(ex.amplitude[0] - lt) < 0.1 * std::abs(ex.amplitude[0]));
  CHECK_THROWS_AS(ep2b_longtime(0.75, 0.0), Error);
}

TEST_CASE("timescales") {
  CHECK(timescales(ModelOneParams{0.1, ep_location(0.1).eps_bar}).t_ep == doctest::Approx(3.95e4).epsilon(0.01));
  CHECK(timescales(ModelOneParams{0.5, ep_location(0.5).eps_bar}).t_ep == doctest::Approx(48.25).epsilon(0.01));
  CHECK(timescales(ModelOneParams{0.9, -0.87}).t_zeno == doctest::Approx(1.15).epsilon(0.01));
  const auto t2 = timescales(ModelTwoParams{0.75, vb075});
  CHECK(t2.t_zeno == doctest::Approx(1.0 / (std::sqrt(2.0) * vb075)));
  CHECK(t2.t_ep_edges.first == doctest::Approx(t2.t_ep_edges.second));
  CHECK(t2.t_ep_edges.first == doctest::Approx(0.5).epsilon(0.05));
  CHECK(t2.gamma_bar > 0.0);
}

TEST_CASE("grids and approximation plumbing") {
  const auto lg = log_grid(1.0, 100.0, 3);
  CHECK(lg[1] == doctest::Approx(10.0));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), Error);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 1), Error);
  CHECK_THROWS_AS(amplitude_contour_m1({0.5, 0.0}, {2.0, 1.0}), Error);
  CHECK_THROWS_AS(approximation_series(Method::Ep2bPole, ModelOneParams{0.5, 0.0}, {1.0}), Error);
  CHECK_THROWS_AS(approximation_series(Method::ContourExact, ModelOneParams{0.5, 0.0}, {1.0}), Error);
  const auto z = approximation_series(Method::Zeno, ModelTwoParams{0.3, 0.5}, {0.0, 1.0});
  CHECK(z.probability[1] == doctest::Approx(0.75));
}
