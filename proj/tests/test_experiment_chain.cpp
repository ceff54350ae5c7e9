#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cvamp/experiment_chain.hpp"
#include "test_util.hpp"

using namespace cvamp;
using cvamp::testing::kR43;
using cvamp::testing::kVsq43;

namespace {

SourceModel source43() { return pure_source(4.3); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
  return xs;
}

}  // namespace

TEST_CASE("build_source") {
  const GaussianState vac = build_source({1.0, 1.0});
  CHECK(vac.cov.isApprox(Eigen::MatrixXd::Identity(4, 4)));

  const GaussianState pure = build_source(source43());
  const GaussianState oracle = two_mode_squeeze(vacuum(2), 0, 1, kR43);
  CHECK((pure.cov - oracle.cov).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(quad_variance(pure, 0, Quadrature::X) ==
        doctest::Approx(1.53153).epsilon(1e-4));
  CHECK(joint_variance_minus(pure, 0, 1, 1.0) ==
        doctest::Approx(kVsq43).epsilon(1e-12));
  CHECK(joint_variance_plus(pure, 0, 1, 1.0) ==
        doctest::Approx(kVsq43).epsilon(1e-12));

  const GaussianState mixed = build_source({kVsq43, 3.5});
  CHECK(quad_variance(mixed, 0, Quadrature::X) ==
        doctest::Approx(1.93577).epsilon(1e-4));
  CHECK(is_physical(mixed));

  CHECK_THROWS_AS(build_source({kVsq43, 1.0}), std::invalid_argument);
}

TEST_CASE("run_chain") {
  SUBCASE("identity at unit gain and no losses") {
    ChainConfig cfg = ideal_chain(source43(), 1.0);
    const GaussianState out = run_chain(cfg);
    CHECK((out.cov - build_source(source43()).cov).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("G=2 unity gain-loss") {
    const GaussianState out = run_chain(ideal_chain(source43(), 2.0));
    CHECK(quad_covariance(out, 0, Quadrature::X, 1, Quadrature::X) ==
          doctest::Approx(1.16000).epsilon(1e-4));
    CHECK(quad_variance(out, 1, Quadrature::X) ==
          doctest::Approx(std::cosh(2 * kR43) + 2 * (1 - 0.5)).epsilon(1e-12));
    CHECK(quad_variance(out, 1, Quadrature::X) ==
          doctest::Approx(2.53153).epsilon(1e-4));
  }

  SUBCASE("detector loss only") {
    ChainConfig cfg = ideal_chain(source43(), 1.0);
    cfg.detector_efficiency = 0.95;
    const GaussianState out = run_chain(cfg);
    CHECK(inseparability(out, 0, 1).inseparability ==
          doctest::Approx(2 * (0.95 * kVsq43 + 0.05)).epsilon(1e-9));
    CHECK(inseparability(out, 0, 1).inseparability ==
          doctest::Approx(0.80593).epsilon(1e-4));
  }

  CHECK_THROWS_AS(run_chain(ideal_chain(source43(), 0.5)), std::invalid_argument);
}

TEST_CASE("clone_sweep") {
  const ChainConfig base = ideal_chain(source43(), 1.0);
  const auto rows = clone_sweep(base, {1.0, 2.0, 100.0});
  REQUIRE(rows.size() == 3);

  CHECK(rows[0].inseparability == doctest::Approx(0.74309).epsilon(1e-4));
  CHECK(rows[0].e12 == doctest::Approx(0.42633).epsilon(1e-4));
  CHECK(rows[0].inseparable);
  CHECK(rows[0].epr_entangled);

  CHECK(rows[1].e12 == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(rows[2].inseparability == doctest::Approx(1.9931).epsilon(1e-3));
  CHECK(rows[2].inseparable);
  CHECK_FALSE(rows[2].epr_entangled);
}

TEST_CASE("find_crossing") {
  const ChainConfig base = ideal_chain(source43(), 1.0);

  SUBCASE("EPR crossing at G = 2 for any pure source") {
    for (double db : {3.0, 4.3, 6.0}) {
      const auto g = find_crossing(ideal_chain(pure_source(db), 1.0),
                                   CrossingMetric::Epr12);
      REQUIRE(g.has_value());
      CHECK(*g == doctest::Approx(2.0).epsilon(1e-6));
    }
  }

  SUBCASE("pure ideal inseparability never crosses") {
    CHECK_FALSE(find_crossing(base, CrossingMetric::Inseparability).has_value());
  }

  SUBCASE("lossy chain crosses both bounds") {
    ChainConfig lossy;
    lossy.source = {kVsq43, 6.86};
    lossy.window_transmission = 0.98;
    lossy.window_count = 4;
    lossy.polarizer_transmission = 0.99;
    lossy.detector_efficiency = 0.95;
    const auto gi = find_crossing(lossy, CrossingMetric::Inseparability);
    const auto ge = find_crossing(lossy, CrossingMetric::Epr12);
    REQUIRE(gi.has_value());
    REQUIRE(ge.has_value());
    CHECK(*gi == doctest::Approx(2.80).epsilon(1e-2));
    CHECK(*ge == doctest::Approx(1.13).epsilon(1e-2));
  }
}

TEST_CASE("phase_scan") {
  SUBCASE("amplifier off") {
    const auto points =
        phase_scan(ideal_chain(source43(), 1.0), 1.0,
                   {0.0, M_PI / 4, M_PI / 2});
    REQUIRE(points.size() == 3);
    CHECK(points[0].var_minus == doctest::Approx(0.37154).epsilon(1e-4));
    CHECK(points[2].var_minus == doctest::Approx(2.69153).epsilon(1e-4));
    // V(theta) = v_sq cos^2 + v_as sin^2
    CHECK(points[1].var_minus ==
          doctest::Approx((kVsq43 + 1 / kVsq43) / 2).epsilon(1e-9));
    CHECK(points[0].var_plus == doctest::Approx(0.37154).epsilon(1e-4));
  }

  SUBCASE("theta = 0 reproduces the sweep joint variances") {
    const ChainConfig cfg = ideal_chain(source43(), 1.7);
    const auto rows = clone_sweep(cfg, {1.7});
    const auto points = phase_scan(cfg, rows[0].g_insep, {0.0});
    CHECK(points[0].var_minus ==
          doctest::Approx(rows[0].var_x_minus).epsilon(1e-12));
    CHECK(points[0].var_plus ==
          doctest::Approx(rows[0].var_y_plus).epsilon(1e-12));
  }

  SUBCASE("G=1.8, T=0.56: squeezed and antisqueezed minima coincide") {
    ChainConfig cfg = ideal_chain(source43(), 1.8);
    cfg.transmission = 0.56;
    const auto points = phase_scan(cfg, 1.0, linspace(0.0, M_PI, 2001));
    double min_minus = 1e300, min_plus = 1e300;
    for (const auto& p : points) {
      min_minus = std::min(min_minus, p.var_minus);
      min_plus = std::min(min_plus, p.var_plus);
    }
    CHECK(min_minus == doctest::Approx(min_plus).epsilon(1e-9));
    CHECK(min_minus == doctest::Approx(0.81703).epsilon(1e-4));
  }
}

TEST_CASE("ancilla_report") {
  SUBCASE("unit gain leaves the ancilla in vacuum") {
    ChainConfig cfg = ideal_chain(source43(), 1.0);
    cfg.keep_ancilla = true;
    const auto rep = ancilla_report(cfg);
    CHECK(rep.ancilla_probe.inseparability == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(rep.ancilla_clone.inseparability == doctest::Approx(2.0).epsilon(1e-5));
    // Uncorrelated ancilla: conditioning on it does nothing, so the EPR
    // product is just the probe's thermal variance squared, cosh^2(2r).
    const double expected_epr = std::pow(std::cosh(2.0 * kR43), 2);
    CHECK(rep.ancilla_probe.epr_12 == doctest::Approx(expected_epr).epsilon(1e-9));
  }

  SUBCASE("vacuum source: ancilla-conjugate pair is a pure TMSV") {
    for (double gain : {1.5, 3.0, 6.0}) {
      ChainConfig cfg = ideal_chain({1.0, 1.0}, gain);
      cfg.transmission = 1.0;
      cfg.keep_ancilla = true;
      const auto rep = ancilla_report(cfg);
      const double expected =
          2.0 * std::pow(std::sqrt(gain) - std::sqrt(gain - 1.0), 2);
      CHECK(rep.ancilla_clone.inseparability ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }

  SUBCASE("G=2 chain reports finite values for the ancilla-probe pair") {
    ChainConfig cfg = ideal_chain(source43(), 2.0);
    cfg.keep_ancilla = true;
    const auto rep = ancilla_report(cfg);
    CHECK(rep.ancilla_probe.inseparability > 0.0);
    CHECK(rep.ancilla_probe.epr_12 > 0.0);
  }

  CHECK_THROWS_AS(ancilla_report(ideal_chain(source43(), 2.0)),
                  std::invalid_argument);
}

TEST_CASE("unity gain-loss leaves the cross covariance invariant") {
  const double ref = quad_covariance(build_source(source43()), 0, Quadrature::X,
                                     1, Quadrature::X);
  for (double gain : {1.0, 1.3, 2.0, 5.0, 40.0}) {
    const GaussianState out = run_chain(ideal_chain(source43(), gain));
    CHECK(quad_covariance(out, 0, Quadrature::X, 1, Quadrature::X) ==
          doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("conjugate variance follows V + 2(1 - 1/G)") {
  const double v = std::cosh(2 * kR43);
  for (double gain : {1.0, 1.8, 3.0, 10.0}) {
    const GaussianState out = run_chain(ideal_chain(source43(), gain));
    CHECK(quad_variance(out, 1, Quadrature::X) ==
          doctest::Approx(v + 2 * (1 - 1 / gain)).epsilon(1e-12));
  }
}

TEST_CASE("monotone degradation and E21 dominance") {
  ChainConfig lossy;
  lossy.source = {kVsq43, 4.0};
  lossy.detector_efficiency = 0.95;
  const auto rows = clone_sweep(lossy, linspace(1.0, 10.0, 40));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].inseparability >= rows[i - 1].inseparability - 1e-10);
    CHECK(rows[i].e12 >= rows[i - 1].e12 - 1e-10);
    CHECK(rows[i].e21 >= rows[i].e12 - 1e-12);
  }
}

TEST_CASE("chain outputs stay physical") {
  for (double gain : {1.0, 2.0, 7.5}) {
    ChainConfig cfg;
    cfg.source = {kVsq43, 5.0};
    cfg.gain = gain;
    cfg.keep_ancilla = true;
    CHECK(is_physical(run_chain(cfg)));
  }
}
