#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "pseudosun/dynamics.hpp"
#include "pseudosun/heralded.hpp"
#include "pseudosun/units.hpp"

using namespace pseudosun;

namespace {

PdcParams fig3a() { return {25000.0, 12000.0, 2.5, 0.15}; }
PdcParams fig3b() { return {25000.0, 18001.0, 50.0, 0.11}; }
MolecularSystem two_level() { return {{{18000.0, 1.0}, {18500.0, 1.0}}}; }
MolecularSystem one_level() { return {{{18000.0, 1.0}}}; }

HeraldedTrajectory heralded(const MolecularSystem& mol, const PdcParams& p, const TimeGrid& times,
                            double ti, FieldMethod m) {
  return evolve_heralded(mol,
                         heralded_field(times, ti, p, default_field_grid(p, times, ti), m));
}

double wrap(double phase) { return std::remainder(phase, units::kTwoPi); }

}  // namespace

TEST_CASE("field method names") {
  CHECK(to_string(FieldMethod::ExactQuadrature) == "exact_quadrature");
  CHECK(parse_field_method("rect_approx") == FieldMethod::RectApprox);
  CHECK_FALSE(parse_field_method("rect").has_value());
}

TEST_CASE("default_field_grid") {
  const PdcParams p = fig3a();
  const double lobe = p.lobe_width_cm1();
  const FrequencyGrid g = default_field_grid(p, 0.0);
  CHECK(g.min() == 0.0);
  CHECK(g.max() == doctest::Approx(12000.0 + 50.0 * lobe));
  CHECK(g.step() <= lobe / 32.0);
  const FrequencyGrid d = default_field_grid(p, 80.0);
  CHECK(d.step() <= 1.0 / (32.0 * units::kSpeedOfLight * 80.0));
  const FrequencyGrid narrow = default_field_grid(PdcParams{25000.0, 18001.0, 1000.0, 0.1}, 0.0);
  CHECK(narrow.min() > 0.0);
  CHECK(narrow.min() == doctest::Approx(18001.0 - 50.0 / (units::kSpeedOfLight * 1000.0)));
}

TEST_CASE("rect field") {
  const PdcParams p = fig3a();
  const TimeGrid times(40.0, 60.0, 2001);  // dt = 0.01 fs
  const double ti = 50.0;
  const HeraldedField f = heralded_field(times, ti, p, default_field_grid(p, 10.0), FieldMethod::RectApprox);
  const double height = 0.15 * units::kTwoPi / 2.5;
  const auto at = [&](double t) { return f.amplitudes[static_cast<Eigen::Index>(std::lround((t - 40.0) / 0.01))]; };
  CHECK(std::abs(at(ti)) == doctest::Approx(height).epsilon(1e-14));
  CHECK(std::abs(at(ti + 2.5)) == 0.0);
  CHECK(std::abs(at(ti + 1.25)) == doctest::Approx(0.5 * height).epsilon(1e-12));
  CHECK(std::abs(at(ti - 1.25)) == doctest::Approx(0.5 * height).epsilon(1e-12));
  for (Eigen::Index k = 0; k < times.count(); ++k) {
    const double x = std::abs(times[k] - ti) / 2.5;
    if (x > 0.5 + 1e-6) CHECK(f.amplitudes[k] == std::complex<double>(0.0));
    if (x < 0.5 - 1e-6) CHECK(std::abs(f.amplitudes[k]) == doctest::Approx(height).epsilon(1e-14));
  }
  for (double delta : {0.01, 0.37, -0.8}) {
    const double expected = -units::kTwoPi * units::kSpeedOfLight * 12000.0 * delta;
    CHECK(std::abs(wrap(std::arg(at(ti + delta)) - expected)) < 1e-9);
  }
}

TEST_CASE("exact field") {
  const PdcParams p = fig3b();
  const TimeGrid times(0.0, 100.0, 1001);
  const FrequencyGrid g = default_field_grid(p, times, 50.0);
  const HeraldedField exact = heralded_field(times, 50.0, p, g, FieldMethod::ExactQuadrature);
  const HeraldedField rect = heralded_field(times, 50.0, p, g, FieldMethod::RectApprox);
  CHECK(exact.method == FieldMethod::ExactQuadrature);
  CHECK(exact.entanglement_time_fs == 50.0);
  CHECK(exact.turn_on_fs() == 25.0);

  SUBCASE("narrow band approaches the rect field") {
    double num = 0.0, den = 0.0;
    for (Eigen::Index k = 0; k < times.count(); ++k) {
      if (std::abs(times[k] - 50.0) > 25.0) continue;
      num += std::norm(exact.amplitudes[k] - rect.amplitudes[k]);
      den += std::norm(rect.amplitudes[k]);
    }
    // The fig1 config parameters give about 0.34; the fractional bandwidth here is far smaller.
    CHECK(std::sqrt(num / den) < 0.06);
  }
  SUBCASE("matches a direct frequency sum") {
    for (Eigen::Index k : {0, 250, 500, 731, 1000}) {
      std::complex<double> sum = 0.0;
      for (Eigen::Index j = 0; j < g.count(); ++j) {
        const double w = (j == 0 || j == g.count() - 1 ? 0.5 : 1.0) * g.step() * units::angular(1.0);
        const double amp = std::sqrt(g[j] / 18001.0) * std::tanh(oracle::squeeze(g[j], p));
        sum += w * amp * std::exp(std::complex<double>(0.0, -units::angular(g[j]) * (times[k] - 50.0)));
      }
      CHECK(std::abs(exact.amplitudes[k] - sum) <= 1e-10 * exact.amplitudes.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("time-translation covariance") {
  const TimeGrid times(0.0, 100.0, 10001);
  for (const PdcParams& p : {fig3a(), fig3b()})
    for (FieldMethod m : {FieldMethod::ExactQuadrature, FieldMethod::RectApprox}) {
      const FrequencyGrid g = default_field_grid(p, 60.0);
      const HeraldedField f40 = heralded_field(times, 40.0, p, g, m);
      const HeraldedField f50 = heralded_field(times, 50.0, p, g, m);
      const auto a = normalize_trajectory(evolve_heralded(two_level(), f40).trajectory, Normalization::MaxDiag);
      const auto b = normalize_trajectory(evolve_heralded(two_level(), f50).trajectory, Normalization::MaxDiag);
      double field = 0.0, traj = 0.0;
      for (std::size_t k = 0; k + 1000 < a.matrices.size(); ++k) {
        field = std::max(field, std::abs(f40.amplitudes[static_cast<Eigen::Index>(k)] -
                                         f50.amplitudes[static_cast<Eigen::Index>(k + 1000)]));
        traj = std::max(traj, (a.matrices[k] - b.matrices[k + 1000]).cwiseAbs().maxCoeff());
      }
      CHECK(field <= 1e-9 * f50.amplitudes.cwiseAbs().maxCoeff());
      CHECK(traj <= 1e-9);
    }
}

TEST_CASE("evolve_heralded") {
  const TimeGrid times(0.0, 100.0, 10001);

  SUBCASE("Fig. 3a plateaus and rise") {
    const auto t = normalize_trajectory(
        heralded(two_level(), fig3a(), times, 50.0, FieldMethod::ExactQuadrature).trajectory,
        Normalization::MaxDiag);
    const Eigen::VectorXd r11 = t.element(0, 0).real();
    CHECK(r11.head(4000).cwiseAbs().maxCoeff() == 0.0);  // before t_i - T_e/2
    CHECK((r11.tail(4000).array() - 1.0).abs().maxCoeff() < 0.02);
    Eigen::Index lo = 0, hi = 0;
    while (r11[lo] < 0.1) ++lo;
    while (r11[hi] < 0.9) ++hi;
    CHECK(times[hi] - times[lo] < 2.5);
  }
  SUBCASE("rank one, Hermitian, positive") {
    for (const PdcParams& p : {fig3a(), fig3b()})
      for (FieldMethod m : {FieldMethod::ExactQuadrature, FieldMethod::RectApprox}) {
        const auto t = normalize_trajectory(heralded(two_level(), p, times, 50.0, m).trajectory,
                                            Normalization::MaxDiag);
        const StructureReport r = inspect(t);
        CHECK(r.hermiticity_defect <= 1e-12);
        CHECK(r.min_eigenvalue >= -1e-10);
        CHECK(r.rank_one_ratio < 1e-10);
      }
  }
  SUBCASE("after the pulse populations freeze and coherences rotate") {
    const auto t = heralded(two_level(), fig3a(), times, 50.0, FieldMethod::RectApprox).trajectory;
    const auto& m70 = t.matrices[7000];
    const auto& m90 = t.matrices[9000];
    CHECK(m90(0, 0).real() == doctest::Approx(m70(0, 0).real()).epsilon(1e-12));
    CHECK(m90(1, 1).real() == doctest::Approx(m70(1, 1).real()).epsilon(1e-12));
    const std::complex<double> rotation = std::polar(1.0, -units::phase(18000.0 - 18500.0, 20.0));
    CHECK(std::abs(m90(0, 1) - m70(0, 1) * rotation) <= 1e-10 * std::abs(m70(0, 1)));
  }
  SUBCASE("Fig. 3b rise spans the entanglement window") {
    const auto t = normalize_trajectory(
        heralded(two_level(), fig3b(), times, 50.0, FieldMethod::RectApprox).trajectory,
        Normalization::MaxDiag);
    const Eigen::VectorXd r11 = t.element(0, 0).real();
    Eigen::Index lo = 0, hi = 0;
    while (r11[lo] < 0.1) ++lo;
    while (r11[hi] < 0.9) ++hi;
    CHECK(times[lo] >= 25.0);
    CHECK(times[hi] <= 75.0);
    CHECK(times[hi] - times[lo] > 20.0);
    const double ratio = t.matrices.back()(1, 1).real() / t.matrices.back()(0, 0).real();
    const double s2 = oracle::sinc(2.34986), s1 = oracle::sinc(-0.00471);
    CHECK(ratio == doctest::Approx(s2 * s2 / (s1 * s1)).epsilon(0.01));
    CHECK(ratio == doctest::Approx(0.0917).epsilon(0.01));
  }
  SUBCASE("turn-on convention") {
    const HeraldedField f = heralded_field(TimeGrid(-1.0, 10.0, 101), 5.0, fig3a(),
                                           default_field_grid(fig3a(), 10.0), FieldMethod::RectApprox);
    CHECK_THROWS_AS(evolve_heralded(two_level(), f), InvalidInputError);
    HeraldedField bad = heralded_field(TimeGrid(0.0, 10.0, 101), 5.0, fig3a(),
                                       default_field_grid(fig3a(), 10.0), FieldMethod::RectApprox);
    bad.amplitudes.conservativeResize(50);
    CHECK_THROWS_AS(evolve_heralded(two_level(), bad), InvalidGridError);
  }
}

TEST_CASE("long_time_closed_form") {
  SUBCASE("degenerate levels") {
    const MolecularSystem deg{{{18000.0, 1.0}, {18000.0, 1.0}}};
    const Eigen::MatrixXcd m = long_time_closed_form(deg, fig3b(), 120.0, 50.0);
    CHECK((m.array() - 1.0).abs().maxCoeff() < 1e-15);
  }
  SUBCASE("resonant signal center") {
    for (double te : {1.0, 10.0, 80.0}) {
      const PdcParams p{25000.0, 18000.0, te, 0.1};
      CHECK(long_time_closed_form(two_level(), p, 50.0 + te, 50.0)(0, 0).real() == 1.0);
    }
  }
  SUBCASE("Fig. 3b ratio") {
    const Eigen::MatrixXcd m = long_time_closed_form(two_level(), fig3b(), 100.0, 50.0);
    CHECK(m(1, 1).real() / m(0, 0).real() == doctest::Approx(0.0917).epsilon(0.01));
  }
  SUBCASE("agrees with the rect trajectory at t_i + T_e") {
    const TimeGrid times(0.0, 100.0, 10001);
    const auto t = heralded(two_level(), fig3b(), times, 50.0, FieldMethod::RectApprox).trajectory;
    const Eigen::MatrixXcd direct = normalize_max_diag(t.matrices.back());
    const Eigen::MatrixXcd closed = long_time_closed_form(two_level(), fig3b(), 100.0, 50.0);
    for (Eigen::Index a = 0; a < 2; ++a)
      for (Eigen::Index b = 0; b < 2; ++b)
        CHECK(std::abs(direct(a, b) - closed(a, b)) <= 0.01 * std::abs(closed(a, b)));
  }
  SUBCASE("precondition") {
    CHECK_THROWS_AS(long_time_closed_form(two_level(), fig3b(), 70.0, 50.0), PreconditionError);
    CHECK_NOTHROW(long_time_closed_form(two_level(), fig3b(), 75.5, 50.0));
  }
}

TEST_CASE("impulsive_limit") {
  const MolecularSystem mol{{{18000.0, 2.0}, {18500.0, 1.0}}};
  const Eigen::MatrixXcd m = impulsive_limit(mol, 50.0, 50.0);
  CHECK(m.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(m(0, 0).real() == 1.0);
  CHECK(m(0, 1).real() == 0.5);
  CHECK(m(1, 1).real() == 0.25);
  for (double t : {50.0, 63.0, 200.0}) CHECK(impulsive_limit(one_level(), t, 50.0)(0, 0) == 1.0);
  CHECK_THROWS_AS(impulsive_limit(mol, 49.0, 50.0), PreconditionError);

  SUBCASE("closed form at tiny entanglement time") {
    const PdcParams p{25000.0, 12000.0, 0.01, 0.15};
    for (double t = 51.0; t < 150.0; t += 7.0)
      CHECK((impulsive_limit(two_level(), t, 50.0) - long_time_closed_form(two_level(), p, t, 50.0))
                .cwiseAbs()
                .maxCoeff() < 1e-3);
  }
  SUBCASE("rect trajectory approaches the impulsive form") {
    const PdcParams p{25000.0, 12000.0, 0.05, 0.15};
    const TimeGrid times(0.0, 20.0, 20001);
    const auto t = heralded(two_level(), p, times, 10.0, FieldMethod::RectApprox).trajectory;
    for (Eigen::Index k : {12000, 16000, 20000}) {
      const Eigen::MatrixXcd direct = normalize_max_diag(t.matrices[static_cast<std::size_t>(k)]);
      CHECK((direct - impulsive_limit(two_level(), times[k], 10.0)).cwiseAbs().maxCoeff() < 1e-3);
    }
  }
}

TEST_CASE("herald schedule") {
  const TimeGrid times(0.0, 100.0, 1001);
  const PdcParams p = fig3a();
  const std::vector<double> u = herald_schedule(times, p, 64);
  REQUIRE(u.size() == 64);
  CHECK(u.front() <= -2.5);
  CHECK(u.back() >= 100.0 + 2.5 - 1e-9);
  for (double ti : u) CHECK(std::abs(ti / 0.1 - std::round(ti / 0.1)) < 1e-9);
  CHECK(herald_schedule(times, p, 1).front() == doctest::Approx(50.0));

  const auto r1 = herald_schedule(times, p, 32, HeraldSampling::Random, 11);
  const auto r2 = herald_schedule(times, p, 32, HeraldSampling::Random, 11);
  const auto r3 = herald_schedule(times, p, 32, HeraldSampling::Random, 12);
  CHECK(r1 == r2);
  CHECK(r1 != r3);
  for (double ti : r1) {
    CHECK(ti >= -2.5 - 1e-9);
    CHECK(ti <= 102.5 + 1e-9);
  }
  CHECK_THROWS_AS(herald_schedule(times, p, 0), InvalidInputError);
  CHECK(herald_max_delay(times, p, 64) >= 102.5 - 1e-9);
}

TEST_CASE("average_over_heralds") {
  const TimeGrid times(0.0, 100.0, 2001);
  const PdcParams p = fig3a();
  const FrequencyGrid g = default_field_grid(p, herald_max_delay(times, p, 64));

  SUBCASE("one sample is the single heralded trajectory") {
    const double ti = herald_schedule(times, p, 1).front();
    const DensityTrajectory avg = average_over_heralds(two_level(), p, g, times, 1);
    const DensityTrajectory single =
        evolve_heralded(two_level(), heralded_field(times, ti, p, g, FieldMethod::ExactQuadrature)).trajectory;
    const double scale = single.matrices.back().cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k < avg.matrices.size(); ++k)
      CHECK((avg.matrices[k] - single.matrices[k]).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  }
  SUBCASE("linear in the trajectories") {
    const MolecularSystem scaled{{{18000.0, 3.0}, {18500.0, 3.0}}};
    const DensityTrajectory a = average_over_heralds(two_level(), p, g, times, 16);
    const DensityTrajectory b = average_over_heralds(scaled, p, g, times, 16);
    for (std::size_t k = 0; k < a.matrices.size(); k += 100)
      CHECK((9.0 * a.matrices[k] - b.matrices[k]).cwiseAbs().maxCoeff() <=
            1e-12 * b.matrices.back().cwiseAbs().maxCoeff());
  }
  SUBCASE("random sampling is reproducible") {
    const HeraldAveraging opt{FieldMethod::RectApprox, HeraldSampling::Random, 42};
    const DensityTrajectory a = average_over_heralds(two_level(), p, g, times, 16, opt);
    const DensityTrajectory b = average_over_heralds(two_level(), p, g, times, 16, opt);
    for (std::size_t k = 0; k < a.matrices.size(); ++k) CHECK(a.matrices[k] == b.matrices[k]);
  }
  SUBCASE("approaches the unconditional trajectory") {
    const DensityTrajectory avg =
        normalize_trajectory(average_over_heralds(two_level(), p, g, times, 256), Normalization::MaxDiag);
    const DensityTrajectory direct = normalize_trajectory(
        evolve_unconditional(two_level(), mean_photon_number(default_dynamics_grid(), p), times),
        Normalization::MaxDiag);
    for (Eigen::Index k = 200; k < times.count(); k += 50) {
      const auto& x = avg.matrices[static_cast<std::size_t>(k)];
      const auto& y = direct.matrices[static_cast<std::size_t>(k)];
      CHECK(std::abs(x(0, 0).real() - y(0, 0).real()) <= 0.05 * y(0, 0).real());
      CHECK((x - y).cwiseAbs().maxCoeff() <= 0.05);
    }
  }
}

TEST_CASE("coincidence_signal") {
  const TimeGrid times(0.0, 100.0, 2001);

  SUBCASE("single level follows the population") {
    const MolecularSystem mol{{{18000.0, 1.7}}};
    const HeraldedTrajectory h = heralded(mol, fig3a(), times, 50.0, FieldMethod::ExactQuadrature);
    const CoincidenceSignal s = coincidence_signal(mol, h, fig3a());
    for (Eigen::Index k = 0; k < times.count(); k += 37)
      CHECK(s.values[k] == doctest::Approx(1.7 * 1.7 * h.trajectory.matrices[static_cast<std::size_t>(k)](0, 0).real()));
    CHECK(s.herald_time_fs == 50.0);
  }
  SUBCASE("independent quadratic form") {
    const MolecularSystem mol{{{18000.0, 1.0}, {18500.0, -0.6}}};
    const HeraldedTrajectory h = heralded(mol, fig3a(), times, 50.0, FieldMethod::ExactQuadrature);
    const CoincidenceSignal s = coincidence_signal(mol, h, fig3a());
    CHECK(s.max_imaginary_ratio < 1e-10);
    const Eigen::VectorXd mu = mol.dipoles();
    for (Eigen::Index k = 1200; k < times.count(); k += 41) {
      const std::complex<double> ref = oracle::quadratic_form(mu, h.trajectory.matrices[static_cast<std::size_t>(k)]);
      CHECK(std::abs(s.values[k] - ref.real()) <= 1e-12 * std::abs(ref));
      CHECK(std::abs(ref.imag()) <= 1e-10 * std::abs(ref.real()));
    }
  }
  SUBCASE("degenerate levels add coherently") {
    const MolecularSystem deg{{{18000.0, 1.0}, {18000.0, 1.0}}};
    const HeraldedTrajectory h2 = heralded(deg, fig3b(), times, 50.0, FieldMethod::ExactQuadrature);
    const HeraldedTrajectory h1 = heralded(one_level(), fig3b(), times, 50.0, FieldMethod::ExactQuadrature);
    const CoincidenceSignal s2 = coincidence_signal(deg, h2, fig3b());
    const CoincidenceSignal s1 = coincidence_signal(one_level(), h1, fig3b());
    for (Eigen::Index k = 1000; k < times.count(); k += 100)
      CHECK(s2.values[k] == doctest::Approx(4.0 * s1.values[k]).epsilon(1e-12));
  }
  SUBCASE("dimension mismatch") {
    const HeraldedTrajectory h = heralded(one_level(), fig3a(), times, 50.0, FieldMethod::RectApprox);
    CHECK_THROWS_AS(coincidence_signal(two_level(), h, fig3a()), InvalidInputError);
  }
}

TEST_CASE("weak-gain consistency") {
  for (double b : {0.01, 0.05, 0.11, 0.15}) {
    const PdcParams p{25000.0, 12000.0, 2.5, b};
    for (double nu = 1000.0; nu < 25000.0; nu += 250.0) {
      const double r = squeeze_profile(nu, p);
      if (r == 0.0) continue;
      const double t2 = std::tanh(r) * std::tanh(r), s2 = std::sinh(r) * std::sinh(r);
      CHECK(std::abs(s2 - t2) / s2 < 2.0 * b * b);
    }
  }
}
