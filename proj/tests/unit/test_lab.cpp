#include "lattice_w1.hpp"
#include "skewstab/lab/budget.hpp"
#include "skewstab/lab/counterexamples.hpp"
#include "skewstab/lab/decay.hpp"
#include "skewstab/lab/sweep.hpp"
#include "skewstab/measures/norms.hpp"
#include "skewstab/util/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace skewstab;
using namespace skewstab::lab;
using namespace skewstab::measures;

TEST_CASE("stability bound for phi = 1/x") {
  // psi(x) = x^-2, so psi^-1(eps/2) = sqrt(2/eps)
  for (double eps : {0.01, 0.1, 1e-4}) {
    const StabilityBudget b{Phi::power_law(1.0, 1.0), 1.0, 1.0, eps};
    CHECK(stability_bound(b) == doctest::Approx(2.0 * eps * (std::sqrt(2.0 / eps) + 1.0)).epsilon(1e-9));
  }
  CHECK(stability_bound({Phi::power_law(1.0, 1.0), 1.0, 1.0, 0.01}) == doctest::Approx(0.302843).epsilon(1e-6));
  CHECK(stability_bound({Phi::power_law(1.0, 1.0), 1.0, 1.0, 0.0}) == 0.0);
}

TEST_CASE("closed-form and bisection inverses agree") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const Phi phi = Phi::power_law(2.0, alpha);
    for (double y : {1e-6, 1e-3, 0.1}) {
      const double x = psi_inverse(phi, y);
      CHECK(phi.psi(x) == doctest::Approx(y).epsilon(1e-9));
      CHECK(psi_inverse_bisection(phi, y) == doctest::Approx(x).epsilon(1e-8));
    }
  }
}

TEST_CASE("tabulated phi matches the power law it samples") {
  std::vector<std::pair<double, double>> table;
  for (double x = 1.0; x <= 1e8; x *= 10.0) table.emplace_back(x, 1.0 / x);
  const Phi tab = Phi::tabulated(table);
  const Phi pow = Phi::power_law(1.0, 1.0);
  CHECK(tab(31.0) == doctest::Approx(pow(31.0)).epsilon(1e-9));
  CHECK(psi_inverse(tab, 1e-4) == doctest::Approx(psi_inverse(pow, 1e-4)).epsilon(1e-6));
}

TEST_CASE("bound scales like eps^(alpha / (alpha + 1))") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const LineFit f = bound_scaling_fit({Phi::power_law(1.0, alpha), 1.0, 1.0, 0.0});
    CHECK(std::fabs(f.slope - alpha / (alpha + 1.0)) <= 0.02);
    CHECK(holder_exponent(alpha) == doctest::Approx(alpha / (alpha + 1.0)));
  }
}

TEST_CASE("decay rate formula") {
  CHECK(decay_rate_formula(2.0, ObservableClass{}) == doctest::Approx(0.25));
  CHECK(decay_rate_formula(1.0, ObservableClass{false, 0.5, 0.5, 2.0}) == doctest::Approx(0.25));
}

TEST_CASE("decay is flat without fiber dynamics") {
  const dynamics::SkewSystem sys{dynamics::BaseMap::linear(2), dynamics::FiberMap::identity(), {}};
  const Disintegration g = Disintegration::product(128, FiberMeasure(1, {0.0, 0.5}, {1.0, -1.0}));
  const DecaySeries s = equilibrium_decay(sys, g, 20);
  for (double v : s.norm) CHECK(std::fabs(v - s.norm[0]) <= 1e-12);
}

TEST_CASE("decay for the golden rotation extension") {
  const auto sys = dynamics::rotation_extension((std::sqrt(5.0) - 1.0) / 2.0);
  const Disintegration g = Disintegration::product(256, FiberMeasure(1, {0.0, 0.5}, {1.0, -1.0}));
  const DecaySeries s = equilibrium_decay(sys, g, 60);
  CHECK(s.n.size() == 61);
  CHECK(s.nonincreasing_after(5));
  CHECK(s.fitted);
  CHECK(s.fit.slope < 0.0);
  CHECK_THROWS_AS(equilibrium_decay(sys, Disintegration::lebesgue(256, 4), 5), ValidationError);
}

TEST_CASE("periodic orbit construction") {
  const arithmetic::AngleSpec th = arithmetic::lacunary_theta(4);
  const PropBahh pb = prop_bahh_system(th, 1, 0.5);
  CHECK(pb.k == 16);
  CHECK(pb.distance == doctest::Approx(1.0 / 64.0));
  CHECK(pb.distance >= pb.lower_bound_delta);
  CHECK(pb.distance >= pb.lower_bound_k);
  // the orbit measure against Lebesgue, fiberwise, with the lattice oracle
  const FiberMeasure orbit = pb.orbit_measure(1).fiber(0);
  const FiberMeasure leb = Disintegration::lebesgue(1, 256).fiber(0);
  const FiberMeasure diff = combine(orbit, 1.0, leb, -1.0);
  CHECK(std::fabs(oracle::lattice_w1(diff.coords(), diff.weights()) - 1.0 / 64.0) < 1e-3);
  CHECK(std::fabs(l1_norm(pb.orbit_measure(4) - Disintegration::lebesgue(4, 4096)) - 1.0 / 64.0) < 1e-9);
}

TEST_CASE("periodic orbit needs enough truncation depth") {
  CHECK_THROWS_AS(prop_bahh_system(arithmetic::lacunary_theta(2), 2, 0.5), ValidationError);
}

TEST_CASE("cosine observable on the orbit") {
  const arithmetic::AngleSpec th = arithmetic::lacunary_theta(4);
  const Prop30Value v1 = prop30_observable_average(4, prop_bahh_system(th, 1, 0.5).orbit_measure(1));
  CHECK(v1.value == doctest::Approx(std::ldexp(1.0, -8) + std::ldexp(1.0, -32)).epsilon(1e-12));
  const Prop30Value v2 = prop30_observable_average(4, prop_bahh_system(th, 2, 0.5).orbit_measure(1));
  CHECK(v2.terms[0].exactly_zero);
  CHECK_FALSE(v2.terms[1].exactly_zero);
  CHECK(v2.value == doctest::Approx(std::ldexp(1.0, -32)).epsilon(1e-6));
}

TEST_CASE("cosine observable vanishes on Lebesgue") {
  const Prop30Value v = prop30_observable_average(2, Disintegration::lebesgue(1, 1 << 17));
  CHECK(v.terms[0].exactly_zero);
  CHECK(v.terms[1].exactly_zero);
  CHECK(v.value == 0.0);
}

TEST_CASE("sweep over periodic orbit perturbations") {
  const arithmetic::AngleSpec th = arithmetic::lacunary_theta(4);
  std::vector<SweepMember> family;
  for (int j : {1, 2}) family.push_back(prop_bahh_system(th, j, 0.5).sweep_member());
  const SweepTable t = stability_sweep(family, 3.0, dynamics::Numerics{});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].delta > t.rows[1].delta);
  CHECK(t.exponent == doctest::Approx(1.0 / 25.0));
  for (const SweepRow& r : t.rows) CHECK(r.distance <= r.upper_bound_fit * (1.0 + 1e-12));
}
