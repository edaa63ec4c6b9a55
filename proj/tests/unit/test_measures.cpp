#include "lattice_w1.hpp"
#include "skewstab/measures/norms.hpp"
#include "skewstab/measures/random.hpp"
#include "skewstab/measures/serialize.hpp"
#include "skewstab/measures/w1.hpp"
#include "skewstab/util/error.hpp"
#include "skewstab/util/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace skewstab;
using namespace skewstab::measures;

namespace {

FiberMeasure random_signed(Rng& rng, int max_atoms) {
  const int n = rng.range(1, max_atoms);
  std::vector<double> c, w;
  for (int i = 0; i < n; ++i) {
    c.push_back(rng.uniform());
    w.push_back(rng.uniform(-1.0, 1.0));
  }
  return FiberMeasure(1, c, w);
}

}  // namespace

TEST_CASE("w1 of simple circle measures") {
  CHECK(w1_norm(FiberMeasure::dirac(0.3, 0.7)) == doctest::Approx(0.7));
  CHECK(w1_norm(FiberMeasure::dirac(0.3, -0.7)) == doctest::Approx(0.7));
  const FiberMeasure dip(1, {0.1, 0.35}, {1.0, -1.0});
  CHECK(w1_norm(dip) == doctest::Approx(0.25).epsilon(1e-12));
  // wrapping: 0.05 and 0.95 are 0.1 apart
  const FiberMeasure wrap(1, {0.05, 0.95}, {1.0, -1.0});
  CHECK(w1_norm(wrap) == doctest::Approx(0.1).epsilon(1e-12));
  // antipodal points are 1/2 apart
  const FiberMeasure far(1, {0.0, 0.5}, {1.0, -1.0});
  CHECK(w1_norm(far) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("w1 pairwise handles one tiny negative atom") {
  const FiberMeasure tiny(1, {0.2}, {-1e-13});
  CHECK(w1_norm_pairwise(tiny) == doctest::Approx(1e-13).epsilon(1e-9));
}

TEST_CASE("w1 on the two-torus uses the sup of circle distances") {
  const FiberMeasure mu(2, {0.1, 0.1, 0.2, 0.4}, {1.0, -1.0});
  CHECK(w1_norm(mu) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(to_double(w1_norm_exact(mu)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("circle w1 agrees with the exact rational program") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const FiberMeasure mu = random_signed(rng, 6);
    CHECK(w1_norm_circle(mu) == doctest::Approx(to_double(w1_norm_exact(mu))).epsilon(1e-10));
  }
}

TEST_CASE("circle w1 agrees with the lattice oracle") {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const FiberMeasure mu = random_signed(rng, 6);
    CHECK(std::fabs(w1_norm(mu) - oracle::lattice_w1(mu.coords(), mu.weights())) < 1e-3);
  }
}

TEST_CASE("circle w1 agrees with the pairwise program on long fibers with tiny weights") {
  Rng rng(13);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.range(10, 40);
    std::vector<double> c, w;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      c.push_back(rng.uniform());
      w.push_back(rng.uniform(-1.0, 1.0) * std::pow(10.0, -12.0 * rng.uniform()));
      s += w.back();
    }
    if (t % 2 == 0) {
      c.push_back(rng.uniform());
      w.push_back(-s);
    }
    const FiberMeasure mu(1, c, w);
    CHECK(std::fabs(w1_norm_circle(mu) - w1_norm_pairwise(mu)) <= 1e-10 * mu.total_variation());
  }
}

TEST_CASE("w1 is a norm") {
  Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    const FiberMeasure a = random_signed(rng, 5), b = random_signed(rng, 5);
    const double c = rng.uniform(-3.0, 3.0);
    CHECK(w1_norm(a.scaled(c)) == doctest::Approx(std::fabs(c) * w1_norm(a)).epsilon(1e-9));
    CHECK(w1_norm(combine(a, 1.0, b, 1.0)) <= w1_norm(a) + w1_norm(b) + 1e-12);
    CHECK(w1_norm(a) <= a.total_variation() + 1e-12);
    CHECK(w1_norm(a) >= std::fabs(a.mass()) - 1e-12);
  }
}

TEST_CASE("w1 is rotation invariant") {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const FiberMeasure a = random_signed(rng, 6);
    const double s = rng.uniform();
    const FiberMeasure b = pushforward_fiber(a, [s](std::span<double> y) { y[0] = wrap_unit(y[0] + s); });
    CHECK(w1_norm(b) == doctest::Approx(w1_norm(a)).epsilon(1e-9));
  }
}

TEST_CASE("coarsening keeps mass and moves atoms by at most half a grid step") {
  Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    const FiberMeasure a = random_fiber(rng, 6, t % 2 == 0);
    const double eps = 1.0 / 64.0;
    const FiberMeasure c = coarsen(a, eps);
    CHECK(c.mass() == doctest::Approx(a.mass()).epsilon(1e-12));
    CHECK(w1_distance(a, c) <= a.total_variation() * eps / 2.0 + 1e-12);
  }
}

TEST_CASE("disintegration shares equal fibers") {
  const Disintegration leb = Disintegration::lebesgue(64, 16);
  CHECK(leb.classes().reps.size() == 1);
  CHECK(leb.total_mass() == doctest::Approx(1.0));
  CHECK(leb.is_positive());
  std::vector<FiberMeasure> f(8, FiberMeasure::dirac(0.25, 0.125));
  f[3] = FiberMeasure::dirac(0.5, 0.125);
  const Disintegration mu = Disintegration::from_fibers(f);
  const FiberClasses cls = mu.classes();
  CHECK(cls.reps.size() == 2);
  CHECK(cls.count[cls.class_of[0]] == 7);
  CHECK(cls.count[cls.class_of[3]] == 1);
}

TEST_CASE("norm report of Lebesgue is (1, 0, 1)") {
  for (std::size_t N : {16u, 256u}) {
    const NormReport r = pbv_norm(Disintegration::lebesgue(N, 4 * static_cast<long>(N)), 1.0);
    CHECK(r.l1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.var_p == doctest::Approx(0.0));
    CHECK(r.pbv == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("product measures have zero variation") {
  const Disintegration mu = Disintegration::product(32, FiberMeasure(1, {0.1, 0.6}, {0.3, 0.7}));
  CHECK(var_p(mu, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("variation of a jump between two fibers") {
  // cells 0..7 carry delta_0 / N, cells 8..15 delta_{1/4} / N; the oscillation on a
  // window across the jump is N w1(delta_0 - delta_{1/4}) / N = 1/4
  const std::size_t N = 16;
  std::vector<FiberMeasure> f;
  for (std::size_t i = 0; i < N; ++i) f.push_back(FiberMeasure::dirac(i < 8 ? 0.0 : 0.25, 1.0 / N));
  const Disintegration mu = Disintegration::from_fibers(f);
  const double v = var_p(mu, 1.0);
  CHECK(v > 0.0);
  CHECK(v <= 0.25 * 2.0 * N + 1e-9);
  CHECK_THROWS_AS(oscillation(mu, 0, 0.0), ValidationError);
}

TEST_CASE("marginal density of Lebesgue is flat") {
  const MarginalDensity d = marginal_density(Disintegration::lebesgue(32, 8));
  CHECK(d.sup == doctest::Approx(1.0));
  CHECK(d.bv == doctest::Approx(0.0));
  CHECK(d.integral == doctest::Approx(1.0));
}

TEST_CASE("measure JSON round trip") {
  Rng rng(17);
  const Disintegration mu = random_block_measure(rng, 16);
  const Disintegration back = from_json(to_json(mu));
  REQUIRE(back.n_cells() == mu.n_cells());
  for (std::size_t i = 0; i < mu.n_cells(); ++i) CHECK(back.fiber(i) == mu.fiber(i));
}

TEST_CASE("measure JSON rejects unknown keys") {
  nlohmann::json doc = {{"kind", "lebesgue"}, {"n_cells", 8}, {"atoms", 4}, {"colour", 1}};
  CHECK_THROWS_AS(from_json(doc), ValidationError);
  CHECK_THROWS_AS(parse_number(nlohmann::json("1/0")), ValidationError);
  CHECK(parse_number(nlohmann::json("1/4")) == 0.25);
}

TEST_CASE("random block measures are positive with the requested mass") {
  Rng rng(18);
  for (int t = 0; t < 50; ++t) {
    const Disintegration mu = random_block_measure(rng, 32);
    CHECK(mu.is_positive());
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  }
}
