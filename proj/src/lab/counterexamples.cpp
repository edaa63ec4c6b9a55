#include "skewstab/lab/counterexamples.hpp"

#include "skewstab/measures/norms.hpp"
#include "skewstab/util/error.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace skewstab::lab {

using measures::Disintegration;
using measures::FiberMeasure;

namespace {

FiberMeasure orbit_fiber(long k, long p, double shift) {
  std::vector<double> c(static_cast<std::size_t>(k)), w(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k));
  for (long n = 0; n < k; ++n) {
    const long r = static_cast<long>((static_cast<__int128>(n) * p) % k);
    c[static_cast<std::size_t>(n)] = (static_cast<double>(r) + shift) / static_cast<double>(k);
  }
  return FiberMeasure(1, std::move(c), std::move(w));
}

}  // namespace

PropBahh prop_bahh_system(const arithmetic::AngleSpec& theta, int j, double deformation_scale, double gamma_prime,
                          std::size_t atom_budget) {
  if (deformation_scale < 0.0 || deformation_scale >= 1.0)
    throw ValidationError("deformation_scale must lie in [0, 1) so that lambda alpha < 1");
  PropBahh pb;
  pb.approximant = arithmetic::approximant_perturbation(theta, j, gamma_prime);
  if (pb.approximant.k > BigInt(atom_budget))
    throw ValidationError("orbit of period " + pb.approximant.k.str() + " needs " + pb.approximant.k.str() +
                          " atoms per fiber; the atom budget is " + std::to_string(atom_budget));
  pb.k = static_cast<long>(pb.approximant.k);
  pb.deformation_scale = deformation_scale;
  pb.gamma_prime = gamma_prime;

  const double rotation = to_double(Rational(pb.approximant.p, pb.approximant.k));
  const double delta = std::fabs(to_double(pb.approximant.delta));
  const double amplitude = deformation_scale / (static_cast<double>(pb.k) * dynamics::bump_slope_max());
  const std::vector<dynamics::Interval> ind{{0.5, 1.0}};

  pb.spec.reference = dynamics::rotation_extension(theta.to_double());
  pb.spec.perturbed.base = dynamics::BaseMap::linear(2);
  pb.spec.perturbed.fiber = deformation_scale == 0.0
                                ? dynamics::FiberMap::translation(rotation, ind)
                                : dynamics::FiberMap::composite(rotation, ind, amplitude, static_cast<int>(pb.k));
  pb.spec.declared_delta = delta;
  pb.spec.fiber_displacement = delta + amplitude;

  pb.distance = 1.0 / (4.0 * static_cast<double>(pb.k));
  pb.lower_bound_delta = std::pow(delta, 1.0 / (gamma_prime - 1.0)) / 9.0;
  pb.lower_bound_k = 1.0 / (9.0 * static_cast<double>(pb.k));
  return pb;
}

Disintegration PropBahh::orbit_measure(std::size_t n_cells) const {
  return Disintegration::product(n_cells, orbit_fiber(k, static_cast<long>(approximant.p % k), 0.0));
}

Disintegration PropBahh::repeller_measure(std::size_t n_cells) const {
  return Disintegration::product(n_cells, orbit_fiber(k, static_cast<long>(approximant.p % k), 0.5));
}

SweepMember PropBahh::sweep_member() const { return SweepMember{spec, distance, lower_bound_delta}; }

PipelineResult prop_bahh_pipeline(const PropBahh& pb, std::size_t n_cells, double tol, int n_max) {
  if ((4 * static_cast<long>(n_cells)) % pb.k != 0)
    throw ValidationError("pipeline needs the fiber grid 4N to be a multiple of the period k = " +
                          std::to_string(pb.k));
  PipelineResult out;
  out.invariant = dynamics::invariant_measure(pb.spec.perturbed, n_cells, tol, n_max);
  out.distance_to_orbit = measures::l1_norm(out.invariant.measure - pb.orbit_measure(n_cells));
  out.distance_to_repeller = measures::l1_norm(out.invariant.measure - pb.repeller_measure(n_cells));
  return out;
}

Prop30Value prop30_observable_average(int terms, const Disintegration& mu) {
  if (terms < 1 || terms > 6) throw ValidationError("prop-30 observable supports 1..6 terms");
  if (mu.dimension() != 1) throw ValidationError("prop-30 observable lives on T^1");
  const measures::FiberClasses cls = mu.classes();

  // exact atoms (numerator, binary exponent, weight) with class multiplicities
  struct Atom {
    BigInt num;
    long exp;
    Rational weight;
  };
  std::vector<Atom> atoms;
  Rational total_variation(0);
  for (std::size_t c = 0; c < cls.reps.size(); ++c) {
    const FiberMeasure& f = *cls.reps[c];
    for (std::size_t a = 0; a < f.size(); ++a) {
      const Rational y = rational_from_double(f.x(a));
      const Rational w = rational_from_double(f.weight(a)) * Rational(static_cast<long long>(cls.count[c]));
      atoms.push_back({numerator(y), y == 0 ? 0 : dyadic_exponent(y), w});
      total_variation += w < 0 ? Rational(-w) : w;
    }
  }

  Prop30Value out;
  out.rational_part = 0;
  for (int i = 1; i <= terms; ++i) {
    const long freq_bits = 1L << (2 * i);  // frequency 2^freq_bits
    const Rational weight = pow2(-2 * freq_bits);
    // residue classes of frac(2^freq_bits y) on a common dyadic grid of size D
    long max_exp = 3;
    std::map<std::pair<long, BigInt>, Rational> raw;
    for (const Atom& a : atoms) {
      const long e = a.exp - freq_bits;  // frac(num 2^{freq_bits - exp})
      if (e <= 0) {
        raw[{0, BigInt(0)}] += a.weight;
        continue;
      }
      const BigInt mod = BigInt(1) << static_cast<unsigned>(e);
      BigInt r = a.num % mod;
      if (r < 0) r += mod;
      raw[{e, r}] += a.weight;
      max_exp = std::max(max_exp, e);
    }
    const BigInt D = BigInt(1) << static_cast<unsigned>(max_exp);
    const BigInt half = D / 2, quarter = D / 4;
    // fold onto cos(2 pi r / D), 0 <= r < D/4, a basis over Q
    std::map<BigInt, Rational> E;
    for (const auto& [key, w] : raw) {
      if (w == 0) continue;
      BigInt r = key.second << static_cast<unsigned>(max_exp - std::max(0L, key.first));
      Rational s = w;
      if (r >= half) {
        r -= half;
        s = -s;
      }
      if (r == quarter) continue;
      if (r > quarter) {
        r = half - r;
        s = -s;
      }
      E[r] += s;
    }
    Prop30Term t;
    t.index = i;
    const Rational e0 = E.count(BigInt(0)) ? E[BigInt(0)] : Rational(0);
    t.rational_part = weight * e0;
    HighFloat irr = 0;
    bool zero = e0 == 0;
    for (const auto& [r, c] : E) {
      if (r == 0 || c == 0) continue;
      zero = false;
      irr += to_high(c) * cos(2 * boost::math::constants::pi<HighFloat>() * HighFloat(r) / HighFloat(D));
    }
    t.exactly_zero = zero;
    t.value = static_cast<double>(to_high(t.rational_part) + to_high(weight) * irr);
    out.rational_part += t.rational_part;
    out.value += t.value;
    out.terms.push_back(t);
  }
  out.tail_bound = 2.0 * std::ldexp(1.0, -2 * (1 << (2 * (terms + 1)))) * to_double(total_variation);
  return out;
}

}  // namespace skewstab::lab
