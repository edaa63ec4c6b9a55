#include "skewstab/measures/disintegration.hpp"

#include "skewstab/util/error.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

namespace skewstab::measures {

namespace {

void mix(std::size_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

// Groups cells by fiber content; first pointer identity, then hash plus equality.
template <class Get>
FiberClasses group(std::size_t n, Get get) {
  FiberClasses out;
  out.class_of.resize(n);
  std::unordered_map<const FiberMeasure*, std::size_t> by_ptr;
  std::unordered_multimap<std::size_t, std::size_t> by_hash;
  for (std::size_t i = 0; i < n; ++i) {
    const FiberPtr& f = get(i);
    auto hit = by_ptr.find(f.get());
    if (hit != by_ptr.end()) {
      out.class_of[i] = hit->second;
      ++out.count[hit->second];
      continue;
    }
    const std::size_t h = fiber_hash(*f);
    std::size_t cls = out.reps.size();
    auto range = by_hash.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (*out.reps[it->second] == *f) {
        cls = it->second;
        break;
      }
    }
    if (cls == out.reps.size()) {
      out.reps.push_back(f);
      out.count.push_back(0);
      by_hash.emplace(h, cls);
    }
    by_ptr.emplace(f.get(), cls);
    out.class_of[i] = cls;
    ++out.count[cls];
  }
  return out;
}

}  // namespace

std::size_t fiber_hash(const FiberMeasure& mu) {
  std::size_t h = static_cast<std::size_t>(mu.dimension());
  for (double c : mu.coords()) mix(h, std::bit_cast<std::uint64_t>(c));
  for (double w : mu.weights()) mix(h, std::bit_cast<std::uint64_t>(w));
  return h;
}

Disintegration::Disintegration(std::vector<FiberPtr> fibers) : fibers_(std::move(fibers)) {
  if (fibers_.empty()) throw ValidationError("disintegration needs at least one cell");
  const int d = fibers_.front()->dimension();
  for (const auto& f : fibers_) {
    if (!f) throw ValidationError("null fiber");
    if (f->dimension() != d) throw ValidationError("fibers must share one dimension");
  }
}

Disintegration Disintegration::zero(std::size_t n_cells, int dimension) {
  auto f = std::make_shared<const FiberMeasure>(dimension);
  return Disintegration(std::vector<FiberPtr>(n_cells, f));
}

Disintegration Disintegration::product(std::size_t n_cells, const FiberMeasure& nu) {
  if (n_cells == 0) throw ValidationError("n_cells must be positive");
  auto f = std::make_shared<const FiberMeasure>(nu.scaled(1.0 / static_cast<double>(n_cells)));
  return Disintegration(std::vector<FiberPtr>(n_cells, f));
}

Disintegration Disintegration::lebesgue(std::size_t n_cells, long atoms) {
  if (atoms < 1) throw ValidationError("atoms per fiber must be positive");
  return product(n_cells, FiberMeasure::uniform_grid(static_cast<int>(atoms), 1.0));
}

Disintegration Disintegration::point_mass(std::size_t n_cells, double x0, double y0) {
  if (n_cells == 0) throw ValidationError("n_cells must be positive");
  if (!(x0 >= 0.0 && x0 < 1.0)) throw ValidationError("base point must lie in [0,1)");
  auto empty = std::make_shared<const FiberMeasure>(1);
  std::vector<FiberPtr> fibers(n_cells, empty);
  const auto cell = std::min(n_cells - 1, static_cast<std::size_t>(x0 * static_cast<double>(n_cells)));
  fibers[cell] = std::make_shared<const FiberMeasure>(FiberMeasure::dirac(y0, 1.0));
  return Disintegration(std::move(fibers));
}

Disintegration Disintegration::from_fibers(std::vector<FiberMeasure> fibers) {
  std::vector<FiberPtr> owned;
  owned.reserve(fibers.size());
  for (auto& f : fibers) owned.push_back(std::make_shared<const FiberMeasure>(std::move(f)));
  const FiberClasses cls = group(owned.size(), [&](std::size_t i) -> const FiberPtr& { return owned[i]; });
  std::vector<FiberPtr> shared(owned.size());
  for (std::size_t i = 0; i < owned.size(); ++i) shared[i] = cls.reps[cls.class_of[i]];
  return Disintegration(std::move(shared));
}

double Disintegration::total_mass() const {
  double s = 0.0;
  for (const auto& f : fibers_) s += f->mass();
  return s;
}

bool Disintegration::is_positive() const {
  for (const auto& f : fibers_)
    if (!f->is_positive()) return false;
  return true;
}

std::size_t Disintegration::atom_count() const {
  std::size_t s = 0;
  for (const auto& f : fibers_) s += f->size();
  return s;
}

FiberClasses Disintegration::classes() const {
  return group(fibers_.size(), [&](std::size_t i) -> const FiberPtr& { return fibers_[i]; });
}

Disintegration Disintegration::scaled(double c) const {
  const FiberClasses cls = classes();
  std::vector<FiberPtr> reps;
  reps.reserve(cls.reps.size());
  for (const auto& r : cls.reps) reps.push_back(std::make_shared<const FiberMeasure>(r->scaled(c)));
  std::vector<FiberPtr> out(fibers_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = reps[cls.class_of[i]];
  return Disintegration(std::move(out));
}

Disintegration combine(const Disintegration& a, double ca, const Disintegration& b, double cb) {
  if (a.n_cells() != b.n_cells()) throw ValidationError("disintegrations live on different grids");
  if (a.dimension() != b.dimension()) throw ValidationError("fiber dimensions differ");
  const FiberClasses ka = a.classes();
  const FiberClasses kb = b.classes();
  std::map<std::pair<std::size_t, std::size_t>, FiberPtr> memo;
  std::vector<FiberPtr> out(a.n_cells());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto key = std::make_pair(ka.class_of[i], kb.class_of[i]);
    auto it = memo.find(key);
    if (it == memo.end()) {
      auto f = std::make_shared<const FiberMeasure>(
          measures::combine(*ka.reps[key.first], ca, *kb.reps[key.second], cb));
      it = memo.emplace(key, std::move(f)).first;
    }
    out[i] = it->second;
  }
  return Disintegration(std::move(out));
}

}  // namespace skewstab::measures
