#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/place.hpp"
#include "ellsurf/tate.hpp"
#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

/// True iff j is constant; in characteristic 0 this is isotriviality.
inline bool is_isotrivial(const WeierstrassModel& model) { return model.j_invariant().is_constant(); }

/// Places where the model can fail to be integral with unit discriminant:
/// infinity, zeros and poles of the discriminant, and poles of the a_i.
/// At every other place the model is already minimal with good reduction.
inline std::vector<Place> special_places(const WeierstrassModel& model) {
  std::set<Place> out{Place::infinity()};
  Poly collected = model.discriminant().num() * model.discriminant().den();
  for (const auto& a : model.coefficients()) collected *= a.den();
  for (const auto& v : places_dividing(collected)) out.insert(v);
  return {out.begin(), out.end()};
}

/// A model together with its local data at every special place, computed
/// once; the object is immutable afterwards and safe to share.
class EllipticSurface {
 public:
  explicit EllipticSurface(WeierstrassModel model) : model_(std::move(model)) {
    for (const auto& v : special_places(model_)) {
      LocalData ld = tate_at(model_, v);
      disc_degree_ += ld.v_delta_min * v.degree();
      local_.emplace(v, std::move(ld));
    }
  }

  const WeierstrassModel& model() const { return model_; }
  const std::map<Place, LocalData>& special() const { return local_; }

  /// Degree of the minimal discriminant divisor, i.e. 12 chi.
  long minimal_discriminant_degree() const { return disc_degree_; }

  long chi() const {
    if (disc_degree_ % 12 != 0)
      throw Error(ErrorCode::NonintegralChi, "minimal discriminant degree " + std::to_string(disc_degree_));
    return disc_degree_ / 12;
  }

  bool is_special(const Place& v) const { return local_.count(v) != 0; }

  /// Local data at any place; non-special places are good and minimal.
  LocalData local(const Place& v) const {
    auto it = local_.find(v);
    if (it != local_.end()) return it->second;
    return tate_at(model_, v);
  }

  std::vector<LocalData> bad_fibers() const {
    std::vector<LocalData> out;
    for (const auto& [v, ld] : local_)
      if (!ld.kodaira.is_good()) out.push_back(ld);
    return out;
  }

 private:
  WeierstrassModel model_;
  std::map<Place, LocalData> local_;
  long disc_degree_ = 0;
};

struct SurfaceInvariants {
  long chi = 0;
  long euler = 0;
  std::vector<Place> type_T;
  long t_weighted = 0;
  long genus_g = 0;
  long fundamental_line_degree = 0;
};

inline SurfaceInvariants surface_invariants(const EllipticSurface& surface) {
  if (is_isotrivial(surface.model()))
    throw Error(ErrorCode::IsotrivialCurve, "j-invariant is constant");
  long total = 0;
  SurfaceInvariants inv;
  for (const auto& [v, ld] : surface.special()) {
    total += ld.v_delta_min * v.degree();
    if (!ld.kodaira.is_good()) {
      inv.type_T.push_back(v);
      inv.t_weighted += v.degree();
    }
  }
  if (total % 12 != 0)
    throw Error(ErrorCode::NonintegralChi, "minimal discriminant degree " + std::to_string(total));
  inv.chi = total / 12;
  inv.euler = 12 * inv.chi;
  inv.fundamental_line_degree = inv.chi;
  return inv;
}

inline SurfaceInvariants surface_invariants(const WeierstrassModel& model) {
  if (is_isotrivial(model)) throw Error(ErrorCode::IsotrivialCurve, "j-invariant is constant");
  return surface_invariants(EllipticSurface(model));
}

struct RankBounds {
  long picard_bound = 0;       // 12 chi + 4 g - 2
  long shioda_tate_bound = 0;  // 2 (2g - 2 + t), clamped at 0
  long combined = 0;
};

inline RankBounds rank_bounds(long chi, long g, long t_weighted) {
  RankBounds rb;
  rb.picard_bound = 12 * chi + 4 * g - 2;
  rb.shioda_tate_bound = std::max(0L, 2 * (2 * g - 2 + t_weighted));
  rb.combined = std::max(0L, std::min(rb.picard_bound, rb.shioda_tate_bound));
  return rb;
}

inline RankBounds rank_bounds(const SurfaceInvariants& inv) {
  return rank_bounds(inv.chi, inv.genus_g, inv.t_weighted);
}

}  // namespace ellsurf
