#include "monofan/polyhedral.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

#include "monofan/errors.hpp"
#include "monofan/lattice.hpp"

namespace monofan::polyhedral {

namespace {

IntMatrix rows_matrix(Index d, const std::vector<IntVector>& rows) {
  IntMatrix m(static_cast<Index>(rows.size()), d);
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

std::vector<IntVector> clean_rays(const std::vector<IntVector>& gens) {
  std::vector<IntVector> out;
  for (const auto& g : gens) {
    if (is_zero(g)) continue;
    out.push_back(primitive(g));
  }
  return sorted_unique(std::move(out));
}

// Canonical generating set of the cone spanned by `gens`, where `hrep` is any
// generating set of the dual cone: +- the Hermite basis of the lineality
// lattice together with the canonical primitive lift of each extreme ray of
// the pointed quotient. Depends only on the cone itself.
std::vector<IntVector> canonical_rays(Index d, const std::vector<IntVector>& gens,
                                      const std::vector<IntVector>& hrep) {
  if (gens.empty()) return {};
  std::vector<IntVector> lin =
      lattice::lattice_basis(lattice::kernel_basis(rows_matrix(d, hrep)), d);
  std::vector<IntVector> out;
  for (const auto& l : lin) {
    out.push_back(l);
    out.push_back(IntVector(-l));
  }
  lattice::SaturatedQuotient q(lin, d);
  const Index qr = q.quot_rank();
  if (qr > 0) {
    std::vector<IntVector> imgs;
    for (const auto& g : gens) {
      IntVector u = q.project(g);
      if (!is_zero(u)) imgs.push_back(primitive(u));
    }
    imgs = sorted_unique(std::move(imgs));
    if (!imgs.empty()) {
      // inequalities descend to the quotient, where the cone is pointed;
      // the descended functional pairs with u as <w, section(u)>
      std::vector<IntVector> wbars;
      IntMatrix sect(d, qr);
      for (Index j = 0; j < qr; ++j) {
        IntVector e = IntVector::Zero(qr);
        e(j) = 1;
        sect.col(j) = q.section(e);
      }
      for (const auto& w : hrep) wbars.push_back(IntVector((w.transpose() * sect).transpose()));
      IntMatrix wmat = rows_matrix(qr, wbars);
      const Index full_rank = lattice::rank(wmat);
      assert(full_rank == qr);
      for (const auto& u : imgs) {
        std::vector<IntVector> tight;
        for (const auto& wb : wbars)
          if (wb.dot(u) == 0) tight.push_back(wb);
        Index tr = tight.empty() ? 0 : lattice::rank(rows_matrix(qr, tight));
        if (tr == full_rank - 1) out.push_back(q.section(u));
      }
    }
  }
  return sorted_unique(std::move(out));
}

// Incremental halfspace intersection on the dual side: starting from the full
// space, cut with { u : <r,u> >= 0 } for each ray, canonicalizing after every
// step against the inequalities processed so far.
std::vector<IntVector> dual_generators(Index d, const std::vector<IntVector>& rays) {
  std::vector<IntVector> W;
  for (Index i = 0; i < d; ++i) {
    IntVector e = IntVector::Zero(d);
    e(i) = 1;
    W.push_back(e);
    W.push_back(IntVector(-e));
  }
  W = canonical_rays(d, W, {});
  std::vector<IntVector> processed;
  for (const auto& r : rays) {
    std::vector<IntVector> keep, plus, minus;
    std::vector<Int> sp, sm;
    for (const auto& w : W) {
      Int s = r.dot(w);
      if (s == 0) {
        keep.push_back(w);
      } else if (s > 0) {
        plus.push_back(w);
        sp.push_back(s);
        keep.push_back(w);
      } else {
        minus.push_back(w);
        sm.push_back(s);
      }
    }
    for (size_t i = 0; i < plus.size(); ++i)
      for (size_t j = 0; j < minus.size(); ++j) {
        IntVector c = sp[i] * minus[j] - sm[j] * plus[i];
        if (!is_zero(c)) keep.push_back(primitive(c));
      }
    processed.push_back(r);
    W = canonical_rays(d, keep, processed);
    if (W.empty()) break;  // dual collapsed to the origin
  }
  return W;
}

}  // namespace

Cone Cone::from_rays(Index ambient_rank, const std::vector<IntVector>& gens) {
  Cone c;
  c.d_ = ambient_rank;
  std::vector<IntVector> cleaned = clean_rays(gens);
  for (const auto& g : cleaned)
    if (g.size() != ambient_rank) throw Error("ray dimension does not match ambient rank");
  std::vector<IntVector> dual = dual_generators(ambient_rank, cleaned);
  c.dual_rays_ = dual;
  c.rays_ = canonical_rays(ambient_rank, cleaned, dual);
  return c;
}

Cone Cone::zero_cone(Index ambient_rank) { return from_rays(ambient_rank, {}); }

Cone Cone::full_space(Index ambient_rank) {
  std::vector<IntVector> gens;
  for (Index i = 0; i < ambient_rank; ++i) {
    IntVector e = IntVector::Zero(ambient_rank);
    e(i) = 1;
    gens.push_back(e);
    gens.push_back(IntVector(-e));
  }
  return from_rays(ambient_rank, gens);
}

bool Cone::contains(const IntVector& v) const {
  for (const auto& w : dual_rays_)
    if (w.dot(v) < 0) return false;
  return true;
}

bool Cone::contains_cone(const Cone& other) const {
  for (const auto& r : other.rays_)
    if (!contains(r)) return false;
  return true;
}

Index Cone::dim() const {
  if (rays_.empty()) return 0;
  return lattice::rank(rows_matrix(d_, rays_));
}

std::vector<IntVector> Cone::lineality_basis() const {
  return lattice::lattice_basis(lattice::kernel_basis(rows_matrix(d_, dual_rays_)), d_);
}

bool cone_less(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) return a.ambient_rank() < b.ambient_rank();
  if (a.rays().size() != b.rays().size()) return a.rays().size() < b.rays().size();
  for (size_t i = 0; i < a.rays().size(); ++i) {
    if (a.rays()[i] != b.rays()[i]) return lex_less(a.rays()[i], b.rays()[i]);
  }
  return false;
}

Cone dual_cone(const Cone& c) {
  Cone r;
  r.d_ = c.d_;
  r.rays_ = c.dual_rays_;
  r.dual_rays_ = c.rays_;
  return r;
}

Cone cone_intersection(const Cone& a, const Cone& b) {
  assert(a.d_ == b.d_);
  std::vector<IntVector> sum = a.dual_rays_;
  sum.insert(sum.end(), b.dual_rays_.begin(), b.dual_rays_.end());
  return dual_cone(Cone::from_rays(a.d_, sum));
}

std::vector<Face> faces(const Cone& c) {
  const auto& duals = c.dual_rays();
  const size_t k = duals.size();
  assert(k < 24);
  std::set<std::vector<Index>> seen;
  std::vector<Face> out;
  for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
    std::vector<Index> tight_rays;
    for (size_t i = 0; i < c.rays().size(); ++i) {
      bool on = true;
      for (size_t j = 0; j < k && on; ++j)
        if (mask & (size_t(1) << j))
          if (duals[j].dot(c.rays()[i]) != 0) on = false;
      if (on) tight_rays.push_back(static_cast<Index>(i));
    }
    if (seen.insert(tight_rays).second) {
      std::vector<IntVector> gens;
      for (Index i : tight_rays) gens.push_back(c.rays()[static_cast<size_t>(i)]);
      out.push_back({Cone::from_rays(c.ambient_rank(), gens), tight_rays});
    }
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.ray_set.size() != b.ray_set.size()) return a.ray_set.size() < b.ray_set.size();
    return a.ray_set < b.ray_set;
  });
  return out;
}

bool is_strongly_convex(const Cone& c) {
  if (c.rays().empty()) return true;
  return lattice::kernel_basis(rows_matrix(c.ambient_rank(), c.dual_rays())).empty();
}

namespace {

// grading from the dual: strictly positive on every nonzero cone point when
// the cone is pointed
IntVector interior_grading(const Cone& c) {
  IntVector w = IntVector::Zero(c.ambient_rank());
  for (const auto& u : c.dual_rays()) w += u;
  return w;
}

void enumerate_box(const IntVector& lo, const IntVector& hi, Index coord, IntVector& cur,
                   const std::function<void(const IntVector&)>& fn) {
  if (coord == cur.size()) {
    fn(cur);
    return;
  }
  for (Int x = lo(coord); x <= hi(coord); ++x) {
    cur(coord) = x;
    enumerate_box(lo, hi, coord + 1, cur, fn);
  }
}

}  // namespace

std::vector<IntVector> hilbert_basis(const Cone& c) {
  if (!is_strongly_convex(c))
    throw NotStronglyConvex("hilbert_basis requires a strongly convex cone");
  const Index d = c.ambient_rank();
  if (c.rays().empty()) return {};

  // every irreducible lattice point lies in the zonotope of the primitive rays
  IntVector lo = IntVector::Zero(d), hi = IntVector::Zero(d);
  for (const auto& r : c.rays())
    for (Index j = 0; j < d; ++j) {
      if (r(j) < 0) lo(j) += r(j);
      if (r(j) > 0) hi(j) += r(j);
    }

  IntVector w = interior_grading(c);
  std::vector<IntVector> cand;
  IntVector cur(d);
  enumerate_box(lo, hi, 0, cur, [&](const IntVector& v) {
    if (!is_zero(v) && c.contains(v)) cand.push_back(v);
  });
  std::sort(cand.begin(), cand.end(), [&](const IntVector& a, const IntVector& b) {
    Int wa = w.dot(a), wb = w.dot(b);
    if (wa != wb) return wa < wb;
    return lex_less(a, b);
  });

  std::vector<IntVector> basis;
  for (const auto& v : cand) {
    bool reducible = false;
    for (const auto& h : basis) {
      IntVector rest = v - h;
      if (!is_zero(rest) && c.contains(rest)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(v);
  }
  return basis;
}

std::vector<IntVector> lattice_point_generators(const Cone& c) {
  if (is_strongly_convex(c)) return hilbert_basis(c);
  const Index d = c.ambient_rank();
  std::vector<IntVector> lin = c.lineality_basis();
  lattice::SaturatedQuotient q(lin, d);
  std::vector<IntVector> img_rays;
  for (const auto& r : c.rays()) {
    IntVector u = q.project(r);
    if (!is_zero(u)) img_rays.push_back(u);
  }
  Cone quot = Cone::from_rays(q.quot_rank(), img_rays);
  std::vector<IntVector> out;
  for (const auto& l : lin) {
    out.push_back(l);
    out.push_back(IntVector(-l));
  }
  for (const auto& h : hilbert_basis(quot)) out.push_back(q.section(h));
  return sorted_unique(std::move(out));
}

Polytope Polytope::from_points(Index ambient_rank, const std::vector<IntVector>& points) {
  Polytope p;
  p.d_ = ambient_rank;
  if (points.empty()) throw DegeneratePolytope("polytope needs at least one point");
  std::vector<IntVector> homog;
  for (const auto& pt : points) {
    if (pt.size() != ambient_rank) throw Error("point dimension does not match ambient rank");
    IntVector h(ambient_rank + 1);
    h.head(ambient_rank) = pt;
    h(ambient_rank) = 1;
    homog.push_back(h);
  }
  Cone c = Cone::from_rays(ambient_rank + 1, homog);
  for (const auto& r : c.rays()) {
    if (r(ambient_rank) == 1) p.vertices_.push_back(r.head(ambient_rank));
  }
  p.vertices_ = sorted_unique(std::move(p.vertices_));
  return p;
}

void Polytope::require_full_dimensional() const {
  if (vertices_.size() < static_cast<size_t>(d_) + 1)
    throw DegeneratePolytope("fewer than rank+1 affinely independent vertices");
  std::vector<IntVector> diffs;
  for (size_t i = 1; i < vertices_.size(); ++i) diffs.push_back(vertices_[i] - vertices_[0]);
  if (lattice::rank(cols_matrix(d_, diffs)) != d_)
    throw DegeneratePolytope("fewer than rank+1 affinely independent vertices");
}

ClassicFan ClassicFan::from_maximal(Index lattice_rank, const std::vector<Cone>& maximal) {
  std::vector<Cone> all;
  for (const auto& c : maximal)
    for (const auto& f : faces(c)) all.push_back(f.cone);
  std::sort(all.begin(), all.end(), cone_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return ClassicFan{lattice_rank, std::move(all)};
}

std::vector<Index> ClassicFan::maximal_indices() const {
  std::vector<Index> out;
  for (size_t i = 0; i < cones.size(); ++i) {
    bool proper_face = false;
    for (size_t j = 0; j < cones.size() && !proper_face; ++j) {
      if (i == j) continue;
      for (const auto& f : faces(cones[j]))
        if (f.cone == cones[i] && !(cones[j] == cones[i])) {
          proper_face = true;
          break;
        }
    }
    if (!proper_face) out.push_back(static_cast<Index>(i));
  }
  return out;
}

FanCheck validate_classic_fan(Index lattice_rank, const std::vector<Cone>& cones) {
  for (size_t i = 0; i < cones.size(); ++i) {
    if (cones[i].ambient_rank() != lattice_rank)
      return {false, "cone ambient rank differs from lattice rank", static_cast<Index>(i), -1};
    if (!is_strongly_convex(cones[i]))
      return {false, "cone is not strongly convex", static_cast<Index>(i), -1};
    for (size_t j = i + 1; j < cones.size(); ++j)
      if (cones[i] == cones[j])
        return {false, "duplicate cone", static_cast<Index>(i), static_cast<Index>(j)};
  }
  auto find = [&](const Cone& c) -> Index {
    for (size_t k = 0; k < cones.size(); ++k)
      if (cones[k] == c) return static_cast<Index>(k);
    return -1;
  };
  for (size_t i = 0; i < cones.size(); ++i) {
    for (const auto& f : faces(cones[i]))
      if (find(f.cone) < 0)
        return {false, "not closed under taking faces", static_cast<Index>(i), -1};
  }
  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = i + 1; j < cones.size(); ++j) {
      Cone w = cone_intersection(cones[i], cones[j]);
      bool face_i = false, face_j = false;
      for (const auto& f : faces(cones[i]))
        if (f.cone == w) face_i = true;
      for (const auto& f : faces(cones[j]))
        if (f.cone == w) face_j = true;
      if (!face_i || !face_j)
        return {false, "intersection is not a face of both cones", static_cast<Index>(i),
                static_cast<Index>(j)};
    }
  return {};
}

FanCheck validate_classic_fan(const ClassicFan& fan) {
  return validate_classic_fan(fan.lattice_rank, fan.cones);
}

Cone vertex_normal_cone(const Polytope& p, size_t vertex_index) {
  const auto& vs = p.vertices();
  assert(vertex_index < vs.size());
  std::vector<IntVector> diffs;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i == vertex_index) continue;
    diffs.push_back(vs[i] - vs[vertex_index]);
  }
  return dual_cone(Cone::from_rays(p.ambient_rank(), diffs));
}

ClassicFan normal_fan(const Polytope& p) {
  p.require_full_dimensional();
  std::vector<Cone> maximal;
  for (size_t i = 0; i < p.vertices().size(); ++i) maximal.push_back(vertex_normal_cone(p, i));
  return ClassicFan::from_maximal(p.ambient_rank(), maximal);
}

bool is_complete(const ClassicFan& fan) {
  const Index d = fan.lattice_rank;
  std::vector<Index> max = fan.maximal_indices();
  if (max.empty()) return false;
  for (Index i : max)
    if (fan.cones[static_cast<size_t>(i)].dim() != d) return false;
  // every ridge must be shared by exactly two maximal cones
  std::map<std::string, int> ridge_count;
  auto key_of = [&](const Cone& c) {
    std::string key;
    for (const auto& r : c.rays()) key += to_string(r);
    return key;
  };
  for (Index i : max)
    for (const auto& f : faces(fan.cones[static_cast<size_t>(i)]))
      if (f.cone.dim() == d - 1) ridge_count[key_of(f.cone)]++;
  for (const auto& [k, n] : ridge_count)
    if (n != 2) return false;
  return !ridge_count.empty() || d == 0;
}

std::vector<std::vector<Index>> polytope_faces(const Polytope& p) {
  p.require_full_dimensional();
  const Index d = p.ambient_rank();
  std::vector<IntVector> homog;
  for (const auto& v : p.vertices()) {
    IntVector h(d + 1);
    h.head(d) = v;
    h(d) = 1;
    homog.push_back(h);
  }
  Cone c = Cone::from_rays(d + 1, homog);
  // cone rays are exactly the homogenized vertices; map ray index -> vertex index
  std::vector<size_t> ray_to_vertex(c.rays().size());
  for (size_t i = 0; i < c.rays().size(); ++i) {
    IntVector v = c.rays()[i].head(d);
    auto it = std::lower_bound(p.vertices().begin(), p.vertices().end(), v, LexLess{});
    assert(it != p.vertices().end() && *it == v);
    ray_to_vertex[i] = static_cast<size_t>(it - p.vertices().begin());
  }
  std::vector<std::vector<Index>> out;
  for (const auto& f : faces(c)) {
    if (f.ray_set.empty()) continue;  // apex <-> empty face, not listed
    std::vector<Index> vs;
    for (Index ri : f.ray_set) vs.push_back(static_cast<Index>(ray_to_vertex[static_cast<size_t>(ri)]));
    std::sort(vs.begin(), vs.end());
    out.push_back(vs);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace monofan::polyhedral
