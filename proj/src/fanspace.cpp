#include "monofan/fanspace.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

#include "monofan/errors.hpp"
#include "monofan/lattice.hpp"

namespace monofan::fanspace {

using monoid::AffineMonoid;
using monoid::PrimeIdeal;
using polyhedral::Cone;

// ---------------------------------------------------------------------------
// construction

MonoidedSpace MonoidedSpace::build(std::vector<std::string> names,
                                   std::vector<AffineMonoid> stalks,
                                   const std::vector<std::pair<size_t, size_t>>& relations,
                                   const std::map<std::pair<size_t, size_t>, IntMatrix>& given_maps) {
  MonoidedSpace x;
  const size_t n = stalks.size();
  if (names.size() != n) throw IllFormedSpace("point names and stalks differ in count");
  x.names_ = std::move(names);
  x.stalks_ = std::move(stalks);
  x.leq_.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i) x.leq_[i][i] = 1;
  for (auto [p, q] : relations) {
    if (p >= n || q >= n) throw IllFormedSpace("relation names an unknown point");
    x.leq_[p][q] = 1;
  }
  // reflexive-transitive closure, then antisymmetry
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (x.leq_[i][k])
        for (size_t j = 0; j < n; ++j)
          if (x.leq_[k][j]) x.leq_[i][j] = 1;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (x.leq_[i][j] && x.leq_[j][i]) throw IllFormedSpace("order is not antisymmetric");

  // fill maps for every comparable pair, shortest intervals first, and check
  // that parallel paths agree
  auto interval_size = [&](size_t p, size_t q) {
    size_t c = 0;
    for (size_t r = 0; r < n; ++r)
      if (x.leq_[p][r] && x.leq_[r][q]) ++c;
    return c;
  };
  std::vector<std::pair<size_t, size_t>> pairs;  // (q, p) with p < q
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q)
      if (p != q && x.leq_[p][q]) pairs.emplace_back(q, p);
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return interval_size(a.second, a.first) < interval_size(b.second, b.first);
  });
  for (auto [q, p] : pairs) {
    std::optional<IntMatrix> m;
    auto consider = [&](const IntMatrix& cand) {
      if (!m)
        m = cand;
      else if (*m != cand)
        throw IllFormedSpace("restriction maps do not agree along parallel paths");
    };
    if (auto it = given_maps.find({q, p}); it != given_maps.end()) consider(it->second);
    for (size_t r = 0; r < n; ++r) {
      if (r == p || r == q || !x.leq_[p][r] || !x.leq_[r][q]) continue;
      auto up = x.maps_.find({q, r});
      auto lo = x.maps_.find({r, p});
      if (up != x.maps_.end() && lo != x.maps_.end()) consider(IntMatrix(lo->second * up->second));
    }
    if (!m) throw IllFormedSpace("no restriction map given for a covering pair");
    if (m->rows() != x.stalks_[p].ambient_rank() || m->cols() != x.stalks_[q].ambient_rank())
      throw IllFormedSpace("restriction map has wrong dimensions");
    x.maps_.emplace(std::make_pair(q, p), *m);
  }

  // every restriction map embeds the stalk into the target
  for (auto& [key, A] : x.maps_) {
    auto [q, p] = key;
    const AffineMonoid& src = x.stalks_[q];
    const AffineMonoid& dst = x.stalks_[p];
    for (const auto& g : src.generators())
      if (!dst.contains(IntVector(A * g)))
        throw IllFormedSpace("restriction map does not send the stalk into the target");
    auto basis = monoid::group_completion(src).basis;
    if (!basis.empty()) {
      IntMatrix B = cols_matrix(src.ambient_rank(), basis);
      if (lattice::rank(IntMatrix(A * B)) != static_cast<Index>(basis.size()))
        throw IllFormedSpace("restriction map is not injective on the stalk group");
    }
  }
  return x;
}

MonoidedSpace MonoidedSpace::build_with_identities(
    std::vector<std::string> names, std::vector<AffineMonoid> stalks,
    const std::vector<std::pair<size_t, size_t>>& relations) {
  std::map<std::pair<size_t, size_t>, IntMatrix> maps;
  for (auto [p, q] : relations) {
    if (p == q) continue;
    Index d = stalks[p].ambient_rank();
    maps.emplace(std::make_pair(q, p), IntMatrix::Identity(d, d));
  }
  return build(std::move(names), std::move(stalks), relations, maps);
}

IntMatrix MonoidedSpace::restriction(size_t q, size_t p) const {
  if (p == q) {
    Index d = stalks_[p].ambient_rank();
    return IntMatrix::Identity(d, d);
  }
  auto it = maps_.find({q, p});
  if (it == maps_.end()) throw Error("restriction requested for incomparable points");
  return it->second;
}

std::vector<std::pair<size_t, size_t>> MonoidedSpace::covers() const {
  std::vector<std::pair<size_t, size_t>> out;
  const size_t n = point_count();
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q) {
      if (p == q || !le(p, q)) continue;
      bool cover = true;
      for (size_t r = 0; r < n && cover; ++r)
        if (r != p && r != q && le(p, r) && le(r, q)) cover = false;
      if (cover) out.emplace_back(p, q);
    }
  return out;
}

std::vector<size_t> MonoidedSpace::minimal_points() const {
  std::vector<size_t> out;
  for (size_t p = 0; p < point_count(); ++p) {
    bool min = true;
    for (size_t r = 0; r < point_count(); ++r)
      if (r != p && le(r, p)) min = false;
    if (min) out.push_back(p);
  }
  return out;
}

std::vector<size_t> MonoidedSpace::maximal_points() const {
  std::vector<size_t> out;
  for (size_t p = 0; p < point_count(); ++p) {
    bool max = true;
    for (size_t r = 0; r < point_count(); ++r)
      if (r != p && le(p, r)) max = false;
    if (max) out.push_back(p);
  }
  return out;
}

std::vector<size_t> MonoidedSpace::down_set(size_t q) const {
  std::vector<size_t> out;
  for (size_t p = 0; p < point_count(); ++p)
    if (le(p, q)) out.push_back(p);
  return out;
}

bool MonoidedSpace::is_down_set(const std::vector<size_t>& pts) const {
  std::set<size_t> in(pts.begin(), pts.end());
  for (size_t q : pts)
    for (size_t p = 0; p < point_count(); ++p)
      if (le(p, q) && !in.count(p)) return false;
  return true;
}

std::vector<std::vector<size_t>> MonoidedSpace::components() const {
  const size_t n = point_count();
  std::vector<size_t> comp(n, n);
  size_t next = 0;
  for (size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      size_t p = stack.back();
      stack.pop_back();
      for (size_t r = 0; r < n; ++r)
        if (comp[r] == n && (le(p, r) || le(r, p))) {
          comp[r] = next;
          stack.push_back(r);
        }
    }
    ++next;
  }
  std::vector<std::vector<size_t>> out(next);
  for (size_t p = 0; p < n; ++p) out[comp[p]].push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// spec

std::vector<PrimeIdeal> spec_point_primes(const AffineMonoid& S) {
  std::vector<PrimeIdeal> ps = monoid::primes(S);
  // generic point (empty ideal: complement is all of S) first
  std::sort(ps.begin(), ps.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.complement_face.size() != b.complement_face.size())
      return a.complement_face.size() > b.complement_face.size();
    return a.complement_face < b.complement_face;
  });
  return ps;
}

MonoidedSpace spec(const AffineMonoid& S) {
  std::vector<PrimeIdeal> ps = spec_point_primes(S);
  std::vector<std::string> names;
  std::vector<AffineMonoid> stalks;
  for (size_t i = 0; i < ps.size(); ++i) {
    names.push_back("p" + std::to_string(i));
    stalks.push_back(monoid::localize_at_prime(S, ps[i]));
  }
  std::vector<std::pair<size_t, size_t>> rel;
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = 0; j < ps.size(); ++j) {
      if (i == j) continue;
      // p_i <= p_j iff the ideal p_i is contained in p_j, i.e. complement faces reversed
      bool le = std::includes(ps[i].complement_face.begin(), ps[i].complement_face.end(),
                              ps[j].complement_face.begin(), ps[j].complement_face.end());
      if (le) rel.emplace_back(i, j);
    }
  return MonoidedSpace::build_with_identities(std::move(names), std::move(stalks), rel);
}

std::vector<size_t> spec_basic_open(const AffineMonoid& S, const IntVector& f) {
  if (!S.contains(f)) throw NotAMember("basic open of an element outside the monoid");
  std::vector<PrimeIdeal> ps = spec_point_primes(S);
  std::vector<size_t> out;
  for (size_t i = 0; i < ps.size(); ++i) {
    std::vector<IntVector> face_gens;
    for (Index gi : ps[i].complement_face)
      face_gens.push_back(S.generators()[static_cast<size_t>(gi)]);
    AffineMonoid face = AffineMonoid::from_generators(S.ambient_rank(), face_gens);
    if (face.contains(f)) out.push_back(i);
  }
  return out;
}

std::vector<size_t> minimal_open(const MonoidedSpace& X, size_t p) { return X.down_set(p); }

// ---------------------------------------------------------------------------
// model coordinates

IrreducibleModel irreducible_model(const MonoidedSpace& X) {
  auto mins = X.minimal_points();
  if (mins.size() != 1) throw NotIrreducible("space does not have a unique minimal point");
  const size_t g = mins[0];
  IrreducibleModel m;
  m.generic = g;
  auto gc = monoid::group_completion(X.stalk(g));
  m.rank = gc.rank;
  IntMatrix B = cols_matrix(X.stalk(g).ambient_rank(), gc.basis);
  for (size_t p = 0; p < X.point_count(); ++p) {
    IntMatrix A = X.restriction(p, g);
    std::vector<IntVector> coords;
    for (const auto& gen : X.stalk(p).generators()) {
      auto c = lattice::solve_integer(B, IntVector(A * gen));
      if (!c.has_value())
        throw NotIrreducible("a stalk does not embed into the generic stalk group");
      coords.push_back(*c);
    }
    m.stalks.push_back(AffineMonoid::from_generators(m.rank, coords));
  }
  return m;
}

// ---------------------------------------------------------------------------
// sections

namespace {

// monoid of lattice points of { y : rows * y >= 0 } in Z^r
AffineMonoid inequality_monoid(Index r, const std::vector<IntVector>& rows) {
  Cone dual_gen = Cone::from_rays(r, rows);
  Cone c = polyhedral::dual_cone(dual_gen);
  return AffineMonoid::from_generators(r, polyhedral::lattice_point_generators(c));
}

}  // namespace

AffineMonoid sections(const MonoidedSpace& X, const std::vector<size_t>& open_set) {
  if (open_set.empty()) throw Error("sections over the empty set are not represented");
  if (!X.is_down_set(open_set)) throw Error("sections requested over a non-open subset");
  auto comps = X.components();
  const std::vector<size_t>* comp = nullptr;
  for (const auto& c : comps) {
    bool any = false;
    for (size_t p : open_set)
      if (std::find(c.begin(), c.end(), p) != c.end()) any = true;
    if (!any) continue;
    if (comp) throw NotIrreducible("open set meets several components");
    comp = &c;
  }
  // unique minimal point of the component
  std::vector<size_t> mins;
  for (size_t p : *comp) {
    bool min = true;
    for (size_t r : *comp)
      if (r != p && X.le(r, p)) min = false;
    if (min) mins.push_back(p);
  }
  if (mins.size() != 1) throw NotIrreducible("component does not have a unique minimal point");
  const size_t gamma = mins[0];

  std::vector<size_t> maxpts;
  for (size_t p : open_set) {
    bool max = true;
    for (size_t q : open_set)
      if (q != p && X.le(p, q)) max = false;
    if (max) maxpts.push_back(p);
  }

  const Index d = X.stalk(gamma).ambient_rank();
  auto embed = [&](size_t p) {
    IntMatrix A = X.restriction(p, gamma);
    std::vector<IntVector> gens;
    for (const auto& g : X.stalk(p).generators()) gens.push_back(IntVector(A * g));
    return AffineMonoid::from_generators(d, gens);
  };

  if (maxpts.size() == 1) return embed(maxpts[0]);

  std::vector<AffineMonoid> ts;
  for (size_t p : maxpts) ts.push_back(embed(p));

  // the saturated upper bound: (intersection of the cones) n (intersection of
  // the groups)
  std::vector<IntVector> lat = monoid::group_completion(ts[0]).basis;
  for (size_t i = 1; i < ts.size(); ++i)
    lat = lattice::lattice_intersection(lat, monoid::group_completion(ts[i]).basis, d);
  if (lat.empty())
    return AffineMonoid::from_generators(d, {});
  Cone cone_meet = ts[0].cone();
  for (size_t i = 1; i < ts.size(); ++i) cone_meet = polyhedral::cone_intersection(cone_meet, ts[i].cone());
  IntMatrix B = cols_matrix(d, lat);
  const Index r = static_cast<Index>(lat.size());
  std::vector<IntVector> rows;
  for (const auto& w : cone_meet.dual_rays()) rows.push_back(IntVector((w.transpose() * B).transpose()));
  AffineMonoid bound = inequality_monoid(r, rows);

  bool all_saturated = true;
  for (const auto& t : ts)
    if (!monoid::is_saturated(t)) all_saturated = false;
  std::vector<IntVector> gens;
  if (all_saturated) {
    for (const auto& h : bound.generators()) gens.push_back(IntVector(B * h));
  } else {
    // bounded filtering: walk the upper-bound monoid by grading and keep the
    // elements lying in every stalk; complete only up to the stated bound
    Int limit = 0;
    for (const auto& h : bound.nonunit_generators()) {
      Int w = bound.grading().dot(h);
      if (w > limit) limit = w;
    }
    limit *= 3;
    std::set<IntVector, LexLess> seen;
    std::vector<IntVector> frontier{IntVector::Zero(r)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
      IntVector cur = frontier.back();
      frontier.pop_back();
      for (const auto& h : bound.generators()) {
        IntVector nxt = cur + h;
        if (bound.grading().dot(nxt) > limit) continue;
        if (seen.insert(nxt).second) frontier.push_back(nxt);
      }
    }
    for (const auto& y : seen) {
      if (is_zero(y)) continue;
      IntVector v = B * y;
      bool in_all = true;
      for (const auto& t : ts)
        if (!t.contains(v)) in_all = false;
      if (in_all) gens.push_back(v);
    }
  }
  return AffineMonoid::from_generators(d, gens);
}

// ---------------------------------------------------------------------------
// classic fans

MonoidedSpace from_classic_fan(const polyhedral::ClassicFan& fan) {
  polyhedral::FanCheck chk = validate_classic_fan(fan);
  if (!chk.ok) throw InvalidFan("not a classic fan: " + chk.message);
  const Index d = fan.lattice_rank;
  std::vector<std::string> names;
  std::vector<AffineMonoid> stalks;
  for (size_t i = 0; i < fan.cones.size(); ++i) {
    names.push_back("c" + std::to_string(i));
    Cone dual = polyhedral::dual_cone(fan.cones[i]);
    stalks.push_back(AffineMonoid::from_generators(d, polyhedral::lattice_point_generators(dual)));
  }
  std::vector<std::pair<size_t, size_t>> rel;
  for (size_t i = 0; i < fan.cones.size(); ++i)
    for (size_t j = 0; j < fan.cones.size(); ++j) {
      if (i == j) continue;
      for (const auto& f : polyhedral::faces(fan.cones[j]))
        if (f.cone == fan.cones[i]) {
          rel.emplace_back(i, j);  // a face is a generization
          break;
        }
    }
  return MonoidedSpace::build_with_identities(std::move(names), std::move(stalks), rel);
}

// ---------------------------------------------------------------------------
// the fan predicate

namespace {

// the prime of stalk(sigma) made of the elements that stop being units at tau
std::optional<PrimeIdeal> induced_prime(const MonoidedSpace& X, size_t sigma, size_t tau) {
  const AffineMonoid& S = X.stalk(sigma);
  const AffineMonoid& T = X.stalk(tau);
  IntMatrix A = X.restriction(sigma, tau);
  PrimeIdeal p;
  for (size_t i = 0; i < S.generators().size(); ++i) {
    IntVector img = A * S.generators()[i];
    if (T.grading().dot(img) == 0) p.complement_face.push_back(static_cast<Index>(i));
  }
  if (!monoid::is_prime_of(S, p)) return std::nullopt;
  return p;
}

bool localization_matches(const MonoidedSpace& X, size_t sigma, size_t tau, const PrimeIdeal& p) {
  const AffineMonoid& S = X.stalk(sigma);
  const AffineMonoid& T = X.stalk(tau);
  IntMatrix A = X.restriction(sigma, tau);
  AffineMonoid loc = monoid::localize_at_prime(S, p);
  // A(loc) is inside T by construction of the prime; T must also pull back
  auto basis = monoid::group_completion(loc).basis;
  if (basis.empty()) return T.is_zero_monoid();
  IntMatrix AB = A * cols_matrix(S.ambient_rank(), basis);
  for (const auto& h : T.generators()) {
    auto y = lattice::solve_integer(AB, h);
    if (!y.has_value()) return false;
    IntVector x = cols_matrix(S.ambient_rank(), basis) * *y;
    if (!loc.contains(x)) return false;
  }
  for (const auto& g : loc.generators())
    if (!T.contains(IntVector(A * g))) return false;
  return true;
}

}  // namespace

FanDecision is_fan(const MonoidedSpace& X) {
  FanCertificate cert;
  for (size_t sigma = 0; sigma < X.point_count(); ++sigma) {
    std::vector<size_t> below = X.down_set(sigma);
    std::vector<PrimeIdeal> ps = monoid::primes(X.stalk(sigma));
    if (below.size() != ps.size())
      return {std::nullopt, sigma,
              "minimal open has " + std::to_string(below.size()) + " points but Spec of the stalk has " +
                  std::to_string(ps.size())};
    FanCertificate::PointData pd;
    pd.point = sigma;
    std::set<std::vector<Index>> used;
    for (size_t tau : below) {
      auto p = induced_prime(X, sigma, tau);
      if (!p.has_value())
        return {std::nullopt, sigma, "unit complement at " + X.names()[tau] + " is not a prime"};
      if (!used.insert(p->complement_face).second)
        return {std::nullopt, sigma, "two points induce the same prime"};
      if (!localization_matches(X, sigma, tau, *p))
        return {std::nullopt, sigma,
                "stalk at " + X.names()[tau] + " is not the localization at its prime"};
      pd.correspondence.emplace_back(tau, *p);
    }
    // order compatibility: tau <= tau' must match inclusion of primes
    for (const auto& [t1, p1] : pd.correspondence)
      for (const auto& [t2, p2] : pd.correspondence) {
        bool le_pts = X.le(t1, t2);
        bool le_primes = std::includes(p1.complement_face.begin(), p1.complement_face.end(),
                                       p2.complement_face.begin(), p2.complement_face.end());
        if (le_pts != le_primes)
          return {std::nullopt, sigma, "prime correspondence does not respect the order"};
      }
    cert.points.push_back(std::move(pd));
  }
  return {cert, 0, ""};
}

bool check_certificate(const MonoidedSpace& X, const FanCertificate& cert) {
  if (cert.points.size() != X.point_count()) return false;
  for (const auto& pd : cert.points) {
    std::vector<size_t> below = X.down_set(pd.point);
    if (below.size() != pd.correspondence.size()) return false;
    std::set<std::vector<Index>> used;
    for (const auto& [tau, p] : pd.correspondence) {
      if (!monoid::is_prime_of(X.stalk(pd.point), p)) return false;
      auto q = induced_prime(X, pd.point, tau);
      if (!q.has_value() || !(*q == p)) return false;
      if (!used.insert(p.complement_face).second) return false;
      if (!localization_matches(X, pd.point, tau, p)) return false;
    }
    if (used.size() != monoid::primes(X.stalk(pd.point)).size()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// gluing

namespace {

struct MergeForest {
  // per global node: parent and the iso from this node's stalk ambient to the
  // parent's stalk ambient
  std::vector<size_t> parent;
  std::vector<IntMatrix> to_parent;

  explicit MergeForest(const std::vector<Index>& dims) {
    parent.resize(dims.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    for (size_t i = 0; i < dims.size(); ++i)
      to_parent.push_back(IntMatrix::Identity(dims[i], dims[i]));
  }

  std::pair<size_t, IntMatrix> find(size_t x) {
    if (parent[x] == x) return {x, IntMatrix::Identity(to_parent[x].rows(), to_parent[x].rows())};
    auto [root, up] = find(parent[x]);
    to_parent[x] = up * to_parent[x];
    parent[x] = root;
    return {root, to_parent[x]};
  }
};

}  // namespace

MonoidedSpace glue(const std::vector<MonoidedSpace>& pieces,
                   const std::vector<Identification>& ids) {
  std::vector<size_t> offset;
  size_t total = 0;
  for (const auto& p : pieces) {
    offset.push_back(total);
    total += p.point_count();
  }
  auto global = [&](size_t piece, size_t pt) { return offset[piece] + pt; };
  auto stalk_of = [&](size_t g) -> const AffineMonoid& {
    size_t piece = 0;
    while (piece + 1 < pieces.size() && g >= offset[piece + 1]) ++piece;
    return pieces[piece].stalk(g - offset[piece]);
  };

  std::vector<Index> dims;
  for (const auto& p : pieces)
    for (size_t i = 0; i < p.point_count(); ++i) dims.push_back(p.stalk(i).ambient_rank());
  MergeForest forest(dims);

  for (const auto& id : ids) {
    if (id.piece_a >= pieces.size() || id.piece_b >= pieces.size())
      throw IncompatibleIdentification("identification names an unknown piece");
    if (id.point_a >= pieces[id.piece_a].point_count() ||
        id.point_b >= pieces[id.piece_b].point_count())
      throw IncompatibleIdentification("identification names an unknown point");
    const AffineMonoid& sa = pieces[id.piece_a].stalk(id.point_a);
    const AffineMonoid& sb = pieces[id.piece_b].stalk(id.point_b);
    const IntMatrix& A = id.stalk_iso;
    if (A.rows() != sb.ambient_rank() || A.cols() != sa.ambient_rank() ||
        A.rows() != A.cols() || !lattice::is_unimodular(A))
      throw IncompatibleIdentification("stalk identification must be a square unimodular map");
    for (const auto& g : sa.generators())
      if (!sb.contains(IntVector(A * g)))
        throw IncompatibleIdentification("identification does not map the stalk into its partner");
    IntMatrix Ainv = lattice::unimodular_inverse(A);
    for (const auto& h : sb.generators())
      if (!sa.contains(IntVector(Ainv * h)))
        throw IncompatibleIdentification("identification is not onto its partner stalk");

    size_t ga = global(id.piece_a, id.point_a), gb = global(id.piece_b, id.point_b);
    auto [ra, Ta] = forest.find(ga);
    auto [rb, Tb] = forest.find(gb);
    if (ra == rb) {
      // already merged: the new identification must agree on the stalk group
      IntMatrix lhs = Ta, rhs = Tb * A;
      auto basis = monoid::group_completion(sa).basis;
      IntMatrix B = cols_matrix(sa.ambient_rank(), basis);
      if (IntMatrix(lhs * B) != IntMatrix(rhs * B))
        throw IncompatibleIdentification("identifications disagree on a merged point");
      continue;
    }
    forest.parent[ra] = rb;
    forest.to_parent[ra] = Tb * A * lattice::unimodular_inverse(Ta);
  }

  // representatives, in global order
  std::vector<size_t> roots;
  std::vector<size_t> root_index(total, 0);
  for (size_t g = 0; g < total; ++g)
    if (forest.find(g).first == g) {
      root_index[g] = roots.size();
      roots.push_back(g);
    }

  std::vector<std::string> names;
  std::vector<AffineMonoid> stalks;
  for (size_t g : roots) {
    size_t piece = 0;
    while (piece + 1 < pieces.size() && g >= offset[piece + 1]) ++piece;
    names.push_back("g" + std::to_string(root_index[g]));
    stalks.push_back(stalk_of(g));
  }

  std::vector<std::pair<size_t, size_t>> rel;
  std::map<std::pair<size_t, size_t>, IntMatrix> maps;
  for (size_t piece = 0; piece < pieces.size(); ++piece) {
    const MonoidedSpace& P = pieces[piece];
    for (size_t p = 0; p < P.point_count(); ++p)
      for (size_t q = 0; q < P.point_count(); ++q) {
        if (p == q || !P.le(p, q)) continue;
        auto [rp, Tp] = forest.find(global(piece, p));
        auto [rq, Tq] = forest.find(global(piece, q));
        size_t ip = root_index[rp], iq = root_index[rq];
        IntMatrix m = Tp * P.restriction(q, p) * lattice::unimodular_inverse(Tq);
        if (ip == iq) {
          // comparable points were merged; the induced self-map must be trivial
          auto basis = monoid::group_completion(stalks[ip]).basis;
          IntMatrix B = cols_matrix(stalks[ip].ambient_rank(), basis);
          if (IntMatrix(m * B) != B)
            throw IncompatibleIdentification("comparable points merged with a nontrivial twist");
          continue;
        }
        rel.emplace_back(ip, iq);
        auto key = std::make_pair(iq, ip);
        auto it = maps.find(key);
        if (it == maps.end())
          maps.emplace(key, m);
        else if (it->second != m)
          throw IncompatibleIdentification("pieces disagree on a restriction map after merging");
      }
  }
  try {
    return MonoidedSpace::build(std::move(names), std::move(stalks), rel, maps);
  } catch (const IllFormedSpace& e) {
    throw IncompatibleIdentification(std::string("glued data is not a monoided space: ") +
                                     e.what());
  }
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

struct ComponentModel {
  std::vector<size_t> pts;          // component points, ascending
  size_t generic = 0;               // index into pts-coordinates? stored as space index
  Index rank = 0;
  std::map<size_t, AffineMonoid> stalks;  // space point -> model monoid
};

ComponentModel component_model(const MonoidedSpace& X, const std::vector<size_t>& comp) {
  std::vector<size_t> mins;
  for (size_t p : comp) {
    bool min = true;
    for (size_t r : comp)
      if (r != p && X.le(r, p)) min = false;
    if (min) mins.push_back(p);
  }
  if (mins.size() != 1)
    throw NotIrreducible("iso_check supports components with a unique minimal point only");
  ComponentModel m;
  m.pts = comp;
  m.generic = mins[0];
  auto gc = monoid::group_completion(X.stalk(m.generic));
  m.rank = gc.rank;
  IntMatrix B = cols_matrix(X.stalk(m.generic).ambient_rank(), gc.basis);
  for (size_t p : comp) {
    IntMatrix A = X.restriction(p, m.generic);
    std::vector<IntVector> coords;
    for (const auto& gen : X.stalk(p).generators()) {
      auto c = lattice::solve_integer(B, IntVector(A * gen));
      if (!c.has_value()) throw NotIrreducible("stalk does not embed into the generic group");
      coords.push_back(*c);
    }
    m.stalks.emplace(p, AffineMonoid::from_generators(m.rank, coords));
  }
  return m;
}

using Signature = std::tuple<size_t, size_t, Index, size_t, size_t>;

Signature point_signature(const MonoidedSpace& X, const std::vector<size_t>& comp, size_t p) {
  size_t below = 0, above = 0;
  for (size_t r : comp) {
    if (X.le(r, p)) ++below;
    if (X.le(p, r)) ++above;
  }
  auto gc = monoid::group_completion(X.stalk(p));
  return {below, above, gc.rank, X.stalk(p).unit_lattice().size(),
          monoid::minimal_generators(X.stalk(p)).size()};
}

bool component_iso(const MonoidedSpace& X, const std::vector<size_t>& cx, const MonoidedSpace& Y,
                   const std::vector<size_t>& cy) {
  if (cx.size() != cy.size()) return false;
  ComponentModel mx = component_model(X, cx);
  ComponentModel my = component_model(Y, cy);
  if (mx.rank != my.rank) return false;

  // enumerate poset isomorphisms compatible with cheap invariants
  std::map<size_t, Signature> sx, sy;
  for (size_t p : cx) sx.emplace(p, point_signature(X, cx, p));
  for (size_t q : cy) sy.emplace(q, point_signature(Y, cy, q));

  std::map<size_t, size_t> h;
  std::set<size_t> used;
  std::vector<size_t> order = cx;

  // pivot: the generic point when its stalk is not a group, else the first
  // maximal point in the component
  size_t pivot = mx.generic;
  if (mx.stalks.at(mx.generic).is_group()) {
    for (size_t p : cx) {
      bool max = true;
      for (size_t r : cx)
        if (r != p && X.le(p, r)) max = false;
      if (max) {
        pivot = p;
        break;
      }
    }
  }
  std::swap(order[0], *std::find(order.begin(), order.end(), pivot));

  std::function<bool(size_t, const std::optional<IntMatrix>&)> place =
      [&](size_t idx, const std::optional<IntMatrix>& A) -> bool {
    if (idx == order.size()) return true;
    size_t p = order[idx];
    for (size_t q : cy) {
      if (used.count(q)) continue;
      if (sx.at(p) != sy.at(q)) continue;
      bool order_ok = true;
      for (const auto& [pp, qq] : h) {
        if (X.le(p, pp) != Y.le(q, qq) || X.le(pp, p) != Y.le(qq, q)) order_ok = false;
      }
      if (!order_ok) continue;
      h.emplace(p, q);
      used.insert(q);
      if (idx == 0) {
        // enumerate stalk isomorphism candidates at the pivot; they are maps
        // of the whole model lattice
        if (monoid::group_completion(mx.stalks.at(p)).rank != mx.rank) {
          h.erase(p);
          used.erase(q);
          throw NotIrreducible("iso_check pivot stalk does not span the generic group");
        }
        for (const auto& cand : monoid::full_rank_iso_candidates(mx.stalks.at(p), my.stalks.at(q))) {
          if (place(idx + 1, cand)) return true;
        }
      } else {
        // the candidate must carry this model stalk onto the matched one
        std::vector<IntVector> img;
        for (const auto& g : mx.stalks.at(p).generators()) img.push_back(IntVector(*A * g));
        AffineMonoid mapped = AffineMonoid::from_generators(mx.rank, img);
        if (monoid::same_monoid(mapped, my.stalks.at(q)) && place(idx + 1, A)) return true;
      }
      h.erase(p);
      used.erase(q);
    }
    return false;
  };
  return place(0, std::nullopt);
}

}  // namespace

bool iso_check(const MonoidedSpace& X, const MonoidedSpace& Y) {
  if (X.point_count() != Y.point_count()) return false;
  auto cx = X.components(), cy = Y.components();
  if (cx.size() != cy.size()) return false;
  // match components by backtracking
  std::vector<char> used(cy.size(), 0);
  std::function<bool(size_t)> match = [&](size_t i) -> bool {
    if (i == cx.size()) return true;
    for (size_t j = 0; j < cy.size(); ++j) {
      if (used[j] || cx[i].size() != cy[j].size()) continue;
      if (component_iso(X, cx[i], Y, cy[j])) {
        used[j] = 1;
        if (match(i + 1)) return true;
        used[j] = 0;
      }
    }
    return false;
  };
  return match(0);
}

// ---------------------------------------------------------------------------
// morphisms and polytopes

bool is_local_hom(const MonoidMorphismData& phi) {
  const IntMatrix& A = phi.map;
  if (A.rows() != phi.target.ambient_rank() || A.cols() != phi.source.ambient_rank())
    throw IllFormedMorphism("lattice map has wrong dimensions");
  for (const auto& g : phi.source.generators())
    if (!phi.target.contains(IntVector(A * g)))
      throw IllFormedMorphism("map does not send the source monoid into the target");
  // units form a face, so checking generators decides locality
  for (size_t i = 0; i < phi.source.generators().size(); ++i) {
    if (phi.source.is_unit_generator(i)) continue;
    IntVector img = A * phi.source.generators()[i];
    if (phi.target.grading().dot(img) == 0) return false;  // non-unit became a unit
  }
  return true;
}

PolytopeFaceSpace polytope_face_space(const polyhedral::Polytope& p) {
  PolytopeFaceSpace out;
  out.faces = polyhedral::polytope_faces(p);
  const size_t n = out.faces.size();
  out.leq.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      // the star of a face is its minimal open: F <= G iff F contains G
      bool superset = std::includes(out.faces[i].begin(), out.faces[i].end(),
                                    out.faces[j].begin(), out.faces[j].end());
      if (superset) out.leq[i][j] = 1;
    }

  polyhedral::ClassicFan nf = polyhedral::normal_fan(p);
  out.fan_space = from_classic_fan(nf);

  // face F -> intersection of the normal cones of its vertices
  out.to_fan_point.assign(n, 0);
  bool ok = true;
  for (size_t i = 0; i < n; ++i) {
    Cone sigma = polyhedral::vertex_normal_cone(p, static_cast<size_t>(out.faces[i][0]));
    for (size_t k = 1; k < out.faces[i].size(); ++k)
      sigma = polyhedral::cone_intersection(
          sigma, polyhedral::vertex_normal_cone(p, static_cast<size_t>(out.faces[i][k])));
    size_t found = nf.cones.size();
    for (size_t c = 0; c < nf.cones.size(); ++c)
      if (nf.cones[c] == sigma) found = c;
    if (found == nf.cones.size()) {
      ok = false;
      break;
    }
    out.to_fan_point[i] = found;
  }
  if (ok) {
    // bijective and order preserving?
    std::set<size_t> image(out.to_fan_point.begin(), out.to_fan_point.end());
    if (image.size() != n || n != out.fan_space.point_count()) ok = false;
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = 0; j < n && ok; ++j)
        if ((out.leq[i][j] != 0) != out.fan_space.le(out.to_fan_point[i], out.to_fan_point[j]))
          ok = false;
  }
  out.order_iso = ok;
  return out;
}

}  // namespace monofan::fanspace
