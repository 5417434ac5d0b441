#include "monofan/monoid.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "monofan/errors.hpp"
#include "monofan/lattice.hpp"

namespace monofan::monoid {

using polyhedral::Cone;

AffineMonoid AffineMonoid::from_generators(Index ambient_rank, std::vector<IntVector> gens) {
  AffineMonoid s;
  s.d_ = ambient_rank;
  std::vector<IntVector> cleaned;
  for (const auto& g : gens) {
    if (g.size() != ambient_rank) throw Error("generator dimension does not match ambient rank");
    if (!is_zero(g)) cleaned.push_back(g);
  }
  s.gens_ = sorted_unique(std::move(cleaned));
  s.cone_ = Cone::from_rays(ambient_rank, s.gens_);
  s.grading_ = IntVector::Zero(ambient_rank);
  for (const auto& u : s.cone_.dual_rays()) s.grading_ += u;
  std::vector<IntVector> unit_gens;
  s.unit_gen_.resize(s.gens_.size(), 0);
  for (size_t i = 0; i < s.gens_.size(); ++i) {
    // a generator is a unit iff it pairs to zero against the whole dual cone
    if (s.grading_.dot(s.gens_[i]) == 0) {
      s.unit_gen_[i] = 1;
      unit_gens.push_back(s.gens_[i]);
    }
  }
  s.unit_lattice_ = lattice::lattice_basis(unit_gens, ambient_rank);
  return s;
}

std::vector<IntVector> AffineMonoid::nonunit_generators() const {
  std::vector<IntVector> out;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (!unit_gen_[i]) out.push_back(gens_[i]);
  return out;
}

bool AffineMonoid::is_group() const {
  for (char u : unit_gen_)
    if (!u) return false;
  return true;
}

namespace {

bool graded_membership_rec(const std::vector<IntVector>& gens, const std::vector<Int>& wt,
                           const std::vector<IntVector>& unit_basis, size_t i, IntVector& rem,
                           const Int& t) {
  if (t == 0) return lattice::in_lattice(unit_basis, rem);
  if (i == gens.size()) return false;
  Int cmax = t / wt[i];
  for (Int c = 0; c <= cmax; ++c) {
    if (graded_membership_rec(gens, wt, unit_basis, i + 1, rem, t - c * wt[i])) return true;
    rem -= gens[i];
  }
  Int taken = cmax + 1;
  rem += taken * gens[i];
  return false;
}

}  // namespace

bool AffineMonoid::contains(const IntVector& v) const {
  if (v.size() != d_) throw Error("vector dimension does not match ambient rank");
  if (is_zero(v)) return true;
  if (!cone_.contains(v)) return false;
  std::vector<IntVector> graded = nonunit_generators();
  std::vector<Int> wt;
  for (const auto& g : graded) wt.push_back(grading_.dot(g));
  Int t = grading_.dot(v);
  if (t < 0) return false;
  IntVector rem = v;
  return graded_membership_rec(graded, wt, unit_lattice_, 0, rem, t);
}

bool submonoid_of(const AffineMonoid& sub, const AffineMonoid& sup) {
  if (sub.ambient_rank() != sup.ambient_rank()) return false;
  for (const auto& g : sub.generators())
    if (!sup.contains(g)) return false;
  return true;
}

bool same_monoid(const AffineMonoid& a, const AffineMonoid& b) {
  return submonoid_of(a, b) && submonoid_of(b, a);
}

AffineMonoid units(const AffineMonoid& S) {
  std::vector<IntVector> gens;
  for (size_t i = 0; i < S.generators().size(); ++i) {
    if (!S.is_unit_generator(i)) continue;
    gens.push_back(S.generators()[i]);
    gens.push_back(IntVector(-S.generators()[i]));
  }
  return AffineMonoid::from_generators(S.ambient_rank(), gens);
}

std::vector<IntVector> maximal_ideal(const AffineMonoid& S) { return S.nonunit_generators(); }

std::vector<PrimeIdeal> primes(const AffineMonoid& S) {
  std::vector<PrimeIdeal> out;
  for (const auto& f : polyhedral::faces(S.cone())) {
    PrimeIdeal p;
    for (size_t i = 0; i < S.generators().size(); ++i)
      if (f.cone.contains(S.generators()[i])) p.complement_face.push_back(static_cast<Index>(i));
    out.push_back(std::move(p));
  }
  // distinct faces carry distinct generator sets; order by (size, lex)
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.complement_face.size() != b.complement_face.size())
      return a.complement_face.size() < b.complement_face.size();
    return a.complement_face < b.complement_face;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_prime_of(const AffineMonoid& S, const PrimeIdeal& p) {
  for (const auto& q : primes(S))
    if (q == p) return true;
  return false;
}

AffineMonoid localize(const AffineMonoid& S, const IntVector& f) {
  if (!S.contains(f)) throw NotAMember("localize: element is not in the monoid");
  std::vector<IntVector> gens = S.generators();
  gens.push_back(IntVector(-f));
  return AffineMonoid::from_generators(S.ambient_rank(), gens);
}

AffineMonoid localize_at_prime(const AffineMonoid& S, const PrimeIdeal& p) {
  if (!is_prime_of(S, p)) throw InvalidPrime("localize_at_prime: not a prime of this monoid");
  std::vector<IntVector> gens = S.generators();
  for (Index i : p.complement_face)
    gens.push_back(IntVector(-S.generators()[static_cast<size_t>(i)]));
  return AffineMonoid::from_generators(S.ambient_rank(), gens);
}

GroupCompletion group_completion(const AffineMonoid& S) {
  GroupCompletion g;
  g.basis = lattice::lattice_basis(S.generators(), S.ambient_rank());
  g.rank = static_cast<Index>(g.basis.size());
  return g;
}

AffineMonoid saturation(const AffineMonoid& S) {
  GroupCompletion g = group_completion(S);
  if (g.rank == 0) return S;  // the zero monoid
  IntMatrix B = cols_matrix(S.ambient_rank(), g.basis);
  std::vector<IntVector> coords;
  for (const auto& gen : S.generators()) {
    auto c = lattice::solve_integer(B, gen);
    assert(c.has_value());
    coords.push_back(*c);
  }
  Cone c = Cone::from_rays(g.rank, coords);
  std::vector<IntVector> gens;
  for (const auto& h : polyhedral::lattice_point_generators(c)) gens.push_back(IntVector(B * h));
  return AffineMonoid::from_generators(S.ambient_rank(), gens);
}

bool is_saturated(const AffineMonoid& S) { return submonoid_of(saturation(S), S); }

std::vector<IntVector> minimal_generators(const AffineMonoid& S) {
  std::vector<IntVector> nonunits = S.nonunit_generators();
  std::vector<IntVector> out;
  for (const auto& g : nonunits) {
    // reducible iff some non-unit generator can be split off leaving a non-unit
    bool reducible = false;
    for (const auto& h : nonunits) {
      IntVector rest = g - h;
      if (S.grading().dot(rest) <= 0) continue;
      if (S.contains(rest)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(lattice::reduce_mod_lattice(g, S.unit_lattice()));
  }
  return sorted_unique(std::move(out));
}

namespace {

bool maps_onto(const IntMatrix& A, const AffineMonoid& S, const AffineMonoid& T) {
  if (!lattice::is_unimodular(A)) return false;
  for (const auto& g : S.generators())
    if (!T.contains(IntVector(A * g))) return false;
  IntMatrix Ainv = lattice::unimodular_inverse(A);
  for (const auto& h : T.generators())
    if (!S.contains(IntVector(Ainv * h))) return false;
  return true;
}

// right inverse R with G R = I, for a matrix whose columns span Z^n
std::optional<IntMatrix> right_inverse(const IntMatrix& G) {
  const Index n = G.rows(), m = G.cols();
  lattice::SmithResult s = lattice::smith_normal_form(G);
  for (Index i = 0; i < n; ++i) {
    if (i >= m || s.D(i, i) != 1) return std::nullopt;
  }
  IntMatrix sel = IntMatrix::Zero(m, n);
  for (Index i = 0; i < n; ++i) sel(i, i) = 1;
  return IntMatrix(s.V * sel * s.U);
}

// candidates between positive monoids spanning Z^n, via bijections of the
// unique minimal generating sets
void positive_candidates(const AffineMonoid& S, const AffineMonoid& T,
                         std::vector<IntMatrix>& out) {
  std::vector<IntVector> ms = minimal_generators(S), mt = minimal_generators(T);
  if (ms.size() != mt.size() || ms.empty()) return;
  const Index n = S.ambient_rank();
  IntMatrix G = cols_matrix(n, ms);
  auto R = right_inverse(G);
  if (!R.has_value()) return;
  std::vector<size_t> perm(mt.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  do {
    IntMatrix H(n, static_cast<Index>(mt.size()));
    for (size_t j = 0; j < mt.size(); ++j) H.col(static_cast<Index>(j)) = mt[perm[j]];
    IntMatrix A = H * *R;
    if (A * G == H && maps_onto(A, S, T)) out.push_back(A);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

bool same_lattice(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;  // both inputs are canonical bases
  return true;
}

}  // namespace

std::vector<IntMatrix> full_rank_iso_candidates(const AffineMonoid& S, const AffineMonoid& T) {
  std::vector<IntMatrix> out;
  if (S.ambient_rank() != T.ambient_rank()) return out;
  const Index n = S.ambient_rank();
  assert(group_completion(S).rank == n && group_completion(T).rank == n);

  const auto& us = S.unit_lattice();
  const auto& ut = T.unit_lattice();
  if (us.size() != ut.size()) return out;
  const Index k = static_cast<Index>(us.size());

  if (k == 0) {
    positive_candidates(S, T, out);
  } else if (k == n) {
    // both are the full lattice: every unimodular map works; report identity
    if (S.is_group() && T.is_group()) out.push_back(IntMatrix::Identity(n, n));
  } else {
    std::vector<IntVector> sat_s = lattice::saturate_lattice(us, n);
    std::vector<IntVector> sat_t = lattice::saturate_lattice(ut, n);
    bool split_s = same_lattice(us, sat_s), split_t = same_lattice(ut, sat_t);
    if (split_s != split_t) return out;

    lattice::SaturatedQuotient qs(sat_s, n), qt(sat_t, n);
    std::vector<IntVector> img_s, img_t;
    for (const auto& g : S.nonunit_generators()) img_s.push_back(qs.project(g));
    for (const auto& g : T.nonunit_generators()) img_t.push_back(qt.project(g));
    AffineMonoid sharp_s = AffineMonoid::from_generators(n - k, img_s);
    AffineMonoid sharp_t = AffineMonoid::from_generators(n - k, img_t);
    std::vector<IntMatrix> sharp;
    positive_candidates(sharp_s, sharp_t, sharp);

    // adapted bases: saturated unit block plus canonical sections
    IntMatrix Ps(n, n), dom(n, n);
    for (Index j = 0; j < k; ++j) Ps.col(j) = sat_s[static_cast<size_t>(j)];
    for (Index j = 0; j < n - k; ++j) {
      IntVector e = IntVector::Zero(n - k);
      e(j) = 1;
      Ps.col(k + j) = qs.section(e);
    }
    IntMatrix Ps_inv = lattice::unimodular_inverse(Ps);
    for (const auto& psi : sharp) {
      IntMatrix img(n, n);
      for (Index j = 0; j < k; ++j) img.col(j) = sat_t[static_cast<size_t>(j)];
      for (Index j = 0; j < n - k; ++j) img.col(k + j) = qt.section(IntVector(psi.col(j)));
      IntMatrix A = img * Ps_inv;
      // sound by verification; in the non-split case unit-twisted isomorphisms
      // may be missed
      if (maps_onto(A, S, T)) out.push_back(A);
    }
  }
  std::sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) {
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j)
        if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool are_isomorphic(const AffineMonoid& S, const AffineMonoid& T) {
  GroupCompletion gs = group_completion(S), gt = group_completion(T);
  if (gs.rank != gt.rank) return false;
  if (gs.rank == 0) return true;  // both are the zero monoid
  auto rewrite = [](const AffineMonoid& M, const GroupCompletion& g) {
    IntMatrix B = cols_matrix(M.ambient_rank(), g.basis);
    std::vector<IntVector> coords;
    for (const auto& gen : M.generators()) {
      auto c = lattice::solve_integer(B, gen);
      assert(c.has_value());
      coords.push_back(*c);
    }
    return AffineMonoid::from_generators(g.rank, coords);
  };
  return !full_rank_iso_candidates(rewrite(S, gs), rewrite(T, gt)).empty();
}

// ---------------------------------------------------------------------------
// presented monoids

namespace {

void check_presentation(const PresentedMonoid& P) {
  for (const auto& [u, v] : P.relations) {
    if (u.size() != P.generator_count || v.size() != P.generator_count)
      throw Error("relation arity does not match generator count");
    for (Index i = 0; i < u.size(); ++i)
      if (u(i) < 0 || v(i) < 0) throw Error("relation exponents must be nonnegative");
  }
}

long degree_of(const IntVector& w) {
  Int s = 0;
  for (Index i = 0; i < w.size(); ++i) s += w(i);
  return static_cast<long>(s.get_si());
}

// all N-words of total degree <= bound, graded lexicographic
std::vector<IntVector> words_up_to(Index n, long bound) {
  std::vector<IntVector> out;
  IntVector cur = IntVector::Zero(n);
  std::function<void(Index, long)> rec = [&](Index i, long left) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (long c = 0; c <= left; ++c) {
      cur(i) = c;
      rec(i + 1, left - c);
    }
    cur(i) = 0;
  };
  rec(0, bound);
  std::sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) {
    long da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    return lex_less(a, b);
  });
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct BoundedCongruence {
  std::vector<IntVector> words;
  std::map<IntVector, int, LexLess> index;
  UnionFind uf;

  BoundedCongruence(const PresentedMonoid& P, long bound)
      : words(words_up_to(P.generator_count, bound)), uf(words.size()) {
    for (size_t i = 0; i < words.size(); ++i) index.emplace(words[i], static_cast<int>(i));
    auto apply = [&](const IntVector& x, const IntVector& from, const IntVector& to) {
      for (Index i = 0; i < x.size(); ++i)
        if (x(i) < from(i)) return;
      IntVector y = x - from + to;
      if (degree_of(y) > bound) return;
      uf.unite(index.at(x), index.at(y));
    };
    for (size_t i = 0; i < words.size(); ++i)
      for (const auto& [u, v] : P.relations) {
        apply(words[i], u, v);
        apply(words[i], v, u);
      }
  }

  int cls(const IntVector& w) { return uf.find(index.at(w)); }
};

void min_vectors_rec(const IntVector& cap, Index i, IntVector& cur,
                     const std::function<void(const IntVector&)>& fn) {
  if (i == cap.size()) {
    fn(cur);
    return;
  }
  for (Int c = 0; c <= cap(i); ++c) {
    cur(i) = c;
    min_vectors_rec(cap, i + 1, cur, fn);
  }
}

}  // namespace

std::optional<CancellationWitness> is_cancellative_bounded(const PresentedMonoid& P,
                                                           long degree_bound) {
  check_presentation(P);
  if (degree_bound < 1) throw Error("degree bound must be at least 1");
  BoundedCongruence cong(P, degree_bound);
  std::optional<CancellationWitness> found;
  for (size_t i = 0; i < cong.words.size() && !found; ++i)
    for (size_t j = i + 1; j < cong.words.size() && !found; ++j) {
      if (cong.uf.find(static_cast<int>(i)) != cong.uf.find(static_cast<int>(j))) continue;
      const IntVector &p = cong.words[i], &q = cong.words[j];
      IntVector cap(p.size());
      for (Index t = 0; t < p.size(); ++t) cap(t) = std::min(p(t), q(t));
      IntVector c(p.size());
      min_vectors_rec(cap, 0, c, [&](const IntVector& cc) {
        if (found || is_zero(cc)) return;
        IntVector a = p - cc, b = q - cc;
        if (cong.cls(a) != cong.cls(b)) found = CancellationWitness{a, b, cc};
      });
    }
  return found;
}

std::optional<TorsionWitness> is_torsion_free_bounded(const PresentedMonoid& P,
                                                      long degree_bound) {
  check_presentation(P);
  if (degree_bound < 2) throw Error("degree bound must be at least 2");
  BoundedCongruence cong(P, degree_bound);
  for (long n = 2; n <= degree_bound; ++n)
    for (size_t i = 0; i < cong.words.size(); ++i) {
      if (degree_of(cong.words[i]) * n > degree_bound) continue;
      for (size_t j = i + 1; j < cong.words.size(); ++j) {
        if (degree_of(cong.words[j]) * n > degree_bound) continue;
        IntVector ns = Int(n) * cong.words[i], ns2 = Int(n) * cong.words[j];
        if (cong.cls(ns) == cong.cls(ns2) &&
            cong.uf.find(static_cast<int>(i)) != cong.uf.find(static_cast<int>(j)))
          return TorsionWitness{n, cong.words[i], cong.words[j]};
      }
    }
  return std::nullopt;
}

std::optional<Affinization> affinize(const PresentedMonoid& P, long degree_bound) {
  check_presentation(P);
  const Index n = P.generator_count;
  IntMatrix R(n, static_cast<Index>(P.relations.size()));
  for (size_t j = 0; j < P.relations.size(); ++j)
    R.col(static_cast<Index>(j)) = P.relations[j].first - P.relations[j].second;
  lattice::SmithResult s = lattice::smith_normal_form(R);
  Index r = 0;
  for (Index i = 0; i < std::min(R.rows(), R.cols()); ++i)
    if (s.D(i, i) != 0) {
      if (s.D(i, i) != 1) return std::nullopt;  // universal group has torsion
      ++r;
    }
  if (is_cancellative_bounded(P, std::max<long>(degree_bound, 1)).has_value()) return std::nullopt;
  if (is_torsion_free_bounded(P, std::max<long>(degree_bound, 2)).has_value()) return std::nullopt;

  const Index k = n - r;
  std::vector<IntVector> rows;
  for (Index i = 0; i < k; ++i) rows.push_back(IntVector(s.U.row(r + i).transpose()));
  rows = lattice::lattice_basis(rows, n);  // canonical projection onto the free part
  IntMatrix phi(k, n);
  for (Index i = 0; i < k; ++i) phi.row(i) = rows[static_cast<size_t>(i)].transpose();

  for (const auto& [u, v] : P.relations) assert(IntVector(phi * u) == IntVector(phi * v));

  // bounded injectivity: equal lattice images below the bound must already be
  // congruent
  BoundedCongruence cong(P, degree_bound);
  std::map<IntVector, int, LexLess> image_class;
  for (size_t i = 0; i < cong.words.size(); ++i) {
    IntVector img = phi * cong.words[i];
    auto [it, fresh] = image_class.emplace(img, cong.uf.find(static_cast<int>(i)));
    if (!fresh && it->second != cong.uf.find(static_cast<int>(i))) return std::nullopt;
  }

  return Affinization{AffineMonoid::from_generators(k, matrix_cols(phi)), phi};
}

}  // namespace monofan::monoid
